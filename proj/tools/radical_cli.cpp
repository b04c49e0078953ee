// Command-line front end. Links the C API only; all arithmetic stays inside
// the shared library.

#include <radical/radical.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

namespace {

// Exit codes: 0 success, 2 parse error, 3 domain error, 4 invariant
// violation. Status values from the library already use this numbering.
struct CliError {
    int code;
    std::string message;
};

void check(radical_status st) {
    if (st == RADICAL_OK) return;
    std::string msg = radical_last_error();
    if (st == RADICAL_EPARSE)
        msg += " at byte " + std::to_string(radical_last_error_offset());
    throw CliError{static_cast<int>(st), msg};
}

using SeqPtr = std::unique_ptr<radical_seq, decltype(&radical_seq_free)>;
using CtxPtr = std::unique_ptr<radical_ctx, decltype(&radical_ctx_free)>;
using ApproxPtr = std::unique_ptr<radical_approx, decltype(&radical_approx_free)>;

SeqPtr parse_seq(const std::string& text) {
    radical_seq* s = nullptr;
    check(radical_seq_parse(text.c_str(), &s));
    return SeqPtr(s, radical_seq_free);
}

std::string take(char* s) {
    std::string out(s ? s : "");
    radical_string_free(s);
    return out;
}

std::string seq_text(const radical_seq* s) {
    char* t = nullptr;
    check(radical_seq_print(s, &t));
    return take(t);
}

std::string value_str(const radical_approx* a, long digits) {
    char* t = nullptr;
    check(radical_approx_value_str(a, digits, &t));
    return take(t);
}

std::string sci_str(const radical_approx* a, long digits = 6) {
    char* t = nullptr;
    check(radical_approx_value_sci_str(a, digits, &t));
    return take(t);
}

std::string bound_str(const radical_approx* a) {
    char* t = nullptr;
    check(radical_approx_bound_str(a, &t));
    return take(t);
}

// Tabular output shared by CSV and JSON: ordered field/value rows.
using Row = std::vector<std::pair<std::string, std::string>>;

struct Options {
    unsigned precision_bits = 128;
    std::string format = "csv";
    long digits = 30;

    CtxPtr make_ctx() const {
        radical_ctx* c = nullptr;
        check(radical_ctx_new(precision_bits, 0, &c));
        return CtxPtr(c, radical_ctx_free);
    }
    // One output digit is about 3.322 bits of Q.
    uint64_t digit_count_for_output() const {
        auto bits = static_cast<uint64_t>(
            std::ceil(static_cast<double>(digits) * 3.3219280948873623));
        return radical_default_digit_count(bits);
    }
};

std::string csv_escape(const std::string& v) {
    if (v.find_first_of(",\"\n") == std::string::npos) return v;
    std::string out = "\"";
    for (char c : v) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += "\"";
    return out;
}

void emit(const Options& opt, const std::vector<Row>& rows) {
    if (rows.empty()) return;
    if (opt.format == "json") {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const Row& r : rows) {
            nlohmann::ordered_json obj;
            for (const auto& [k, v] : r) obj[k] = v;
            arr.push_back(std::move(obj));
        }
        std::cout << arr.dump(2) << "\n";
        return;
    }
    for (std::size_t i = 0; i < rows[0].size(); ++i)
        std::cout << (i ? "," : "") << csv_escape(rows[0][i].first);
    std::cout << "\n";
    for (const Row& r : rows) {
        for (std::size_t i = 0; i < r.size(); ++i)
            std::cout << (i ? "," : "") << csv_escape(r[i].second);
        std::cout << "\n";
    }
}

// ----- subcommands ---------------------------------------------------------

int cmd_limit(const Options& opt, const std::string& seq_arg,
              uint64_t digit_count) {
    SeqPtr s = parse_seq(seq_arg);
    CtxPtr ctx = opt.make_ctx();
    uint64_t L = digit_count ? digit_count : opt.digit_count_for_output();

    radical_approx* x = nullptr;
    check(radical_limit(s.get(), ctx.get(), L, &x));
    ApproxPtr xp(x, radical_approx_free);

    char* qr = nullptr;
    check(radical_q_exact(s.get(), &qr));
    char* qb = nullptr;
    check(radical_q_digits(s.get(), L, &qb));

    emit(opt, {{
        {"sequence", seq_text(s.get())},
        {"digit_count", std::to_string(L)},
        {"q_rational", take(qr)},
        {"q_binary", take(qb)},
        {"x", value_str(x, opt.digits)},
        {"x_bound", bound_str(x)},
    }});
    return 0;
}

int cmd_eval(const Options& opt, const std::string& seq_arg, uint64_t depth) {
    SeqPtr s = parse_seq(seq_arg);
    CtxPtr ctx = opt.make_ctx();

    radical_approx* r = nullptr;
    check(radical_partial_radical(s.get(), depth, ctx.get(), &r));
    ApproxPtr rp(r, radical_approx_free);
    radical_approx* n = nullptr;
    check(radical_partial_sine(s.get(), depth, ctx.get(), &n));
    ApproxPtr np(n, radical_approx_free);
    radical_approx* d = nullptr;
    check(radical_approx_abs_diff(r, n, &d));
    ApproxPtr dp(d, radical_approx_free);

    emit(opt, {{
        {"sequence", seq_text(s.get())},
        {"depth", std::to_string(depth)},
        {"radical", value_str(r, opt.digits)},
        {"sine", value_str(n, opt.digits)},
        {"abs_diff", sci_str(d)},
        {"radical_bound", bound_str(r)},
        {"sine_bound", bound_str(n)},
    }});
    return 0;
}

int cmd_converge(const Options& opt, const std::string& seq_arg,
                 uint64_t max_depth, uint64_t digit_count) {
    SeqPtr s = parse_seq(seq_arg);
    CtxPtr ctx = opt.make_ctx();
    uint64_t L = digit_count ? digit_count : opt.digit_count_for_output();

    radical_converge_table* t = nullptr;
    check(radical_converge(s.get(), max_depth, L, ctx.get(), &t));
    std::unique_ptr<radical_converge_table, decltype(&radical_converge_free)>
        tp(t, radical_converge_free);

    std::string seq_str = seq_text(s.get());
    std::vector<Row> rows;
    for (uint64_t i = 0; i < radical_converge_rows(t); ++i) {
        uint64_t depth = 0;
        radical_approx *xn = nullptr, *gap = nullptr, *tail = nullptr;
        int within = 0;
        check(radical_converge_row(t, i, &depth, &xn, &gap, &tail, &within));
        ApproxPtr xp(xn, radical_approx_free), gp(gap, radical_approx_free),
            lp(tail, radical_approx_free);
        rows.push_back({
            {"sequence", seq_str},
            {"depth", std::to_string(depth)},
            {"x_n", value_str(xn, opt.digits)},
            {"gap", sci_str(gap)},
            {"tail_bound", sci_str(tail)},
            {"within", within ? "pass" : "fail"},
        });
    }
    bool ok = radical_converge_all_within(t) != 0;
    rows.push_back({
        {"sequence", seq_str},
        {"depth", "summary"},
        {"x_n", ""},
        {"gap", ""},
        {"tail_bound", ""},
        {"within", ok ? "PASS" : "FAIL"},
    });
    emit(opt, rows);
    if (!ok) {
        std::cerr << "error: convergence envelope violated\n";
        return 4;
    }
    return 0;
}

int cmd_invert(const Options& opt, const std::string& value,
               const std::string& q, const std::string& qbin, uint64_t terms,
               bool dyadic_zeros) {
    CtxPtr ctx = opt.make_ctx();

    SeqPtr s(nullptr, radical_seq_free);
    std::string input;
    bool exact = false;
    if (!value.empty()) {
        input = value;
        radical_seq* raw = nullptr;
        char* snapped = nullptr;
        check(radical_invert_from_value(value.c_str(), terms, ctx.get(), &raw,
                                        &snapped));
        s.reset(raw);
        exact = snapped != nullptr;
        radical_string_free(snapped);
    } else if (!q.empty()) {
        input = q;
        radical_seq* raw = nullptr;
        check(radical_invert_from_q(q.c_str(), dyadic_zeros ? 1 : 0, &raw));
        s.reset(raw);
        exact = true;
    } else {
        input = qbin;
        radical_seq* raw = nullptr;
        check(radical_invert_from_digits(qbin.c_str(), &raw));
        s.reset(raw);
    }

    // Confirmation: the closed-form limit for infinite results, the partial
    // value at full depth for finite prefixes.
    radical_approx* x = nullptr;
    std::string q_rational;
    if (radical_seq_is_finite(s.get())) {
        check(radical_partial_radical(s.get(), radical_seq_length_limit(s.get()),
                                      ctx.get(), &x));
    } else {
        check(radical_limit(s.get(), ctx.get(), opt.digit_count_for_output(),
                            &x));
        char* qr = nullptr;
        check(radical_q_exact(s.get(), &qr));
        q_rational = take(qr);
    }
    ApproxPtr xp(x, radical_approx_free);

    char* printed = nullptr;
    if (radical_seq_is_finite(s.get()))
        check(radical_seq_print_truncated(
            s.get(), radical_seq_length_limit(s.get()), &printed));
    else
        check(radical_seq_print(s.get(), &printed));

    emit(opt, {{
        {"input", input},
        {"q_rational", q_rational},
        {"sequence", take(printed)},
        {"exact", exact ? "yes" : "no"},
        {"x_check", value_str(x, opt.digits)},
        {"x_check_bound", bound_str(x)},
    }});
    return 0;
}

int cmd_enumerate(const Options& opt, uint64_t period, uint64_t max_period) {
    if (period == 0) throw CliError{3, "period must be at least 1"};
    if (period > max_period)
        throw CliError{3, "period " + std::to_string(period) +
                              " above the configured maximum " +
                              std::to_string(max_period)};
    CtxPtr ctx = opt.make_ctx();

    struct Item {
        std::string pattern;
        std::string canonical;
        bool duplicate;
        std::string q;
        ApproxPtr x;
        std::string residual, tolerance;
        bool cheb_pass;
    };
    std::vector<Item> items;

    for (uint64_t mask = 0; mask < (uint64_t(1) << period); ++mask) {
        std::string pattern = "(";
        for (uint64_t j = 0; j < period; ++j)
            pattern += (mask >> j) & 1 ? '-' : '+';
        pattern += ")";

        SeqPtr s = parse_seq(pattern);
        radical_seq* canon = nullptr;
        check(radical_seq_canonicalize(s.get(), &canon));
        SeqPtr cp(canon, radical_seq_free);
        bool dup = radical_seq_period_len(canon) != period;

        char* qr = nullptr;
        check(radical_q_exact(s.get(), &qr));

        radical_cheb_report* rep = nullptr;
        check(radical_fixed_point_check(s.get(), ctx.get(), &rep));
        std::unique_ptr<radical_cheb_report, decltype(&radical_cheb_free)>
            rp(rep, radical_cheb_free);

        radical_approx* x = nullptr;
        check(radical_cheb_limit(rep, &x));
        radical_approx* res = nullptr;
        check(radical_cheb_residual(rep, &res));
        ApproxPtr resp(res, radical_approx_free);
        radical_approx* tol = nullptr;
        check(radical_cheb_tolerance(rep, &tol));
        ApproxPtr tolp(tol, radical_approx_free);

        items.push_back({std::move(pattern), seq_text(canon), dup, take(qr),
                         ApproxPtr(x, radical_approx_free), sci_str(res),
                         sci_str(tol), radical_cheb_pass(rep) != 0});
    }

    // Pairwise distinctness over canonically distinct patterns: sort by
    // value, then the smallest adjacent gap is the minimum gap.
    std::vector<const Item*> distinct;
    for (const Item& it : items)
        if (!it.duplicate) distinct.push_back(&it);
    std::sort(distinct.begin(), distinct.end(),
              [](const Item* a, const Item* b) {
                  return radical_approx_value_d(a->x.get()) <
                         radical_approx_value_d(b->x.get());
              });
    std::string min_gap_str = "";
    bool distinct_ok = true;
    if (distinct.size() > 1) {
        ApproxPtr min_gap(nullptr, radical_approx_free);
        for (std::size_t i = 0; i + 1 < distinct.size(); ++i) {
            radical_approx* d = nullptr;
            check(radical_approx_abs_diff(distinct[i + 1]->x.get(),
                                          distinct[i]->x.get(), &d));
            ApproxPtr dp(d, radical_approx_free);
            if (!min_gap || radical_approx_value_d(d) <
                                radical_approx_value_d(min_gap.get()))
                min_gap = std::move(dp);
        }
        min_gap_str = sci_str(min_gap.get());
        distinct_ok = radical_approx_cmp_d(min_gap.get(), 1e-9) > 0;
    }

    bool cheb_ok = true;
    std::vector<Row> rows;
    for (const Item& it : items) {
        cheb_ok = cheb_ok && it.cheb_pass;
        rows.push_back({
            {"pattern", it.pattern},
            {"canonical", it.canonical},
            {"duplicate", it.duplicate ? "yes" : "no"},
            {"q_rational", it.q},
            {"x", value_str(it.x.get(), opt.digits)},
            {"cheb_residual", it.residual},
            {"cheb_tolerance", it.tolerance},
            {"cheb_pass", it.cheb_pass ? "pass" : "fail"},
            {"min_gap", ""},
            {"distinct", ""},
        });
    }
    rows.push_back({
        {"pattern", "summary"},
        {"canonical", ""},
        {"duplicate", ""},
        {"q_rational", ""},
        {"x", ""},
        {"cheb_residual", ""},
        {"cheb_tolerance", ""},
        {"cheb_pass", cheb_ok ? "PASS" : "FAIL"},
        {"min_gap", min_gap_str},
        {"distinct", distinct_ok ? "PASS" : "FAIL"},
    });
    emit(opt, rows);
    if (!cheb_ok || !distinct_ok) {
        std::cerr << "error: enumeration invariant violated\n";
        return 4;
    }
    return 0;
}

int cmd_check_lemma(const Options& opt, unsigned max_n) {
    if (max_n == 0) throw CliError{3, "max-n must be at least 1"};
    if (max_n > 20)
        throw CliError{3, "max-n above 20 refused (2^n tuples)"};
    CtxPtr ctx = opt.make_ctx();

    bool all_pass = true;
    std::vector<Row> rows;
    for (unsigned n = 1; n <= max_n; ++n) {
        radical_approx *dev = nullptr, *thr = nullptr;
        int pass = 0;
        check(radical_lemma_check(n, ctx.get(), &dev, &thr, &pass));
        ApproxPtr dp(dev, radical_approx_free), tp(thr, radical_approx_free);
        all_pass = all_pass && pass;
        rows.push_back({
            {"n", std::to_string(n)},
            {"tuples", std::to_string(uint64_t(1) << n)},
            {"max_deviation", sci_str(dev)},
            {"threshold", sci_str(thr)},
            {"result", pass ? "PASS" : "FAIL"},
        });
    }
    emit(opt, rows);
    if (!all_pass) {
        std::cerr << "error: finite-depth identity violated\n";
        return 4;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"continued radicals of the form a0*sqrt(2+a1*sqrt(2+...)): "
                 "evaluation, limits, inversion, enumeration"};
    app.require_subcommand(1);

    Options opt;
    app.add_option("--precision-bits", opt.precision_bits,
                   "working precision in bits (>= 53)")
        ->envname("RADICAL_PRECISION_BITS")
        ->capture_default_str();
    app.add_option("--format", opt.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    app.add_option("--digits", opt.digits, "decimal digits in value columns")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();

    std::string seq_arg;
    uint64_t digit_count = 0;

    CLI::App* limit = app.add_subcommand(
        "limit", "closed-form limit x = -2 cos(Q pi) of an infinite sequence");
    limit->fallthrough();
    limit->add_option("sequence,--seq", seq_arg, "sequence, e.g. \"(+-)\"")
        ->required();
    limit->add_option("--digit-count", digit_count,
                      "Q digits to carry (default from --digits)");

    uint64_t depth = 1;
    CLI::App* eval = app.add_subcommand(
        "eval", "finite-depth value, nested radical vs sine form");
    eval->fallthrough();
    eval->add_option("sequence,--seq", seq_arg)->required();
    eval->add_option("--depth", depth, "number of terms")
        ->required()
        ->check(CLI::PositiveNumber);

    uint64_t max_depth = 1;
    CLI::App* converge = app.add_subcommand(
        "converge", "per-depth gap to the limit against the pi*2^-n tail");
    converge->fallthrough();
    converge->add_option("sequence,--seq", seq_arg)->required();
    converge->add_option("--max-depth", max_depth)
        ->required()
        ->check(CLI::PositiveNumber);
    converge->add_option("--digit-count", digit_count);

    std::string inv_value, inv_q, inv_qbin;
    uint64_t terms = 64;
    bool dyadic_zeros = false;
    CLI::App* invert = app.add_subcommand(
        "invert", "sign sequence whose limit is a target value or Q");
    invert->fallthrough();
    auto* ov = invert->add_option("--value", inv_value, "target x in [-2,2]");
    auto* oq = invert->add_option("--q", inv_q, "exact Q in [0,1], e.g. 1/3");
    auto* ob = invert->add_option("--qbin", inv_qbin,
                                  "binary digit prefix of Q, e.g. 0.1011");
    ov->excludes(oq)->excludes(ob);
    oq->excludes(ob);
    invert->add_option("--terms", terms, "signs to derive for inexact targets")
        ->check(CLI::PositiveNumber);
    invert->add_flag("--dyadic-zeros", dyadic_zeros,
                     "use the trailing-zeros expansion at dyadic Q");

    uint64_t period = 1, max_period = 16;
    CLI::App* enumerate = app.add_subcommand(
        "enumerate", "all 2^n sign patterns of a period with Q, x and "
                     "Chebyshev residuals");
    enumerate->fallthrough();
    enumerate->add_option("--period", period)->required();
    enumerate->add_option("--max-period", max_period,
                          "refuse periods above this")
        ->capture_default_str();

    unsigned max_n = 12;
    CLI::App* lemma = app.add_subcommand(
        "check-lemma", "exhaustive radical-vs-sine identity up to max-n terms");
    lemma->fallthrough();
    lemma->add_option("--max-n", max_n)->capture_default_str();

    // CLI11 lexes '-'-leading tokens as options and swallows bare "--" and
    // "++", yet sign sequences consist of exactly those characters. Tokens
    // built only from '+', '-', '(' and ')' are rewritten to --seq=<token>
    // before parsing (reversed order per App::parse).
    std::vector<std::string> args;
    args.reserve(static_cast<std::size_t>(argc));
    for (int i = argc - 1; i > 0; --i) {
        std::string a = argv[i];
        if (!a.empty() && a.find_first_not_of("+-()") == std::string::npos)
            a = "--seq=" + a;
        args.push_back(std::move(a));
    }

    try {
        app.parse(std::move(args));
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (app.got_subcommand(limit))
            return cmd_limit(opt, seq_arg, digit_count);
        if (app.got_subcommand(eval)) return cmd_eval(opt, seq_arg, depth);
        if (app.got_subcommand(converge))
            return cmd_converge(opt, seq_arg, max_depth, digit_count);
        if (app.got_subcommand(invert)) {
            if (inv_value.empty() && inv_q.empty() && inv_qbin.empty())
                throw CliError{3, "one of --value, --q, --qbin is required"};
            return cmd_invert(opt, inv_value, inv_q, inv_qbin, terms,
                              dyadic_zeros);
        }
        if (app.got_subcommand(enumerate))
            return cmd_enumerate(opt, period, max_period);
        if (app.got_subcommand(lemma)) return cmd_check_lemma(opt, max_n);
    } catch (const CliError& e) {
        std::cerr << "error: " << e.message << "\n";
        return e.code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
    return 0;
}
