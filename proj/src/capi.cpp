#include "radical/radical.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <string>
#include <utility>

#include "cheb.hpp"
#include "eval.hpp"
#include "parity.hpp"
#include "real.hpp"
#include "seq.hpp"

using rad::Approx;
using rad::PrecisionContext;
using rad::Rational;
using rad::Real;
using rad::SignSequence;

struct radical_ctx {
    PrecisionContext ctx;
};
struct radical_seq {
    SignSequence seq;
};
struct radical_approx {
    Approx a;
};
struct radical_converge_table {
    rad::ConvergeTable t;
};
struct radical_cheb_report {
    rad::ChebReport r;
};

namespace {

thread_local std::string g_error_message;
thread_local size_t g_error_offset = 0;

void set_error(const std::string& msg, size_t offset = 0) {
    g_error_message = msg;
    g_error_offset = offset;
}

// Runs `fn`, translating exceptions into status codes.
template <typename Fn>
radical_status guarded(Fn&& fn) {
    try {
        fn();
        set_error("");
        return RADICAL_OK;
    } catch (const rad::parse_error& e) {
        set_error(e.what(), e.offset());
        return RADICAL_EPARSE;
    } catch (const rad::domain_error& e) {
        set_error(e.what());
        return RADICAL_EDOMAIN;
    } catch (const rad::internal_error& e) {
        set_error(e.what());
        return RADICAL_EINTERNAL;
    } catch (const std::bad_alloc&) {
        set_error("out of memory");
        return RADICAL_EINTERNAL;
    } catch (const std::exception& e) {
        set_error(e.what());
        return RADICAL_EINTERNAL;
    }
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

radical_approx* wrap(Approx a) {
    return new radical_approx{std::move(a)};
}

// Decimal text to Real at working precision; bound is one ulp unless the
// conversion was exact.
Approx parse_decimal(const char* text, const PrecisionContext& ctx) {
    if (!text || !*text) throw rad::domain_error("empty numeric literal");
    Real v(ctx.working_bits);
    char* end = nullptr;
    int inexact = mpfr_strtofr(v.get(), text, &end, 10, MPFR_RNDN);
    if (end == text || *end != '\0')
        throw rad::domain_error(std::string("malformed numeric literal: ") +
                                text);
    Real b(Approx::kBoundPrec);
    if (inexact != 0 && !mpfr_zero_p(v.get())) {
        mpfr_set_ui_2exp(b.get(), 1,
                         mpfr_get_exp(v.get()) -
                             static_cast<mpfr_exp_t>(ctx.working_bits),
                         MPFR_RNDU);
    }
    return Approx(std::move(v), std::move(b), ctx.working_bits);
}

std::vector<bool> parse_digit_text(const char* text) {
    if (!text) throw rad::domain_error("empty digit string");
    std::string t(text);
    if (t.rfind("0.", 0) == 0) t = t.substr(2);
    if (t.empty()) throw rad::domain_error("digit string has no digits");
    std::vector<bool> digits;
    digits.reserve(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i] == '0') digits.push_back(false);
        else if (t[i] == '1') digits.push_back(true);
        else
            throw rad::domain_error(
                "digit strings may contain only '0' and '1' after \"0.\"");
    }
    return digits;
}

} // namespace

extern "C" {

const char* radical_last_error(void) { return g_error_message.c_str(); }
size_t radical_last_error_offset(void) { return g_error_offset; }
void radical_string_free(char* s) { std::free(s); }

radical_status radical_ctx_new(unsigned working_bits, unsigned trig_guard_bits,
                               radical_ctx** out) {
    return guarded([&] {
        *out = new radical_ctx{PrecisionContext(
            working_bits == 0 ? 128 : static_cast<mpfr_prec_t>(working_bits),
            trig_guard_bits == 0 ? 16
                                 : static_cast<mpfr_prec_t>(trig_guard_bits))};
    });
}
void radical_ctx_free(radical_ctx* ctx) { delete ctx; }
unsigned radical_ctx_working_bits(const radical_ctx* ctx) {
    return static_cast<unsigned>(ctx->ctx.working_bits);
}

radical_status radical_seq_parse(const char* text, radical_seq** out) {
    return guarded([&] {
        if (!text) throw rad::parse_error("empty sequence", 0);
        *out = new radical_seq{rad::parse_sequence(text)};
    });
}

radical_status radical_seq_stream_new(int (*sign_at)(uint64_t, void*),
                                      void* user, uint64_t index_bound,
                                      radical_seq** out) {
    return guarded([&] {
        if (!sign_at) throw rad::domain_error("stream callback must be set");
        *out = new radical_seq{SignSequence::stream(
            [sign_at, user](uint64_t m) { return sign_at(m, user); },
            index_bound)};
    });
}

void radical_seq_free(radical_seq* s) { delete s; }

radical_status radical_seq_term(const radical_seq* s, uint64_t index,
                                int* out_sign) {
    return guarded([&] { *out_sign = s->seq.term(index); });
}

radical_status radical_seq_print(const radical_seq* s, char** out) {
    return guarded([&] { *out = dup_string(rad::print_sequence(s->seq)); });
}

radical_status radical_seq_print_truncated(const radical_seq* s,
                                           uint64_t length, char** out) {
    return guarded(
        [&] { *out = dup_string(rad::print_truncated(s->seq, length)); });
}

radical_status radical_seq_canonicalize(const radical_seq* s,
                                        radical_seq** out) {
    return guarded([&] { *out = new radical_seq{s->seq.canonical()}; });
}

int radical_seq_is_finite(const radical_seq* s) {
    return s->seq.kind() == rad::SeqKind::Finite ? 1 : 0;
}
int radical_seq_is_purely_periodic(const radical_seq* s) {
    return s->seq.is_purely_periodic() ? 1 : 0;
}
uint64_t radical_seq_prefix_len(const radical_seq* s) {
    return s->seq.kind() == rad::SeqKind::EventuallyPeriodic
               ? s->seq.prefix().size()
               : 0;
}
uint64_t radical_seq_period_len(const radical_seq* s) {
    return s->seq.kind() == rad::SeqKind::EventuallyPeriodic
               ? s->seq.period().size()
               : 0;
}
uint64_t radical_seq_length_limit(const radical_seq* s) {
    return s->seq.length_limit();
}

radical_status radical_q_digits(const radical_seq* s, uint64_t count,
                                char** out) {
    return guarded(
        [&] { *out = dup_string(rad::q_digits(s->seq, count).str()); });
}

radical_status radical_q_exact(const radical_seq* s, char** out) {
    return guarded([&] { *out = dup_string(rad::exact_q(s->seq).str()); });
}

uint64_t radical_default_digit_count(uint64_t output_bits) {
    return rad::default_digit_count(output_bits);
}

radical_status radical_partial_radical(const radical_seq* s, uint64_t depth,
                                       const radical_ctx* ctx,
                                       radical_approx** out) {
    return guarded(
        [&] { *out = wrap(rad::partial_radical(s->seq, depth, ctx->ctx)); });
}

radical_status radical_partial_sine(const radical_seq* s, uint64_t depth,
                                    const radical_ctx* ctx,
                                    radical_approx** out) {
    return guarded(
        [&] { *out = wrap(rad::partial_sine(s->seq, depth, ctx->ctx)); });
}

radical_status radical_limit(const radical_seq* s, const radical_ctx* ctx,
                             uint64_t digit_count, radical_approx** out) {
    return guarded([&] {
        uint64_t L = digit_count == 0
                         ? rad::default_digit_count(ctx->ctx.working_bits)
                         : digit_count;
        *out = wrap(rad::limit_closed_form(s->seq, ctx->ctx, L));
    });
}

radical_status radical_tail_bound(uint64_t depth, radical_approx** out) {
    return guarded([&] {
        Real t = rad::tail_bound(depth);
        *out = wrap(Approx(std::move(t), Real(Approx::kBoundPrec),
                           Approx::kBoundPrec));
    });
}

radical_status radical_approx_value_str(const radical_approx* a,
                                        long decimal_digits, char** out) {
    return guarded([&] {
        if (decimal_digits < 0)
            throw rad::domain_error("digit count must be nonnegative");
        *out = dup_string(a->a.value.fixed(decimal_digits));
    });
}

radical_status radical_approx_value_sci_str(const radical_approx* a,
                                            long decimal_digits, char** out) {
    return guarded([&] {
        if (decimal_digits < 0)
            throw rad::domain_error("digit count must be nonnegative");
        *out = dup_string(a->a.value.sci(decimal_digits));
    });
}

radical_status radical_approx_bound_str(const radical_approx* a, char** out) {
    return guarded([&] { *out = dup_string(a->a.bound.sci(3, MPFR_RNDU)); });
}

double radical_approx_value_d(const radical_approx* a) {
    return a->a.value.to_double();
}
double radical_approx_bound_d(const radical_approx* a) {
    return mpfr_get_d(a->a.bound.get(), MPFR_RNDU);
}
unsigned radical_approx_precision_bits(const radical_approx* a) {
    return static_cast<unsigned>(a->a.precision_bits);
}

radical_status radical_approx_abs_diff(const radical_approx* a,
                                       const radical_approx* b,
                                       radical_approx** out) {
    return guarded([&] {
        Real d = rad::abs_diff(a->a, b->a);
        Real bb(Approx::kBoundPrec);
        mpfr_add(bb.get(), a->a.bound.get(), b->a.bound.get(), MPFR_RNDU);
        *out = wrap(Approx(std::move(d), std::move(bb),
                           a->a.precision_bits > b->a.precision_bits
                               ? a->a.precision_bits
                               : b->a.precision_bits));
    });
}

int radical_approx_cmp_d(const radical_approx* a, double x) {
    return a->a.value.cmp_d(x);
}

void radical_approx_free(radical_approx* a) { delete a; }

radical_status radical_converge(const radical_seq* s, uint64_t max_depth,
                                uint64_t digit_count, const radical_ctx* ctx,
                                radical_converge_table** out) {
    return guarded([&] {
        uint64_t L = digit_count == 0
                         ? rad::default_digit_count(ctx->ctx.working_bits)
                         : digit_count;
        *out = new radical_converge_table{
            rad::converge_table(s->seq, max_depth, L, ctx->ctx)};
    });
}

uint64_t radical_converge_rows(const radical_converge_table* t) {
    return t->t.rows.size();
}

radical_status radical_converge_limit(const radical_converge_table* t,
                                      radical_approx** out) {
    return guarded([&] { *out = wrap(t->t.limit); });
}

radical_status radical_converge_row(const radical_converge_table* t,
                                    uint64_t row, uint64_t* depth,
                                    radical_approx** x_n, radical_approx** gap,
                                    radical_approx** tail, int* within) {
    return guarded([&] {
        if (row >= t->t.rows.size())
            throw rad::domain_error("row index out of range");
        const rad::ConvergeRow& r = t->t.rows[row];
        if (depth) *depth = r.depth;
        if (x_n) *x_n = wrap(r.x_n);
        if (gap)
            *gap = wrap(Approx(r.gap, Real(Approx::kBoundPrec),
                               r.x_n.precision_bits));
        if (tail)
            *tail = wrap(Approx(r.tail, Real(Approx::kBoundPrec),
                                Approx::kBoundPrec));
        if (within) *within = r.within ? 1 : 0;
    });
}

int radical_converge_all_within(const radical_converge_table* t) {
    return t->t.all_within ? 1 : 0;
}

void radical_converge_free(radical_converge_table* t) { delete t; }

radical_status radical_cheb_pow2(const char* t_text, unsigned n,
                                 const radical_ctx* ctx,
                                 radical_approx** out) {
    return guarded([&] {
        Approx t = parse_decimal(t_text, ctx->ctx);
        *out = wrap(rad::cheb_pow2(t.value, t.bound, n, ctx->ctx));
    });
}

radical_status radical_fixed_point_check(const radical_seq* s,
                                         const radical_ctx* ctx,
                                         radical_cheb_report** out) {
    return guarded([&] {
        *out = new radical_cheb_report{rad::fixed_point_check(s->seq, ctx->ctx)};
    });
}

uint64_t radical_cheb_period(const radical_cheb_report* r) {
    return r->r.period_n;
}
radical_status radical_cheb_limit(const radical_cheb_report* r,
                                  radical_approx** out) {
    return guarded([&] { *out = wrap(r->r.x); });
}
radical_status radical_cheb_residual(const radical_cheb_report* r,
                                     radical_approx** out) {
    return guarded([&] {
        *out = wrap(Approx(r->r.residual, Real(Approx::kBoundPrec),
                           r->r.x.precision_bits));
    });
}
radical_status radical_cheb_tolerance(const radical_cheb_report* r,
                                      radical_approx** out) {
    return guarded([&] {
        *out = wrap(Approx(r->r.tolerance, Real(Approx::kBoundPrec),
                           Approx::kBoundPrec));
    });
}
int radical_cheb_pass(const radical_cheb_report* r) {
    return r->r.pass ? 1 : 0;
}
void radical_cheb_free(radical_cheb_report* r) { delete r; }

radical_status radical_invert_from_q(const char* q_text,
                                     int use_trailing_zeros,
                                     radical_seq** out) {
    return guarded([&] {
        if (!q_text) throw rad::domain_error("empty rational literal");
        Rational q = Rational::parse(q_text);
        *out = new radical_seq{rad::invert_from_q(
            q, use_trailing_zeros ? rad::DyadicForm::TrailingZeros
                                  : rad::DyadicForm::TrailingOnes)};
    });
}

radical_status radical_invert_from_digits(const char* digit_text,
                                          radical_seq** out) {
    return guarded([&] {
        *out = new radical_seq{
            rad::invert_from_digit_prefix(parse_digit_text(digit_text))};
    });
}

radical_status radical_invert_from_value(const char* x_text, uint64_t terms,
                                         const radical_ctx* ctx,
                                         radical_seq** out,
                                         char** out_exact_q) {
    return guarded([&] {
        Approx x = parse_decimal(x_text, ctx->ctx);
        rad::InvertResult r =
            rad::invert_from_value(x.value, x.bound, terms, ctx->ctx);
        *out = new radical_seq{std::move(r.seq)};
        if (out_exact_q)
            *out_exact_q = r.exact ? dup_string(r.q.str()) : nullptr;
    });
}

radical_status radical_lemma_check(unsigned n, const radical_ctx* ctx,
                                   radical_approx** max_deviation,
                                   radical_approx** threshold, int* pass) {
    return guarded([&] {
        rad::LemmaCheck c = rad::lemma_check(n, ctx->ctx);
        if (max_deviation)
            *max_deviation = wrap(Approx(std::move(c.max_deviation),
                                         Real(Approx::kBoundPrec),
                                         ctx->ctx.working_bits));
        if (threshold)
            *threshold = wrap(Approx(std::move(c.threshold),
                                     Real(Approx::kBoundPrec),
                                     Approx::kBoundPrec));
        if (pass) *pass = c.pass ? 1 : 0;
    });
}

} // extern "C"
