#include "eval.hpp"

#include <string>
#include <unordered_map>

namespace rad {

namespace {

// One interval step v <- sqrt(2 + s*v) with directed rounding.
// The true radicand is strictly positive at finite depth, so an enclosure
// dipping below zero is intersected with [0, inf); an enclosure entirely
// below zero means the arithmetic is broken.
void radicand_step(Real& lo, Real& hi, int s, Real& rlo, Real& rhi) {
    if (s > 0) {
        mpfr_add_ui(rlo.get(), lo.get(), 2, MPFR_RNDD);
        mpfr_add_ui(rhi.get(), hi.get(), 2, MPFR_RNDU);
    } else {
        mpfr_ui_sub(rlo.get(), 2, hi.get(), MPFR_RNDD);
        mpfr_ui_sub(rhi.get(), 2, lo.get(), MPFR_RNDU);
    }
    if (mpfr_sgn(rhi.get()) < 0)
        throw internal_error("negative radicand: arithmetic invariant broken");
    if (mpfr_sgn(rlo.get()) < 0) mpfr_set_zero(rlo.get(), 1);
    if (mpfr_cmp_d(rhi.get(), 4.0 + 1e-6) > 0)
        throw internal_error("radicand above 4: arithmetic invariant broken");
    mpfr_sqrt(lo.get(), rlo.get(), MPFR_RNDD);
    mpfr_sqrt(hi.get(), rhi.get(), MPFR_RNDU);
    if (mpfr_cmp_d(hi.get(), 2.0 + 1e-6) > 0)
        throw internal_error("partial value above 2: arithmetic invariant broken");
}

Approx approx_from_interval(const Real& lo, const Real& hi, mpfr_prec_t wb) {
    Real value(wb);
    mpfr_add(value.get(), lo.get(), hi.get(), MPFR_RNDN);
    mpfr_div_2si(value.get(), value.get(), 1, MPFR_RNDN);

    Real b1(Approx::kBoundPrec), b2(Approx::kBoundPrec);
    mpfr_sub(b1.get(), hi.get(), value.get(), MPFR_RNDU);
    mpfr_sub(b2.get(), value.get(), lo.get(), MPFR_RNDU);
    if (mpfr_cmp(b2.get(), b1.get()) > 0) mpfr_swap(b1.get(), b2.get());
    if (mpfr_sgn(b1.get()) < 0) mpfr_set_zero(b1.get(), 1);
    return Approx(std::move(value), std::move(b1), wb);
}

} // namespace

Approx partial_radical(const SignSequence& s, std::uint64_t depth,
                       const PrecisionContext& ctx) {
    if (depth == 0) throw domain_error("depth must be at least 1");

    // Pull the terms first so an out-of-range index fails before any work.
    std::vector<int> a(depth);
    for (std::uint64_t k = 0; k < depth; ++k) a[k] = s.term(k);

    const mpfr_prec_t wb = ctx.working_bits;
    Real lo(wb), hi(wb), rlo(wb), rhi(wb);
    mpfr_sqrt_ui(lo.get(), 2, MPFR_RNDD);
    mpfr_sqrt_ui(hi.get(), 2, MPFR_RNDU);

    for (std::uint64_t k = depth - 1; k-- > 0;)
        radicand_step(lo, hi, a[k + 1], rlo, rhi);

    if (a[0] < 0) {
        mpfr_neg(lo.get(), lo.get(), MPFR_RNDN);
        mpfr_neg(hi.get(), hi.get(), MPFR_RNDN);
        mpfr_swap(lo.get(), hi.get());
    }
    return approx_from_interval(lo, hi, wb);
}

Approx partial_sine(const SignSequence& s, std::uint64_t depth,
                    const PrecisionContext& ctx) {
    if (depth == 0) throw domain_error("depth must be at least 1");

    const mpfr_prec_t wb = ctx.working_bits;
    const mpfr_prec_t wg = ctx.guarded();
    const mpfr_prec_t sum_prec =
        wg > static_cast<mpfr_prec_t>(depth) + 8
            ? wg
            : static_cast<mpfr_prec_t>(depth) + 8;

    // sum = P_0 + P_1/2 + ... + P_{n-1}/2^{n-1}, assembled exactly.
    std::vector<int> p = parities(s, depth);
    Real sum(sum_prec), term(sum_prec);
    for (std::uint64_t k = 0; k < depth; ++k) {
        mpfr_set_si_2exp(term.get(), p[k], -static_cast<long>(k), MPFR_RNDN);
        if (mpfr_add(sum.get(), sum.get(), term.get(), MPFR_RNDN) != 0)
            throw internal_error("parity sum rounded despite dyadic headroom");
    }

    Real theta(wg);
    Real pi_g = Real::pi(wg);
    mpfr_mul(theta.get(), sum.get(), pi_g.get(), MPFR_RNDN);
    mpfr_div_2si(theta.get(), theta.get(), 2, MPFR_RNDN); // exact

    Real sv(wg);
    mpfr_sin(sv.get(), theta.get(), MPFR_RNDN);
    mpfr_mul_2si(sv.get(), sv.get(), 1, MPFR_RNDN); // exact

    Real value(wb);
    mpfr_set(value.get(), sv.get(), MPFR_RNDN);

    // pi rounding + multiply rounding + sin rounding, through the final
    // Lipschitz-1 sine and the factor 2, then the rounding to wb.
    Real b = Real::pow2(3 - static_cast<long>(wg), Approx::kBoundPrec);
    Real fin = Real::pow2(1 - static_cast<long>(wb), Approx::kBoundPrec);
    mpfr_add(b.get(), b.get(), fin.get(), MPFR_RNDU);
    return Approx(std::move(value), std::move(b), wb);
}

Real tail_bound(std::uint64_t depth, mpfr_prec_t prec) {
    if (depth == 0) throw domain_error("depth must be at least 1");
    Real t = Real::pi(prec, MPFR_RNDU);
    mpfr_mul_2si(t.get(), t.get(), -static_cast<long>(depth), MPFR_RNDU);
    return t;
}

namespace {

// value = -2 cos(theta) rounded to wb, with `extra` added into the bound on
// top of the argument error `arg_err` and trig rounding.
Approx neg2cos(const Real& theta, const Real& arg_err, const Real& extra,
               const PrecisionContext& ctx) {
    const mpfr_prec_t wb = ctx.working_bits;
    const mpfr_prec_t wg = ctx.guarded();

    Real c(wg);
    mpfr_cos(c.get(), theta.get(), MPFR_RNDN);
    mpfr_mul_si(c.get(), c.get(), -2, MPFR_RNDN); // exact

    Real value(wb);
    mpfr_set(value.get(), c.get(), MPFR_RNDN);

    // 2*(arg err + cos rounding) + final rounding + extra
    Real b(Approx::kBoundPrec);
    mpfr_mul_2si(b.get(), arg_err.get(), 1, MPFR_RNDU);
    Real trig = Real::pow2(2 - static_cast<long>(wg), Approx::kBoundPrec);
    mpfr_add(b.get(), b.get(), trig.get(), MPFR_RNDU);
    Real fin = Real::pow2(1 - static_cast<long>(wb), Approx::kBoundPrec);
    mpfr_add(b.get(), b.get(), fin.get(), MPFR_RNDU);
    mpfr_add(b.get(), b.get(), extra.get(), MPFR_RNDU);
    return Approx(std::move(value), std::move(b), wb);
}

} // namespace

Approx limit_closed_form(const SignSequence& s, const PrecisionContext& ctx,
                         std::uint64_t digit_count, LimitPath path) {
    if (!s.is_infinite())
        throw domain_error("limits are defined for infinite sequences; "
                           "evaluate a finite one at its depth with "
                           "partial_radical instead");
    if (path == LimitPath::Auto)
        path = s.kind() == SeqKind::EventuallyPeriodic ? LimitPath::ExactQ
                                                       : LimitPath::Digits;

    const mpfr_prec_t wg = ctx.guarded();
    Real pi_g = Real::pi(wg);
    // |pi_hat - pi| <= ulp; |Q| <= 1 keeps the argument error at this scale.
    Real pi_err = Real::pow2(2 - static_cast<long>(wg), Approx::kBoundPrec);

    if (path == LimitPath::ExactQ) {
        if (s.kind() != SeqKind::EventuallyPeriodic)
            throw domain_error("exact-Q path requires an eventually periodic "
                               "sequence");
        Rational q = exact_q(s);
        Real theta(wg);
        mpfr_mul_q(theta.get(), pi_g.get(), q.get(), MPFR_RNDN);

        Real arg_err(Approx::kBoundPrec);
        mpfr_add(arg_err.get(), pi_err.get(), pi_err.get(), MPFR_RNDU);
        return neg2cos(theta, arg_err, Real(Approx::kBoundPrec), ctx);
    }

    if (digit_count == 0) throw domain_error("digit count must be at least 1");
    DyadicDigits d = q_digits(s, digit_count);
    const mpfr_prec_t qprec =
        wg > static_cast<mpfr_prec_t>(digit_count) + 8
            ? wg
            : static_cast<mpfr_prec_t>(digit_count) + 8;
    Approx q = q_value(d, qprec);

    Real theta(wg);
    mpfr_mul(theta.get(), q.value.get(), pi_g.get(), MPFR_RNDN);

    Real arg_err(Approx::kBoundPrec);
    mpfr_add(arg_err.get(), pi_err.get(), pi_err.get(), MPFR_RNDU);

    // Lipschitz constant of -2cos(t pi) in Q is 2 pi; the digit prefix
    // undershoots Q by at most 2^-L.
    Real qtail(Approx::kBoundPrec);
    mpfr_const_pi(qtail.get(), MPFR_RNDU);
    mpfr_mul_2si(qtail.get(), qtail.get(),
                 1 - static_cast<long>(digit_count), MPFR_RNDU);
    return neg2cos(theta, arg_err, qtail, ctx);
}

ConvergeTable converge_table(const SignSequence& s, std::uint64_t max_depth,
                             std::uint64_t digit_count,
                             const PrecisionContext& ctx) {
    if (max_depth == 0) throw domain_error("max depth must be at least 1");

    ConvergeTable table{limit_closed_form(s, ctx, digit_count), {}, true};
    table.rows.reserve(max_depth);
    for (std::uint64_t n = 1; n <= max_depth; ++n) {
        Approx xn = partial_radical(s, n, ctx);
        Real gap = abs_diff(table.limit, xn);
        Real tail = tail_bound(n);

        Real allowed(Approx::kBoundPrec);
        mpfr_add(allowed.get(), tail.get(), table.limit.bound.get(), MPFR_RNDU);
        mpfr_add(allowed.get(), allowed.get(), xn.bound.get(), MPFR_RNDU);
        bool within = mpfr_cmp(gap.get(), allowed.get()) <= 0;
        table.all_within = table.all_within && within;
        table.rows.push_back({n, std::move(xn), std::move(gap),
                              std::move(tail), within});
    }
    return table;
}

DigitDescription rational_binary_digits(const Rational& q, DyadicForm form,
                                        std::uint64_t max_states) {
    if (q.sgn() < 0 || q.cmp_si(1, 1) > 0)
        throw domain_error("Q must lie in [0,1]");

    DigitDescription out;
    if (q.sgn() == 0) {
        out.period = {false};
        return out;
    }
    if (q.is_dyadic()) {
        // q = u / 2^k in lowest terms. Trailing ones: the k-bit expansion of
        // u-1 followed by all ones. Trailing zeros: the k bits of u followed
        // by all zeros (undefined at q = 1, which has no 0.xxx form).
        mpz_srcptr den = mpq_denref(q.get());
        const mp_bitcnt_t k = mpz_scan1(den, 0);
        mpz_t u;
        mpz_init(u);
        mpz_set(u, mpq_numref(q.get()));
        if (form == DyadicForm::TrailingOnes) {
            mpz_sub_ui(u, u, 1);
            out.prefix.resize(k);
            for (mp_bitcnt_t i = 0; i < k; ++i)
                out.prefix[k - 1 - i] = mpz_tstbit(u, i) != 0;
            out.period = {true};
        } else {
            if (k == 0) {
                mpz_clear(u);
                throw domain_error("Q = 1 has only the all-ones expansion");
            }
            out.prefix.resize(k);
            for (mp_bitcnt_t i = 0; i < k; ++i)
                out.prefix[k - 1 - i] = mpz_tstbit(u, i) != 0;
            out.period = {false};
        }
        mpz_clear(u);
        return out;
    }

    // Long division by doubling; the remainder state determines the cycle.
    mpz_t a, b;
    mpz_init_set(a, mpq_numref(q.get()));
    mpz_init_set(b, mpq_denref(q.get()));

    std::vector<bool> digits;
    std::unordered_map<std::string, std::size_t> seen;
    std::size_t cycle_start = 0;
    for (;;) {
        char* key_c = mpz_get_str(nullptr, 16, a);
        std::string key(key_c);
        std::free(key_c);
        auto it = seen.find(key);
        if (it != seen.end()) {
            cycle_start = it->second;
            break;
        }
        if (seen.size() >= max_states) {
            mpz_clear(a);
            mpz_clear(b);
            throw domain_error("binary expansion period exceeds the "
                               "configured state limit");
        }
        seen.emplace(std::move(key), digits.size());
        mpz_mul_2exp(a, a, 1);
        if (mpz_cmp(a, b) >= 0) {
            digits.push_back(true);
            mpz_sub(a, a, b);
        } else {
            digits.push_back(false);
        }
    }
    mpz_clear(a);
    mpz_clear(b);

    out.prefix.assign(digits.begin(), digits.begin() + cycle_start);
    out.period.assign(digits.begin() + cycle_start, digits.end());
    return out;
}

SignSequence signs_from_digits(const DigitDescription& d) {
    if (d.period.empty())
        throw domain_error("digit description needs a period block");
    const std::uint64_t p = d.prefix.size();
    const std::uint64_t t = d.period.size();

    auto sign_at = [&](std::uint64_t m) {
        if (m == 0) return d.digit_at(0) ? 1 : -1;
        return d.digit_at(m - 1) == d.digit_at(m) ? 1 : -1;
    };

    // Adjacent digit pairs repeat with the digit period once past the
    // prefix, so the sign description needs p+1 leading terms.
    std::vector<int> prefix(p + 1), period(t);
    for (std::uint64_t m = 0; m <= p; ++m) prefix[m] = sign_at(m);
    for (std::uint64_t j = 0; j < t; ++j) period[j] = sign_at(p + 1 + j);
    return SignSequence::eventually_periodic(std::move(prefix),
                                             std::move(period))
        .canonical();
}

SignSequence invert_from_q(const Rational& q, DyadicForm form,
                           std::uint64_t max_states) {
    return signs_from_digits(rational_binary_digits(q, form, max_states));
}

SignSequence invert_from_digit_prefix(const std::vector<bool>& digits) {
    if (digits.empty()) throw domain_error("digit prefix must be nonempty");
    std::vector<int> signs(digits.size());
    signs[0] = digits[0] ? 1 : -1;
    for (std::size_t m = 1; m < digits.size(); ++m)
        signs[m] = digits[m] == digits[m - 1] ? 1 : -1;
    return SignSequence::finite(std::move(signs));
}

Rational simplest_in_interval(const Rational& lo, const Rational& hi) {
    if (lo.cmp(hi) > 0)
        throw domain_error("interval endpoints out of order");

    mpz_t z;
    mpz_init(z);
    // Smallest integer >= lo; if it fits under hi it is the answer.
    mpz_cdiv_q(z, mpq_numref(lo.get()), mpq_denref(lo.get()));
    Rational r;
    mpq_set_z(r.get(), z);
    if (r.cmp(hi) <= 0) {
        mpz_clear(z);
        return r;
    }
    // Both endpoints share an integer part i; recurse on the reciprocal of
    // the fractional parts (Stern-Brocot descent).
    mpz_fdiv_q(z, mpq_numref(lo.get()), mpq_denref(lo.get()));
    Rational i;
    mpq_set_z(i.get(), z);
    mpz_clear(z);

    Rational flo, fhi;
    mpq_sub(flo.get(), lo.get(), i.get());
    mpq_sub(fhi.get(), hi.get(), i.get());
    mpq_inv(flo.get(), flo.get());
    mpq_inv(fhi.get(), fhi.get());

    Rational inner = simplest_in_interval(fhi, flo);
    Rational out;
    mpq_inv(out.get(), inner.get());
    mpq_add(out.get(), out.get(), i.get());
    mpq_canonicalize(out.get());
    return out;
}

InvertResult invert_from_value(const Real& x, const Real& x_bound,
                               std::uint64_t terms, const PrecisionContext& ctx,
                               unsigned long snap_max_den) {
    if (terms == 0) throw domain_error("term count must be at least 1");
    if (x_bound.sgn() < 0) throw domain_error("input bound must be nonnegative");

    const mpfr_prec_t wg = ctx.guarded();
    Real xlo(wg), xhi(wg);
    mpfr_sub(xlo.get(), x.get(), x_bound.get(), MPFR_RNDD);
    mpfr_add(xhi.get(), x.get(), x_bound.get(), MPFR_RNDU);
    if (mpfr_cmp_si(xhi.get(), -2) < 0 || mpfr_cmp_si(xlo.get(), 2) > 0)
        throw domain_error("target value must lie in [-2, 2]");
    if (mpfr_cmp_si(xlo.get(), -2) < 0) mpfr_set_si(xlo.get(), -2, MPFR_RNDN);
    if (mpfr_cmp_si(xhi.get(), 2) > 0) mpfr_set_si(xhi.get(), 2, MPFR_RNDN);

    // t = -x/2 reverses orientation; arccos reverses it again, so Q is
    // increasing in x: Q in [acos(-xlo/2)/pi ... acos(-xhi/2)/pi] reversed.
    Real tlo(wg), thi(wg);
    mpfr_div_2si(tlo.get(), xhi.get(), 1, MPFR_RNDU);
    mpfr_neg(tlo.get(), tlo.get(), MPFR_RNDD);
    mpfr_div_2si(thi.get(), xlo.get(), 1, MPFR_RNDD);
    mpfr_neg(thi.get(), thi.get(), MPFR_RNDU);
    if (mpfr_cmp_si(tlo.get(), -1) < 0) mpfr_set_si(tlo.get(), -1, MPFR_RNDN);
    if (mpfr_cmp_si(thi.get(), 1) > 0) mpfr_set_si(thi.get(), 1, MPFR_RNDN);

    Real alo(wg), ahi(wg);
    mpfr_acos(alo.get(), thi.get(), MPFR_RNDD);
    mpfr_acos(ahi.get(), tlo.get(), MPFR_RNDU);

    Real pi_lo = Real::pi(wg, MPFR_RNDD);
    Real pi_hi = Real::pi(wg, MPFR_RNDU);
    Real qlo(wg), qhi(wg);
    mpfr_div(qlo.get(), alo.get(), pi_hi.get(), MPFR_RNDD);
    mpfr_div(qhi.get(), ahi.get(), pi_lo.get(), MPFR_RNDU);
    if (mpfr_sgn(qlo.get()) < 0) mpfr_set_zero(qlo.get(), 1);
    if (mpfr_cmp_ui(qhi.get(), 1) > 0) mpfr_set_ui(qhi.get(), 1, MPFR_RNDN);

    Rational rlo, rhi;
    mpfr_get_q(rlo.get(), qlo.get());
    mpfr_get_q(rhi.get(), qhi.get());
    Rational snap = simplest_in_interval(rlo, rhi);
    if (mpz_cmp_ui(mpq_denref(snap.get()), snap_max_den) <= 0)
        return {invert_from_q(snap), true, snap};

    // No credible rational: emit the digit prefix of the Q midpoint.
    const mpfr_prec_t mid_prec =
        wg > static_cast<mpfr_prec_t>(terms) + 8
            ? wg
            : static_cast<mpfr_prec_t>(terms) + 8;
    Real mid(mid_prec);
    mpfr_add(mid.get(), qlo.get(), qhi.get(), MPFR_RNDN);
    mpfr_div_2si(mid.get(), mid.get(), 1, MPFR_RNDN);
    mpfr_mul_2si(mid.get(), mid.get(), static_cast<long>(terms), MPFR_RNDN);
    mpfr_floor(mid.get(), mid.get());

    mpz_t m;
    mpz_init(m);
    mpfr_get_z(m, mid.get(), MPFR_RNDN);
    if (mpz_sgn(m) < 0) mpz_set_ui(m, 0);
    mpz_t cap;
    mpz_init_set_ui(cap, 1);
    mpz_mul_2exp(cap, cap, terms);
    mpz_sub_ui(cap, cap, 1);
    if (mpz_cmp(m, cap) > 0) mpz_set(m, cap); // Q at 1: all-ones prefix
    std::vector<bool> digits(terms);
    for (std::uint64_t i = 0; i < terms; ++i)
        digits[terms - 1 - i] = mpz_tstbit(m, i) != 0;
    mpz_clear(m);
    mpz_clear(cap);

    return {invert_from_digit_prefix(digits), false, Rational()};
}

LemmaCheck lemma_check(unsigned n, const PrecisionContext& ctx) {
    if (n == 0) throw domain_error("tuple size must be at least 1");
    if (n > 30) throw domain_error("tuple size too large to enumerate");

    const std::uint64_t count = std::uint64_t(1) << n;
    Real max_dev(Approx::kBoundPrec);
    std::vector<int> signs(n);
    for (std::uint64_t mask = 0; mask < count; ++mask) {
        for (unsigned i = 0; i < n; ++i)
            signs[i] = (mask >> i) & 1 ? -1 : 1;
        SignSequence s = SignSequence::finite(signs);
        Approx rad = partial_radical(s, n, ctx);
        Approx sine = partial_sine(s, n, ctx);
        Real dev = abs_diff(rad, sine);
        if (mpfr_cmp(dev.get(), max_dev.get()) > 0) max_dev = std::move(dev);
    }

    Real threshold(Approx::kBoundPrec);
    if (ctx.working_bits < 64)
        mpfr_set_d(threshold.get(), 1e-12, MPFR_RNDU);
    else
        mpfr_set_ui_2exp(threshold.get(), 1,
                         -(static_cast<long>(ctx.working_bits) - 2L * n),
                         MPFR_RNDN);
    bool pass = mpfr_cmp(max_dev.get(), threshold.get()) <= 0;
    return {n, count, std::move(max_dev), std::move(threshold), pass};
}

} // namespace rad
