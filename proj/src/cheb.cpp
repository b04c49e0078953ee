#include "cheb.hpp"

namespace rad {

namespace {

// [lo,hi] <- 2*[lo,hi]^2 - 1 with directed rounding.
void t2_step(Real& lo, Real& hi, Real& slo, Real& shi) {
    if (mpfr_sgn(lo.get()) >= 0) {
        mpfr_sqr(slo.get(), lo.get(), MPFR_RNDD);
        mpfr_sqr(shi.get(), hi.get(), MPFR_RNDU);
    } else if (mpfr_sgn(hi.get()) <= 0) {
        mpfr_sqr(slo.get(), hi.get(), MPFR_RNDD);
        mpfr_sqr(shi.get(), lo.get(), MPFR_RNDU);
    } else {
        mpfr_set_zero(slo.get(), 1);
        Real alt(shi.prec());
        mpfr_sqr(shi.get(), hi.get(), MPFR_RNDU);
        mpfr_sqr(alt.get(), lo.get(), MPFR_RNDU);
        if (mpfr_cmp(alt.get(), shi.get()) > 0) mpfr_swap(shi.get(), alt.get());
    }
    mpfr_mul_2si(slo.get(), slo.get(), 1, MPFR_RNDD);
    mpfr_sub_ui(lo.get(), slo.get(), 1, MPFR_RNDD);
    mpfr_mul_2si(shi.get(), shi.get(), 1, MPFR_RNDU);
    mpfr_sub_ui(hi.get(), shi.get(), 1, MPFR_RNDU);
}

} // namespace

Approx cheb_pow2(const Real& t, const Real& t_bound, unsigned n,
                 const PrecisionContext& ctx) {
    if (t_bound.sgn() < 0) throw domain_error("input bound must be nonnegative");

    const mpfr_prec_t wb = ctx.working_bits;
    Real lo(wb), hi(wb);
    mpfr_sub(lo.get(), t.get(), t_bound.get(), MPFR_RNDD);
    mpfr_add(hi.get(), t.get(), t_bound.get(), MPFR_RNDU);

    // |t| <= 1 up to the stated slack; beyond that the iteration diverges.
    Real slack(Approx::kBoundPrec);
    mpfr_add_d(slack.get(), t_bound.get(), 1e-9, MPFR_RNDU);
    Real mag = t.abs();
    mpfr_sub_ui(mag.get(), mag.get(), 1, MPFR_RNDU);
    if (mpfr_cmp(mag.get(), slack.get()) > 0)
        throw domain_error("argument must lie in [-1, 1] up to the bound slack");

    Real slo(wb), shi(wb);
    for (unsigned i = 0; i < n; ++i) t2_step(lo, hi, slo, shi);

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

ChebReport fixed_point_check(const SignSequence& s, const PrecisionContext& ctx) {
    if (!s.is_purely_periodic())
        throw domain_error("fixed-point check requires a purely periodic "
                           "sequence");
    const std::uint64_t n = s.period().size();

    Approx x = limit_closed_form(s, ctx, default_digit_count(ctx.working_bits),
                                 LimitPath::ExactQ);

    Real t = x.value;
    mpfr_div_2si(t.get(), t.get(), 1, MPFR_RNDN); // exact
    Real tb = x.bound;
    mpfr_div_2si(tb.get(), tb.get(), 1, MPFR_RNDU);

    Approx y = cheb_pow2(t, tb, static_cast<unsigned>(n), ctx);

    Real residual(ctx.working_bits);
    mpfr_sub(residual.get(), y.value.get(), t.get(), MPFR_RNDN);

    // y.bound already holds the input bound amplified through the iteration
    // (at most 4^n) plus rounding; add the input-side bound back in.
    Real tolerance(Approx::kBoundPrec);
    mpfr_add(tolerance.get(), y.bound.get(), tb.get(), MPFR_RNDU);

    Real mag = residual.abs();
    bool pass = mpfr_cmp(mag.get(), tolerance.get()) <= 0;
    return {n, std::move(x), std::move(residual), std::move(tolerance), pass};
}

} // namespace rad
