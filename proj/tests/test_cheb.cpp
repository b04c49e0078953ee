#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "cheb.hpp"
#include "eval.hpp"
#include "seq.hpp"
#include "support.hpp"

using rad::Approx;
using rad::parse_sequence;
using rad::PrecisionContext;
using rad::Real;
using rad::SignSequence;

namespace {

const PrecisionContext ctx128{128, 16};
const Real kZeroBound(Approx::kBoundPrec);

} // namespace

TEST_CASE("cheb_pow2: fixed values") {
    Approx a = rad::cheb_pow2(Real::from_si(1, 128), kZeroBound, 5, ctx128);
    CHECK(mpfr_cmp_si(a.value.get(), 1) == 0); // T_k(1) = 1

    Approx b = rad::cheb_pow2(Real::from_si(0, 128), kZeroBound, 1, ctx128);
    CHECK(mpfr_cmp_si(b.value.get(), -1) == 0); // T_2(0) = -1

    // T_4(cos(pi/5)) = cos(4 pi/5), frozen from a 256-bit cosine
    Real t(128);
    mpfr_const_pi(t.get(), MPFR_RNDN);
    mpfr_div_ui(t.get(), t.get(), 5, MPFR_RNDN);
    mpfr_cos(t.get(), t.get(), MPFR_RNDN);
    Approx c = rad::cheb_pow2(t, kZeroBound, 2, ctx128);
    Real expect(160);
    mpfr_set_str(expect.get(),
                 "-0.809016994374947424102293417182819058860154590", 10,
                 MPFR_RNDN);
    Real d(128);
    mpfr_sub(d.get(), c.value.get(), expect.get(), MPFR_RNDN);
    mpfr_abs(d.get(), d.get(), MPFR_RNDN);
    CHECK(mpfr_cmp_d(d.get(), 1e-35) <= 0);

    CHECK_THROWS_AS(
        rad::cheb_pow2(Real::from_double(1.5, 128), kZeroBound, 1, ctx128),
        rad::domain_error);
}

TEST_CASE("cheb_pow2 matches cos(2^n arccos t) for random t") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Real tol = Real::pow2(-(128 - 2 * 10 - 4), 64);
    for (int iter = 0; iter < 1000; ++iter) {
        double td = dist(rng);
        unsigned n = static_cast<unsigned>(rng() % 11);
        Real t = Real::from_double(td, 128);

        Approx it = rad::cheb_pow2(t, kZeroBound, n, ctx128);

        Real ref(192);
        mpfr_acos(ref.get(), t.get(), MPFR_RNDN);
        mpfr_mul_2si(ref.get(), ref.get(), static_cast<long>(n), MPFR_RNDN);
        mpfr_cos(ref.get(), ref.get(), MPFR_RNDN);

        Real d(192);
        mpfr_sub(d.get(), it.value.get(), ref.get(), MPFR_RNDN);
        mpfr_abs(d.get(), d.get(), MPFR_RNDN);
        CAPTURE(td);
        CAPTURE(n);
        CHECK(mpfr_cmp(d.get(), tol.get()) <= 0);
    }
}

TEST_CASE("degree doubling: T_{2^{n+1}}(t) = T_{2^n}(T_2(t))") {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (int iter = 0; iter < 200; ++iter) {
        Real t = Real::from_double(dist(rng), 128);
        unsigned n = static_cast<unsigned>(rng() % 8);
        Approx lhs = rad::cheb_pow2(t, kZeroBound, n + 1, ctx128);
        Approx step = rad::cheb_pow2(t, kZeroBound, 1, ctx128);
        Approx rhs = rad::cheb_pow2(step.value, step.bound, n, ctx128);
        Real d = rad::abs_diff(lhs, rhs);
        Real allow(64);
        mpfr_add(allow.get(), lhs.bound.get(), rhs.bound.get(), MPFR_RNDU);
        CHECK(mpfr_cmp(d.get(), allow.get()) <= 0);
    }
}

TEST_CASE("fixed_point_check: frozen periodic cases") {
    rad::ChebReport plus = rad::fixed_point_check(parse_sequence("(+)"), ctx128);
    CHECK(plus.period_n == 1);
    CHECK(plus.pass);
    CHECK(mpfr_cmp_d(plus.residual.abs().get(), 1e-30) < 0);

    rad::ChebReport minus = rad::fixed_point_check(parse_sequence("(-)"), ctx128);
    CHECK(minus.pass);
    // x = -1: T_2(-1/2) - (-1/2) = 0 exactly
    CHECK(mpfr_cmp_d(minus.residual.abs().get(), 1e-30) < 0);

    // "(+-)": Q = 3/5, x golden-ratio-adjacent; T_4 fixes x/2
    rad::ChebReport pm = rad::fixed_point_check(parse_sequence("(+-)"), ctx128);
    CHECK(pm.period_n == 2);
    CHECK(pm.pass);
    Real expect(160);
    mpfr_set_str(expect.get(),
                 "0.618033988749894848204586834365638117720309180", 10,
                 MPFR_RNDN);
    CHECK(pm.x.contains(expect));

    CHECK_THROWS_AS(rad::fixed_point_check(parse_sequence("+(-)"), ctx128),
                    rad::domain_error);
    CHECK_THROWS_AS(rad::fixed_point_check(parse_sequence("+-"), ctx128),
                    rad::domain_error);
}

TEST_CASE("fixed_point_check: every pattern with period <= 6") {
    for (unsigned n = 1; n <= 6; ++n) {
        for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << n); ++mask) {
            SignSequence s =
                SignSequence::purely_periodic(testsupport::mask_signs(mask, n));
            rad::ChebReport r = rad::fixed_point_check(s, ctx128);
            CAPTURE(rad::print_sequence(s));
            CHECK(r.pass);
        }
    }
}
