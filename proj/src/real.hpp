#ifndef RADICAL_REAL_HPP
#define RADICAL_REAL_HPP

#include <gmp.h>
#include <mpfr.h>

#include <cstdint>
#include <string>
#include <utility>

#include "errors.hpp"

namespace rad {

// Working precision and trig guard bits shared by every evaluation routine.
// Guard bits are the extra precision used when computing pi and trig values
// before the final rounding, so their rounding error stays below the bounds
// we report.
struct PrecisionContext {
    mpfr_prec_t working_bits = 128;
    mpfr_prec_t trig_guard_bits = 16;

    PrecisionContext() = default;
    PrecisionContext(mpfr_prec_t working, mpfr_prec_t guard)
        : working_bits(working), trig_guard_bits(guard) {
        if (working_bits < 53)
            throw domain_error("working precision must be at least 53 bits");
        if (trig_guard_bits < 1)
            throw domain_error("trig guard bits must be positive");
    }

    mpfr_prec_t guarded() const { return working_bits + trig_guard_bits; }
};

// RAII handle around mpfr_t. Rounding is explicit at every call site that
// needs it; the few overloaded helpers round to nearest.
class Real {
public:
    explicit Real(mpfr_prec_t prec = 128) {
        mpfr_init2(v_, prec);
        mpfr_set_zero(v_, 1);
    }
    Real(const Real& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN); // same precision, exact
    }
    Real(Real&& o) noexcept {
        mpfr_init2(v_, MPFR_PREC_MIN);
        mpfr_swap(v_, o.v_);
    }
    Real& operator=(const Real& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    Real& operator=(Real&& o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~Real() { mpfr_clear(v_); }

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }
    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }

    static Real from_si(long s, mpfr_prec_t prec) {
        Real r(prec);
        mpfr_set_si(r.v_, s, MPFR_RNDN);
        return r;
    }
    static Real from_double(double d, mpfr_prec_t prec) {
        Real r(prec);
        mpfr_set_d(r.v_, d, MPFR_RNDN);
        return r;
    }
    // 2^e, exact at any precision.
    static Real pow2(long e, mpfr_prec_t prec = 64) {
        Real r(prec);
        mpfr_set_ui_2exp(r.v_, 1, e, MPFR_RNDN);
        return r;
    }
    static Real pi(mpfr_prec_t prec, mpfr_rnd_t rnd = MPFR_RNDN) {
        Real r(prec);
        mpfr_const_pi(r.v_, rnd);
        return r;
    }

    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    bool is_nan() const { return mpfr_nan_p(v_) != 0; }
    int sgn() const { return mpfr_sgn(v_); }
    int cmp(const Real& o) const { return mpfr_cmp(v_, o.v_); }
    int cmp_si(long s) const { return mpfr_cmp_si(v_, s); }
    int cmp_d(double d) const { return mpfr_cmp_d(v_, d); }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

    Real abs() const {
        Real r(prec());
        mpfr_abs(r.v_, v_, MPFR_RNDN); // exact
        return r;
    }

    // Decimal string, fixed point with `digits` places after the point.
    std::string fixed(long digits, mpfr_rnd_t rnd = MPFR_RNDN) const;
    // Decimal string, scientific with `digits` places after the point.
    std::string sci(long digits, mpfr_rnd_t rnd = MPFR_RNDN) const;

private:
    mpfr_t v_;
};

// Convenience round-to-nearest arithmetic at the precision of the left
// operand. Bound computations avoid these and use directed rounding.
inline Real operator+(const Real& a, const Real& b) {
    Real r(a.prec());
    mpfr_add(r.get(), a.get(), b.get(), MPFR_RNDN);
    return r;
}
inline Real operator-(const Real& a, const Real& b) {
    Real r(a.prec());
    mpfr_sub(r.get(), a.get(), b.get(), MPFR_RNDN);
    return r;
}
inline Real operator*(const Real& a, const Real& b) {
    Real r(a.prec());
    mpfr_mul(r.get(), a.get(), b.get(), MPFR_RNDN);
    return r;
}
inline bool operator<(const Real& a, const Real& b) { return a.cmp(b) < 0; }
inline bool operator<=(const Real& a, const Real& b) { return a.cmp(b) <= 0; }
inline bool operator>(const Real& a, const Real& b) { return a.cmp(b) > 0; }
inline bool operator>=(const Real& a, const Real& b) { return a.cmp(b) >= 0; }

// Exact rational over mpq_t. Used for the exact-Q fast path and inversion.
class Rational {
public:
    Rational() { mpq_init(q_); }
    Rational(long num, unsigned long den) {
        mpq_init(q_);
        mpq_set_si(q_, num, den);
        mpq_canonicalize(q_);
    }
    Rational(const Rational& o) {
        mpq_init(q_);
        mpq_set(q_, o.q_);
    }
    Rational(Rational&& o) noexcept {
        mpq_init(q_);
        mpq_swap(q_, o.q_);
    }
    Rational& operator=(const Rational& o) {
        if (this != &o) mpq_set(q_, o.q_);
        return *this;
    }
    Rational& operator=(Rational&& o) noexcept {
        mpq_swap(q_, o.q_);
        return *this;
    }
    ~Rational() { mpq_clear(q_); }

    mpq_ptr get() { return q_; }
    mpq_srcptr get() const { return q_; }

    // Accepts "p/q", "p", or a plain decimal like "0.625". Exact.
    static Rational parse(const std::string& text);

    int cmp(const Rational& o) const { return mpq_cmp(q_, o.q_); }
    int cmp_si(long num, unsigned long den) const { return mpq_cmp_si(q_, num, den); }
    int sgn() const { return mpq_sgn(q_); }
    bool is_integer() const { return mpz_cmp_ui(mpq_denref(q_), 1) == 0; }
    // Denominator a power of two (includes integers).
    bool is_dyadic() const;

    std::string str() const;

private:
    mpq_t q_;
};

inline bool operator==(const Rational& a, const Rational& b) { return a.cmp(b) == 0; }

// A value together with a rigorous absolute error bound: the true quantity
// lies in [value - bound, value + bound]. Bounds are kept at a fixed small
// precision and always rounded up.
struct Approx {
    static constexpr mpfr_prec_t kBoundPrec = 64;

    Real value;
    Real bound;
    mpfr_prec_t precision_bits;

    Approx(Real v, Real b, mpfr_prec_t bits)
        : value(std::move(v)), bound(std::move(b)), precision_bits(bits) {
        if (bound.sgn() < 0 || bound.is_nan())
            throw internal_error("error bound must be a finite nonnegative real");
    }

    static Approx exact(Real v, mpfr_prec_t bits) {
        return Approx(std::move(v), Real(kBoundPrec), bits);
    }

    // True iff x is consistent with this enclosure. The distance is rounded
    // away from zero, so a borderline answer errs toward "no".
    bool contains(const Real& x) const {
        Real d(value.prec());
        mpfr_sub(d.get(), value.get(), x.get(), MPFR_RNDA);
        mpfr_abs(d.get(), d.get(), MPFR_RNDU);
        return mpfr_cmp(d.get(), bound.get()) <= 0;
    }
};

// |a.value - b.value| plus both bounds, rounded up: a rigorous upper bound
// on the distance between the two true quantities.
Real abs_diff_with_bounds(const Approx& a, const Approx& b);

// |a.value - b.value| rounded up, without the bounds.
Real abs_diff(const Approx& a, const Approx& b);

} // namespace rad

#endif
