#include "parity.hpp"

namespace rad {

std::string DyadicDigits::str() const {
    std::string out = "0.";
    out.reserve(digits.size() + 2);
    for (bool d : digits) out.push_back(d ? '1' : '0');
    return out;
}

std::vector<int> parities(const SignSequence& s, std::uint64_t count) {
    if (count == 0) throw domain_error("parity count must be at least 1");
    std::vector<int> out;
    out.reserve(count);
    int p = 1;
    for (std::uint64_t m = 0; m < count; ++m) {
        p *= s.term(m);
        out.push_back(p);
    }
    return out;
}

DyadicDigits q_digits(const SignSequence& s, std::uint64_t count) {
    std::vector<int> p = parities(s, count);
    DyadicDigits d;
    d.digits.reserve(count);
    for (int pm : p) d.digits.push_back(pm > 0);
    return d;
}

Approx q_value(const DyadicDigits& d, mpfr_prec_t precision) {
    const std::uint64_t L = d.count();
    if (L == 0) throw domain_error("q_value needs at least one digit");
    if (precision < static_cast<mpfr_prec_t>(L) + 4)
        throw domain_error("precision " + std::to_string(precision) +
                           " cannot hold " + std::to_string(L) +
                           " dyadic digits exactly (need digits + 4 bits)");

    // Assemble the digit prefix as an integer and scale: Q = N * 2^-L.
    mpz_t n;
    mpz_init2(n, L + 1);
    for (std::uint64_t m = 0; m < L; ++m)
        if (d.digits[m]) mpz_setbit(n, L - 1 - m);

    Real v(precision);
    int inexact = mpfr_set_z(v.get(), n, MPFR_RNDN);
    mpz_clear(n);
    if (inexact != 0 ||
        mpfr_mul_2si(v.get(), v.get(), -static_cast<long>(L), MPFR_RNDN) != 0)
        throw internal_error("dyadic Q prefix rounded despite precision check");

    return Approx(std::move(v), d.tail_bound(), precision);
}

Approx a_value(const Approx& q) {
    Real lo(q.value.prec()), hi(q.value.prec());
    mpfr_sub(lo.get(), q.value.get(), q.bound.get(), MPFR_RNDD);
    mpfr_add(hi.get(), q.value.get(), q.bound.get(), MPFR_RNDU);
    if (mpfr_cmp_ui(hi.get(), 0) < 0 || mpfr_cmp_ui(lo.get(), 1) > 0)
        throw domain_error("Q must lie in [0,1] within its bound");

    Real v = q.value;
    int inexact = mpfr_mul_2si(v.get(), v.get(), 2, MPFR_RNDN);
    inexact |= mpfr_sub_ui(v.get(), v.get(), 2, MPFR_RNDN);
    if (inexact != 0)
        throw internal_error("4Q - 2 rounded; Q was not an exact dyadic");

    Real b = q.bound;
    mpfr_mul_2si(b.get(), b.get(), 2, MPFR_RNDU);
    return Approx(std::move(v), std::move(b), q.precision_bits);
}

Rational exact_q(const SignSequence& s) {
    if (s.kind() != SeqKind::EventuallyPeriodic)
        throw domain_error("exact Q requires an eventually periodic sequence");

    const std::uint64_t p = s.prefix().size();
    const std::uint64_t n = s.period().size();

    int block_parity = 1;
    for (int a : s.period()) block_parity *= a;
    const std::uint64_t tail_period = block_parity > 0 ? n : 2 * n;

    DyadicDigits d = q_digits(s, p + tail_period);

    // Q = sum_{m<p} d_m 2^-(m+1)  +  2^-p * D / (2^T - 1),
    // with D the tail block read as a T-bit integer.
    mpz_t num, den, tmp;
    mpz_init(num);
    mpz_init(den);
    mpz_init(tmp);

    Rational q;
    // prefix part: (sum of digit bits) / 2^p
    mpz_set_ui(num, 0);
    for (std::uint64_t m = 0; m < p; ++m) {
        mpz_mul_2exp(num, num, 1);
        if (d.digits[m]) mpz_add_ui(num, num, 1);
    }
    mpz_set_ui(den, 1);
    mpz_mul_2exp(den, den, p);
    mpq_set_num(q.get(), num);
    mpq_set_den(q.get(), den);
    mpq_canonicalize(q.get());

    // tail part
    mpz_set_ui(tmp, 0);
    for (std::uint64_t j = 0; j < tail_period; ++j) {
        mpz_mul_2exp(tmp, tmp, 1);
        if (d.digits[p + j]) mpz_add_ui(tmp, tmp, 1);
    }
    mpz_set_ui(den, 1);
    mpz_mul_2exp(den, den, tail_period);
    mpz_sub_ui(den, den, 1);
    mpz_mul_2exp(den, den, p);

    Rational tail;
    mpq_set_num(tail.get(), tmp);
    mpq_set_den(tail.get(), den);
    mpq_canonicalize(tail.get());

    mpq_add(q.get(), q.get(), tail.get());
    mpq_canonicalize(q.get());

    mpz_clear(num);
    mpz_clear(den);
    mpz_clear(tmp);
    return q;
}

std::uint64_t default_digit_count(std::uint64_t output_bits) {
    return output_bits + 8 > 64 ? output_bits + 8 : 64;
}

} // namespace rad
