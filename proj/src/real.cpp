#include "real.hpp"

#include <cctype>
#include <cstdlib>

namespace rad {

std::string Real::fixed(long digits, mpfr_rnd_t rnd) const {
    char* s = nullptr;
    mpfr_asprintf(&s, "%.*R*f", (int)digits, rnd, v_);
    std::string out(s);
    mpfr_free_str(s);
    return out;
}

std::string Real::sci(long digits, mpfr_rnd_t rnd) const {
    char* s = nullptr;
    mpfr_asprintf(&s, "%.*R*e", (int)digits, rnd, v_);
    std::string out(s);
    mpfr_free_str(s);
    return out;
}

Rational Rational::parse(const std::string& text) {
    if (text.empty()) throw domain_error("empty rational literal");

    if (text.find('/') != std::string::npos) {
        Rational r;
        if (mpq_set_str(r.q_, text.c_str(), 10) != 0)
            throw domain_error("malformed rational literal: " + text);
        if (mpz_sgn(mpq_denref(r.q_)) == 0)
            throw domain_error("zero denominator in rational literal: " + text);
        mpq_canonicalize(r.q_);
        return r;
    }

    // Plain integer or decimal literal, converted exactly.
    std::size_t i = 0;
    bool neg = false;
    if (text[i] == '+' || text[i] == '-') {
        neg = text[i] == '-';
        ++i;
    }
    std::string digits;
    std::size_t frac_len = 0;
    bool seen_dot = false, seen_digit = false;
    for (; i < text.size(); ++i) {
        char c = text[i];
        if (c == '.') {
            if (seen_dot) throw domain_error("malformed decimal literal: " + text);
            seen_dot = true;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            digits.push_back(c);
            if (seen_dot) ++frac_len;
            seen_digit = true;
        } else {
            throw domain_error("malformed decimal literal: " + text);
        }
    }
    if (!seen_digit) throw domain_error("malformed decimal literal: " + text);

    Rational r;
    mpz_set_str(mpq_numref(r.q_), digits.c_str(), 10);
    mpz_ui_pow_ui(mpq_denref(r.q_), 10, frac_len);
    if (neg) mpz_neg(mpq_numref(r.q_), mpq_numref(r.q_));
    mpq_canonicalize(r.q_);
    return r;
}

bool Rational::is_dyadic() const {
    mpz_srcptr den = mpq_denref(q_);
    // A canonical denominator is a power of two iff it has one set bit.
    return mpz_popcount(den) == 1;
}

std::string Rational::str() const {
    char* s = mpq_get_str(nullptr, 10, q_);
    std::string out(s);
    std::free(s);
    return out;
}

Real abs_diff(const Approx& a, const Approx& b) {
    Real d(a.value.prec() > b.value.prec() ? a.value.prec() : b.value.prec());
    mpfr_sub(d.get(), a.value.get(), b.value.get(), MPFR_RNDA);
    mpfr_abs(d.get(), d.get(), MPFR_RNDU);
    return d;
}

Real abs_diff_with_bounds(const Approx& a, const Approx& b) {
    Real d = abs_diff(a, b);
    mpfr_add(d.get(), d.get(), a.bound.get(), MPFR_RNDU);
    mpfr_add(d.get(), d.get(), b.bound.get(), MPFR_RNDU);
    return d;
}

} // namespace rad
