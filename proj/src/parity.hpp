#ifndef RADICAL_PARITY_HPP
#define RADICAL_PARITY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "real.hpp"
#include "seq.hpp"

namespace rad {

// A finite prefix of the binary digits of Q. The implied tail bound is
// exactly 2^-L for L digits (the all-ones worst case).
struct DyadicDigits {
    std::vector<bool> digits;

    std::uint64_t count() const { return digits.size(); }
    Real tail_bound() const {
        return Real::pow2(-static_cast<long>(digits.size()), Approx::kBoundPrec);
    }
    // "0.Q0Q1..." form used in CLI output.
    std::string str() const;
};

// Partial parities P_0..P_{count-1}, P_m being the product of a_0..a_m.
std::vector<int> parities(const SignSequence& s, std::uint64_t count);

// Binary digits Q_m = (1 + P_m) / 2 for m < count.
DyadicDigits q_digits(const SignSequence& s, std::uint64_t count);

// The dyadic prefix sum of Q at the given working precision. The sum is
// exactly representable, so `precision` must leave headroom (count + 4 bits);
// anything less is refused rather than rounded.
Approx q_value(const DyadicDigits& d, mpfr_prec_t precision);

// a = 4Q - 2, exact apart from the scaled input bound.
Approx a_value(const Approx& q);

// Exact rational Q for an eventually periodic sequence. The parity tail of a
// periodic sign block repeats with the block length when the block parity is
// +1 and with twice the block length when it is -1, so Q is always rational.
Rational exact_q(const SignSequence& s);

// Digit-count default: max(64, output precision in bits + 8). Each digit
// contributes one bit of Q.
std::uint64_t default_digit_count(std::uint64_t output_bits);

} // namespace rad

#endif
