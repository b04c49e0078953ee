#ifndef RADICAL_EVAL_HPP
#define RADICAL_EVAL_HPP

#include <cstdint>
#include <vector>

#include "parity.hpp"
#include "real.hpp"
#include "seq.hpp"

namespace rad {

// Finite-depth nested radical a_0 sqrt(2 + a_1 sqrt(2 + ... a_{n-1} sqrt 2)),
// evaluated innermost-out with interval arithmetic. Every intermediate value
// lies in (0,2) and every radicand in (0,4); a definitely negative radicand
// aborts via internal_error instead of being clamped.
Approx partial_radical(const SignSequence& s, std::uint64_t depth,
                       const PrecisionContext& ctx);

// Same quantity through the sine form 2 sin[(sum_{k<n} P_k 2^-k) pi/4].
// The dyadic sum is exact; the bound covers only trig rounding.
Approx partial_sine(const SignSequence& s, std::uint64_t depth,
                    const PrecisionContext& ctx);

// Rigorous limit-vs-partial gap pi * 2^-depth, rounded up.
Real tail_bound(std::uint64_t depth,
                mpfr_prec_t prec = Approx::kBoundPrec);

enum class LimitPath {
    Auto,   // ExactQ for eventually periodic input, Digits otherwise
    Digits, // dyadic prefix of Q over `digit_count` digits
    ExactQ, // exact rational Q (eventually periodic input only)
};

// Closed-form limit x = -2 cos(Q pi). The digit path carries the tail bound
// 2 pi 2^-L plus trig rounding; the exact path carries trig rounding only.
Approx limit_closed_form(const SignSequence& s, const PrecisionContext& ctx,
                         std::uint64_t digit_count,
                         LimitPath path = LimitPath::Auto);

struct ConvergeRow {
    std::uint64_t depth;
    Approx x_n;
    Real gap;    // |x - x_n|, rounded up
    Real tail;   // pi * 2^-depth
    bool within; // gap <= tail + both reported bounds
};

struct ConvergeTable {
    Approx limit;
    std::vector<ConvergeRow> rows;
    bool all_within;
};

ConvergeTable converge_table(const SignSequence& s, std::uint64_t max_depth,
                             std::uint64_t digit_count,
                             const PrecisionContext& ctx);

// Dyadic rationals in (0,1) have two binary expansions. The default is the
// trailing-ones form (0.0111... rather than 0.1000...), matching the
// Q = 0.111... = 1 convention; the trailing-zeros alternative is offered
// without any claim about which one is meant. Q=1 exists only as trailing
// ones, Q=0 only as all zeros.
enum class DyadicForm { TrailingOnes, TrailingZeros };

// Eventually periodic binary expansion of a rational in [0,1].
struct DigitDescription {
    std::vector<bool> prefix;
    std::vector<bool> period;

    bool digit_at(std::uint64_t m) const {
        if (m < prefix.size()) return prefix[m];
        return period[(m - prefix.size()) % period.size()];
    }
};

DigitDescription rational_binary_digits(const Rational& q,
                                        DyadicForm form = DyadicForm::TrailingOnes,
                                        std::uint64_t max_states = 1u << 20);

// Signs from a digit description via P_m = 2 Q_m - 1, a_0 = P_0 and
// a_m = P_{m-1} P_m (equivalently: a_m is +1 iff adjacent digits agree).
SignSequence signs_from_digits(const DigitDescription& d);

// Inverse map for exact rational Q in [0,1]; always an eventually periodic
// closed form.
SignSequence invert_from_q(const Rational& q,
                           DyadicForm form = DyadicForm::TrailingOnes,
                           std::uint64_t max_states = 1u << 20);

// Inverse map for an explicitly given digit prefix; yields the finite sign
// prefix they determine.
SignSequence invert_from_digit_prefix(const std::vector<bool>& digits);

struct InvertResult {
    SignSequence seq;
    bool exact;  // true when Q snapped to a rational consistent with x
    Rational q;  // meaningful only when exact
};

// Inverse map from a target value x in [-2,2] with error bound `x_bound`:
// Q = arccos(-x/2)/pi. If the simplest rational inside the rigorous Q
// enclosure has denominator <= snap_max_den, the exact closed form is
// returned; otherwise the first `terms` signs from the Q digit prefix.
InvertResult invert_from_value(const Real& x, const Real& x_bound,
                               std::uint64_t terms, const PrecisionContext& ctx,
                               unsigned long snap_max_den = 1000000);

// Smallest-denominator rational in [lo, hi] (Stern-Brocot descent).
Rational simplest_in_interval(const Rational& lo, const Rational& hi);

struct LemmaCheck {
    unsigned n;
    std::uint64_t tuple_count;
    Real max_deviation; // max |partial_radical - partial_sine| over all tuples
    Real threshold;     // 1e-12 for working precision < 64, else 2^-(wb - 2n)
    bool pass;
};

// Exhaustive check of the finite-depth identity over all 2^n sign tuples.
LemmaCheck lemma_check(unsigned n, const PrecisionContext& ctx);

} // namespace rad

#endif
