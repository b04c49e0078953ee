#ifndef RADICAL_CHEB_HPP
#define RADICAL_CHEB_HPP

#include <cstdint>

#include "eval.hpp"
#include "real.hpp"
#include "seq.hpp"

namespace rad {

// T_{2^n}(t) by n-fold composition of T_2(t) = 2t^2 - 1, with interval
// error tracking. Composition stays stable on [-1,1] where coefficient
// expansion of T_{2^n} would not.
Approx cheb_pow2(const Real& t, const Real& t_bound, unsigned n,
                 const PrecisionContext& ctx);

struct ChebReport {
    std::uint64_t period_n;
    Approx x;       // limit of the periodic radical
    Real residual;  // T_{2^n}(x/2) - x/2 at the point estimate
    Real tolerance; // input bound amplified through the iteration + rounding
    bool pass;      // |residual| <= tolerance
};

// Verifies that the limit of a purely periodic radical is twice a fixed
// point of T_{2^n}, n being the described period length.
ChebReport fixed_point_check(const SignSequence& s, const PrecisionContext& ctx);

} // namespace rad

#endif
