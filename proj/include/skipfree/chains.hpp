#ifndef SKIPFREE_CHAINS_HPP
#define SKIPFREE_CHAINS_HPP

#include <array>

#include "skipfree/analytic.hpp"
#include "skipfree/distributions.hpp"

namespace skipfree {

using Matrix2 = std::array<std::array<double, 2>, 2>;

// Canonical-form blocks of the 4-state parity chain: q is the
// transient-to-transient block, r transient-to-absorbing.  Rows of [q | r]
// are stochastic.
struct AbsorbingChainSpec {
  Matrix2 q{};
  Matrix2 r{};
};

// Absorption probabilities B = (I - Q)^{-1} R via the explicit 2x2
// adjugate solve.  Rows of B sum to 1 within 1e-10.
Matrix2 absorb(const AbsorbingChainSpec& spec);

// P(E | S_0 = k), P(O | S_0 = k) and P(E and O | S_0 = k) where E / O are
// the events of being negative at some even / odd time.
struct ParityProbabilities {
  long long start_k = 0;
  double p_even = 0.0;
  double p_odd = 0.0;
  double p_both = 0.0;
};

// Transient/absorbing blocks of the chain whose absorption entry b_12 is
// P(E | S_0 = k) (even_target) or P(O | S_0 = k).  Exposed for tests.
AbsorbingChainSpec parity_chain(const WalkSummary& summary, double p_minus1,
                                long long k, bool even_target);

// Evaluates the closed forms for the three parity probabilities and
// cross-checks them against the matrix-absorption route on every call;
// disagreement beyond 1e-10 throws ChainMismatch.
ParityProbabilities prob_negative_parity(const IncrementDistribution& dist,
                                         long long k,
                                         const WalkSummary& summary);

// Ruin probability of the walk with increments Y1 + Y2 (two i.i.d. copies
// of the given left-continuous law), started at k: the parity identity
// maps it to P(E | S_0 = k) of the component walk.
double separable_ruin(const IncrementDistribution& y, long long k);

}  // namespace skipfree

#endif
