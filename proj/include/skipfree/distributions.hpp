#ifndef SKIPFREE_DISTRIBUTIONS_HPP
#define SKIPFREE_DISTRIBUTIONS_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "skipfree/errors.hpp"

namespace skipfree {

// Increment law (p_k) of a walk on the integers, supported on
// {min_support, min_support+1, ...}.  min_support is -1 for left-continuous
// laws; -2 only appears as the output of convolve().  probabilities[i] is
// p_{min_support + i}.  Parametric families are truncated, never
// renormalized: the discarded tail is carried in truncation_defect so
// downstream error accounting stays honest.
struct IncrementDistribution {
  int min_support = -1;
  std::vector<double> probabilities;
  double truncation_defect = 0.0;
  std::string family_tag;  // finite | poisson_shifted(l) | convolution | ...

  // largest support point with stored mass (trailing entry is nonzero)
  int max_support() const {
    return min_support + static_cast<int>(probabilities.size()) - 1;
  }

  // p_k; zero outside the stored window
  double prob(int k) const {
    const long long i = static_cast<long long>(k) - min_support;
    if (i < 0 || i >= static_cast<long long>(probabilities.size())) return 0.0;
    return probabilities[static_cast<std::size_t>(i)];
  }

  double p_minus1() const { return prob(-1); }
};

// Offspring law of the associated branching process: the law of X + 1 on
// {0, 1, 2, ...}.
struct OffspringDistribution {
  std::vector<double> probabilities;
  double truncation_defect = 0.0;

  double mean() const;
  double pgf(double s) const;
};

// Builds a finite-support law from (k, p) pairs, k >= -1.  The input is
// renormalized exactly (divide by its sum) since hand-entered PMFs carry
// decimal rounding; truncation_defect of the result is 0.
IncrementDistribution make_finite(
    const std::vector<std::pair<int, double>>& entries);

// Law of Poi(lambda) - 1, truncated at the smallest k_max with tail mass
// below 1e-14; the tail goes into truncation_defect.
IncrementDistribution make_poisson_shifted(double lambda);

// g(x) = p_{-1}/x + sum_{k>=0} p_k x^k on [-1,0) u (0,1].  Terms are
// accumulated highest power first with compensated summation; the pole
// term is added last.
double pgf(const IncrementDistribution& dist, double x);

// E(X) over the stored support.  The truncation defect contributes
// nothing; its effect is bounded by defect * max_support.
double drift(const IncrementDistribution& dist);

// Index shift by one: the law of X + 1.
OffspringDistribution offspring_from_increment(const IncrementDistribution& dist);

// Exact discrete convolution of two left-continuous laws; the result has
// min_support -2 and carries the sum of the input defects.
IncrementDistribution convolve(const IncrementDistribution& a,
                               const IncrementDistribution& b);

// Throws invariant_violation if the canonical-form invariants are broken.
void validate(const IncrementDistribution& dist);

}  // namespace skipfree

#endif
