#ifndef SKIPFREE_ORACLE_HPP
#define SKIPFREE_ORACLE_HPP

#include <cstdint>
#include <vector>

#include "skipfree/distributions.hpp"

namespace skipfree {

// Law of the walk position S_n on an integer window; masses[i] is
// P(S_n = offset + i).  defect is the mass outside the tracked window.
struct LatticePmf {
  long long offset = 0;
  std::vector<double> masses;
  double defect = 0.0;

  double mass_at(long long s) const {
    const long long i = s - offset;
    if (i < 0 || i >= static_cast<long long>(masses.size())) return 0.0;
    return masses[static_cast<std::size_t>(i)];
  }
};

// Two-sided enclosure from a truncated series.  lower is a hard partial
// sum; upper adds a geometric tail envelope (see rho_series) plus the
// tracked truncation defect.
struct SeriesBracket {
  double lower = 0.0;
  double upper = 1.0;
  int terms_used = 0;
};

// Exact n-fold convolution of the increment law restricted to
// [window_lo, window_hi].  The window must contain [-n, n*max_support];
// defect then only tracks the parametric truncation defect of the input.
LatticePmf walk_pmf(const IncrementDistribution& dist, int n,
                    long long window_lo, long long window_hi);

// Hitting-time identity for skip-free walks:
// P(T_{-1} = n) = (1/n) P(S_n = -1).
double first_passage_pmf(const IncrementDistribution& dist, int n);

// Partial sums of the first-passage series sum_n P(T_{-1} = n) -> rho.
// lower is the partial sum through max_terms; upper adds a geometric tail
// envelope at the provable rate min g over (0,1) (capped at 1, and equal
// to 1 outright when the rate carries no information).
SeriesBracket rho_series(const IncrementDistribution& dist, int max_terms);

// Same series restricted to odd n, divided by the analytic rho.
SeriesBracket rho_odd_series(const IncrementDistribution& dist, int max_terms);

}  // namespace skipfree

#endif
