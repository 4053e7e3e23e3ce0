#include "skipfree/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "skipfree/analytic.hpp"

namespace skipfree {

namespace {

constexpr double kPruneTol = 1e-22;

struct Kahan {
  double sum = 0.0;
  double c = 0.0;
  void add(double v) {
    const double y = v - c;
    const double t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
};

// Sub-probability pmf evolved step by step; entries below kPruneTol at
// either end are dropped into `lost`.  Dropping can only lower every later
// point mass, so partial first-passage sums built from it stay lower bounds.
struct PrunedEvolution {
  long long lo = 0;
  std::vector<double> mass = {1.0};  // starts as a point mass at 0
  double lost = 0.0;

  void step(const IncrementDistribution& dist) {
    const long long new_lo = lo + dist.min_support;
    std::vector<double> next(mass.size() + dist.probabilities.size() - 1, 0.0);
    for (std::size_t i = 0; i < mass.size(); ++i) {
      const double m = mass[i];
      if (m == 0.0) continue;
      for (std::size_t j = 0; j < dist.probabilities.size(); ++j)
        next[i + j] += m * dist.probabilities[j];
    }
    lost += dist.truncation_defect;  // per-step parametric tail

    std::size_t first = 0;
    while (first + 1 < next.size() && next[first] < kPruneTol) {
      lost += next[first];
      ++first;
    }
    std::size_t last = next.size();
    while (last > first + 1 && next[last - 1] < kPruneTol) {
      lost += next[last - 1];
      --last;
    }
    mass.assign(next.begin() + static_cast<long long>(first),
                next.begin() + static_cast<long long>(last));
    lo = new_lo + static_cast<long long>(first);
  }

  double at(long long s) const {
    const long long i = s - lo;
    if (i < 0 || i >= static_cast<long long>(mass.size())) return 0.0;
    return mass[static_cast<std::size_t>(i)];
  }
};

// Geometric envelope for the series tail.  1{S_n = -1} <= x^{S_n + 1}
// pointwise for x in (0,1), so P(S_n = -1) <= x g(x)^n and the tail after
// N terms is at most x g_min^{N+1} / ((N+1)(1 - g_min)) with g_min the
// minimum of the convex g over (0,1).  Unlike a decay rate fitted to the
// computed terms, this rate is provable; sub-geometric prefactors only
// make the true tail smaller.  Collapses to 1 when the walk mixes too
// slowly for the rate to say anything (g_min ~ 1).
double tail_envelope(const IncrementDistribution& dist, int used_terms) {
  double a = 1e-9;
  double b = 1.0 - 1e-12;
  for (int iter = 0; iter < 200; ++iter) {
    const double m1 = a + (b - a) / 3.0;
    const double m2 = b - (b - a) / 3.0;
    if (pgf(dist, m1) <= pgf(dist, m2))
      b = m2;
    else
      a = m1;
  }
  const double x = 0.5 * (a + b);
  // the truncated-away parametric tail can only raise g by the defect
  const double g_min = pgf(dist, x) + dist.truncation_defect;
  if (g_min >= 1.0) return 1.0;
  const double n1 = static_cast<double>(used_terms) + 1.0;
  return std::min(1.0, x * std::pow(g_min, n1) / (n1 * (1.0 - g_min)));
}

void check_series_input(const IncrementDistribution& dist, int max_terms) {
  validate(dist);
  if (dist.min_support != -1)
    throw walk_error(errc::unsupported_support,
                     "series oracle needs a left-continuous law");
  if (max_terms < 1)
    throw walk_error(errc::invalid_parameter, "max_terms must be >= 1");
}

}  // namespace

LatticePmf walk_pmf(const IncrementDistribution& dist, int n,
                    long long window_lo, long long window_hi) {
  validate(dist);
  if (n < 0)
    throw walk_error(errc::invalid_parameter, "n must be non-negative");
  const long long need_lo = -static_cast<long long>(n);
  const long long need_hi =
      static_cast<long long>(n) * std::max(0, dist.max_support());
  if (window_lo > need_lo || window_hi < std::max(need_hi, need_lo))
    throw walk_error(errc::window_too_small,
                     "window must contain [-n, n*max_support]");

  LatticePmf pmf;
  pmf.offset = window_lo;
  pmf.masses.assign(static_cast<std::size_t>(window_hi - window_lo + 1), 0.0);
  pmf.masses[static_cast<std::size_t>(-window_lo)] = 1.0;

  for (int step = 0; step < n; ++step) {
    std::vector<double> next(pmf.masses.size(), 0.0);
    double outside = 0.0;
    for (std::size_t i = 0; i < pmf.masses.size(); ++i) {
      const double m = pmf.masses[i];
      if (m == 0.0) continue;
      const long long s = pmf.offset + static_cast<long long>(i);
      for (std::size_t j = 0; j < dist.probabilities.size(); ++j) {
        const long long t = s + dist.min_support + static_cast<long long>(j);
        if (t < window_lo || t > window_hi)
          outside += m * dist.probabilities[j];
        else
          next[static_cast<std::size_t>(t - window_lo)] +=
              m * dist.probabilities[j];
      }
    }
    pmf.defect += outside + dist.truncation_defect;
    pmf.masses = std::move(next);
  }
  return pmf;
}

double first_passage_pmf(const IncrementDistribution& dist, int n) {
  if (n < 1)
    throw walk_error(errc::invalid_parameter, "n must be positive");
  const long long hi =
      std::max<long long>(0, static_cast<long long>(n) * dist.max_support());
  const LatticePmf pmf = walk_pmf(dist, n, -static_cast<long long>(n), hi);
  return pmf.mass_at(-1) / static_cast<double>(n);
}

SeriesBracket rho_series(const IncrementDistribution& dist, int max_terms) {
  check_series_input(dist, max_terms);

  PrunedEvolution evo;
  Kahan partial;
  for (int n = 1; n <= max_terms; ++n) {
    evo.step(dist);
    partial.add(evo.at(-1) / static_cast<double>(n));
  }

  SeriesBracket bracket;
  bracket.terms_used = max_terms;
  bracket.lower = std::min(1.0, partial.sum);
  // each unit of pruned mass at time m adds at most 1/m' <= 1 per later
  // term; the harmonic factor keeps the bound valid term by term
  const double lost_bound =
      evo.lost * (1.0 + std::log(static_cast<double>(max_terms)));
  bracket.upper = std::min(
      1.0, partial.sum + tail_envelope(dist, max_terms) + lost_bound);
  if (bracket.upper < bracket.lower) bracket.upper = bracket.lower;
  return bracket;
}

SeriesBracket rho_odd_series(const IncrementDistribution& dist, int max_terms) {
  check_series_input(dist, max_terms);
  const double rho = solve_rho(dist);

  PrunedEvolution evo;
  Kahan numerator;
  for (int n = 1; n <= max_terms; ++n) {
    evo.step(dist);
    if (n % 2 == 1) numerator.add(evo.at(-1) / static_cast<double>(n));
  }

  const double lost_bound =
      evo.lost * (1.0 + std::log(static_cast<double>(max_terms)));
  SeriesBracket bracket;
  bracket.terms_used = max_terms;
  bracket.lower = std::min(1.0, numerator.sum / rho);
  bracket.upper = std::min(
      1.0, (numerator.sum + tail_envelope(dist, max_terms) + lost_bound) / rho);
  if (bracket.upper < bracket.lower) bracket.upper = bracket.lower;
  return bracket;
}

}  // namespace skipfree
