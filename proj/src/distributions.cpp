#include "skipfree/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace skipfree {

namespace {

constexpr double kMassTol = 1e-12;
constexpr double kInputMassTol = 1e-9;
constexpr double kTailTol = 1e-14;

// Kahan accumulator
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

void strip_trailing_zeros(std::vector<double>& p) {
  while (p.size() > 1 && p.back() == 0.0) p.pop_back();
}

}  // namespace

double OffspringDistribution::mean() const {
  Kahan acc;
  for (std::size_t j = 0; j < probabilities.size(); ++j)
    acc.add(static_cast<double>(j) * probabilities[j]);
  return acc.sum;
}

double OffspringDistribution::pgf(double s) const {
  // Horner from the highest power; plain polynomial, no pole here.
  double acc = 0.0;
  for (std::size_t j = probabilities.size(); j-- > 0;)
    acc = acc * s + probabilities[j];
  return acc;
}

void validate(const IncrementDistribution& dist) {
  if (dist.min_support < -2 || dist.min_support > -1)
    throw walk_error(errc::invariant_violation, "min_support must be -1 or -2");
  if (dist.probabilities.empty())
    throw walk_error(errc::invariant_violation, "empty probability vector");
  Kahan total;
  for (double p : dist.probabilities) {
    if (!(p >= 0.0))
      throw walk_error(errc::invariant_violation, "negative probability entry");
    total.add(p);
  }
  if (dist.probabilities.back() <= 0.0 && dist.probabilities.size() > 1)
    throw walk_error(errc::invariant_violation, "trailing zero entry");
  if (!(dist.truncation_defect >= 0.0 && dist.truncation_defect < 1.0))
    throw walk_error(errc::invariant_violation, "truncation defect out of range");
  if (std::fabs(total.sum + dist.truncation_defect - 1.0) > kMassTol)
    throw walk_error(errc::invariant_violation, "mass plus defect not 1");
}

IncrementDistribution make_finite(
    const std::vector<std::pair<int, double>>& entries) {
  std::map<int, double> pmf;
  Kahan total;
  for (const auto& [k, p] : entries) {
    if (k < -1)
      throw walk_error(errc::unsupported_support,
                       "support point below -1: " + std::to_string(k));
    if (!(p >= 0.0))
      throw walk_error(errc::negative_mass,
                       "negative mass at k=" + std::to_string(k));
    if (!pmf.emplace(k, p).second)
      throw walk_error(errc::duplicate_support_point,
                       "duplicate support point k=" + std::to_string(k));
    total.add(p);
  }
  if (pmf.empty() || std::fabs(total.sum - 1.0) > kInputMassTol)
    throw walk_error(errc::mass_not_one,
                     "input mass " + std::to_string(total.sum));

  IncrementDistribution dist;
  dist.min_support = -1;
  dist.family_tag = "finite";
  const int kmax = pmf.rbegin()->first;
  dist.probabilities.assign(static_cast<std::size_t>(kmax + 2), 0.0);
  for (const auto& [k, p] : pmf)
    dist.probabilities[static_cast<std::size_t>(k + 1)] = p / total.sum;
  strip_trailing_zeros(dist.probabilities);
  dist.truncation_defect = 0.0;
  validate(dist);
  return dist;
}

IncrementDistribution make_poisson_shifted(double lambda) {
  if (!(lambda > 0.0))
    throw walk_error(errc::invalid_parameter, "lambda must be positive");
  IncrementDistribution dist;
  dist.min_support = -1;
  dist.family_tag = "poisson_shifted(" + std::to_string(lambda) + ")";

  // p_k = e^{-lambda} lambda^{k+1} / (k+1)!, k >= -1
  double term = std::exp(-lambda);  // j = k+1 = 0
  Kahan mass;
  for (int j = 0;; ++j) {
    dist.probabilities.push_back(term);
    mass.add(term);
    if (1.0 - mass.sum < kTailTol && j >= static_cast<int>(lambda)) break;
    if (j > 2000)
      throw walk_error(errc::invalid_parameter,
                       "lambda too large for tail tolerance");
    term *= lambda / (j + 1);
  }
  dist.truncation_defect = std::max(0.0, 1.0 - mass.sum);
  validate(dist);
  return dist;
}

double pgf(const IncrementDistribution& dist, double x) {
  if (dist.min_support < -1)
    throw walk_error(errc::unsupported_support,
                     "pgf requires a left-continuous law");
  if (x == 0.0 || std::fabs(x) > 1.0)
    throw walk_error(errc::domain_error,
                     "pgf argument must lie in [-1,0) u (0,1]");

  // Ascending powers, then compensated summation from the highest power
  // down so the small terms are absorbed before the O(1) ones; the pole
  // term p_{-1}/x enters last.
  const std::size_t n = dist.probabilities.size();
  std::vector<double> terms(n > 1 ? n - 1 : 0);
  double power = 1.0;
  for (std::size_t i = 1; i < n; ++i) {
    terms[i - 1] = dist.probabilities[i] * power;
    power *= x;
  }
  Kahan acc;
  for (std::size_t i = terms.size(); i-- > 0;) acc.add(terms[i]);
  acc.add(dist.probabilities[0] / x);
  return acc.sum;
}

double drift(const IncrementDistribution& dist) {
  Kahan acc;
  for (std::size_t i = 0; i < dist.probabilities.size(); ++i)
    acc.add(static_cast<double>(dist.min_support + static_cast<int>(i)) *
            dist.probabilities[i]);
  return acc.sum;
}

OffspringDistribution offspring_from_increment(
    const IncrementDistribution& dist) {
  if (dist.min_support != -1)
    throw walk_error(errc::unsupported_support,
                     "offspring law needs min_support -1");
  OffspringDistribution off;
  off.probabilities = dist.probabilities;
  off.truncation_defect = dist.truncation_defect;
  return off;
}

IncrementDistribution convolve(const IncrementDistribution& a,
                               const IncrementDistribution& b) {
  if (a.min_support != -1 || b.min_support != -1)
    throw walk_error(errc::unsupported_support,
                     "convolve accepts one level only (min_support -1)");
  IncrementDistribution out;
  out.min_support = -2;
  out.family_tag = "convolution";
  out.probabilities.assign(a.probabilities.size() + b.probabilities.size() - 1,
                           0.0);
  for (std::size_t i = 0; i < a.probabilities.size(); ++i) {
    if (a.probabilities[i] == 0.0) continue;
    for (std::size_t j = 0; j < b.probabilities.size(); ++j)
      out.probabilities[i + j] += a.probabilities[i] * b.probabilities[j];
  }
  strip_trailing_zeros(out.probabilities);
  // upper bound on the lost mass; recorded, not renormalized
  out.truncation_defect = a.truncation_defect + b.truncation_defect;
  // convolution rounding can push mass + defect slightly past 1
  Kahan total;
  for (double p : out.probabilities) total.add(p);
  if (total.sum + out.truncation_defect > 1.0)
    out.truncation_defect = std::max(0.0, 1.0 - total.sum);
  validate(out);
  return out;
}

}  // namespace skipfree
