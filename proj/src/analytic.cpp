#include "skipfree/analytic.hpp"

#include <cmath>
#include <vector>

#include "skipfree/oracle.hpp"
#include "skipfree/rootfind.hpp"

namespace skipfree {

namespace {

constexpr double kResidualTol = 1e-12;
constexpr double kIdentityTol = 1e-10;
constexpr double kRhoRecheckTol = 1e-8;

void require_nontrivial(const IncrementDistribution& dist) {
  if (dist.min_support != -1)
    throw walk_error(errc::unsupported_support,
                     "analysis needs a left-continuous law");
  if (!(dist.p_minus1() > 0.0))
    throw walk_error(errc::monotone_walk, "p_{-1} = 0");
  if (!(drift(dist) > 0.0))
    throw walk_error(errc::non_positive_drift, "drift must be positive");
}

// x^n by squaring; n is capped upstream so no exponent-overflow games
double int_pow(double x, long long n) {
  double result = 1.0;
  double base = x;
  while (n > 0) {
    if (n & 1) result *= base;
    base *= base;
    n >>= 1;
  }
  return result;
}

}  // namespace

double solve_rho(const IncrementDistribution& dist) {
  require_nontrivial(dist);
  const auto g = [&](double x) { return pgf(dist, x); };

  // g(0+) = +inf, so halving finds a left endpoint with g > 1
  double a = 0.5;
  double ga = g(a);
  while (ga <= 1.0) {
    a *= 0.5;
    if (a < 1e-300)
      throw walk_error(errc::root_not_bracketed, "no left endpoint with g > 1");
    ga = g(a);
  }
  // g(1) = 1 - defect and g'(1) = drift > 0, so g < 1 just left of 1
  double delta = 1e-12;
  double b = 1.0 - delta;
  double gb = g(b);
  while (gb >= 1.0) {
    delta *= 4.0;
    if (delta > 0.5)
      throw walk_error(errc::root_not_bracketed,
                       "no right endpoint with g < 1 (drift too small?)");
    b = 1.0 - delta;
    gb = g(b);
  }
  if (a >= b)
    throw walk_error(errc::root_not_bracketed, "degenerate bracket");

  const double x = find_root_bracketed(
      [&](double t) { return g(t) - 1.0; }, a, b, ga - 1.0, gb - 1.0, 1e-15);
  if (std::fabs(g(x) - 1.0) > kResidualTol)
    throw walk_error(errc::root_not_bracketed,
                     "residual of g(x)=1 exceeds tolerance");
  return x;
}

std::pair<double, double> sigma_tau(const IncrementDistribution& dist,
                                    double rho) {
  require_nontrivial(dist);
  if (!(rho > 0.0 && rho < 1.0) ||
      std::fabs(pgf(dist, rho) - 1.0) > kRhoRecheckTol)
    throw walk_error(errc::inconsistent_rho,
                     "supplied rho does not solve g(rho)=1");
  const double p = dist.p_minus1();
  const double sigma = p * (1.0 - rho) / rho;
  const double tau = 1.0 - p / rho;
  if (std::fabs(p + tau + sigma - 1.0) > kIdentityTol)
    throw walk_error(errc::invariant_violation,
                     "p_{-1} + tau + sigma != 1");
  return {sigma, tau};
}

RhoOddResult solve_rho_odd(const IncrementDistribution& dist, double rho) {
  require_nontrivial(dist);
  if (!(rho > 0.0 && rho < 1.0) ||
      std::fabs(pgf(dist, rho) - 1.0) > kRhoRecheckTol)
    throw walk_error(errc::inconsistent_rho,
                     "supplied rho does not solve g(rho)=1");
  const auto f = [&](double y) { return pgf(dist, y) + 1.0; };

  // |g(-rho)| <= g(rho) = 1 gives f(-rho) >= 0; equality holds exactly for
  // purely odd support, in which case y* = -rho and rho_odd = 1.
  const double f_left = f(-rho);
  double y;
  bool at_boundary = false;
  if (f_left <= kResidualTol) {
    y = -rho;
    at_boundary = true;
  } else {
    // f -> -inf as y -> 0- because of the p_{-1}/y pole
    double eps = rho * 0.5;
    double fe = f(-eps);
    while (fe >= 0.0) {
      eps *= 0.5;
      if (eps < 1e-300)
        throw walk_error(errc::root_not_bracketed,
                         "no sign change for g(y) = -1 on (-rho, 0)");
      fe = f(-eps);
    }
    y = find_root_bracketed(f, -rho, -eps, f_left, fe, 1e-15);
  }

  // The root used above is proven to exist but not proven unique; scan for
  // further sign changes and let the series oracle arbitrate if any appear.
  constexpr int kGrid = 1024;
  std::vector<double> extra_roots;
  double prev_y = -rho;
  double prev_f = f_left;
  for (int i = 1; i <= kGrid; ++i) {
    const double yi = -rho * (1.0 - static_cast<double>(i) / (kGrid + 1));
    const double fi = f(yi);
    if ((prev_f > 0.0) != (fi > 0.0)) {
      const double r = find_root_bracketed(f, prev_y, yi, prev_f, fi, 1e-15);
      if (extra_roots.empty() || std::fabs(r - extra_roots.back()) > 1e-9)
        extra_roots.push_back(r);
    }
    prev_y = yi;
    prev_f = fi;
  }

  // the scan re-finds the chosen root; only genuinely distinct ones count
  std::vector<double> distinct;
  for (double r : extra_roots)
    if (std::fabs(r - y) > 1e-6 * rho) distinct.push_back(r);
  const bool multiple = !distinct.empty();

  if (multiple) {
    std::vector<double> candidates = distinct;
    candidates.insert(candidates.begin(), y);
    const SeriesBracket oracle = rho_odd_series(dist, 2000);
    double chosen = 0.0;
    int matches = 0;
    for (double cand : candidates) {
      const double cand_rho_odd = 0.5 * (1.0 - cand / rho);
      if (cand_rho_odd >= oracle.lower - 1e-6 &&
          cand_rho_odd <= oracle.upper + 1e-6) {
        chosen = cand;
        ++matches;
      }
    }
    if (matches != 1)
      throw walk_error(errc::ambiguous_root,
                       "several roots of g = -1 and the series oracle "
                       "cannot single one out");
    y = chosen;
  }

  if (std::fabs(f(y)) > kResidualTol && !at_boundary)
    throw walk_error(errc::root_not_bracketed,
                     "residual of g(y) = -1 exceeds tolerance");

  RhoOddResult result;
  result.y_star = y;
  result.rho_odd = std::min(1.0, 0.5 * (1.0 - y / rho));
  result.multiple_roots = multiple;
  return result;
}

double tau_odd(const IncrementDistribution& dist, double rho, double tau,
               double rho_odd) {
  require_nontrivial(dist);
  if (!(tau > 0.0))
    throw walk_error(errc::degenerate_excursion,
                     "tau = 0: no positive excursions");
  if (!(rho_odd > 0.5))
    throw walk_error(errc::out_of_range, "rho_odd must exceed 1/2");
  const double value = dist.p_minus1() * (1.0 - rho_odd) /
                       (rho * tau * (2.0 * rho_odd - 1.0));
  if (value < -kIdentityTol || value > 1.0 + kIdentityTol)
    throw walk_error(errc::out_of_range,
                     "tau_odd outside [0,1]: upstream root error");
  return std::fmin(1.0, std::fmax(0.0, value));
}

double binomial_even_parity(long long n, double p) {
  return 0.5 * (1.0 + int_pow(1.0 - 2.0 * p, n));
}

ExtinctionResult extinction_probability(const OffspringDistribution& offspring) {
  int support_points = 0;
  for (double q : offspring.probabilities)
    if (q > 0.0) ++support_points;
  if (support_points + (offspring.truncation_defect > 0.0 ? 1 : 0) <= 1)
    throw walk_error(errc::deterministic_offspring,
                     "offspring law is a point mass");

  if (offspring.mean() <= 1.0) return {1.0, true};

  const double q0 = offspring.probabilities.empty() ? 0.0
                                                    : offspring.probabilities[0];
  if (q0 == 0.0) return {0.0, false};

  // smallest fixed point of f(s) = s; h(s) = f(s) - s has h(0) = q0 > 0
  // and h < 0 just left of 1 since h'(1) = mean - 1 > 0
  const auto h = [&](double s) { return offspring.pgf(s) - s; };
  double delta = 1e-12;
  double b = 1.0 - delta;
  double hb = h(b);
  while (hb >= 0.0) {
    delta *= 4.0;
    if (delta > 0.5)
      throw walk_error(errc::root_not_bracketed,
                       "no endpoint with f(s) < s");
    b = 1.0 - delta;
    hb = h(b);
  }
  const double root = find_root_bracketed(h, 0.0, b, q0, hb, 1e-15);
  return {root, false};
}

WalkSummary summarize(const IncrementDistribution& dist) {
  require_nontrivial(dist);
  WalkSummary s;
  s.rho = solve_rho(dist);
  const auto [sigma, tau] = sigma_tau(dist, s.rho);
  s.sigma = sigma;
  s.tau = tau;
  const RhoOddResult odd = solve_rho_odd(dist, s.rho);
  s.rho_odd = odd.rho_odd;
  s.y_star = odd.y_star;
  s.multiple_roots = odd.multiple_roots;
  s.tau_odd = tau > 0.0 ? tau_odd(dist, s.rho, tau, s.rho_odd) : 0.0;
  s.residual_rho = std::fabs(pgf(dist, s.rho) - 1.0);
  s.residual_y = std::fabs(pgf(dist, s.y_star) + 1.0);

  const double p = dist.p_minus1();
  if (std::fabs(p + s.tau + s.sigma - 1.0) > kIdentityTol)
    throw walk_error(errc::invariant_violation, "p_{-1}+tau+sigma != 1");
  if (!(s.rho > p && s.rho < 1.0))
    throw walk_error(errc::invariant_violation, "rho outside (p_{-1}, 1)");
  if (!(s.rho_odd > 0.5 && s.rho_odd <= 1.0))
    throw walk_error(errc::invariant_violation, "rho_odd outside (1/2, 1]");
  if (!(s.y_star >= -s.rho && s.y_star < 0.0))
    throw walk_error(errc::invariant_violation, "y_star outside [-rho, 0)");
  if (s.residual_rho > kIdentityTol || s.residual_y > kIdentityTol)
    throw walk_error(errc::invariant_violation, "root residual too large");
  return s;
}

}  // namespace skipfree
