#ifndef SKIPFREE_ANALYTIC_HPP
#define SKIPFREE_ANALYTIC_HPP

#include <utility>

#include "skipfree/distributions.hpp"

namespace skipfree {

// The five probabilities of a left-continuous walk with positive drift,
// started at 0:
//   rho     P(T_{-1} < infinity)           -- ever hits -1
//   sigma   P(S_n > 0 for all n >= 1)      -- stays strictly positive
//   tau     P(T_0^+ < T_{-1})              -- completed positive excursion
//   rho_odd P(T_{-1} odd | T_{-1} finite)
//   tau_odd P(T_0^+ odd | T_0^+ < T_{-1})
// y_star = rho*(1 - 2*rho_odd) is the negative argument where the
// generating function equals -1.
struct WalkSummary {
  double rho = 0.0;
  double sigma = 0.0;
  double tau = 0.0;
  double rho_odd = 0.0;
  double tau_odd = 0.0;
  double y_star = 0.0;
  double residual_rho = 0.0;   // |g(rho) - 1|
  double residual_y = 0.0;     // |g(y_star) + 1|
  bool multiple_roots = false; // g = -1 had several roots; oracle decided
};

// Unique solution of g(x) = 1 in (0,1); equals the hitting probability of
// state -1.  Bracketed root finding, residual checked at 1e-12.
double solve_rho(const IncrementDistribution& dist);

// (sigma, tau) by the closed forms sigma = p_{-1}(1-rho)/rho and
// tau = 1 - p_{-1}/rho.  The supplied rho is residual-rechecked.
std::pair<double, double> sigma_tau(const IncrementDistribution& dist,
                                    double rho);

struct RhoOddResult {
  double rho_odd = 0.0;
  double y_star = 0.0;
  bool multiple_roots = false;
};

// Solves g(y) = -1 on [-rho, 0); rho_odd = (1 - y/rho)/2.  The bracket is
// closed at -rho so walks with purely odd support hit rho_odd = 1 exactly.
// A 1024-point grid scan looks for additional sign changes; ambiguity is
// settled against the series oracle, never silently.
RhoOddResult solve_rho_odd(const IncrementDistribution& dist, double rho);

// tau_odd = p_{-1}(1 - rho_odd) / (rho * tau * (2*rho_odd - 1))
double tau_odd(const IncrementDistribution& dist, double rho, double tau,
               double rho_odd);

// P(Bin(n,p) is even) = (1 + (1-2p)^n) / 2
double binomial_even_parity(long long n, double p);

struct ExtinctionResult {
  double probability = 1.0;
  bool subcritical = false;  // mean <= 1: extinction is certain
};

// Smallest fixed point of the offspring generating function on [0,1].
ExtinctionResult extinction_probability(const OffspringDistribution& offspring);

// Composes the four computations above and checks every WalkSummary
// invariant before returning.
WalkSummary summarize(const IncrementDistribution& dist);

}  // namespace skipfree

#endif
