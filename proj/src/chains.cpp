#include "skipfree/chains.hpp"

#include <cmath>

namespace skipfree {

namespace {

constexpr double kRowTol = 1e-12;
constexpr double kCrossTol = 1e-10;
constexpr long long kMaxStart = 1000000;

double pow_int(double x, long long n) {
  double result = 1.0;
  double base = x;
  while (n > 0) {
    if (n & 1) result *= base;
    base *= base;
    n >>= 1;
  }
  return result;
}

void check_spec(const AbsorbingChainSpec& spec) {
  for (int i = 0; i < 2; ++i) {
    double row = 0.0;
    for (int j = 0; j < 2; ++j) {
      if (spec.q[i][j] < -kRowTol || spec.q[i][j] > 1.0 + kRowTol ||
          spec.r[i][j] < -kRowTol || spec.r[i][j] > 1.0 + kRowTol)
        throw walk_error(errc::invariant_violation,
                         "chain entry outside [0,1]");
      row += spec.q[i][j] + spec.r[i][j];
    }
    if (std::fabs(row - 1.0) > kRowTol)
      throw walk_error(errc::invariant_violation,
                       "chain row does not sum to 1");
  }
}

}  // namespace

Matrix2 absorb(const AbsorbingChainSpec& spec) {
  check_spec(spec);
  const double m00 = 1.0 - spec.q[0][0];
  const double m01 = -spec.q[0][1];
  const double m10 = -spec.q[1][0];
  const double m11 = 1.0 - spec.q[1][1];
  const double det = m00 * m11 - m01 * m10;
  if (std::fabs(det) < 1e-300)
    throw walk_error(errc::singular_system, "I - Q is singular");
  const double n00 = m11 / det;
  const double n01 = -m01 / det;
  const double n10 = -m10 / det;
  const double n11 = m00 / det;

  Matrix2 b;
  b[0][0] = n00 * spec.r[0][0] + n01 * spec.r[1][0];
  b[0][1] = n00 * spec.r[0][1] + n01 * spec.r[1][1];
  b[1][0] = n10 * spec.r[0][0] + n11 * spec.r[1][0];
  b[1][1] = n10 * spec.r[0][1] + n11 * spec.r[1][1];

  for (int i = 0; i < 2; ++i)
    if (std::fabs(b[i][0] + b[i][1] - 1.0) > kCrossTol)
      throw walk_error(errc::singular_system,
                       "absorption rows do not sum to 1");
  return b;
}

AbsorbingChainSpec parity_chain(const WalkSummary& summary, double p_minus1,
                                long long k, bool even_target) {
  // q_par = P(an independent-copy sum of k+1 hitting times is even)
  const double q_par = binomial_even_parity(k + 1, summary.rho_odd);
  const double target = even_target ? q_par : 1.0 - q_par;
  const double rho_pow = pow_int(summary.rho, k + 1);

  AbsorbingChainSpec spec;
  spec.q[0][0] = 0.0;
  spec.q[0][1] = rho_pow * (1.0 - target);
  spec.q[1][0] = 0.0;
  spec.q[1][1] = summary.tau * (1.0 - summary.tau_odd);
  spec.r[0][0] = 1.0 - rho_pow;
  spec.r[0][1] = rho_pow * target;
  spec.r[1][0] = summary.sigma;
  spec.r[1][1] = p_minus1 + summary.tau * summary.tau_odd;
  return spec;
}

ParityProbabilities prob_negative_parity(const IncrementDistribution& dist,
                                         long long k,
                                         const WalkSummary& summary) {
  if (k < 0 || k > kMaxStart)
    throw walk_error(errc::invalid_parameter,
                     "start state k must lie in [0, 1e6]");
  const double rho_pow = pow_int(summary.rho, k + 1);
  const double sign_pow = pow_int(1.0 - 2.0 * summary.rho_odd, k + 1);
  const double denom = 1.0 - summary.tau * (1.0 - summary.tau_odd);

  ParityProbabilities out;
  out.start_k = k;
  out.p_even =
      rho_pow * (1.0 - 0.5 * summary.sigma * (1.0 - sign_pow) / denom);
  out.p_odd =
      rho_pow * (1.0 - 0.5 * summary.sigma * (1.0 + sign_pow) / denom);
  out.p_both = rho_pow * (1.0 - summary.sigma / denom);

  // independent route through the absorbing chain
  const double p = dist.p_minus1();
  const double even_chain =
      absorb(parity_chain(summary, p, k, true))[0][1];
  const double odd_chain =
      absorb(parity_chain(summary, p, k, false))[0][1];
  const double both_chain = even_chain + odd_chain - rho_pow;
  if (std::fabs(even_chain - out.p_even) > kCrossTol ||
      std::fabs(odd_chain - out.p_odd) > kCrossTol ||
      std::fabs(both_chain - out.p_both) > kCrossTol)
    throw walk_error(errc::chain_mismatch,
                     "closed form and matrix absorption disagree");
  return out;
}

double separable_ruin(const IncrementDistribution& y, long long k) {
  const WalkSummary summary = summarize(y);
  return prob_negative_parity(y, k, summary).p_even;
}

}  // namespace skipfree
