#ifndef SKIPFREE_MONTECARLO_HPP
#define SKIPFREE_MONTECARLO_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "skipfree/distributions.hpp"

namespace skipfree {

// xoshiro256++, seeded per trial through a splitmix64 chain so results are
// a function of (seed, trial index) alone -- independent of how trials are
// split across streams or threads.
class Xoshiro256pp {
 public:
  static Xoshiro256pp for_trial(std::uint64_t seed, std::uint64_t trial);

  std::uint64_t next();
  double uniform01();  // 53-bit mantissa in [0, 1)

 private:
  std::uint64_t s_[4] = {1, 2, 3, 4};
};

// Inverse-CDF sampler over the stored PMF.  The truncation defect is
// folded onto the largest stored support point (bias bounded by the
// defect, <= 1e-12).
class IncrementSampler {
 public:
  explicit IncrementSampler(const IncrementDistribution& dist);
  int operator()(Xoshiro256pp& rng) const;

 private:
  int min_support_;
  std::vector<double> cdf_;
};

int sample_increment(const IncrementDistribution& dist, Xoshiro256pp& rng);

struct SimulationConfig {
  long long trials = 100000;
  long long horizon = 10000;
  std::uint64_t seed = 0;
  int streams = 1;
};

enum class Quantity {
  rho,
  rho_odd,
  sigma,
  tau,
  tau_odd,
  p_even,
  p_odd,
  p_both,
};

std::string quantity_name(Quantity q);

// A trajectory whose defining event was still undecided when the horizon
// cut it off is censored for that quantity.  For hit-type quantities the
// truth lies in [estimate, estimate + censored_fraction]; sigma is
// survival-type, where it lies in [estimate - censored_fraction, estimate].
struct SimulationEstimate {
  Quantity quantity = Quantity::rho;
  long long k = 0;  // only meaningful for the p_* quantities
  double estimate = 0.0;
  double std_error = 0.0;
  double ci95_lo = 0.0;
  double ci95_hi = 0.0;
  double ci95_lo_clipped = 0.0;  // Wald interval clipped to [0,1]
  double ci95_hi_clipped = 0.0;
  double censored_fraction = 0.0;
  long long denominator = 0;  // conditioning subsample size for SE
};

// One pass of seeded trajectories from 0 estimating all five walk
// probabilities plus the parity events E/O for a start at k.  Determinism
// contract: identical (dist, k, cfg) give bit-identical estimates, for any
// number of streams and regardless of physical thread scheduling.
std::vector<SimulationEstimate> simulate_summary(
    const IncrementDistribution& dist, long long k,
    const SimulationConfig& cfg);

}  // namespace skipfree

#endif
