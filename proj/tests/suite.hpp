#ifndef SKIPFREE_TESTS_SUITE_HPP
#define SKIPFREE_TESTS_SUITE_HPP

#include <random>
#include <vector>

#include "skipfree/distributions.hpp"

namespace skipfree::testing {

// Random finite-support laws with p_{-1} in [0.05, 0.6], support size <= 8
// and positive drift; the shared stress population for identity checks.
inline std::vector<IncrementDistribution> random_suite(int count,
                                                       std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> size_dist(2, 8);
  std::uniform_int_distribution<int> point_dist(0, 8);
  std::uniform_real_distribution<double> weight_dist(0.05, 1.0);
  std::uniform_real_distribution<double> down_dist(0.05, 0.6);

  std::vector<IncrementDistribution> suite;
  while (static_cast<int>(suite.size()) < count) {
    const int size = size_dist(rng);
    std::vector<int> points;
    while (static_cast<int>(points.size()) < size - 1) {
      const int k = point_dist(rng);
      bool seen = false;
      for (int q : points) seen |= (q == k);
      if (!seen) points.push_back(k);
    }
    const double p_down = down_dist(rng);
    double total = 0.0;
    std::vector<double> weights(points.size());
    for (double& w : weights) {
      w = weight_dist(rng);
      total += w;
    }
    std::vector<std::pair<int, double>> entries{{-1, p_down}};
    for (std::size_t i = 0; i < points.size(); ++i)
      entries.emplace_back(points[i], weights[i] * (1.0 - p_down) / total);
    const IncrementDistribution dist = make_finite(entries);
    if (drift(dist) > 0.01) suite.push_back(dist);
  }
  return suite;
}

}  // namespace skipfree::testing

#endif
