#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "skipfree/distributions.hpp"
#include "suite.hpp"

using namespace skipfree;

namespace {

IncrementDistribution simple_walk(double p_up) {
  return make_finite({{-1, 1.0 - p_up}, {1, p_up}});
}

}  // namespace

TEST_CASE("make_finite builds canonical two-point laws") {
  const auto walk = simple_walk(0.7);
  CHECK(walk.min_support == -1);
  CHECK(walk.prob(-1) == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(walk.prob(1) == doctest::Approx(0.7).epsilon(1e-15));
  CHECK(walk.truncation_defect == 0.0);
  CHECK(walk.max_support() == 1);

  const auto skewed = make_finite({{-1, 0.3}, {2, 0.7}});
  CHECK(skewed.prob(2) == doctest::Approx(0.7));
  CHECK(skewed.prob(0) == 0.0);
  CHECK(skewed.prob(1) == 0.0);
}

TEST_CASE("make_finite renormalizes decimal rounding by the input sum") {
  // off by 5e-10: inside the 1e-9 input tolerance, renormalized away
  const auto walk = make_finite({{-1, 0.3}, {1, 0.7 + 5e-10}});
  CHECK(walk.prob(-1) == doctest::Approx(0.3 / (1.0 + 5e-10)).epsilon(1e-15));
  double total = 0.0;
  for (double p : walk.probabilities) total += p;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("make_finite validation") {
  CHECK_THROWS_WITH_AS(make_finite({{-1, 0.5}, {-1, 0.5}}),
                       doctest::Contains("DuplicateSupportPoint"), walk_error);
  CHECK_THROWS_WITH_AS(make_finite({{-1, -0.1}, {1, 1.1}}),
                       doctest::Contains("NegativeMass"), walk_error);
  CHECK_THROWS_WITH_AS(make_finite({{-1, 0.3}, {1, 0.5}}),
                       doctest::Contains("MassNotOne"), walk_error);
  CHECK_THROWS_WITH_AS(make_finite({{-2, 0.3}, {1, 0.7}}),
                       doctest::Contains("UnsupportedSupport"), walk_error);
}

TEST_CASE("shifted Poisson family") {
  const auto walk = make_poisson_shifted(1.5);
  CHECK(walk.prob(-1) == doctest::Approx(std::exp(-1.5)).epsilon(1e-14));
  CHECK(drift(walk) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(walk.truncation_defect >= 0.0);
  CHECK(walk.truncation_defect < 1e-13);

  const auto big = make_poisson_shifted(3.0);
  CHECK(big.prob(-1) == doctest::Approx(std::exp(-3.0)).epsilon(1e-14));
  CHECK(drift(big) == doctest::Approx(2.0).epsilon(1e-12));

  CHECK_THROWS_WITH_AS(make_poisson_shifted(0.0),
                       doctest::Contains("InvalidParameter"), walk_error);
  CHECK_THROWS_WITH_AS(make_poisson_shifted(-1.0),
                       doctest::Contains("InvalidParameter"), walk_error);
}

TEST_CASE("pgf values and domain") {
  const auto walk = simple_walk(0.7);
  CHECK(pgf(walk, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(pgf(walk, 3.0 / 7.0) == doctest::Approx(1.0).epsilon(1e-14));

  const auto poisson = make_poisson_shifted(1.5);
  CHECK(std::fabs(pgf(poisson, 0.417188) - 1.0) < 1e-5);

  CHECK_THROWS_WITH_AS(pgf(walk, 0.0), doctest::Contains("DomainError"),
                       walk_error);
  CHECK_THROWS_WITH_AS(pgf(walk, 1.5), doctest::Contains("DomainError"),
                       walk_error);
  CHECK_THROWS_WITH_AS(pgf(walk, -1.001), doctest::Contains("DomainError"),
                       walk_error);
  const auto convolved = convolve(walk, walk);
  CHECK_THROWS_WITH_AS(pgf(convolved, 0.5),
                       doctest::Contains("UnsupportedSupport"), walk_error);
}

TEST_CASE("drift over the stored support") {
  CHECK(drift(simple_walk(0.7)) == doctest::Approx(0.4).epsilon(1e-14));
  CHECK(drift(make_finite({{-1, 0.3}, {2, 0.7}})) ==
        doctest::Approx(1.1).epsilon(1e-14));
}

TEST_CASE("offspring law is the unit index shift") {
  const auto off = offspring_from_increment(simple_walk(0.7));
  REQUIRE(off.probabilities.size() == 3);
  CHECK(off.probabilities[0] == doctest::Approx(0.3));
  CHECK(off.probabilities[1] == 0.0);
  CHECK(off.probabilities[2] == doctest::Approx(0.7));

  const auto point = offspring_from_increment(make_finite({{-1, 1.0}}));
  REQUIRE(point.probabilities.size() == 1);
  CHECK(point.probabilities[0] == doctest::Approx(1.0));

  const auto poisson = make_poisson_shifted(1.5);
  const auto poi_off = offspring_from_increment(poisson);
  // Poi(1.5) pmf on {0, 1, ...}
  double expected = std::exp(-1.5);
  for (std::size_t j = 0; j < poi_off.probabilities.size(); ++j) {
    CHECK(poi_off.probabilities[j] == doctest::Approx(expected).epsilon(1e-12));
    expected *= 1.5 / static_cast<double>(j + 1);
  }
}

TEST_CASE("convolution of left-continuous laws") {
  const auto walk = simple_walk(0.7);
  const auto squared = convolve(walk, walk);
  CHECK(squared.min_support == -2);
  CHECK(squared.prob(-2) == doctest::Approx(0.09).epsilon(1e-15));
  CHECK(squared.prob(0) == doctest::Approx(0.42).epsilon(1e-15));
  CHECK(squared.prob(2) == doctest::Approx(0.49).epsilon(1e-15));
  CHECK(squared.prob(-1) == 0.0);

  // Poisson additivity: Poi(1.5)-1 twice = Poi(3)-2
  const auto poisson = make_poisson_shifted(1.5);
  const auto doubled = convolve(poisson, poisson);
  for (int k = -2; k <= doubled.max_support(); ++k) {
    const double direct = std::exp(-3.0) * std::pow(3.0, k + 2) /
                          std::tgamma(static_cast<double>(k + 3));
    CHECK(std::fabs(doubled.prob(k) - direct) < 1e-13);
  }

  const auto down = make_finite({{-1, 1.0}});
  const auto two_down = convolve(down, down);
  CHECK(two_down.min_support == -2);
  REQUIRE(two_down.probabilities.size() == 1);
  CHECK(two_down.probabilities[0] == doctest::Approx(1.0));

  CHECK_THROWS_AS(convolve(convolve(walk, walk), walk), walk_error);
}

TEST_CASE("distribution properties over random laws") {
  const auto suite = testing::random_suite(100, 20240817);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unit(0.01, 0.99);
  for (const auto& dist : suite) {
    double total = 0.0;
    for (double p : dist.probabilities) total += p;
    CHECK(std::fabs(total + dist.truncation_defect - 1.0) <= 1e-12);
    CHECK(std::fabs(pgf(dist, 1.0) - (1.0 - dist.truncation_defect)) <= 1e-12);

    double x = unit(rng);
    double y = unit(rng);
    if (x > y) std::swap(x, y);
    // convexity on (0,1)
    CHECK(pgf(dist, 0.5 * (x + y)) <=
          0.5 * (pgf(dist, x) + pgf(dist, y)) + 1e-12);
    // triangle inequality under sign flip
    CHECK(std::fabs(pgf(dist, -y)) <= pgf(dist, y) + 1e-12);
  }
  for (std::size_t i = 0; i + 1 < suite.size(); i += 2) {
    const auto conv = convolve(suite[i], suite[i + 1]);
    CHECK(std::fabs(drift(conv) - drift(suite[i]) - drift(suite[i + 1])) <=
          1e-12);
  }
}
