#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "skipfree/chains.hpp"
#include "skipfree/montecarlo.hpp"
#include "suite.hpp"

using namespace skipfree;

namespace {

IncrementDistribution simple_walk(double p_up) {
  return make_finite({{-1, 1.0 - p_up}, {1, p_up}});
}

// Neumann-series oracle for absorption probabilities:
// B = sum_{n >= 0} Q^n R, truncated once the remaining transient mass
// is negligible.
Matrix2 absorb_by_neumann(const AbsorbingChainSpec& spec, int terms) {
  Matrix2 b{};
  Matrix2 power{{{1.0, 0.0}, {0.0, 1.0}}};
  for (int n = 0; n < terms; ++n) {
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        b[i][j] += power[i][0] * spec.r[0][j] + power[i][1] * spec.r[1][j];
    Matrix2 next{};
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        next[i][j] =
            power[i][0] * spec.q[0][j] + power[i][1] * spec.q[1][j];
    power = next;
  }
  return b;
}

}  // namespace

TEST_CASE("absorb with no transient recurrence returns R") {
  AbsorbingChainSpec spec;
  spec.q = {{{0.0, 0.0}, {0.0, 0.0}}};
  spec.r = {{{0.25, 0.75}, {0.6, 0.4}}};
  const auto b = absorb(spec);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      CHECK(b[i][j] == doctest::Approx(spec.r[i][j]).epsilon(1e-15));
}

TEST_CASE("absorb rejects chains that never absorb") {
  AbsorbingChainSpec spec;
  spec.q = {{{0.0, 1.0}, {0.0, 1.0}}};
  spec.r = {{{0.0, 0.0}, {0.0, 0.0}}};
  CHECK_THROWS_WITH_AS(absorb(spec), doctest::Contains("SingularSystem"),
                       walk_error);
}

TEST_CASE("absorb validates the stochastic rows") {
  AbsorbingChainSpec spec;
  spec.q = {{{0.0, 0.4}, {0.0, 0.3}}};
  spec.r = {{{0.3, 0.2}, {0.3, 0.3}}};  // first row sums to 0.9
  CHECK_THROWS_AS(absorb(spec), walk_error);
}

TEST_CASE("absorb agrees with the Neumann series on random chains") {
  std::mt19937_64 rng(4242);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    AbsorbingChainSpec spec;
    for (int i = 0; i < 2; ++i) {
      // keep the first transient column empty, as in the parity chain,
      // and leave real absorbing mass in every row
      const double stay = 0.8 * unit(rng);
      const double a = unit(rng);
      spec.q[i][0] = 0.0;
      spec.q[i][1] = stay;
      spec.r[i][0] = (1.0 - stay) * a;
      spec.r[i][1] = (1.0 - stay) * (1.0 - a);
    }
    const auto direct = absorb(spec);
    const auto series = absorb_by_neumann(spec, 400);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        CHECK(std::fabs(direct[i][j] - series[i][j]) <= 1e-10);
  }
}

TEST_CASE("parity chain reproduces the worked shifted-Poisson ruin values") {
  const auto poisson = make_poisson_shifted(1.5);
  const auto summary = summarize(poisson);

  const auto spec = parity_chain(summary, poisson.p_minus1(), 0, true);
  const auto b = absorb(spec);
  CHECK(std::fabs(b[0][1] - 0.317) < 1e-3);

  const auto probs0 = prob_negative_parity(poisson, 0, summary);
  CHECK(std::fabs(probs0.p_even - 0.317) < 1e-3);
  const auto probs2 = prob_negative_parity(poisson, 2, summary);
  CHECK(std::fabs(probs2.p_even - 0.059) < 1e-3);
}

TEST_CASE("simple walk parity probabilities in closed form") {
  // p = 0.7: rho = 3/7 and all hitting times are odd, so
  // P(O | 0) = rho, P(E | 0) = P(E and O | 0) = rho^2
  const auto simple = simple_walk(0.7);
  const auto summary = summarize(simple);
  const auto probs = prob_negative_parity(simple, 0, summary);
  const double rho = 3.0 / 7.0;
  CHECK(probs.p_odd == doctest::Approx(rho).epsilon(1e-12));
  CHECK(probs.p_even == doctest::Approx(rho * rho).epsilon(1e-12));
  CHECK(probs.p_both == doctest::Approx(rho * rho).epsilon(1e-12));

  // start at k: first passage below -k needs k+1 down-crossings
  for (long long k = 0; k <= 4; ++k) {
    const auto pk = prob_negative_parity(simple, k, summary);
    const double hit = std::pow(rho, static_cast<double>(k + 1));
    CHECK(std::fabs(pk.p_even + pk.p_odd - pk.p_both - hit) <= 1e-12);
  }
}

TEST_CASE("parity identities over random laws") {
  const auto suite = testing::random_suite(60, 321);
  for (const auto& dist : suite) {
    const auto summary = summarize(dist);
    double prev_even = 1.0;
    double prev_odd = 1.0;
    for (long long k = 0; k <= 10; ++k) {
      const auto probs = prob_negative_parity(dist, k, summary);
      const double hit = std::pow(summary.rho, static_cast<double>(k + 1));
      // inclusion-exclusion against the plain hitting probability
      CHECK(std::fabs(probs.p_even + probs.p_odd - probs.p_both - hit) <=
            1e-10);
      CHECK(probs.p_both <= probs.p_even + 1e-12);
      CHECK(probs.p_both <= probs.p_odd + 1e-12);
      CHECK(probs.p_both >= -1e-12);
      CHECK(probs.p_even <= hit + 1e-12);
      CHECK(probs.p_odd <= hit + 1e-12);
      // going further from the boundary can only shrink the events
      CHECK(probs.p_even <= prev_even + 1e-12);
      CHECK(probs.p_odd <= prev_odd + 1e-12);
      prev_even = probs.p_even;
      prev_odd = probs.p_odd;
    }
  }
}

TEST_CASE("prob_negative_parity validates k") {
  const auto simple = simple_walk(0.7);
  const auto summary = summarize(simple);
  CHECK_THROWS_WITH_AS(prob_negative_parity(simple, -1, summary),
                       doctest::Contains("InvalidParameter"), walk_error);
  CHECK_THROWS_WITH_AS(prob_negative_parity(simple, 1000001, summary),
                       doctest::Contains("InvalidParameter"), walk_error);
}

TEST_CASE("separable ruin of the doubled simple walk") {
  // Y1 + Y2 with p = 0.7 ruins from 0 iff the component walk goes
  // negative at an even time: rho^2 = 9/49
  CHECK(separable_ruin(simple_walk(0.7), 0) ==
        doctest::Approx(9.0 / 49.0).epsilon(1e-12));

  const auto poisson = make_poisson_shifted(1.5);
  CHECK(std::fabs(separable_ruin(poisson, 0) - 0.317) < 1e-3);
  CHECK(std::fabs(separable_ruin(poisson, 2) - 0.059) < 1e-3);
}

TEST_CASE("separable ruin against direct simulation of the summed walk") {
  const auto y = make_finite({{-1, 0.35}, {0, 0.15}, {1, 0.3}, {3, 0.2}});
  const auto summed = convolve(y, y);
  const IncrementSampler sampler(summed);

  const long long trials = 200000;
  const long long horizon = 4000;
  for (long long k : {0LL, 2LL}) {
    long long ruined = 0;
    long long undecided = 0;
    for (long long t = 0; t < trials; ++t) {
      auto rng = Xoshiro256pp::for_trial(977 + static_cast<std::uint64_t>(k),
                                         static_cast<std::uint64_t>(t));
      long long s = k;
      bool hit = false;
      for (long long n = 0; n < horizon; ++n) {
        s += sampler(rng);
        if (s < 0) {
          hit = true;
          break;
        }
        // ruin probability from this height is below rho^s, i.e. far
        // beyond the Monte Carlo resolution -- safe to stop the trial
        if (s > 300) break;
      }
      if (hit)
        ++ruined;
      else if (s <= 300)  // horizon expired with the outcome still open
        ++undecided;
    }
    const double est = static_cast<double>(ruined) / trials;
    const double se = std::sqrt(est * (1.0 - est) / trials);
    const double slack =
        3.0 * se + static_cast<double>(undecided) / trials + 1e-12;
    CHECK(std::fabs(separable_ruin(y, k) - est) <= slack);
  }
}
