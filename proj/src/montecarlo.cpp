#include "skipfree/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace skipfree {

namespace {

constexpr double kZ95 = 1.959963984540054;

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

}  // namespace

Xoshiro256pp Xoshiro256pp::for_trial(std::uint64_t seed, std::uint64_t trial) {
  // counter-based: avalanche the (seed, trial) pair before expanding, so
  // neighbouring trial indices do not yield shifted copies of one stream
  std::uint64_t state = seed ^ (trial * 0xD1342543DE82EF95ULL);
  splitmix64(state);
  Xoshiro256pp rng;
  for (auto& word : rng.s_) word = splitmix64(state);
  return rng;
}

std::uint64_t Xoshiro256pp::next() {
  const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double Xoshiro256pp::uniform01() {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

IncrementSampler::IncrementSampler(const IncrementDistribution& dist)
    : min_support_(dist.min_support) {
  validate(dist);
  cdf_.reserve(dist.probabilities.size());
  double acc = 0.0;
  for (double p : dist.probabilities) {
    acc += p;
    cdf_.push_back(acc);
  }
  cdf_.back() = 1.0;  // defect mass lands on the largest support point
}

int IncrementSampler::operator()(Xoshiro256pp& rng) const {
  const double u = rng.uniform01();
  // linear scan; supports here are short and front-loaded
  std::size_t i = 0;
  while (u >= cdf_[i] && i + 1 < cdf_.size()) ++i;
  return min_support_ + static_cast<int>(i);
}

int sample_increment(const IncrementDistribution& dist, Xoshiro256pp& rng) {
  return IncrementSampler(dist)(rng);
}

std::string quantity_name(Quantity q) {
  switch (q) {
    case Quantity::rho: return "rho";
    case Quantity::rho_odd: return "rho_odd";
    case Quantity::sigma: return "sigma";
    case Quantity::tau: return "tau";
    case Quantity::tau_odd: return "tau_odd";
    case Quantity::p_even: return "p_even";
    case Quantity::p_odd: return "p_odd";
    case Quantity::p_both: return "p_both";
  }
  return "?";
}

namespace {

// integer event counts; merging is exact, so stream splitting cannot
// change the estimates
struct Tally {
  long long trials = 0;
  long long hit = 0;          // T_{-1} finite within horizon
  long long hit_odd = 0;
  long long first_down = 0;   // X_1 = -1
  long long returned = 0;     // T_0^+ < T_{-1} within horizon
  long long returned_odd = 0;
  long long undecided = 0;    // neither: the sigma candidates
  long long e_true = 0;       // S_n < -k at some even n
  long long o_true = 0;
  long long both_true = 0;

  Tally& operator+=(const Tally& o) {
    trials += o.trials;
    hit += o.hit;
    hit_odd += o.hit_odd;
    first_down += o.first_down;
    returned += o.returned;
    returned_odd += o.returned_odd;
    undecided += o.undecided;
    e_true += o.e_true;
    o_true += o.o_true;
    both_true += o.both_true;
    return *this;
  }
};

// One walk from 0; the start-k walk is the same trajectory shifted, so
// E/O for start k are read off against the threshold S_n <= -k-1.
void run_trial(const IncrementSampler& sampler, Xoshiro256pp& rng,
               long long horizon, long long k, Tally& tally) {
  ++tally.trials;
  long long s = 0;
  bool hit = false, hit_is_odd = false;
  bool tri_decided = false, is_return = false, return_odd = false;
  bool e_done = false, o_done = false;
  const long long threshold = -k - 1;

  long long n = 0;
  while (n < horizon) {
    // Highest level at which any still-pending event can fire: a return
    // needs s == 0, a first hit s <= -1, the parity events s <= threshold
    // (<= -1).  Descending is skip-free, so reaching `target` takes at
    // least s - target steps; once that exceeds the remaining budget the
    // trial's tallies are already final and we can stop early without
    // changing any count, censored ones included.
    long long target;
    if (!tri_decided)
      target = 0;
    else if (!hit)
      target = -1;
    else
      target = threshold;
    if (s - target > horizon - n) break;
    if (s >= 2) {  // next step cannot reach level 0, no event can fire
      s += sampler(rng);
      ++n;
      continue;
    }
    s += sampler(rng);
    ++n;
    if (!hit && s < 0) {  // skip-free: first negative value is -1 exactly
      hit = true;
      hit_is_odd = (n & 1) != 0;
    }
    if (!tri_decided) {
      if (n == 1 && s == -1) {
        tri_decided = true;  // first step down
      } else if (s == 0) {
        tri_decided = true;
        is_return = true;
        return_odd = (n & 1) != 0;
      }
    }
    if (s <= threshold) {
      if ((n & 1) == 0) e_done = true;
      else o_done = true;
    }
    if (hit && tri_decided && e_done && o_done) break;
  }

  if (hit) {
    ++tally.hit;
    if (hit_is_odd) ++tally.hit_odd;
  }
  if (tri_decided) {
    if (is_return) {
      ++tally.returned;
      if (return_odd) ++tally.returned_odd;
    } else {
      ++tally.first_down;
    }
  } else {
    ++tally.undecided;
  }
  if (e_done) ++tally.e_true;
  if (o_done) ++tally.o_true;
  if (e_done && o_done) ++tally.both_true;
}

SimulationEstimate make_estimate(Quantity q, long long k, long long count,
                                 long long denom, long long censored,
                                 long long trials) {
  SimulationEstimate est;
  est.quantity = q;
  est.k = k;
  est.denominator = denom;
  est.estimate = denom > 0 ? static_cast<double>(count) / denom : 0.0;
  est.std_error =
      denom > 0 ? std::sqrt(est.estimate * (1.0 - est.estimate) / denom) : 0.0;
  est.ci95_lo = est.estimate - kZ95 * est.std_error;
  est.ci95_hi = est.estimate + kZ95 * est.std_error;
  est.ci95_lo_clipped = std::max(0.0, est.ci95_lo);
  est.ci95_hi_clipped = std::min(1.0, est.ci95_hi);
  est.censored_fraction =
      trials > 0 ? static_cast<double>(censored) / trials : 0.0;
  return est;
}

}  // namespace

std::vector<SimulationEstimate> simulate_summary(
    const IncrementDistribution& dist, long long k,
    const SimulationConfig& cfg) {
  if (cfg.trials < 1 || cfg.horizon < 1 || cfg.streams < 1)
    throw walk_error(errc::invalid_config,
                     "trials, horizon and streams must be positive");
  if (k < 0)
    throw walk_error(errc::invalid_config, "start state k must be >= 0");
  const IncrementSampler sampler(dist);

  const int streams = static_cast<int>(
      std::min<long long>(cfg.streams, cfg.trials));
  std::vector<Tally> partials(static_cast<std::size_t>(streams));
  const long long per = cfg.trials / streams;
  const long long rem = cfg.trials % streams;

  auto worker = [&](int stream) {
    const long long begin = stream * per + std::min<long long>(stream, rem);
    const long long count = per + (stream < rem ? 1 : 0);
    Tally& tally = partials[static_cast<std::size_t>(stream)];
    for (long long t = begin; t < begin + count; ++t) {
      Xoshiro256pp rng = Xoshiro256pp::for_trial(
          cfg.seed, static_cast<std::uint64_t>(t));
      run_trial(sampler, rng, cfg.horizon, k, tally);
    }
  };

  if (streams == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(streams));
    for (int stream = 0; stream < streams; ++stream)
      pool.emplace_back(worker, stream);
    for (auto& th : pool) th.join();
  }

  Tally total;  // merged in stream order
  for (const Tally& part : partials) total += part;

  const long long n = total.trials;
  std::vector<SimulationEstimate> out;
  out.push_back(make_estimate(Quantity::rho, 0, total.hit, n, n - total.hit, n));
  out.push_back(make_estimate(Quantity::rho_odd, 0, total.hit_odd, total.hit,
                              0, n));
  out.push_back(make_estimate(Quantity::sigma, 0, total.undecided, n,
                              total.undecided, n));
  out.push_back(make_estimate(Quantity::tau, 0, total.returned, n,
                              total.undecided, n));
  out.push_back(make_estimate(Quantity::tau_odd, 0, total.returned_odd,
                              total.returned, 0, n));
  out.push_back(make_estimate(Quantity::p_even, k, total.e_true, n,
                              n - total.e_true, n));
  out.push_back(make_estimate(Quantity::p_odd, k, total.o_true, n,
                              n - total.o_true, n));
  out.push_back(make_estimate(Quantity::p_both, k, total.both_true, n,
                              n - total.both_true, n));
  return out;
}

}  // namespace skipfree
