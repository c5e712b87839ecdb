// Copyright 2026 the rkr authors
// SPDX-License-Identifier: Apache-2.0
#include "rkr/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <thread>
#include <vector>

#include "rkr/error.hpp"
#include "rkr/records.hpp"

namespace rkr {

namespace {

// SplitMix64 finalizer; also used to key substreams.
std::uint64_t mix64(std::uint64_t z) noexcept {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ULL;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return z;
}

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

// Counter-based SplitMix64 substream, fully determined by (seed, stream id).
class Stream {
 public:
  Stream(std::uint64_t seed, std::uint64_t stream_id) noexcept
      : state_(mix64(seed ^ mix64(stream_id * kGolden + 0xD1B54A32D192ED03ULL))) {}

  std::uint64_t next() noexcept {
    state_ += kGolden;
    return mix64(state_);
  }

  double u01() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  int draw(const Pmf& pmf) noexcept { return pmf.sample_value(u01()); }

 private:
  std::uint64_t state_;
};

void check_levels(int k, int j) {
  if (k < 1) throw_error(errc::bad_param, "k must be >= 1");
  if (j < 0 || j > k) throw_error(errc::bad_param, "j must lie in 0..k");
}

void check_cfg(const SimConfig& cfg) {
  if (cfg.replications < 1) throw_error(errc::bad_param, "replications must be >= 1");
  if (cfg.workers < 1) throw_error(errc::bad_param, "workers must be >= 1");
}

// Runs body(rep, tally) over 0..reps-1, partitioned into contiguous blocks.
// Tallies are returned in block order; since every replication uses its own
// substream and tallies are integers, the merged result does not depend on
// the worker count.
template <typename Tally, typename Body>
std::vector<Tally> run_replications(long long reps, int workers, const Tally& init,
                                    const Body& body) {
  const int w = static_cast<int>(std::min<long long>(workers, reps));
  std::vector<Tally> tallies(static_cast<std::size_t>(w), init);
  if (w == 1) {
    for (long long r = 0; r < reps; ++r) body(r, tallies[0]);
    return tallies;
  }
  std::vector<std::thread> threads;
  threads.reserve(static_cast<std::size_t>(w));
  for (int b = 0; b < w; ++b) {
    const long long lo = reps * b / w;
    const long long hi = reps * (b + 1) / w;
    threads.emplace_back([&, b, lo, hi] {
      for (long long r = lo; r < hi; ++r) body(r, tallies[static_cast<std::size_t>(b)]);
    });
  }
  for (auto& t : threads) t.join();
  return tallies;
}

constexpr double kZ95 = 1.959963984540054;

// Wilson 95% interval around the binomial proportion hits/n_eff.
Estimate wilson_estimate(long long hits, long long n_eff, long long replications) {
  Estimate e;
  e.replications = replications;
  if (n_eff <= 0) return e;
  const double n = static_cast<double>(n_eff);
  const double phat = static_cast<double>(hits) / n;
  e.value = phat;
  e.std_error = std::sqrt(phat * (1.0 - phat) / n);
  const double z2 = kZ95 * kZ95;
  const double denom = 1.0 + z2 / n;
  const double center = (phat + z2 / (2.0 * n)) / denom;
  const double half = kZ95 * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) / denom;
  e.ci_low = std::max(0.0, center - half);
  e.ci_high = std::min(1.0, center + half);
  return e;
}

struct HitTally {
  long long hits = 0;
  std::vector<int> scratch;
};

}  // namespace

std::vector<int> simulate_sequence(const Pmf& pmf, long long length, std::uint64_t seed,
                                   std::uint64_t stream_id) {
  if (length < 1) throw_error(errc::bad_param, "length must be >= 1");
  Stream stream(seed, stream_id);
  std::vector<int> out(static_cast<std::size_t>(length));
  for (auto& v : out) v = stream.draw(pmf);
  return out;
}

Estimate estimate_event_prob(const Pmf& pmf, int k, int j, std::optional<int> i0,
                             const SimConfig& cfg) {
  check_levels(k, j);
  check_cfg(cfg);
  if (i0 && (*i0 < 1 || *i0 > pmf.M()))
    throw_error(errc::out_of_support, "i0 outside 1.." + std::to_string(pmf.M()));
  auto body = [&](long long rep, HitTally& tally) {
    Stream stream(cfg.seed, static_cast<std::uint64_t>(rep));
    tally.scratch.resize(static_cast<std::size_t>(k));
    for (int t = 0; t < k; ++t) tally.scratch[static_cast<std::size_t>(t)] = stream.draw(pmf);
    const int last = stream.draw(pmf);
    if (i0 && last != *i0) return;
    int level = 0;
    for (int t = 0; t < k; ++t)
      if (tally.scratch[static_cast<std::size_t>(t)] >= last) ++level;
    if (level == j) ++tally.hits;
  };
  const auto tallies = run_replications(cfg.replications, cfg.workers, HitTally{}, body);
  long long hits = 0;
  for (const auto& t : tallies) hits += t.hits;
  return wilson_estimate(hits, cfg.replications, cfg.replications);
}

Estimate estimate_conditional_next(const Pmf& pmf, int k, int j1, int j2, const SimConfig& cfg) {
  check_levels(k, j1);
  check_levels(k, j2);
  check_cfg(cfg);
  struct CondTally {
    long long conditioning = 0;
    long long joint = 0;
    std::vector<int> scratch;
  };
  auto body = [&](long long rep, CondTally& tally) {
    Stream stream(cfg.seed, static_cast<std::uint64_t>(rep));
    tally.scratch.resize(static_cast<std::size_t>(k) + 2);
    for (auto& v : tally.scratch) v = stream.draw(pmf);
    int level2 = 0;
    for (int p = 1; p <= k; ++p)
      if (tally.scratch[static_cast<std::size_t>(k - p)] >= tally.scratch[static_cast<std::size_t>(k)])
        ++level2;
    if (level2 != j2) return;
    ++tally.conditioning;
    int level1 = 0;
    for (int p = 1; p <= k; ++p)
      if (tally.scratch[static_cast<std::size_t>(k + 1 - p)] >=
          tally.scratch[static_cast<std::size_t>(k + 1)])
        ++level1;
    if (level1 == j1) ++tally.joint;
  };
  const auto tallies = run_replications(cfg.replications, cfg.workers, CondTally{}, body);
  long long conditioning = 0, joint = 0;
  for (const auto& t : tallies) {
    conditioning += t.conditioning;
    joint += t.joint;
  }
  if (conditioning == 0)
    throw_error(errc::no_conditioning_hits,
                "no replication hit the conditioning level j2=" + std::to_string(j2));
  return wilson_estimate(joint, conditioning, cfg.replications);
}

CountDistribution estimate_count_pmf(const Pmf& pmf, int i0, int k, int j, long long n,
                                     const SimConfig& cfg) {
  check_levels(k, j);
  check_cfg(cfg);
  if (i0 < 1 || i0 > pmf.M())
    throw_error(errc::out_of_support, "i0 outside 1.." + std::to_string(pmf.M()));
  if (n < 1) throw_error(errc::bad_param, "window count n must be >= 1");
  if (cfg.sequence_length != 0 && cfg.sequence_length != n + k)
    throw_error(errc::bad_param, "sequence_length must equal n+k when set");
  struct CountTally {
    std::vector<long long> buckets;
    std::vector<int> scratch;
  };
  CountTally init;
  init.buckets.assign(static_cast<std::size_t>(n) + 1, 0);
  auto body = [&](long long rep, CountTally& tally) {
    Stream stream(cfg.seed, static_cast<std::uint64_t>(rep));
    const long long len = n + k;
    tally.scratch.resize(static_cast<std::size_t>(len));
    for (auto& v : tally.scratch) v = stream.draw(pmf);
    long long events = 0;
    int wincount = 0;
    for (long long t = 0; t < len; ++t) {
      const int v = tally.scratch[static_cast<std::size_t>(t)];
      if (t >= k && v == i0 && wincount == j) ++events;
      wincount += v >= i0 ? 1 : 0;
      if (t >= k && tally.scratch[static_cast<std::size_t>(t - k)] >= i0) --wincount;
    }
    ++tally.buckets[static_cast<std::size_t>(events)];
  };
  const auto tallies = run_replications(cfg.replications, cfg.workers, init, body);
  std::vector<long long> buckets(static_cast<std::size_t>(n) + 1, 0);
  for (const auto& t : tallies)
    for (std::size_t w = 0; w < buckets.size(); ++w) buckets[w] += t.buckets[w];
  CountDistribution dist;
  dist.source = CountSource::empirical;
  dist.n = n;
  dist.lambda =
      static_cast<double>(n) * window_event_prob(pmf, RecordQuery{k, j, i0, std::nullopt});
  long long max_seen = 0;
  for (long long w = n; w >= 0; --w)
    if (buckets[static_cast<std::size_t>(w)] > 0) {
      max_seen = w;
      break;
    }
  for (long long w = 0; w <= max_seen; ++w)
    dist.masses[w] = static_cast<double>(buckets[static_cast<std::size_t>(w)]) /
                     static_cast<double>(cfg.replications);
  return dist;
}

Estimate estimate_scan_tail(const Pmf& pmf, const ScanTarget& target, int k, long long n, int s,
                            const SimConfig& cfg) {
  if (k < 1) throw_error(errc::bad_param, "k must be >= 1");
  check_cfg(cfg);
  const long long min_n = target.is_random ? k + 1 : k;
  if (n < min_n)
    throw_error(errc::bad_param, "horizon n=" + std::to_string(n) +
                                     " too short for a window of size k=" + std::to_string(k));
  if (!target.is_random && target.m < 1)
    throw_error(errc::bad_param, "fixed target value must be >= 1");
  auto body = [&](long long rep, HitTally& tally) {
    Stream stream(cfg.seed, static_cast<std::uint64_t>(rep));
    tally.scratch.resize(static_cast<std::size_t>(n));
    for (auto& v : tally.scratch) v = stream.draw(pmf);
    const ScanResult result = target.is_random ? random_target_scan(tally.scratch, k)
                                               : fixed_target_scan(tally.scratch, target.m, k);
    if (result.statistic >= s) ++tally.hits;
  };
  const auto tallies = run_replications(cfg.replications, cfg.workers, HitTally{}, body);
  long long hits = 0;
  for (const auto& t : tallies) hits += t.hits;
  return wilson_estimate(hits, cfg.replications, cfg.replications);
}

}  // namespace rkr
