// Copyright 2026 the rkr authors
// SPDX-License-Identifier: Apache-2.0
#include "rkr/oracle.hpp"

#include <cstdlib>
#include <string>
#include <vector>

#include "rkr/error.hpp"
#include "rkr/numeric.hpp"

namespace rkr {

namespace {

std::uint64_t pow_saturating(std::uint64_t base, long long exponent) {
  std::uint64_t r = 1;
  for (long long i = 0; i < exponent; ++i) {
    if (base != 0 && r > UINT64_MAX / base) return UINT64_MAX;
    r *= base;
  }
  return r;
}

void check_budget(const Pmf& pmf, long long length, const EnumBudget& budget) {
  const std::uint64_t needed = pow_saturating(static_cast<std::uint64_t>(pmf.M()), length);
  if (needed > budget.max_states)
    throw_error(errc::budget_exceeded,
                "enumeration needs M^" + std::to_string(length) + " = " +
                    (needed == UINT64_MAX ? std::string(">2^64") : std::to_string(needed)) +
                    " states, budget " + std::to_string(budget.max_states) +
                    " (set RKR_MAX_STATES to raise)");
}

void check_levels(int k, int j) {
  if (k < 1) throw_error(errc::bad_param, "k must be >= 1");
  if (j < 0 || j > k) throw_error(errc::bad_param, "j must lie in 0..k");
}

void check_target(const Pmf& pmf, int i0) {
  if (i0 < 1 || i0 > pmf.M())
    throw_error(errc::out_of_support,
                "i0=" + std::to_string(i0) + " outside 1.." + std::to_string(pmf.M()));
}

// Exhaustive DFS over the first k window values, tracking cnt[v] = number of
// window entries >= v; the final value is folded analytically at depth k.
struct EventDfs {
  const std::vector<double>& probs;
  int M, k, j;
  std::optional<int> i0;
  std::vector<int> cnt;  // index 1..M
  KahanSum acc;

  void run(int depth, double weight) {
    if (depth == k) {
      if (i0) {
        if (cnt[*i0] == j) acc.add(weight * probs[*i0 - 1]);
      } else {
        for (int v = 1; v <= M; ++v)
          if (cnt[v] == j) acc.add(weight * probs[v - 1]);
      }
      return;
    }
    for (int v = 1; v <= M; ++v) {
      for (int u = 1; u <= v; ++u) ++cnt[u];
      run(depth + 1, weight * probs[v - 1]);
      for (int u = 1; u <= v; ++u) --cnt[u];
    }
  }
};

// Full enumeration of length-L tuples with a leaf callback.
template <typename Leaf>
void enum_tuples(const std::vector<double>& probs, int L, std::vector<int>& path, int depth,
                 double weight, Leaf&& leaf) {
  if (depth == L) {
    leaf(weight);
    return;
  }
  const int M = static_cast<int>(probs.size());
  for (int v = 1; v <= M; ++v) {
    path[depth] = v;
    enum_tuples(probs, L, path, depth + 1, weight * probs[v - 1], leaf);
  }
}

int level_at(const std::vector<int>& path, int pos, int k) {
  int level = 0;
  for (int p = 1; p <= k; ++p)
    if (path[pos - p] >= path[pos]) ++level;
  return level;
}

// DFS over a length-L sequence carrying the sliding count of entries >= i0 in
// the k positions before `depth`, plus the running event count W.
struct CountDfs {
  const std::vector<double>& probs;
  int M, k, j, i0;
  long long L;
  std::vector<int> path;
  std::vector<KahanSum> buckets;  // buckets[W]

  void run(long long depth, double weight, int wincount, long long events) {
    if (depth == L) {
      buckets[static_cast<std::size_t>(events)].add(weight);
      return;
    }
    for (int v = 1; v <= M; ++v) {
      const bool fired = depth >= k && v == i0 && wincount == j;
      int next = wincount + (v >= i0 ? 1 : 0);
      if (depth >= k && path[static_cast<std::size_t>(depth - k)] >= i0) --next;
      path[static_cast<std::size_t>(depth)] = v;
      run(depth + 1, weight * probs[v - 1], next, events + (fired ? 1 : 0));
    }
  }
};

struct NoEventDfs {
  const std::vector<double>& probs;
  int M, k, j, i0;
  long long L;
  std::vector<int> path;
  KahanSum acc;

  void run(long long depth, double weight, int wincount) {
    if (depth == L) {
      acc.add(weight);
      return;
    }
    for (int v = 1; v <= M; ++v) {
      if (depth >= k && v == i0 && wincount == j) continue;  // event fires
      int next = wincount + (v >= i0 ? 1 : 0);
      if (depth >= k && path[static_cast<std::size_t>(depth - k)] >= i0) --next;
      path[static_cast<std::size_t>(depth)] = v;
      run(depth + 1, weight * probs[v - 1], next);
    }
  }
};

// Pair-moment DFS: c1 counts window [0, k-1], c2 counts window [m, k+m-1].
// Subtrees are cut at the two target positions (k and k+m), where only the
// value i0 with the right window count contributes.
struct PairDfs {
  const std::vector<double>& probs;
  int M, k, j, i0, m;
  KahanSum acc;

  void run(int depth, double weight, int c1, int c2) {
    if (depth == k + m) {
      if (c2 == j) acc.add(weight * probs[i0 - 1]);
      return;
    }
    if (depth == k) {
      if (c1 != j) return;
      run(depth + 1, weight * probs[i0 - 1], c1, c2 + (k >= m ? 1 : 0));
      return;
    }
    for (int v = 1; v <= M; ++v) {
      const int hit = v >= i0 ? 1 : 0;
      run(depth + 1, weight * probs[v - 1], c1 + (depth < k ? hit : 0),
          c2 + (depth >= m && depth < m + k ? hit : 0));
    }
  }
};

struct FixedScanDfs {
  const std::vector<double>& probs;
  int M, k, m, s;
  long long n;
  std::vector<int> path;
  KahanSum acc;

  // wincount = hits among positions [max(0, depth-k), depth-1].
  void run(long long depth, double weight, int wincount) {
    if (depth == n) return;  // no window reached s; contributes 0
    for (int v = 1; v <= M; ++v) {
      const double w = weight * probs[v - 1];
      int wc = wincount + (v >= m ? 1 : 0);
      if (depth >= k && path[static_cast<std::size_t>(depth - k)] >= m) --wc;
      path[static_cast<std::size_t>(depth)] = v;
      if (depth >= k - 1 && wc >= s) {
        // Every extension of this prefix attains the tail event.
        acc.add(w);
        continue;
      }
      run(depth + 1, w, wc);
    }
  }
};

struct RandomScanDfs {
  const std::vector<double>& probs;
  int M, k, s;
  long long n;
  std::vector<int> path;
  KahanSum acc;

  void run(long long depth, double weight) {
    if (depth == n) return;
    for (int v = 1; v <= M; ++v) {
      const double w = weight * probs[v - 1];
      path[static_cast<std::size_t>(depth)] = v;
      if (depth >= k) {
        int level = 0;
        for (int p = 1; p <= k; ++p)
          if (path[static_cast<std::size_t>(depth - p)] >= v) ++level;
        if (level >= s) {
          acc.add(w);
          continue;
        }
      }
      run(depth + 1, w);
    }
  }
};

}  // namespace

EnumBudget EnumBudget::from_env() {
  EnumBudget budget;
  const char* raw = std::getenv("RKR_MAX_STATES");
  if (raw == nullptr || *raw == '\0') return budget;
  char* end = nullptr;
  const unsigned long long parsed = std::strtoull(raw, &end, 10);
  if (end == raw || *end != '\0' || parsed == 0)
    throw_error(errc::bad_param, std::string("RKR_MAX_STATES must be a positive integer, got \"") +
                                     raw + "\"");
  budget.max_states = parsed;
  return budget;
}

double exact_event_prob(const Pmf& pmf, int k, int j, std::optional<int> i0,
                        const EnumBudget& budget) {
  check_levels(k, j);
  if (i0) check_target(pmf, *i0);
  check_budget(pmf, k + 1, budget);
  EventDfs dfs{pmf.probs(), pmf.M(), k, j, i0,
               std::vector<int>(static_cast<std::size_t>(pmf.M()) + 1, 0), {}};
  dfs.run(0, 1.0);
  return dfs.acc.value();
}

double exact_conditional_next(const Pmf& pmf, int k, int j1, int j2, const EnumBudget& budget) {
  check_levels(k, j1);
  check_levels(k, j2);
  check_budget(pmf, k + 2, budget);
  const int L = k + 2;
  std::vector<int> path(static_cast<std::size_t>(L));
  KahanSum joint, conditioning;
  enum_tuples(pmf.probs(), L, path, 0, 1.0, [&](double weight) {
    if (level_at(path, k, k) != j2) return;
    conditioning.add(weight);
    if (level_at(path, k + 1, k) == j1) joint.add(weight);
  });
  if (!(conditioning.value() > 0.0))
    throw_error(errc::zero_conditioning_event,
                "P(level j2=" + std::to_string(j2) + ") = 0 for this pmf");
  return joint.value() / conditioning.value();
}

double exact_successive_prob(const Pmf& pmf, int i0, int k, int j, Transition transition,
                             const EnumBudget& budget) {
  check_levels(k, j);
  check_target(pmf, i0);
  const int jnext = transition == Transition::stay_j ? j : j + 1;
  if (jnext > k)
    throw_error(errc::level_overflow, "transition to level j+1=" + std::to_string(jnext) +
                                          " exceeds window size k=" + std::to_string(k));
  check_budget(pmf, k + 2, budget);
  const int L = k + 2;
  std::vector<int> path(static_cast<std::size_t>(L));
  KahanSum joint, conditioning;
  enum_tuples(pmf.probs(), L, path, 0, 1.0, [&](double weight) {
    if (path[static_cast<std::size_t>(k)] != i0 || level_at(path, k, k) != j) return;
    conditioning.add(weight);
    if (path[static_cast<std::size_t>(k + 1)] == i0 && level_at(path, k + 1, k) == jnext)
      joint.add(weight);
  });
  if (!(conditioning.value() > 0.0))
    throw_error(errc::zero_conditioning_event,
                "P(X_n = " + std::to_string(i0) + " at level j=" + std::to_string(j) +
                    ") = 0 for this pmf");
  return joint.value() / conditioning.value();
}

double exact_pair_moment(const Pmf& pmf, int i0, int k, int j, int m, const EnumBudget& budget) {
  check_levels(k, j);
  check_target(pmf, i0);
  if (m < 1) throw_error(errc::bad_param, "gap m must be >= 1");
  check_budget(pmf, static_cast<long long>(k) + m + 1, budget);
  PairDfs dfs{pmf.probs(), pmf.M(), k, j, i0, m, {}};
  dfs.run(0, 1.0, 0, 0);
  return dfs.acc.value();
}

CountDistribution exact_count_pmf(const Pmf& pmf, int i0, int k, int j, long long n,
                                  const EnumBudget& budget) {
  check_levels(k, j);
  check_target(pmf, i0);
  if (n < 1) throw_error(errc::bad_param, "window count n must be >= 1");
  check_budget(pmf, n + k, budget);
  CountDfs dfs{pmf.probs(),
               pmf.M(),
               k,
               j,
               i0,
               n + k,
               std::vector<int>(static_cast<std::size_t>(n + k)),
               std::vector<KahanSum>(static_cast<std::size_t>(n) + 1)};
  dfs.run(0, 1.0, 0, 0);
  CountDistribution dist;
  dist.source = CountSource::exact;
  dist.n = n;
  dist.lambda =
      static_cast<double>(n) * window_event_prob(pmf, RecordQuery{k, j, i0, std::nullopt});
  for (long long w = 0; w <= n; ++w)
    dist.masses[w] = dfs.buckets[static_cast<std::size_t>(w)].value();
  return dist;
}

double exact_no_event_prob(const Pmf& pmf, int i0, int k, int j, long long n,
                           const EnumBudget& budget) {
  check_levels(k, j);
  check_target(pmf, i0);
  if (n < 1) throw_error(errc::bad_param, "window count n must be >= 1");
  check_budget(pmf, n + k, budget);
  NoEventDfs dfs{pmf.probs(), pmf.M(), k,  j, i0, n + k,
                 std::vector<int>(static_cast<std::size_t>(n + k)),
                 {}};
  dfs.run(0, 1.0, 0);
  return dfs.acc.value();
}

double exact_scan_tail(const Pmf& pmf, const ScanTarget& target, int k, long long n, int s,
                       const EnumBudget& budget) {
  if (k < 1) throw_error(errc::bad_param, "k must be >= 1");
  const long long min_n = target.is_random ? k + 1 : k;
  if (n < min_n)
    throw_error(errc::bad_param, "horizon n=" + std::to_string(n) +
                                     " too short for a window of size k=" + std::to_string(k));
  if (!target.is_random && target.m < 1)
    throw_error(errc::bad_param, "fixed target value must be >= 1");
  if (s <= 0) return 1.0;
  if (s > k) return 0.0;
  check_budget(pmf, n, budget);
  if (target.is_random) {
    RandomScanDfs dfs{pmf.probs(), pmf.M(), k, s, n,
                      std::vector<int>(static_cast<std::size_t>(n)), {}};
    dfs.run(0, 1.0);
    return dfs.acc.value();
  }
  FixedScanDfs dfs{pmf.probs(), pmf.M(), k,  target.m, s, n,
                   std::vector<int>(static_cast<std::size_t>(n)),
                   {}};
  dfs.run(0, 1.0, 0);
  return dfs.acc.value();
}

double enumeration_total_weight(const Pmf& pmf, long long length, const EnumBudget& budget) {
  if (length < 0) throw_error(errc::bad_param, "length must be >= 0");
  check_budget(pmf, length, budget);
  std::vector<int> path(static_cast<std::size_t>(length));
  KahanSum acc;
  enum_tuples(pmf.probs(), static_cast<int>(length), path, 0, 1.0,
              [&](double weight) { acc.add(weight); });
  return acc.value();
}

}  // namespace rkr
