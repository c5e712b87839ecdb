// Copyright 2026 the rkr authors
// SPDX-License-Identifier: Apache-2.0
#include "rkr/records.hpp"

#include <algorithm>
#include <string>

#include "rkr/error.hpp"
#include "rkr/numeric.hpp"

namespace rkr {

namespace {

void check_query(const Pmf& pmf, const RecordQuery& q, bool need_i0, bool need_n) {
  if (q.k < 1) throw_error(errc::bad_param, "k must be >= 1");
  if (q.j < 0 || q.j > q.k)
    throw_error(errc::bad_param, "j must lie in 0..k, got j=" + std::to_string(q.j));
  if (need_i0 && !q.i0) throw_error(errc::bad_param, "query requires a target value i0");
  if (q.i0 && (*q.i0 < 1 || *q.i0 > pmf.M()))
    throw_error(errc::out_of_support, "i0=" + std::to_string(*q.i0) + " outside 1.." +
                                          std::to_string(pmf.M()));
  if (need_n && !q.n) throw_error(errc::bad_param, "query requires a horizon n");
  if (q.n && *q.n < q.k + 1)
    throw_error(errc::bad_param, "horizon n must be >= k+1");
}

}  // namespace

int rkr_level(const std::vector<int>& sequence, long long n, int k) {
  if (k < 1) throw_error(errc::bad_param, "k must be >= 1");
  if (n < k + 1 || n > static_cast<long long>(sequence.size()))
    throw_error(errc::index_out_of_range,
                "index n=" + std::to_string(n) + " outside k+1..len");
  const int x = sequence[static_cast<std::size_t>(n - 1)];
  int level = 0;
  for (int p = 1; p <= k; ++p)
    if (sequence[static_cast<std::size_t>(n - 1 - p)] >= x) ++level;
  return level;
}

EventSeries detect_events(const std::vector<int>& sequence, int k) {
  if (k < 1) throw_error(errc::bad_param, "k must be >= 1");
  const long long len = static_cast<long long>(sequence.size());
  if (len < k + 1)
    throw_error(errc::sequence_too_short,
                "need at least k+1=" + std::to_string(k + 1) + " values, got " +
                    std::to_string(len));
  EventSeries series;
  series.k = k;
  series.levels.reserve(static_cast<std::size_t>(len - k));
  for (long long n = k + 1; n <= len; ++n)
    series.levels.emplace_back(n, rkr_level(sequence, n, k));
  return series;
}

double window_event_prob(const Pmf& pmf, const RecordQuery& q) {
  check_query(pmf, q, /*need_i0=*/true, /*need_n=*/false);
  const int i = *q.i0;
  return binom(q.k, q.j) * ipow(pmf.tail(i), q.j) * ipow(pmf.cdf(i - 1), q.k - q.j) * pmf.p(i);
}

double window_nonevent_prob(const Pmf& pmf, const RecordQuery& q) {
  check_query(pmf, q, /*need_i0=*/true, /*need_n=*/false);
  const int i = *q.i0;
  const double pi = pmf.p(i);
  const double event_given_value =
      binom(q.k, q.j) * ipow(pmf.tail(i), q.j) * ipow(pmf.cdf(i - 1), q.k - q.j);
  return (1.0 - event_given_value) * pi + (1.0 - pi);
}

UnionBound first_n_union_bound(const Pmf& pmf, const RecordQuery& q) {
  check_query(pmf, q, /*need_i0=*/true, /*need_n=*/true);
  UnionBound b;
  b.raw = static_cast<double>(*q.n - q.k) * window_event_prob(pmf, q);
  b.capped = std::min(b.raw, 1.0);
  return b;
}

double successive_prob(const Pmf& pmf, const RecordQuery& q, Transition transition,
                       SuccessiveVariant variant) {
  check_query(pmf, q, /*need_i0=*/true, /*need_n=*/false);
  if (transition == Transition::up_to_j_plus_1 && q.j + 1 > q.k)
    throw_error(errc::level_overflow, "transition to level j+1=" + std::to_string(q.j + 1) +
                                          " exceeds window size k=" + std::to_string(q.k));
  const int i = *q.i0;
  const double pi = pmf.p(i);
  if (variant == SuccessiveVariant::paper)
    return (transition == Transition::stay_j ? pmf.tail(i) : pmf.cdf(i - 1)) * pi;
  const double frac = transition == Transition::stay_j
                          ? static_cast<double>(q.j) / q.k
                          : static_cast<double>(q.k - q.j) / q.k;
  return frac * pi;
}

double marginal_prob(const Pmf& pmf, int k, int j) {
  RecordQuery q{k, j, std::nullopt, std::nullopt};
  check_query(pmf, q, false, false);
  KahanSum sum;
  for (int i = 1; i <= pmf.M(); ++i) {
    q.i0 = i;
    sum.add(window_event_prob(pmf, q));
  }
  return sum.value();
}

std::vector<double> posterior(const Pmf& pmf, int k, int j) {
  const double marginal = marginal_prob(pmf, k, j);
  if (!(marginal > 0.0))
    throw_error(errc::zero_marginal, "conditioning event with k=" + std::to_string(k) +
                                         ", j=" + std::to_string(j) + " has probability 0");
  std::vector<double> q(static_cast<std::size_t>(pmf.M()));
  RecordQuery query{k, j, std::nullopt, std::nullopt};
  for (int i = 1; i <= pmf.M(); ++i) {
    query.i0 = i;
    q[i - 1] = window_event_prob(pmf, query) / marginal;
  }
  return q;
}

namespace {

// (num/den)^e with the posterior-weighted convention: exponent 0 gives 1,
// zero denominator gives 0 (such terms carry zero posterior mass).
double ratio_pow(double num, double den, int e) {
  if (e == 0) return 1.0;
  if (den == 0.0) return 0.0;
  return ipow(num / den, e);
}

}  // namespace

double prediction_prob(const Pmf& pmf, int k, int j, PredictionVariant variant) {
  const std::vector<double> q = posterior(pmf, k, j);
  const int M = pmf.M();
  KahanSum total;
  for (int i = 1; i <= M; ++i) {
    if (q[i - 1] == 0.0) continue;
    KahanSum inner;
    if (variant == PredictionVariant::paper)
      inner.add(pmf.tail(i) * pmf.p(i));
    else
      inner.add(static_cast<double>(j) / k * pmf.p(i));
    for (int m = i + 1; m <= M; ++m)
      inner.add(ratio_pow(pmf.tail(m), pmf.tail(i), j) * (static_cast<double>(k - j) / k) *
                pmf.p(m));
    for (int m = 1; m < i; ++m)
      inner.add(ratio_pow(pmf.cdf(m - 1), pmf.cdf(i - 1), k - j) *
                (static_cast<double>(j) / k) * pmf.p(m));
    total.add(q[i - 1] * inner.value());
  }
  return total.value();
}

}  // namespace rkr
