// Copyright 2026 the rkr authors
// SPDX-License-Identifier: Apache-2.0
#include "rkr/poisson.hpp"

#include <algorithm>
#include <cmath>

#include "rkr/error.hpp"
#include "rkr/numeric.hpp"
#include "rkr/records.hpp"

namespace rkr {

double xi_mean(const Pmf& pmf, int i0, int k, int j) {
  return window_event_prob(pmf, RecordQuery{k, j, i0, std::nullopt});
}

double pair_moment_formula(const Pmf& pmf, int i0, int k, int j, int m) {
  if (m < 1) throw_error(errc::bad_param, "gap m must be >= 1");
  const double mu = xi_mean(pmf, i0, k, j);
  if (m > k) return mu * mu;  // disjoint windows are independent
  const double S = pmf.tail(i0);
  const double oneMinusS = pmf.cdf(i0 - 1);
  const double p2 = pmf.p(i0) * pmf.p(i0);
  KahanSum sum;
  for (int t = std::max(0, j - m - 1); t <= std::min(k - m, j - 1); ++t) {
    const double coef = binom(m, j - t) * binom(m - 1, j - t - 1) * binom(k - m, t);
    if (coef == 0.0) continue;  // exponents are nonnegative iff coef is nonzero
    sum.add(coef * ipow(S, 2 * j - t - 1) * ipow(oneMinusS, m - 2 * j + t + k) * p2);
  }
  return sum.value();
}

double lambda_param(const Pmf& pmf, int i0, int k, int j, long long n) {
  if (n < 1) throw_error(errc::bad_param, "n must be >= 1");
  return static_cast<double>(n) * xi_mean(pmf, i0, k, j);
}

double stein_chen_bound(const Pmf& pmf, int i0, int k, int j, long long n,
                        BoundVariant variant) {
  if (n < 1) throw_error(errc::bad_param, "n must be >= 1");
  const double p = xi_mean(pmf, i0, k, j);
  const double lambda = static_cast<double>(n) * p;
  const double factor = lambda > 0.0 ? std::min(3.0, 1.0 / lambda) : 3.0;
  KahanSum phi_sum;
  for (int m = 1; m <= k; ++m) phi_sum.add(pair_moment_formula(pmf, i0, k, j, m));
  const double inner = variant == BoundVariant::paper
                           ? phi_sum.value() + (k + 1) * p * p
                           : 2.0 * phi_sum.value() + (2 * k + 1) * p * p;
  return static_cast<double>(n) * factor * inner;
}

CountDistribution poisson_pmf(double lambda, long long w_max) {
  if (!(lambda >= 0.0)) throw_error(errc::bad_param, "lambda must be >= 0");
  if (w_max < 0) throw_error(errc::bad_param, "w_max must be >= 0");
  CountDistribution dist;
  dist.source = CountSource::poisson;
  dist.lambda = lambda;
  dist.n = 0;
  KahanSum total;
  double mass = std::exp(-lambda);
  for (long long w = 0; w <= w_max; ++w) {
    dist.masses[w] = mass;
    total.add(mass);
    mass *= lambda / static_cast<double>(w + 1);
  }
  dist.overflow = std::max(0.0, 1.0 - total.value());
  return dist;
}

BoundReport bound_report(const Pmf& pmf, int i0, int k, int j, long long n) {
  BoundReport report;
  report.p = xi_mean(pmf, i0, k, j);
  report.lambda = lambda_param(pmf, i0, k, j, n);
  report.phi.reserve(static_cast<std::size_t>(k));
  for (int m = 1; m <= k; ++m) report.phi.push_back(pair_moment_formula(pmf, i0, k, j, m));
  report.bound_paper = stein_chen_bound(pmf, i0, k, j, n, BoundVariant::paper);
  report.bound_conservative = stein_chen_bound(pmf, i0, k, j, n, BoundVariant::conservative);
  return report;
}

}  // namespace rkr
