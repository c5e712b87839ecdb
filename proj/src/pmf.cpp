// Copyright 2026 the rkr authors
// SPDX-License-Identifier: Apache-2.0
#include "rkr/pmf.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rkr/error.hpp"
#include "rkr/numeric.hpp"

namespace rkr {

namespace {
constexpr double kNormalizationTolerance = 1e-9;
}

Pmf::Pmf(std::vector<double> probs) : probs_(std::move(probs)) {
  const int M = static_cast<int>(probs_.size());
  tail_.assign(static_cast<std::size_t>(M) + 2, 0.0);
  for (int i = M; i >= 1; --i) tail_[i] = tail_[i + 1] + probs_[i - 1];
  // The rescale in from_probs puts the total within a few ulp of 1; clamping
  // pins the boundary identities tail(1) == 1 and cdf(M) == 1 exactly.
  tail_[1] = 1.0;
  for (int i = 2; i <= M; ++i) tail_[i] = std::min(tail_[i], 1.0);
  cdf_.assign(static_cast<std::size_t>(M) + 1, 0.0);
  for (int i = 0; i <= M; ++i) cdf_[i] = 1.0 - tail_[i + 1];
}

Pmf Pmf::from_probs(const std::vector<double>& probs) {
  if (probs.empty()) throw_error(errc::empty_support, "pmf requires at least one mass");
  KahanSum sum;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (!(probs[i] >= 0.0))
      throw_error(errc::negative_mass,
                  "p_" + std::to_string(i + 1) + " = " + std::to_string(probs[i]));
    sum.add(probs[i]);
  }
  const double total = sum.value();
  if (std::abs(total - 1.0) > kNormalizationTolerance)
    throw_error(errc::not_normalized, "masses sum to " + std::to_string(total));
  std::vector<double> scaled(probs);
  for (double& p : scaled) p /= total;
  return Pmf(std::move(scaled));
}

Pmf Pmf::uniform(int M) {
  if (M < 1) throw_error(errc::bad_param, "uniform family requires M >= 1");
  return Pmf(std::vector<double>(static_cast<std::size_t>(M), 1.0 / M));
}

Pmf Pmf::truncated_geometric(int M, double ratio) {
  if (M < 1) throw_error(errc::bad_param, "truncated_geometric family requires M >= 1");
  if (!(ratio > 0.0 && ratio < 1.0))
    throw_error(errc::bad_param, "truncated_geometric ratio must lie in (0,1)");
  std::vector<double> w(static_cast<std::size_t>(M));
  double total = 0.0;
  double cur = 1.0;
  for (int i = 0; i < M; ++i, cur *= ratio) {
    w[i] = cur;
    total += cur;
  }
  for (double& x : w) x /= total;
  return Pmf(std::move(w));
}

double Pmf::p(int i) const {
  if (i < 1) throw_error(errc::out_of_support, "value " + std::to_string(i) + " < 1");
  if (i > M()) return 0.0;
  return probs_[i - 1];
}

double Pmf::tail(int i) const {
  if (i < 1) throw_error(errc::out_of_support, "tail index " + std::to_string(i) + " < 1");
  if (i > M()) return 0.0;
  return tail_[i];
}

double Pmf::cdf(int i) const {
  if (i < 0) throw_error(errc::out_of_support, "cdf index " + std::to_string(i) + " < 0");
  if (i > M()) return 1.0;
  return cdf_[i];
}

int Pmf::sample_value(double u) const noexcept {
  // cdf_ is nondecreasing with cdf_[0] == 0 and cdf_[M] == 1.
  auto it = std::upper_bound(cdf_.begin() + 1, cdf_.end(), u);
  if (it == cdf_.end()) return M();
  return static_cast<int>(it - cdf_.begin());
}

}  // namespace rkr
