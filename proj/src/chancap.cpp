// SPDX-License-Identifier: Apache-2.0
//
// milac-kit: capacity-achieving MiLAC architectures for MIMO systems
// Copyright (C) 2026 milac-kit contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "milac/chancap.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "milac/error.hpp"

namespace milac {

namespace {

void require_link(const LinkBudget& link) {
  if (!(link.pt > 0.0) || !(link.sigma2 > 0.0)) {
    throw ValidationError("transmit power and noise power must be positive");
  }
}

double log2_1p(double x) { return std::log1p(x) / std::numbers::ln2; }

}  // namespace

LinkBudget LinkBudget::from_snr_db(double snr_db) { return {std::pow(10.0, snr_db / 10.0), 1.0}; }

Eigen::MatrixXcd rayleigh_channel(int n_rx, int n_tx, std::mt19937_64& rng) {
  if (n_rx < 1 || n_tx < 1) throw DimensionError("channel dimensions must be >= 1");
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  Eigen::MatrixXcd h(n_rx, n_tx);
  for (int i = 0; i < n_rx; ++i) {
    for (int j = 0; j < n_tx; ++j) {
      const double re = normal(rng);
      const double im = normal(rng);
      h(i, j) = {re, im};
    }
  }
  return h;
}

Eigen::MatrixXcd rayleigh_channel(int n_rx, int n_tx, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return rayleigh_channel(n_rx, n_tx, rng);
}

ChannelRealization truncated_svd(const Eigen::MatrixXcd& h, int n_streams) {
  const int max_streams = static_cast<int>(std::min(h.rows(), h.cols()));
  if (n_streams < 1 || n_streams > max_streams) {
    throw DimensionError("N_S = " + std::to_string(n_streams) + " must lie in [1, min(N_R, N_T) = " +
                         std::to_string(max_streams) + "]");
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(h, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& sv = svd.singularValues();

  std::vector<int> order(static_cast<std::size_t>(sv.size()));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return sv(a) > sv(b); });

  ChannelRealization out;
  out.h = h;
  out.u_bar.resize(h.rows(), n_streams);
  out.v_bar.resize(h.cols(), n_streams);
  out.sigma.resize(n_streams);
  for (int s = 0; s < n_streams; ++s) {
    const int k = order[static_cast<std::size_t>(s)];
    Eigen::VectorXcd v = svd.matrixV().col(k);
    Eigen::VectorXcd u = svd.matrixU().col(k);
    Eigen::Index peak = 0;
    for (Eigen::Index i = 1; i < v.size(); ++i)
      if (std::abs(v(i)) > std::abs(v(peak))) peak = i;
    const std::complex<double> phase = std::conj(v(peak) / std::abs(v(peak)));
    out.v_bar.col(s) = v * phase;
    out.u_bar.col(s) = u * phase;
    out.v_bar(peak, s) = std::abs(out.v_bar(peak, s));
    out.sigma(s) = sv(k);
  }
  return out;
}

PowerAllocation water_filling(std::span<const double> lambda, const LinkBudget& link) {
  require_link(link);
  if (lambda.empty()) throw ValidationError("water-filling needs at least one stream");
  const std::size_t n = lambda.size();
  std::vector<double> inv_gain(n);
  for (std::size_t s = 0; s < n; ++s) {
    if (!(lambda[s] > 0.0)) {
      throw ValidationError("eigenvalue " + std::to_string(s) + " is not positive");
    }
    inv_gain[s] = 4.0 * link.sigma2 / (link.pt * lambda[s]);
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return inv_gain[a] < inv_gain[b]; });

  // Largest support k whose waterline clears the k-th strongest stream.
  double mu = 0.0;
  for (std::size_t k = n; k >= 1; --k) {
    double acc = 1.0;
    for (std::size_t i = 0; i < k; ++i) acc += inv_gain[order[i]];
    mu = acc / static_cast<double>(k);
    if (mu > inv_gain[order[k - 1]]) break;
  }
  PowerAllocation out;
  out.water_level = mu;
  out.p.resize(n);
  for (std::size_t s = 0; s < n; ++s) out.p[s] = std::max(0.0, mu - inv_gain[s]);
  return out;
}

double achievable_rate(const Eigen::MatrixXcd& g, const Eigen::MatrixXcd& h,
                       const Eigen::MatrixXcd& f, std::span<const double> p,
                       const LinkBudget& link) {
  require_link(link);
  const auto ns = static_cast<Eigen::Index>(p.size());
  if (g.rows() != ns || f.cols() != ns || g.cols() != h.rows() || h.cols() != f.rows()) {
    throw DimensionError("achievable_rate: G is " + std::to_string(g.rows()) + "x" +
                         std::to_string(g.cols()) + ", H is " + std::to_string(h.rows()) + "x" +
                         std::to_string(h.cols()) + ", F is " + std::to_string(f.rows()) + "x" +
                         std::to_string(f.cols()) + ", p has " + std::to_string(p.size()));
  }
  double total = 0.0;
  for (double ps : p) {
    if (!(ps >= 0.0)) throw ValidationError("power allocation has a negative entry");
    total += ps;
  }
  if (std::abs(total - 1.0) > 1e-9) throw ValidationError("power allocation does not sum to 1");

  const Eigen::MatrixXcd ghf = g * h * f;
  double rate = 0.0;
  for (Eigen::Index s = 0; s < ns; ++s) {
    const double combiner_gain = g.row(s).squaredNorm();
    if (combiner_gain == 0.0) continue;
    double interference = 0.0;
    for (Eigen::Index t = 0; t < ns; ++t)
      if (t != s) interference += p[static_cast<std::size_t>(t)] * std::norm(ghf(s, t));
    const double signal = link.pt * p[static_cast<std::size_t>(s)] * std::norm(ghf(s, s));
    rate += log2_1p(signal / (link.pt * interference + combiner_gain * link.sigma2));
  }
  return rate;
}

double capacity(std::span<const double> lambda, std::span<const double> p_star,
                const LinkBudget& link) {
  require_link(link);
  if (lambda.size() != p_star.size()) throw DimensionError("capacity: lambda/p size mismatch");
  double c = 0.0;
  for (std::size_t s = 0; s < lambda.size(); ++s)
    c += log2_1p(link.pt * p_star[s] * lambda[s] / (4.0 * link.sigma2));
  return c;
}

double capacity(const ChannelRealization& ch, const LinkBudget& link) {
  const Eigen::VectorXd lambda = ch.eigenvalues();
  std::span<const double> l(lambda.data(), static_cast<std::size_t>(lambda.size()));
  const PowerAllocation pa = water_filling(l, link);
  return capacity(l, pa.p, link);
}

void CompensatedSum::add(double x) {
  const double t = sum_ + x;
  if (std::abs(sum_) >= std::abs(x)) {
    comp_ += (sum_ - t) + x;
  } else {
    comp_ += (x - t) + sum_;
  }
  sum_ = t;
}

}  // namespace milac
