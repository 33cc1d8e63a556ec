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

#pragma once

// Channel generation, truncated SVD, water-filling and rate/capacity.

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace milac {

// Truncated SVD of a channel, H V = U diag(sigma) on the leading N_S modes.
// Singular values are nonincreasing (ties keep the decomposition's order).
// Each right singular vector is phase-normalized so its largest-magnitude
// entry (first one on ties) is real positive; the left vector carries the
// compensating phase.
struct ChannelRealization {
  Eigen::MatrixXcd h;      // N_R x N_T
  Eigen::MatrixXcd u_bar;  // N_R x N_S
  Eigen::VectorXd sigma;   // N_S
  Eigen::MatrixXcd v_bar;  // N_T x N_S

  int n_rx() const noexcept { return static_cast<int>(h.rows()); }
  int n_tx() const noexcept { return static_cast<int>(h.cols()); }
  int n_streams() const noexcept { return static_cast<int>(sigma.size()); }

  // lambda_s = sigma_s^2, the eigenvalues of H H^H.
  Eigen::VectorXd eigenvalues() const { return sigma.array().square().matrix(); }
};

struct LinkBudget {
  double pt = 1.0;      // transmit power
  double sigma2 = 1.0;  // noise power

  // P_T = 10^(snr_db/10), sigma^2 = 1.
  static LinkBudget from_snr_db(double snr_db);
  double snr() const { return pt / sigma2; }
};

struct PowerAllocation {
  std::vector<double> p;     // per-stream powers, sum 1
  double water_level = 0.0;  // mu in p_s = max(0, mu - 1/g_s)
};

// vec(H) ~ CN(0, I): independent entries with real and imaginary parts
// N(0, 1/2).
Eigen::MatrixXcd rayleigh_channel(int n_rx, int n_tx, std::mt19937_64& rng);
Eigen::MatrixXcd rayleigh_channel(int n_rx, int n_tx, std::uint64_t seed);

// Throws DimensionError unless 1 <= n_streams <= min(N_R, N_T).
ChannelRealization truncated_svd(const Eigen::MatrixXcd& h, int n_streams);

// Maximizes sum_s log2(1 + P_T p_s lambda_s / (4 sigma^2)) over the simplex
// with the exact active-set method. Throws ValidationError on nonpositive
// eigenvalues or link budget.
PowerAllocation water_filling(std::span<const double> lambda, const LinkBudget& link);

// Rate with inter-stream interference treated as noise. A stream whose
// combiner row is zero contributes no rate.
double achievable_rate(const Eigen::MatrixXcd& g, const Eigen::MatrixXcd& h,
                       const Eigen::MatrixXcd& f, std::span<const double> p,
                       const LinkBudget& link);

// C = sum_s log2(1 + P_T p_s lambda_s / (4 sigma^2)).
double capacity(std::span<const double> lambda, std::span<const double> p_star,
                const LinkBudget& link);

// Convenience: water-fill the realization's eigenvalues and return C.
double capacity(const ChannelRealization& ch, const LinkBudget& link);

// Neumaier-compensated running sum, for long Monte Carlo averages.
class CompensatedSum {
 public:
  void add(double x);
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace milac
