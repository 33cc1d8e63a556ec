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

// Microwave network algebra: admittance assembly, admittance <-> scattering
// conversion, precoder/combiner extraction and lossless/reciprocal checks.

#include <complex>
#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace milac {

using cplx = std::complex<double>;

inline constexpr double kDefaultY0 = 1.0 / 50.0;  // siemens

// Real symmetric susceptance matrix B (siemens). Only the upper triangle is
// stored, so B == B^T holds exactly.
class SusceptanceMatrix {
 public:
  SusceptanceMatrix() = default;
  explicit SusceptanceMatrix(int n);  // zero matrix

  // Accepts a numerically symmetric dense matrix and stores (B + B^T)/2.
  // Throws ValidationError if max|B - B^T| > tol * max(1, max|B|), or if B
  // is not square.
  static SusceptanceMatrix from_dense(const Eigen::MatrixXd& b, double tol = 1e-9);

  int size() const noexcept { return n_; }
  double operator()(int m, int n) const;
  void set(int m, int n, double value);

  Eigen::MatrixXd dense() const;

 private:
  std::size_t index(int m, int n) const;

  int n_ = 0;
  std::vector<double> upper_;
};

struct AdmittanceMatrix {
  Eigen::MatrixXcd y;
  double y0 = kDefaultY0;

  // Y = jB, the admittance of a lossless reciprocal network.
  static AdmittanceMatrix lossless(const SusceptanceMatrix& b, double y0 = kDefaultY0);
  static AdmittanceMatrix lossless(const Eigen::MatrixXd& b, double y0 = kDefaultY0);

  int size() const noexcept { return static_cast<int>(y.rows()); }
};

struct ScatteringMatrix {
  Eigen::MatrixXcd theta;
  int size() const noexcept { return static_cast<int>(theta.rows()); }
};

using Precoder = Eigen::MatrixXcd;  // N_T x N_S
using Combiner = Eigen::MatrixXcd;  // N_S x N_R

// Matrices whose estimated condition number exceeds this are rejected.
inline constexpr double kMaxCondition = 1e12;

// Port-level admittance matrix from component admittances. Keys are 0-based
// port pairs; (n, n) is the grounding admittance of port n and (m, n), m != n,
// the admittance between ports m and n. Only one orientation of each pair may
// be given. Missing components are open circuits.
//   [Y]_{m,n} = -Y_{m,n} (m != n),   [Y]_{n,n} = sum_k Y_{k,n}
AdmittanceMatrix assemble_admittance(const std::map<std::pair<int, int>, cplx>& components,
                                     int n_ports, double y0 = kDefaultY0);

// Theta = (Y0 I + Y)^{-1} (Y0 I - Y). Throws NumericalError with the
// estimated condition number of (Y0 I + Y) when it exceeds kMaxCondition.
ScatteringMatrix scattering_from_admittance(const AdmittanceMatrix& y);

// Inverse Cayley map, Y = Y0 (I + Theta)^{-1} (I - Theta).
AdmittanceMatrix admittance_from_scattering(const ScatteringMatrix& theta, double y0);

// F = [(Y/Y0 + I)^{-1}] rows N_S..N_S+N_T-1, columns 0..N_S-1.
Precoder precoder_from_admittance(const AdmittanceMatrix& y, int n_streams, int n_tx);
// F = 1/2 [Theta] rows N_S..N_S+N_T-1, columns 0..N_S-1 (lossless reciprocal only).
Precoder precoder_from_scattering(const ScatteringMatrix& theta, int n_streams, int n_tx);

// G = [(Y/Y0 + I)^{-1}] rows N_R..N_R+N_S-1, columns 0..N_R-1.
Combiner combiner_from_admittance(const AdmittanceMatrix& y, int n_streams, int n_rx);
Combiner combiner_from_scattering(const ScatteringMatrix& theta, int n_streams, int n_rx);

struct LosslessReciprocalReport {
  double unitarity_residual = 0.0;  // ||Theta^H Theta - I||_F
  double symmetry_residual = 0.0;   // ||Theta - Theta^T||_F

  bool ok(double tol) const { return unitarity_residual <= tol && symmetry_residual <= tol; }
};

LosslessReciprocalReport check_lossless_reciprocal(const ScatteringMatrix& theta);

}  // namespace milac
