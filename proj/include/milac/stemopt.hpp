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

// Closed-form capacity-achieving MiLAC optimization.
//
// Transmitter: find a symmetric B (ports [N_S inputs, N_T antennas]) whose
// scattering matrix maps the inputs onto the antennas as Theta [I; 0] = [0; V],
// where V holds the N_S dominant right singular vectors of H. In real form,
// with R = Re{V}^T and J = Im{V}^T,
//   [0 -J; I R] B = Y0 [I -R; 0 -J].
// Receiver: ports [N_R antennas, N_S outputs], Theta [0; I] = [conj(U); 0],
//   [J 0; R I] B = Y0 [-R I; J 0],   R = Re{U}^T, J = Im{U}^T.
//
// Stem-connected solutions live on a center graph with 2N_S - 1 central
// ports; fully-connected solutions are unconstrained symmetric matrices.

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "milac/archgraph.hpp"
#include "milac/netcore.hpp"
#include "milac/symmetric_lineq.hpp"

namespace milac {

// Real and imaginary parts of a semi-unitary target T (N x N_S), transposed:
// R = Re{T}^T, J = Im{T}^T, both N_S x N. R1/J1 are the first N_S - 1
// columns, R2/J2 the rest.
struct RealTargetPair {
  Eigen::MatrixXd r;
  Eigen::MatrixXd j;

  static RealTargetPair from_target(const Eigen::MatrixXcd& target);

  int n_streams() const noexcept { return static_cast<int>(r.rows()); }
  int n_antennas() const noexcept { return static_cast<int>(r.cols()); }

  auto r1() const { return r.leftCols(n_streams() - 1); }
  auto r2() const { return r.rightCols(n_antennas() - n_streams() + 1); }
  auto j1() const { return j.leftCols(n_streams() - 1); }
  auto j2() const { return j.rightCols(n_antennas() - n_streams() + 1); }

  // ||R J^T - J R^T||_F and ||J J^T + R R^T - I||_F; both vanish for a
  // semi-unitary target.
  double commutation_residual() const;
  double gram_residual() const;
};

struct StemOptions {
  // [J1, j_k] and J1 are rejected when sigma_min < rank_tol * sigma_max.
  double rank_tol = 1e-10;
  // Relative tolerance of the commutator check inside the tall solver.
  double symmetry_tol = 1e-8;
  // Max |T^H T - I| accepted for the target.
  double semi_unitary_tol = 1e-10;
};

// Every intermediate matrix of the transmitter stem algorithm, in listing
// order. The canonical layout is assumed: central antennas 0 .. N_S-2.
struct TxStemSteps {
  RealTargetPair target;
  TallSvd j1_svd;             // SVD of J1 (empty when N_S = 1)
  Eigen::VectorXd b22_22;     // diagonal of B_{22,22}, N_T - N_S + 1
  Eigen::MatrixXd b22_12;     // (N_S-1) x (N_T-N_S+1)
  Eigen::MatrixXd b22_21;     // transpose of b22_12
  Eigen::MatrixXd b22_11;     // (N_S-1) x (N_S-1), symmetric
  Eigen::MatrixXd b22;        // N_T x N_T
  Eigen::MatrixXd b12;        // N_S x N_T
  Eigen::MatrixXd b21;        // N_T x N_S
  Eigen::MatrixXd b11;        // N_S x N_S, as computed (not symmetrized)

  Eigen::MatrixXd assembled() const;
};

// Receiver counterpart; B11 is the antenna block.
struct RxStemSteps {
  RealTargetPair target;
  TallSvd j1_svd;
  Eigen::VectorXd b11_22;
  Eigen::MatrixXd b11_12;
  Eigen::MatrixXd b11_21;
  Eigen::MatrixXd b11_11;
  Eigen::MatrixXd b11;        // N_R x N_R
  Eigen::MatrixXd b21;        // N_S x N_R
  Eigen::MatrixXd b12;        // N_R x N_S
  Eigen::MatrixXd b22;        // N_S x N_S, as computed (not symmetrized)

  Eigen::MatrixXd assembled() const;
};

// Throws ValidationError when the target is not semi-unitary or
// DimensionError when N < N_S, and DegenerateTarget when J1 or some
// [J1, j_k] is (near-)singular.
TxStemSteps tx_stem_steps(const Eigen::MatrixXcd& v_bar, double y0, const StemOptions& opts = {});
RxStemSteps rx_stem_steps(const Eigen::MatrixXcd& u_bar, double y0, const StemOptions& opts = {});

// Stem-connected transmitter MiLAC realizing F = V/2. The overloads taking
// central antennas (0-based, N_S - 1 of them) or a graph permute the antenna
// ports, run the canonical algorithm and permute back. A graph that is not a
// stem graph with every input port central is rejected (ValidationError).
SusceptanceMatrix optimize_tx_stem(const Eigen::MatrixXcd& v_bar, double y0,
                                   const StemOptions& opts = {});
SusceptanceMatrix optimize_tx_stem(const Eigen::MatrixXcd& v_bar, double y0,
                                   std::span<const int> central_antennas,
                                   const StemOptions& opts = {});
SusceptanceMatrix optimize_tx_stem(const Eigen::MatrixXcd& v_bar, double y0,
                                   const MilacGraph& graph, const StemOptions& opts = {});

// Stem-connected receiver MiLAC realizing G = U^H/2.
SusceptanceMatrix optimize_rx_stem(const Eigen::MatrixXcd& u_bar, double y0,
                                   const StemOptions& opts = {});
SusceptanceMatrix optimize_rx_stem(const Eigen::MatrixXcd& u_bar, double y0,
                                   std::span<const int> central_antennas,
                                   const StemOptions& opts = {});
SusceptanceMatrix optimize_rx_stem(const Eigen::MatrixXcd& u_bar, double y0,
                                   const MilacGraph& graph, const StemOptions& opts = {});

// Result of the phase-regularized wrappers. `target` is the (possibly
// column-rotated) singular-vector matrix actually realized; `phases` are the
// applied rotations (all zero when the first attempt succeeded).
struct RegularizedSolution {
  SusceptanceMatrix b;
  Eigen::MatrixXcd target;
  std::vector<double> phases;
  int attempts = 1;
};

inline constexpr int kMaxPhaseRetries = 3;

// Try the raw target first; on DegenerateTarget rotate column s by
// exp(j theta_s), theta_s drawn from `seed`, up to kMaxPhaseRetries times.
// Column phases leave the achievable rate unchanged.
RegularizedSolution optimize_tx_stem_regularized(const Eigen::MatrixXcd& v_bar, double y0,
                                                 std::uint64_t seed,
                                                 const StemOptions& opts = {});
RegularizedSolution optimize_rx_stem_regularized(const Eigen::MatrixXcd& u_bar, double y0,
                                                 std::uint64_t seed,
                                                 const StemOptions& opts = {});

// Fully-connected baselines: minimum-norm symmetric solution of the stacked
// real system through the general symmetric solver.
SusceptanceMatrix optimize_tx_fully(const Eigen::MatrixXcd& v_bar, double y0,
                                    const SymmetricSolveOptions& opts = {});
SusceptanceMatrix optimize_rx_fully(const Eigen::MatrixXcd& u_bar, double y0,
                                    const SymmetricSolveOptions& opts = {});

// Diagnostics of a candidate susceptance matrix against the capacity
// condition. Residuals are Frobenius norms.
struct VerificationReport {
  // (Y0 I - jB) E_in - (Y0 I + jB) T_out: the admittance-domain condition,
  // in siemens.
  double condition_residual = 0.0;
  // ||Theta E_in - T_out||, dimensionless. Infinite if Theta cannot be formed.
  double scattering_residual = 0.0;
  // The four block equations of the real feasibility problem, in the order
  // J B21 = -Y0 I, J B22 = Y0 R, B11 + R B21 = 0, B12 + R B22 = -Y0 J (tx) and
  // J B11 = -Y0 R, J B12 = Y0 I, R B11 + B21 = Y0 J, R B12 + B22 = 0 (rx).
  std::array<double, 4> case_residuals{};
  double b11_symmetry = 0.0;  // ||B11 - B11^T||
  double b22_symmetry = 0.0;  // ||B22 - B22^T||
  double b12_symmetry = 0.0;  // ||B12 - B21^T||
  bool mask_ok = false;

  double max_case_residual() const;
  double max_symmetry_residual() const;
  bool passed(double scattering_tol) const { return mask_ok && scattering_residual <= scattering_tol; }
};

// Against an explicit mask, or the canonical stem mask.
VerificationReport verify_tx(const Eigen::MatrixXd& b, const Eigen::MatrixXcd& v_bar, double y0,
                             const ArchitectureMask& mask);
VerificationReport verify_tx(const Eigen::MatrixXd& b, const Eigen::MatrixXcd& v_bar, double y0);
VerificationReport verify_rx(const Eigen::MatrixXd& b, const Eigen::MatrixXcd& u_bar, double y0,
                             const ArchitectureMask& mask);
VerificationReport verify_rx(const Eigen::MatrixXd& b, const Eigen::MatrixXcd& u_bar, double y0);

}  // namespace milac
