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

// Symmetric solutions of the real linear matrix equation A X = C, X = X^T.
//
// With the SVD A = [U1 U2] [S 0; 0 0] [V1 V2]^T (rank R), a symmetric
// solution exists iff A C^T = C A^T and U2^T C = 0, and every solution is
//   X = V1 S^-1 U1^T C + V2 V2^T C^T U1 S^-1 V1^T + V2 G V2^T
// for a symmetric G. The solvers below return the G = 0 member, which is
// also the minimum Frobenius-norm symmetric solution.

#include <Eigen/Dense>

namespace milac {

struct SymmetricSolveOptions {
  // Singular values below rank_tol * sigma_max count as zero.
  double rank_tol = 1e-10;
  // Solvability residuals are compared against solvability_tol times
  // ||A||_F ||C||_F (commutator) and ||C||_F (range).
  double solvability_tol = 1e-9;
};

struct SymmetricSolution {
  Eigen::MatrixXd x;                 // N x N, exactly symmetric
  double commutator_residual = 0.0;  // ||A C^T - C A^T||_F
  double range_residual = 0.0;       // ||U2^T C||_F
  int rank = 0;
};

// General M x N case. Throws DimensionError if A and C differ in shape and
// NoSymmetricSolution when a solvability condition fails.
SymmetricSolution solve_symmetric_lineq_general(const Eigen::MatrixXd& a,
                                                const Eigen::MatrixXd& c,
                                                const SymmetricSolveOptions& opts = {});

// SVD pieces of a tall (N+1) x N matrix: A = U [S; 0] V^T, U = [U1, u2].
struct TallSvd {
  Eigen::MatrixXd u;      // (N+1) x (N+1)
  Eigen::VectorXd sigma;  // N, positive, nonincreasing
  Eigen::MatrixXd v;      // N x N
};

struct TallSymmetricSolution {
  Eigen::MatrixXd x;  // N x N, exactly symmetric
  TallSvd svd;
  double commutator_residual = 0.0;
};

// Full-column-rank (N+1) x N case: the unique solution X = V S^-1 U1^T C.
// Only the commutator condition needs checking. Throws DimensionError on
// shape mismatch, DegenerateTarget (column -1) when A is rank deficient and
// NoSymmetricSolution when A C^T != C A^T. N = 0 yields an empty X.
TallSymmetricSolution solve_symmetric_lineq_tall(const Eigen::MatrixXd& a,
                                                 const Eigen::MatrixXd& c,
                                                 const SymmetricSolveOptions& opts = {});

}  // namespace milac
