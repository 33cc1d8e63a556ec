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

#include "milac/symmetric_lineq.hpp"

#include <string>

#include "milac/error.hpp"

namespace milac {

namespace {

void require_same_shape(const Eigen::MatrixXd& a, const Eigen::MatrixXd& c) {
  if (a.rows() != c.rows() || a.cols() != c.cols()) {
    throw DimensionError("A is " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                         " but C is " + std::to_string(c.rows()) + "x" + std::to_string(c.cols()));
  }
}

Eigen::MatrixXd symmetrized(const Eigen::MatrixXd& x) { return 0.5 * (x + x.transpose()); }

}  // namespace

SymmetricSolution solve_symmetric_lineq_general(const Eigen::MatrixXd& a,
                                                const Eigen::MatrixXd& c,
                                                const SymmetricSolveOptions& opts) {
  require_same_shape(a, c);
  const Eigen::Index m = a.rows();
  const Eigen::Index n = a.cols();

  SymmetricSolution out;
  out.commutator_residual = (a * c.transpose() - c * a.transpose()).norm();
  if (n == 0) {
    out.x.resize(0, 0);
    return out;
  }

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::VectorXd& sv = svd.singularValues();
  const double smax = sv.size() ? sv(0) : 0.0;
  int rank = 0;
  while (rank < sv.size() && smax > 0.0 && sv(rank) > opts.rank_tol * smax) ++rank;
  out.rank = rank;

  const Eigen::MatrixXd u1 = svd.matrixU().leftCols(rank);
  const Eigen::MatrixXd u2 = svd.matrixU().rightCols(m - rank);
  const Eigen::MatrixXd v1 = svd.matrixV().leftCols(rank);
  const Eigen::MatrixXd v2 = svd.matrixV().rightCols(n - rank);
  out.range_residual = (u2.transpose() * c).norm();

  const double c_norm = c.norm();
  if (out.commutator_residual > opts.solvability_tol * a.norm() * c_norm ||
      out.range_residual > opts.solvability_tol * c_norm) {
    throw NoSymmetricSolution("A X = C has no symmetric solution (||A C^T - C A^T|| = " +
                                  std::to_string(out.commutator_residual) + ", ||U2^T C|| = " +
                                  std::to_string(out.range_residual) + ")",
                              out.commutator_residual, out.range_residual);
  }

  const Eigen::VectorXd inv_s = sv.head(rank).cwiseInverse();
  // P = V1 S^-1 U1^T C, an N x N matrix.
  const Eigen::MatrixXd p = v1 * inv_s.asDiagonal() * (u1.transpose() * c);
  const Eigen::MatrixXd x = p + v2 * (v2.transpose() * c.transpose() * u1) * inv_s.asDiagonal() *
                                    v1.transpose();
  out.x = symmetrized(x);
  return out;
}

TallSymmetricSolution solve_symmetric_lineq_tall(const Eigen::MatrixXd& a,
                                                 const Eigen::MatrixXd& c,
                                                 const SymmetricSolveOptions& opts) {
  require_same_shape(a, c);
  if (a.rows() != a.cols() + 1) {
    throw DimensionError("tall solver needs an (N+1) x N matrix, got " + std::to_string(a.rows()) +
                         "x" + std::to_string(a.cols()));
  }
  const Eigen::Index n = a.cols();
  TallSymmetricSolution out;
  if (n == 0) {
    out.x.resize(0, 0);
    out.svd.u = Eigen::MatrixXd::Identity(1, 1);
    out.svd.sigma.resize(0);
    out.svd.v.resize(0, 0);
    return out;
  }

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::VectorXd& sv = svd.singularValues();
  if (!(sv(0) > 0.0) || !(sv(n - 1) >= opts.rank_tol * sv(0))) {
    throw DegenerateTarget("tall coefficient matrix is rank deficient (sigma_min / sigma_max = " +
                               std::to_string(sv(0) > 0.0 ? sv(n - 1) / sv(0) : 0.0) + ")",
                           -1);
  }
  out.svd = {svd.matrixU(), sv, svd.matrixV()};

  out.commutator_residual = (a * c.transpose() - c * a.transpose()).norm();
  if (out.commutator_residual > opts.solvability_tol * a.norm() * c.norm()) {
    throw NoSymmetricSolution("A X = C has no symmetric solution (||A C^T - C A^T|| = " +
                                  std::to_string(out.commutator_residual) + ")",
                              out.commutator_residual, 0.0);
  }

  const Eigen::MatrixXd u1 = out.svd.u.leftCols(n);
  out.x = symmetrized(out.svd.v * sv.cwiseInverse().asDiagonal() * (u1.transpose() * c));
  return out;
}

}  // namespace milac
