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

#include "milac/netcore.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "milac/error.hpp"

namespace milac {

namespace {

Eigen::PartialPivLU<Eigen::MatrixXcd> checked_lu(const Eigen::MatrixXcd& m, const char* what) {
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(m);
  const double rcond = lu.rcond();
  const double condition = rcond > 0.0 ? 1.0 / rcond : std::numeric_limits<double>::infinity();
  if (!(condition <= kMaxCondition)) {
    throw NumericalError(std::string(what) + " is singular or ill-conditioned (condition ~ " +
                             std::to_string(condition) + ")",
                         condition);
  }
  return lu;
}

void require_square(const Eigen::MatrixXcd& m, const char* what) {
  if (m.rows() != m.cols()) throw DimensionError(std::string(what) + " must be square");
}

void require_ports(int size, int n_streams, int n_antennas) {
  if (n_streams < 1 || n_antennas < 1 || size != n_streams + n_antennas) {
    throw DimensionError("network has " + std::to_string(size) + " ports, expected N_S + N = " +
                         std::to_string(n_streams) + " + " + std::to_string(n_antennas));
  }
}

// (Y/Y0 + I)^{-1}
Eigen::MatrixXcd normalized_inverse(const AdmittanceMatrix& y) {
  require_square(y.y, "admittance matrix");
  const int n = y.size();
  Eigen::MatrixXcd m = y.y / y.y0 + Eigen::MatrixXcd::Identity(n, n);
  return checked_lu(m, "Y/Y0 + I").inverse();
}

}  // namespace

SusceptanceMatrix::SusceptanceMatrix(int n) : n_(n) {
  if (n < 0) throw DimensionError("negative matrix size");
  upper_.assign(static_cast<std::size_t>(n) * (n + 1) / 2, 0.0);
}

SusceptanceMatrix SusceptanceMatrix::from_dense(const Eigen::MatrixXd& b, double tol) {
  if (b.rows() != b.cols()) throw ValidationError("susceptance matrix must be square");
  const double scale = std::max(1.0, b.cwiseAbs().maxCoeff());
  const double asym = b.rows() ? (b - b.transpose()).cwiseAbs().maxCoeff() : 0.0;
  if (!(asym <= tol * scale)) {
    throw ValidationError("susceptance matrix is not symmetric (max |B - B^T| = " +
                          std::to_string(asym) + ")");
  }
  SusceptanceMatrix out(static_cast<int>(b.rows()));
  for (int n = 0; n < out.n_; ++n)
    for (int m = 0; m <= n; ++m) out.upper_[out.index(m, n)] = 0.5 * (b(m, n) + b(n, m));
  return out;
}

std::size_t SusceptanceMatrix::index(int m, int n) const {
  if (m < 0 || n < 0 || m >= n_ || n >= n_) throw DimensionError("susceptance index out of range");
  if (m > n) std::swap(m, n);
  return static_cast<std::size_t>(n) * (n + 1) / 2 + static_cast<std::size_t>(m);
}

double SusceptanceMatrix::operator()(int m, int n) const { return upper_[index(m, n)]; }

void SusceptanceMatrix::set(int m, int n, double value) { upper_[index(m, n)] = value; }

Eigen::MatrixXd SusceptanceMatrix::dense() const {
  Eigen::MatrixXd out(n_, n_);
  for (int n = 0; n < n_; ++n)
    for (int m = 0; m <= n; ++m) out(m, n) = out(n, m) = upper_[index(m, n)];
  return out;
}

AdmittanceMatrix AdmittanceMatrix::lossless(const SusceptanceMatrix& b, double y0) {
  return lossless(b.dense(), y0);
}

AdmittanceMatrix AdmittanceMatrix::lossless(const Eigen::MatrixXd& b, double y0) {
  if (!(y0 > 0.0)) throw ValidationError("reference admittance Y0 must be positive");
  if (b.rows() != b.cols()) throw DimensionError("susceptance matrix must be square");
  return {b.cast<cplx>() * cplx(0.0, 1.0), y0};
}

AdmittanceMatrix assemble_admittance(const std::map<std::pair<int, int>, cplx>& components,
                                     int n_ports, double y0) {
  if (n_ports < 1) throw ValidationError("network needs at least one port");
  if (!(y0 > 0.0)) throw ValidationError("reference admittance Y0 must be positive");
  Eigen::MatrixXcd y = Eigen::MatrixXcd::Zero(n_ports, n_ports);
  for (const auto& [key, value] : components) {
    const auto [m, n] = key;
    if (m < 0 || n < 0 || m >= n_ports || n >= n_ports) {
      throw ValidationError("component (" + std::to_string(m) + ", " + std::to_string(n) +
                            ") outside port range");
    }
    if (m == n) {
      y(n, n) += value;
      continue;
    }
    if (m > n && components.count({n, m})) {
      throw ValidationError("component between ports " + std::to_string(n) + " and " +
                            std::to_string(m) + " given twice");
    }
    y(m, n) -= value;
    y(n, m) -= value;
    y(m, m) += value;
    y(n, n) += value;
  }
  return {std::move(y), y0};
}

ScatteringMatrix scattering_from_admittance(const AdmittanceMatrix& y) {
  require_square(y.y, "admittance matrix");
  if (!(y.y0 > 0.0)) throw ValidationError("reference admittance Y0 must be positive");
  const int n = y.size();
  const Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(n, n);
  auto lu = checked_lu(y.y0 * eye + y.y, "Y0 I + Y");
  return {lu.solve(y.y0 * eye - y.y)};
}

AdmittanceMatrix admittance_from_scattering(const ScatteringMatrix& theta, double y0) {
  require_square(theta.theta, "scattering matrix");
  if (!(y0 > 0.0)) throw ValidationError("reference admittance Y0 must be positive");
  const int n = theta.size();
  const Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(n, n);
  auto lu = checked_lu(eye + theta.theta, "I + Theta");
  return {y0 * lu.solve(eye - theta.theta), y0};
}

Precoder precoder_from_admittance(const AdmittanceMatrix& y, int n_streams, int n_tx) {
  require_ports(y.size(), n_streams, n_tx);
  return normalized_inverse(y).block(n_streams, 0, n_tx, n_streams);
}

Precoder precoder_from_scattering(const ScatteringMatrix& theta, int n_streams, int n_tx) {
  require_ports(theta.size(), n_streams, n_tx);
  return 0.5 * theta.theta.block(n_streams, 0, n_tx, n_streams);
}

Combiner combiner_from_admittance(const AdmittanceMatrix& y, int n_streams, int n_rx) {
  require_ports(y.size(), n_streams, n_rx);
  return normalized_inverse(y).block(n_rx, 0, n_streams, n_rx);
}

Combiner combiner_from_scattering(const ScatteringMatrix& theta, int n_streams, int n_rx) {
  require_ports(theta.size(), n_streams, n_rx);
  return 0.5 * theta.theta.block(n_rx, 0, n_streams, n_rx);
}

LosslessReciprocalReport check_lossless_reciprocal(const ScatteringMatrix& theta) {
  require_square(theta.theta, "scattering matrix");
  const int n = theta.size();
  LosslessReciprocalReport r;
  r.unitarity_residual =
      (theta.theta.adjoint() * theta.theta - Eigen::MatrixXcd::Identity(n, n)).norm();
  r.symmetry_residual = (theta.theta - theta.theta.transpose()).norm();
  return r;
}

}  // namespace milac
