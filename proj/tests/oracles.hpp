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

// Independent reference computations used by the test suites. None of these
// call into the library code they are checked against.

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

inline Eigen::MatrixXcd random_complex(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Eigen::MatrixXcd m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = {n(rng), n(rng)};
  return m;
}

inline Eigen::MatrixXd random_real(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Eigen::MatrixXd m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = n(rng);
  return m;
}

inline Eigen::MatrixXd random_symmetric(int n, std::mt19937_64& rng) {
  const Eigen::MatrixXd a = random_real(n, n, rng);
  return (a + a.transpose()) / 2.0;
}

// Orthonormal columns by modified Gram-Schmidt on a Gaussian matrix.
inline Eigen::MatrixXcd random_semi_unitary(int n, int ns, std::mt19937_64& rng) {
  Eigen::MatrixXcd q = random_complex(n, ns, rng);
  for (int k = 0; k < ns; ++k) {
    for (int i = 0; i < k; ++i) q.col(k) -= q.col(i).dot(q.col(k)) * q.col(i);
    q.col(k) /= q.col(k).norm();
  }
  return q;
}

// Scattering matrix from power-wave definitions: with incident waves a, the
// port voltages solve (Y0 I + jB) v = 2 sqrt(Y0) a and b = sqrt(Y0) v - a.
inline Eigen::MatrixXcd scattering_from_waves(const Eigen::MatrixXd& b, double y0) {
  const Eigen::Index n = b.rows();
  const std::complex<double> j1(0.0, 1.0);
  Eigen::MatrixXcd lhs = y0 * Eigen::MatrixXcd::Identity(n, n) + j1 * b.cast<std::complex<double>>();
  Eigen::MatrixXcd theta(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::VectorXcd a = Eigen::VectorXcd::Zero(n);
    a(k) = 1.0;
    const Eigen::VectorXcd v = lhs.fullPivLu().solve(2.0 * std::sqrt(y0) * a);
    theta.col(k) = std::sqrt(y0) * v - a;
  }
  return theta;
}

// Brute-force symmetric least squares: X = sum_{i<=j} x_ij E_ij over the
// orthonormal basis of symmetric matrices (off-diagonal E_ij scaled by
// 1/sqrt(2)), so the minimum-norm coefficient vector is the minimum
// Frobenius-norm symmetric solution.
struct SymmetricLsq {
  Eigen::MatrixXd x;
  double residual = 0.0;  // ||A X - C||_F
};

inline SymmetricLsq symmetric_least_squares(const Eigen::MatrixXd& a, const Eigen::MatrixXd& c) {
  const Eigen::Index m = a.rows();
  const Eigen::Index n = a.cols();
  const Eigen::Index unknowns = n * (n + 1) / 2;
  Eigen::MatrixXd design(m * n, unknowns);
  std::vector<Eigen::MatrixXd> basis;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      Eigen::MatrixXd e = Eigen::MatrixXd::Zero(n, n);
      if (i == j) {
        e(i, i) = 1.0;
      } else {
        e(i, j) = e(j, i) = 1.0 / std::sqrt(2.0);
      }
      const Eigen::MatrixXd ae = a * e;
      design.col(static_cast<Eigen::Index>(basis.size())) =
          Eigen::Map<const Eigen::VectorXd>(ae.data(), m * n);
      basis.push_back(std::move(e));
    }
  }
  const Eigen::VectorXd rhs = Eigen::Map<const Eigen::VectorXd>(c.data(), m * n);
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(design);
  cod.setThreshold(1e-10);
  const Eigen::VectorXd coef = cod.solve(rhs);
  SymmetricLsq out;
  out.x = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t k = 0; k < basis.size(); ++k)
    out.x += coef(static_cast<Eigen::Index>(k)) * basis[k];
  out.residual = (a * out.x - c).norm();
  return out;
}

// Water-filling by enumerating every support set. Gains g_s multiply the
// normalized powers inside log2(1 + g_s p_s), sum p = 1.
struct WaterFill {
  std::vector<double> p;
  double objective = -std::numeric_limits<double>::infinity();
};

inline WaterFill water_filling_exhaustive(const std::vector<double>& g) {
  const std::size_t n = g.size();
  WaterFill best;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    double inv = 0.0;
    double count = 0.0;
    for (std::size_t s = 0; s < n; ++s)
      if (mask >> s & 1) {
        inv += 1.0 / g[s];
        count += 1.0;
      }
    const double mu = (1.0 + inv) / count;
    std::vector<double> p(n, 0.0);
    bool feasible = true;
    for (std::size_t s = 0; s < n; ++s)
      if (mask >> s & 1) {
        p[s] = mu - 1.0 / g[s];
        if (p[s] < 0.0) feasible = false;
      }
    if (!feasible) continue;
    double obj = 0.0;
    for (std::size_t s = 0; s < n; ++s) obj += std::log2(1.0 + g[s] * p[s]);
    if (obj > best.objective) {
      best.objective = obj;
      best.p = std::move(p);
    }
  }
  return best;
}

// Sum rate with inter-stream interference as noise, written out per stream.
inline double sinr_rate(const Eigen::MatrixXcd& g, const Eigen::MatrixXcd& h,
                        const Eigen::MatrixXcd& f, const std::vector<double>& p, double pt,
                        double sigma2) {
  double rate = 0.0;
  for (Eigen::Index s = 0; s < g.rows(); ++s) {
    const Eigen::RowVectorXcd gs = g.row(s);
    double signal = 0.0;
    double noise = sigma2 * gs.squaredNorm();
    for (Eigen::Index t = 0; t < f.cols(); ++t) {
      const std::complex<double> c = (gs * h * f.col(t))(0, 0);
      if (t == s) {
        signal = pt * p[static_cast<std::size_t>(t)] * std::norm(c);
      } else {
        noise += pt * p[static_cast<std::size_t>(t)] * std::norm(c);
      }
    }
    if (noise > 0.0) rate += std::log2(1.0 + signal / noise);
  }
  return rate;
}

// Tx capacity condition from the scattering matrix: Theta [I; 0] - [0; V].
inline double tx_condition_residual(const Eigen::MatrixXcd& theta, const Eigen::MatrixXcd& v) {
  const Eigen::Index ns = v.cols();
  const Eigen::Index nt = v.rows();
  Eigen::MatrixXcd want = Eigen::MatrixXcd::Zero(ns + nt, ns);
  want.bottomRows(nt) = v;
  return (theta.leftCols(ns) - want).norm();
}

// Rx condition: Theta [0; I] - [conj(U); 0].
inline double rx_condition_residual(const Eigen::MatrixXcd& theta, const Eigen::MatrixXcd& u) {
  const Eigen::Index ns = u.cols();
  const Eigen::Index nr = u.rows();
  Eigen::MatrixXcd want = Eigen::MatrixXcd::Zero(nr + ns, ns);
  want.topRows(nr) = u.conjugate();
  return (theta.rightCols(ns) - want).norm();
}

}  // namespace oracle
