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

#include "milac/stemopt.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include "milac/error.hpp"
#include "milac/seeding.hpp"

namespace milac {

namespace {

void require_target(const Eigen::MatrixXcd& t, double tol) {
  const Eigen::Index ns = t.cols();
  if (ns < 1) throw DimensionError("target needs at least one stream column");
  if (t.rows() < ns) {
    throw DimensionError("target has " + std::to_string(t.rows()) + " antennas for " +
                         std::to_string(ns) + " streams");
  }
  const double err =
      (t.adjoint() * t - Eigen::MatrixXcd::Identity(ns, ns)).cwiseAbs().maxCoeff();
  if (!(err <= tol)) {
    throw ValidationError("target is not semi-unitary (max |T^H T - I| = " + std::to_string(err) +
                          ")");
  }
}

void require_positive(double y0) {
  if (!(y0 > 0.0)) throw ValidationError("reference admittance Y0 must be positive");
}

// Solves [J1, j_k] x = r_k for every non-central antenna k = N_S-1+i and
// returns the solutions as columns (N_S x (N - N_S + 1)).
Eigen::MatrixXd solve_column_systems(const RealTargetPair& t, const StemOptions& opts) {
  const int ns = t.n_streams();
  const int count = t.n_antennas() - ns + 1;
  Eigen::MatrixXd out(ns, count);
  Eigen::MatrixXd m(ns, ns);
  if (ns > 1) m.leftCols(ns - 1) = t.j1();
  for (int i = 0; i < count; ++i) {
    const int k = ns - 1 + i;
    m.col(ns - 1) = t.j.col(k);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Eigen::VectorXd& sv = svd.singularValues();
    if (!(sv(0) > 0.0) || !(sv(ns - 1) >= opts.rank_tol * sv(0))) {
      throw DegenerateTarget("[J1, j_k] is singular for antenna column " + std::to_string(k) +
                                 " (sigma_min / sigma_max = " +
                                 std::to_string(sv(0) > 0.0 ? sv(ns - 1) / sv(0) : 0.0) + ")",
                             k);
    }
    out.col(i) = svd.solve(t.r.col(k));
  }
  return out;
}

void require_j1_rank(const RealTargetPair& t, const StemOptions& opts) {
  if (t.n_streams() < 2) return;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(t.j1());
  const Eigen::VectorXd& sv = svd.singularValues();
  const Eigen::Index last = sv.size() - 1;
  if (!(sv(0) > 0.0) || !(sv(last) >= opts.rank_tol * sv(0))) {
    throw DegenerateTarget("J1 is rank deficient", -1);
  }
}

SymmetricSolveOptions tall_options(const StemOptions& opts) {
  return {opts.rank_tol, opts.symmetry_tol};
}

Eigen::MatrixXd block_matrix(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                             const Eigen::MatrixXd& c, const Eigen::MatrixXd& d) {
  Eigen::MatrixXd out(a.rows() + c.rows(), a.cols() + b.cols());
  out << a, b, c, d;
  return out;
}

// Central antennas first (in the given order), the rest ascending.
std::vector<int> antenna_order(int n_streams, int n_antennas, std::span<const int> central) {
  if (static_cast<int>(central.size()) != n_streams - 1) {
    throw ValidationError("expected N_S - 1 = " + std::to_string(n_streams - 1) +
                          " central antennas, got " + std::to_string(central.size()));
  }
  std::vector<bool> used(static_cast<std::size_t>(n_antennas), false);
  std::vector<int> order;
  for (int a : central) {
    if (a < 0 || a >= n_antennas || used[static_cast<std::size_t>(a)]) {
      throw ValidationError("invalid or duplicate central antenna " + std::to_string(a));
    }
    used[static_cast<std::size_t>(a)] = true;
    order.push_back(a);
  }
  for (int a = 0; a < n_antennas; ++a)
    if (!used[static_cast<std::size_t>(a)]) order.push_back(a);
  return order;
}

Eigen::MatrixXcd permute_rows(const Eigen::MatrixXcd& t, const std::vector<int>& order) {
  Eigen::MatrixXcd out(t.rows(), t.cols());
  for (std::size_t i = 0; i < order.size(); ++i)
    out.row(static_cast<Eigen::Index>(i)) = t.row(order[i]);
  return out;
}

// Maps B' on permuted ports back: B(port_of[a], port_of[b]) = B'(a, b).
SusceptanceMatrix unpermute(const SusceptanceMatrix& bp, const std::vector<int>& port_of) {
  SusceptanceMatrix b(bp.size());
  for (int a = 0; a < bp.size(); ++a)
    for (int c = a; c < bp.size(); ++c)
      b.set(port_of[static_cast<std::size_t>(a)], port_of[static_cast<std::size_t>(c)], bp(a, c));
  return b;
}

std::vector<double> draw_phases(std::uint64_t seed, int attempt, int count) {
  std::mt19937_64 rng(derive_seed(seed, 0x70686173ULL, static_cast<std::uint64_t>(attempt)));
  std::uniform_real_distribution<double> uniform(0.0, 2.0 * std::numbers::pi);
  std::vector<double> out(static_cast<std::size_t>(count));
  for (double& th : out) th = uniform(rng);
  return out;
}

template <typename Optimize>
RegularizedSolution regularized(const Eigen::MatrixXcd& target, std::uint64_t seed,
                                Optimize&& optimize) {
  const int ns = static_cast<int>(target.cols());
  for (int attempt = 0;; ++attempt) {
    std::vector<double> phases(static_cast<std::size_t>(ns), 0.0);
    if (attempt > 0) phases = draw_phases(seed, attempt, ns);
    Eigen::MatrixXcd rotated = target;
    for (int s = 0; s < ns; ++s)
      rotated.col(s) *= std::polar(1.0, phases[static_cast<std::size_t>(s)]);
    try {
      SusceptanceMatrix b = optimize(rotated);
      return {std::move(b), std::move(rotated), std::move(phases), attempt + 1};
    } catch (const DegenerateTarget&) {
      if (attempt >= kMaxPhaseRetries) throw;
    } catch (const NoSymmetricSolution&) {
      if (attempt >= kMaxPhaseRetries) throw;
    }
  }
}

}  // namespace

RealTargetPair RealTargetPair::from_target(const Eigen::MatrixXcd& target) {
  return {target.real().transpose(), target.imag().transpose()};
}

double RealTargetPair::commutation_residual() const {
  return (r * j.transpose() - j * r.transpose()).norm();
}

double RealTargetPair::gram_residual() const {
  const Eigen::Index ns = r.rows();
  return (j * j.transpose() + r * r.transpose() - Eigen::MatrixXd::Identity(ns, ns)).norm();
}

Eigen::MatrixXd TxStemSteps::assembled() const { return block_matrix(b11, b12, b21, b22); }

Eigen::MatrixXd RxStemSteps::assembled() const { return block_matrix(b11, b12, b21, b22); }

TxStemSteps tx_stem_steps(const Eigen::MatrixXcd& v_bar, double y0, const StemOptions& opts) {
  require_positive(y0);
  require_target(v_bar, opts.semi_unitary_tol);
  TxStemSteps st;
  st.target = RealTargetPair::from_target(v_bar);
  const RealTargetPair& t = st.target;
  const int ns = t.n_streams();
  require_j1_rank(t, opts);

  // B_{22,22} and B_{22,12} from the per-antenna N_S x N_S systems.
  const Eigen::MatrixXd x = solve_column_systems(t, opts);
  st.b22_22 = y0 * x.row(ns - 1).transpose();
  st.b22_12 = y0 * x.topRows(ns - 1);
  st.b22_21 = st.b22_12.transpose();

  // Symmetric B_{22,11} with J1 B_{22,11} = Y0 R1 - J2 B_{22,21}.
  const Eigen::MatrixXd rhs = y0 * t.r1() - t.j2() * st.b22_21;
  TallSymmetricSolution sol = solve_symmetric_lineq_tall(t.j1(), rhs, tall_options(opts));
  st.b22_11 = std::move(sol.x);
  st.j1_svd = std::move(sol.svd);

  st.b22 = block_matrix(st.b22_11, st.b22_12, st.b22_21,
                        Eigen::MatrixXd(st.b22_22.asDiagonal()));

  st.b12 = -y0 * t.j - t.r * st.b22;
  st.b21 = st.b12.transpose();
  st.b11 = -t.r * st.b21;
  return st;
}

RxStemSteps rx_stem_steps(const Eigen::MatrixXcd& u_bar, double y0, const StemOptions& opts) {
  require_positive(y0);
  require_target(u_bar, opts.semi_unitary_tol);
  RxStemSteps st;
  st.target = RealTargetPair::from_target(u_bar);
  const RealTargetPair& t = st.target;
  const int ns = t.n_streams();
  require_j1_rank(t, opts);

  const Eigen::MatrixXd x = solve_column_systems(t, opts);
  st.b11_22 = -y0 * x.row(ns - 1).transpose();
  st.b11_12 = -y0 * x.topRows(ns - 1);
  st.b11_21 = st.b11_12.transpose();

  // Symmetric B_{11,11} with J1 B_{11,11} = -Y0 R1 - J2 B_{11,21}.
  const Eigen::MatrixXd rhs = -y0 * t.r1() - t.j2() * st.b11_21;
  TallSymmetricSolution sol = solve_symmetric_lineq_tall(t.j1(), rhs, tall_options(opts));
  st.b11_11 = std::move(sol.x);
  st.j1_svd = std::move(sol.svd);

  st.b11 = block_matrix(st.b11_11, st.b11_12, st.b11_21,
                        Eigen::MatrixXd(st.b11_22.asDiagonal()));

  st.b21 = y0 * t.j - t.r * st.b11;
  st.b12 = st.b21.transpose();
  st.b22 = -t.r * st.b12;
  return st;
}

SusceptanceMatrix optimize_tx_stem(const Eigen::MatrixXcd& v_bar, double y0,
                                   const StemOptions& opts) {
  return SusceptanceMatrix::from_dense(tx_stem_steps(v_bar, y0, opts).assembled());
}

SusceptanceMatrix optimize_tx_stem(const Eigen::MatrixXcd& v_bar, double y0,
                                   std::span<const int> central_antennas,
                                   const StemOptions& opts) {
  const int ns = static_cast<int>(v_bar.cols());
  const int nt = static_cast<int>(v_bar.rows());
  const std::vector<int> order = antenna_order(ns, nt, central_antennas);
  const SusceptanceMatrix bp = optimize_tx_stem(permute_rows(v_bar, order), y0, opts);
  std::vector<int> port_of;
  for (int s = 0; s < ns; ++s) port_of.push_back(s);
  for (int a : order) port_of.push_back(ns + a);
  return unpermute(bp, port_of);
}

SusceptanceMatrix optimize_tx_stem(const Eigen::MatrixXcd& v_bar, double y0,
                                   const MilacGraph& graph, const StemOptions& opts) {
  const int ns = static_cast<int>(v_bar.cols());
  if (graph.num_vertices() != ns + v_bar.rows()) {
    throw DimensionError("graph has " + std::to_string(graph.num_vertices()) +
                         " ports, expected N_S + N_T");
  }
  auto central = stem_central_antennas(graph, Side::kTransmitter, ns);
  if (!central) {
    throw ValidationError(
        "graph is not a stem-connected transmitter architecture (center size 2N_S - 1 "
        "including every input port)");
  }
  return optimize_tx_stem(v_bar, y0, *central, opts);
}

SusceptanceMatrix optimize_rx_stem(const Eigen::MatrixXcd& u_bar, double y0,
                                   const StemOptions& opts) {
  return SusceptanceMatrix::from_dense(rx_stem_steps(u_bar, y0, opts).assembled());
}

SusceptanceMatrix optimize_rx_stem(const Eigen::MatrixXcd& u_bar, double y0,
                                   std::span<const int> central_antennas,
                                   const StemOptions& opts) {
  const int ns = static_cast<int>(u_bar.cols());
  const int nr = static_cast<int>(u_bar.rows());
  const std::vector<int> order = antenna_order(ns, nr, central_antennas);
  const SusceptanceMatrix bp = optimize_rx_stem(permute_rows(u_bar, order), y0, opts);
  std::vector<int> port_of(order.begin(), order.end());
  for (int s = 0; s < ns; ++s) port_of.push_back(nr + s);
  return unpermute(bp, port_of);
}

SusceptanceMatrix optimize_rx_stem(const Eigen::MatrixXcd& u_bar, double y0,
                                   const MilacGraph& graph, const StemOptions& opts) {
  const int ns = static_cast<int>(u_bar.cols());
  if (graph.num_vertices() != ns + u_bar.rows()) {
    throw DimensionError("graph has " + std::to_string(graph.num_vertices()) +
                         " ports, expected N_R + N_S");
  }
  auto central = stem_central_antennas(graph, Side::kReceiver, ns);
  if (!central) {
    throw ValidationError(
        "graph is not a stem-connected receiver architecture (center size 2N_S - 1 "
        "including every output port)");
  }
  return optimize_rx_stem(u_bar, y0, *central, opts);
}

RegularizedSolution optimize_tx_stem_regularized(const Eigen::MatrixXcd& v_bar, double y0,
                                                 std::uint64_t seed, const StemOptions& opts) {
  return regularized(v_bar, seed,
                     [&](const Eigen::MatrixXcd& t) { return optimize_tx_stem(t, y0, opts); });
}

RegularizedSolution optimize_rx_stem_regularized(const Eigen::MatrixXcd& u_bar, double y0,
                                                 std::uint64_t seed, const StemOptions& opts) {
  return regularized(u_bar, seed,
                     [&](const Eigen::MatrixXcd& t) { return optimize_rx_stem(t, y0, opts); });
}

SusceptanceMatrix optimize_tx_fully(const Eigen::MatrixXcd& v_bar, double y0,
                                    const SymmetricSolveOptions& opts) {
  require_positive(y0);
  require_target(v_bar, StemOptions{}.semi_unitary_tol);
  const RealTargetPair t = RealTargetPair::from_target(v_bar);
  const int ns = t.n_streams();
  const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(ns, ns);
  const Eigen::MatrixXd zero = Eigen::MatrixXd::Zero(ns, ns);
  const Eigen::MatrixXd a = block_matrix(zero, -t.j, eye, t.r);
  const Eigen::MatrixXd c = y0 * block_matrix(eye, -t.r, zero, -t.j);
  return SusceptanceMatrix::from_dense(solve_symmetric_lineq_general(a, c, opts).x);
}

SusceptanceMatrix optimize_rx_fully(const Eigen::MatrixXcd& u_bar, double y0,
                                    const SymmetricSolveOptions& opts) {
  require_positive(y0);
  require_target(u_bar, StemOptions{}.semi_unitary_tol);
  const RealTargetPair t = RealTargetPair::from_target(u_bar);
  const int ns = t.n_streams();
  const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(ns, ns);
  const Eigen::MatrixXd zero = Eigen::MatrixXd::Zero(ns, ns);
  const Eigen::MatrixXd a = block_matrix(t.j, zero, t.r, eye);
  const Eigen::MatrixXd c = y0 * block_matrix(-t.r, eye, t.j, zero);
  return SusceptanceMatrix::from_dense(solve_symmetric_lineq_general(a, c, opts).x);
}

double VerificationReport::max_case_residual() const {
  double m = 0.0;
  for (double r : case_residuals) m = std::max(m, r);
  return m;
}

double VerificationReport::max_symmetry_residual() const {
  return std::max({b11_symmetry, b22_symmetry, b12_symmetry});
}

namespace {

// Shared part of verify_tx / verify_rx: the admittance-domain condition
// (Y0 I - jB) e_in = (Y0 I + jB) t_out and its scattering form.
void fill_condition(VerificationReport& rep, const Eigen::MatrixXd& b, double y0,
                    const Eigen::MatrixXcd& e_in, const Eigen::MatrixXcd& t_out) {
  require_positive(y0);
  const AdmittanceMatrix y = AdmittanceMatrix::lossless(b, y0);
  const Eigen::Index n = b.rows();
  const Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(n, n);
  rep.condition_residual = ((y0 * eye - y.y) * e_in - (y0 * eye + y.y) * t_out).norm();
  try {
    rep.scattering_residual = (scattering_from_admittance(y).theta * e_in - t_out).norm();
  } catch (const NumericalError&) {
    rep.scattering_residual = std::numeric_limits<double>::infinity();
  }
}

void require_square_size(const Eigen::MatrixXd& b, Eigen::Index n) {
  if (b.rows() != n || b.cols() != n) {
    throw DimensionError("susceptance matrix is " + std::to_string(b.rows()) + "x" +
                         std::to_string(b.cols()) + ", expected " + std::to_string(n) + "x" +
                         std::to_string(n));
  }
}

}  // namespace

VerificationReport verify_tx(const Eigen::MatrixXd& b, const Eigen::MatrixXcd& v_bar, double y0,
                             const ArchitectureMask& mask) {
  const Eigen::Index ns = v_bar.cols();
  const Eigen::Index nt = v_bar.rows();
  const Eigen::Index n = ns + nt;
  require_square_size(b, n);

  VerificationReport rep;
  Eigen::MatrixXcd e_in = Eigen::MatrixXcd::Zero(n, ns);
  e_in.topRows(ns).setIdentity();
  Eigen::MatrixXcd t_out = Eigen::MatrixXcd::Zero(n, ns);
  t_out.bottomRows(nt) = v_bar;
  fill_condition(rep, b, y0, e_in, t_out);

  const RealTargetPair t = RealTargetPair::from_target(v_bar);
  const auto b11 = b.topLeftCorner(ns, ns);
  const auto b12 = b.topRightCorner(ns, nt);
  const auto b21 = b.bottomLeftCorner(nt, ns);
  const auto b22 = b.bottomRightCorner(nt, nt);
  const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(ns, ns);
  rep.case_residuals = {(t.j * b21 + y0 * eye).norm(), (t.j * b22 - y0 * t.r).norm(),
                        (b11 + t.r * b21).norm(), (b12 + t.r * b22 + y0 * t.j).norm()};
  rep.b11_symmetry = (b11 - b11.transpose()).norm();
  rep.b22_symmetry = (b22 - b22.transpose()).norm();
  rep.b12_symmetry = (b12 - b21.transpose()).norm();
  rep.mask_ok = mask_membership(b, mask);
  return rep;
}

VerificationReport verify_tx(const Eigen::MatrixXd& b, const Eigen::MatrixXcd& v_bar, double y0) {
  const int ns = static_cast<int>(v_bar.cols());
  const int nt = static_cast<int>(v_bar.rows());
  return verify_tx(b, v_bar, y0, mask_from_graph(tx_stem_graph(ns, nt)));
}

VerificationReport verify_rx(const Eigen::MatrixXd& b, const Eigen::MatrixXcd& u_bar, double y0,
                             const ArchitectureMask& mask) {
  const Eigen::Index ns = u_bar.cols();
  const Eigen::Index nr = u_bar.rows();
  const Eigen::Index n = nr + ns;
  require_square_size(b, n);

  VerificationReport rep;
  Eigen::MatrixXcd e_in = Eigen::MatrixXcd::Zero(n, ns);
  e_in.bottomRows(ns).setIdentity();
  Eigen::MatrixXcd t_out = Eigen::MatrixXcd::Zero(n, ns);
  t_out.topRows(nr) = u_bar.conjugate();
  fill_condition(rep, b, y0, e_in, t_out);

  const RealTargetPair t = RealTargetPair::from_target(u_bar);
  const auto b11 = b.topLeftCorner(nr, nr);
  const auto b12 = b.topRightCorner(nr, ns);
  const auto b21 = b.bottomLeftCorner(ns, nr);
  const auto b22 = b.bottomRightCorner(ns, ns);
  const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(ns, ns);
  rep.case_residuals = {(t.j * b11 + y0 * t.r).norm(), (t.j * b12 - y0 * eye).norm(),
                        (t.r * b11 + b21 - y0 * t.j).norm(), (t.r * b12 + b22).norm()};
  rep.b11_symmetry = (b11 - b11.transpose()).norm();
  rep.b22_symmetry = (b22 - b22.transpose()).norm();
  rep.b12_symmetry = (b12 - b21.transpose()).norm();
  rep.mask_ok = mask_membership(b, mask);
  return rep;
}

VerificationReport verify_rx(const Eigen::MatrixXd& b, const Eigen::MatrixXcd& u_bar, double y0) {
  const int ns = static_cast<int>(u_bar.cols());
  const int nr = static_cast<int>(u_bar.rows());
  return verify_rx(b, u_bar, y0, mask_from_graph(rx_stem_graph(ns, nr)));
}

}  // namespace milac
