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

#include "doctest.h"

#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "milac/chancap.hpp"
#include "milac/error.hpp"
#include "oracles.hpp"

using namespace milac;

namespace {

std::span<const double> as_span(const Eigen::VectorXd& v) {
  return {v.data(), static_cast<std::size_t>(v.size())};
}

}  // namespace

TEST_CASE("rayleigh channel is seeded and unit power") {
  const Eigen::MatrixXcd a = rayleigh_channel(64, 64, 99);
  CHECK(a == rayleigh_channel(64, 64, 99));
  CHECK(a != rayleigh_channel(64, 64, 100));
  const double mean_power = a.cwiseAbs2().mean();
  CHECK(mean_power == doctest::Approx(1.0).epsilon(0.06));
  CHECK(std::abs(a.real().mean()) < 0.05);
  CHECK(std::abs(a.imag().mean()) < 0.05);
  CHECK_THROWS_AS(rayleigh_channel(0, 2, 1), DimensionError);
}

TEST_CASE("truncated svd conventions") {
  const Eigen::MatrixXcd h = rayleigh_channel(6, 9, 5);
  const ChannelRealization ch = truncated_svd(h, 4);
  CHECK(ch.n_rx() == 6);
  CHECK(ch.n_tx() == 9);
  CHECK(ch.n_streams() == 4);
  CHECK((h * ch.v_bar - ch.u_bar * ch.sigma.asDiagonal()).norm() < 1e-12);
  CHECK((ch.v_bar.adjoint() * ch.v_bar - Eigen::MatrixXcd::Identity(4, 4)).norm() < 1e-12);
  CHECK((ch.u_bar.adjoint() * ch.u_bar - Eigen::MatrixXcd::Identity(4, 4)).norm() < 1e-12);
  for (int s = 0; s + 1 < 4; ++s) CHECK(ch.sigma(s) >= ch.sigma(s + 1));
  for (int s = 0; s < 4; ++s) {
    Eigen::Index peak = 0;
    ch.v_bar.col(s).cwiseAbs().maxCoeff(&peak);
    CHECK(ch.v_bar(peak, s).imag() == 0.0);
    CHECK(ch.v_bar(peak, s).real() > 0.0);
  }
  // Singular values agree with the Hermitian eigenproblem.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(h.adjoint() * h);
  const Eigen::VectorXd ev = eig.eigenvalues().reverse();
  for (int s = 0; s < 4; ++s) CHECK(ch.eigenvalues()(s) == doctest::Approx(ev(s)).epsilon(1e-12));
  CHECK_THROWS_AS(truncated_svd(h, 7), DimensionError);
  CHECK_THROWS_AS(truncated_svd(h, 0), DimensionError);
}

TEST_CASE("water filling matches exhaustive search") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> size(1, 8);
  std::uniform_real_distribution<double> logg(-3.0, 3.0);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = size(rng);
    std::vector<double> lambda(static_cast<std::size_t>(n));
    for (double& l : lambda) l = std::pow(10.0, logg(rng));
    const LinkBudget link = LinkBudget::from_snr_db(logg(rng) * 5.0);
    const PowerAllocation pa = water_filling(lambda, link);

    std::vector<double> g(lambda.size());
    for (std::size_t s = 0; s < g.size(); ++s) g[s] = link.pt * lambda[s] / (4.0 * link.sigma2);
    const oracle::WaterFill ref = oracle::water_filling_exhaustive(g);
    for (std::size_t s = 0; s < g.size(); ++s) CHECK(pa.p[s] == doctest::Approx(ref.p[s]).epsilon(1e-10).scale(1.0));
    CHECK(capacity(lambda, pa.p, link) == doctest::Approx(ref.objective).epsilon(1e-12));
  }
}

TEST_CASE("water filling KKT conditions") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(0.01, 5.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> lambda(16);
    for (double& l : lambda) l = u(rng);
    const LinkBudget link = LinkBudget::from_snr_db(-5.0 + trial * 0.5);
    const PowerAllocation pa = water_filling(lambda, link);
    const double total = std::accumulate(pa.p.begin(), pa.p.end(), 0.0);
    CHECK(std::abs(total - 1.0) < 1e-12);
    for (std::size_t s = 0; s < lambda.size(); ++s) {
      const double inv = 4.0 * link.sigma2 / (link.pt * lambda[s]);
      if (pa.p[s] > 0.0) {
        CHECK(std::abs(pa.p[s] + inv - pa.water_level) < 1e-12);
      } else {
        CHECK(inv >= pa.water_level - 1e-12);
      }
    }
  }
}

TEST_CASE("water filling limits") {
  const std::vector<double> lambda{4.0, 1.0, 0.25};
  // Low SNR: everything on the strongest mode.
  const PowerAllocation low = water_filling(lambda, LinkBudget::from_snr_db(-20.0));
  CHECK(low.p[0] == doctest::Approx(1.0));
  CHECK(low.p[1] == 0.0);
  // High SNR: nearly uniform.
  const PowerAllocation high = water_filling(lambda, LinkBudget::from_snr_db(60.0));
  for (double p : high.p) CHECK(p == doctest::Approx(1.0 / 3.0).epsilon(1e-4));
  CHECK_THROWS_AS(water_filling(std::vector<double>{1.0, 0.0}, LinkBudget{}), ValidationError);
  CHECK_THROWS_AS(water_filling(std::vector<double>{}, LinkBudget{}), ValidationError);
  CHECK(LinkBudget::from_snr_db(10.0).pt == doctest::Approx(10.0));
}

TEST_CASE("svd precoding achieves capacity") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Eigen::MatrixXcd h = rayleigh_channel(8, 8, seed);
    const ChannelRealization ch = truncated_svd(h, 3);
    const LinkBudget link = LinkBudget::from_snr_db(10.0);
    const PowerAllocation pa = water_filling(as_span(ch.eigenvalues()), link);
    const Eigen::MatrixXcd f = 0.5 * ch.v_bar;
    const Eigen::MatrixXcd g = 0.5 * ch.u_bar.adjoint();
    const double rate = achievable_rate(g, h, f, pa.p, link);
    const double c = capacity(ch, link);
    CHECK(std::abs(rate - c) <= 1e-12 * c);
    CHECK(rate == doctest::Approx(oracle::sinr_rate(g, h, f, pa.p, link.pt, link.sigma2)).epsilon(1e-13));

    // Column phases of F and G do not change the rate.
    Eigen::VectorXcd ph(3);
    ph << std::polar(1.0, 0.3 * seed), std::polar(1.0, -1.1), std::polar(1.0, 2.0);
    const double rotated = achievable_rate(ph.conjugate().asDiagonal() * g, h, f * ph.asDiagonal(), pa.p, link);
    CHECK(std::abs(rotated - rate) <= 1e-10);

    // A mismatched precoder loses rate.
    const Eigen::MatrixXcd wrong = 0.5 * truncated_svd(rayleigh_channel(8, 8, seed + 100), 3).v_bar;
    CHECK(achievable_rate(g, h, wrong, pa.p, link) < c);
  }
}

TEST_CASE("achievable rate input checks") {
  const Eigen::MatrixXcd h = rayleigh_channel(4, 4, 1);
  const Eigen::MatrixXcd f = Eigen::MatrixXcd::Identity(4, 2);
  const Eigen::MatrixXcd g = Eigen::MatrixXcd::Identity(2, 4);
  CHECK_THROWS_AS(achievable_rate(g, h, f, std::vector<double>{0.5, 0.6}, LinkBudget{}), ValidationError);
  CHECK_THROWS_AS(achievable_rate(g, h, f, std::vector<double>{1.5, -0.5}, LinkBudget{}), ValidationError);
  CHECK_THROWS_AS(achievable_rate(g, h, f, std::vector<double>{1.0}, LinkBudget{}), DimensionError);
  // A zero combiner row carries nothing.
  const Eigen::MatrixXcd g0 = Eigen::MatrixXcd::Zero(2, 4);
  CHECK(achievable_rate(g0, h, f, std::vector<double>{0.5, 0.5}, LinkBudget{}) == 0.0);
}

TEST_CASE("compensated sum") {
  CompensatedSum s;
  s.add(1e16);
  for (int i = 0; i < 1000; ++i) s.add(1.0);
  s.add(-1e16);
  CHECK(s.value() == 1000.0);
}
