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
#include <map>
#include <random>

#include "milac/error.hpp"
#include "milac/netcore.hpp"
#include "oracles.hpp"

using namespace milac;

TEST_CASE("susceptance storage") {
  SusceptanceMatrix b(3);
  b.set(2, 0, 0.5);
  CHECK(b(0, 2) == 0.5);
  CHECK(b(2, 0) == 0.5);
  const Eigen::MatrixXd d = b.dense();
  CHECK(d(0, 2) == 0.5);
  CHECK(d(2, 0) == 0.5);
  CHECK(d.sum() == doctest::Approx(1.0));

  Eigen::MatrixXd a(2, 2);
  a << 1.0, 2.0, 2.0 + 1e-12, 3.0;
  CHECK(SusceptanceMatrix::from_dense(a)(0, 1) == doctest::Approx(2.0));
  a(1, 0) = 2.1;
  CHECK_THROWS_AS(SusceptanceMatrix::from_dense(a), ValidationError);
  CHECK_THROWS_AS(SusceptanceMatrix::from_dense(Eigen::MatrixXd::Zero(2, 3)), ValidationError);
}

TEST_CASE("admittance assembly from components") {
  // Two ports joined by a capacitor, port 0 shunted to ground.
  std::map<std::pair<int, int>, cplx> comps{{{0, 1}, {0.0, 0.03}}, {{0, 0}, {0.0, -0.01}}};
  const AdmittanceMatrix y = assemble_admittance(comps, 2);
  CHECK(std::abs(y.y(0, 0) - cplx(0.0, 0.02)) < 1e-15);
  CHECK(std::abs(y.y(1, 1) - cplx(0.0, 0.03)) < 1e-15);
  CHECK(std::abs(y.y(0, 1) - cplx(0.0, -0.03)) < 1e-15);
  CHECK(y.y == y.y.transpose());

  std::map<std::pair<int, int>, cplx> both{{{0, 1}, 1.0}, {{1, 0}, 1.0}};
  CHECK_THROWS_AS(assemble_admittance(both, 2), ValidationError);
  std::map<std::pair<int, int>, cplx> outside{{{0, 2}, 1.0}};
  CHECK_THROWS_AS(assemble_admittance(outside, 2), ValidationError);
}

TEST_CASE("scattering matches wave-based oracle") {
  std::mt19937_64 rng(11);
  for (double y0 : {0.01, 0.02, 1.0}) {
    for (int n : {1, 3, 7}) {
      const Eigen::MatrixXd b = y0 * oracle::random_symmetric(n, rng);
      const ScatteringMatrix theta = scattering_from_admittance(AdmittanceMatrix::lossless(b, y0));
      const Eigen::MatrixXcd ref = oracle::scattering_from_waves(b, y0);
      CHECK((theta.theta - ref).norm() < 1e-12);
      const LosslessReciprocalReport rep = check_lossless_reciprocal(theta);
      CHECK(rep.ok(1e-12));
    }
  }
}

TEST_CASE("scattering round trip and scale invariance") {
  std::mt19937_64 rng(12);
  const Eigen::MatrixXd bn = oracle::random_symmetric(6, rng);
  const ScatteringMatrix t1 = scattering_from_admittance(AdmittanceMatrix::lossless(0.02 * bn, 0.02));
  const ScatteringMatrix t2 = scattering_from_admittance(AdmittanceMatrix::lossless(bn, 1.0));
  CHECK((t1.theta - t2.theta).norm() < 1e-12);

  const AdmittanceMatrix back = admittance_from_scattering(t1, 0.02);
  CHECK((back.y - cplx(0.0, 1.0) * (0.02 * bn).cast<cplx>()).norm() < 1e-12);
}

TEST_CASE("precoder and combiner blocks") {
  std::mt19937_64 rng(13);
  const int ns = 2;
  const int n = 5;
  const double y0 = 0.02;
  const Eigen::MatrixXd b = y0 * oracle::random_symmetric(ns + n, rng);
  const AdmittanceMatrix y = AdmittanceMatrix::lossless(b, y0);
  const Eigen::MatrixXcd theta = oracle::scattering_from_waves(b, y0);

  const Precoder f = precoder_from_admittance(y, ns, n);
  CHECK(f.rows() == n);
  CHECK(f.cols() == ns);
  CHECK((f - 0.5 * theta.block(ns, 0, n, ns)).norm() < 1e-12);
  CHECK((f - precoder_from_scattering(scattering_from_admittance(y), ns, n)).norm() < 1e-12);

  const Combiner g = combiner_from_admittance(y, ns, n);
  CHECK(g.rows() == ns);
  CHECK(g.cols() == n);
  CHECK((g - 0.5 * theta.block(n, 0, ns, n)).norm() < 1e-12);
  CHECK((g - combiner_from_scattering(scattering_from_admittance(y), ns, n)).norm() < 1e-12);

  CHECK_THROWS_AS(precoder_from_admittance(y, 3, 5), DimensionError);
}

TEST_CASE("ill-conditioned inversion is rejected") {
  // I + Theta singular for Theta = -I (short circuits).
  const ScatteringMatrix shorted{-Eigen::MatrixXcd::Identity(3, 3)};
  CHECK_THROWS_AS(admittance_from_scattering(shorted, 0.02), NumericalError);
  // Y0 I + Y singular for a resistive network with Y = -Y0 I.
  const AdmittanceMatrix neg{-0.02 * Eigen::MatrixXcd::Identity(2, 2), 0.02};
  CHECK_THROWS_AS(scattering_from_admittance(neg), NumericalError);
}

TEST_CASE("lossy networks fail the unitarity check") {
  const AdmittanceMatrix r{0.01 * Eigen::MatrixXcd::Identity(2, 2), 0.02};
  const LosslessReciprocalReport rep = check_lossless_reciprocal(scattering_from_admittance(r));
  CHECK(rep.unitarity_residual > 0.1);
  CHECK(rep.symmetry_residual < 1e-15);
}
