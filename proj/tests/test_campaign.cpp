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
#include <cstdlib>
#include <sstream>

#include "milac/campaign.hpp"
#include "milac/error.hpp"
#include "milac/stemopt.hpp"

using namespace milac;

namespace {

CampaignConfig small_config() {
  std::istringstream in(
      "# small grid\n"
      "streams = 1, 2\n"
      "antennas = 4, 6\n"
      "snr_db = 0, 10\n"
      "trials = 3\n"
      "seed = 17\n");
  return CampaignConfig::parse(in);
}

std::string trial_csv(const CampaignResult& r) {
  std::ostringstream os;
  write_trial_csv(os, r);
  return os.str();
}

}  // namespace

TEST_CASE("config parsing") {
  const CampaignConfig cfg = small_config();
  CHECK(cfg.n_streams == std::vector<int>{1, 2});
  CHECK(cfg.n_antennas == std::vector<int>{4, 6});
  CHECK(cfg.snr_db == std::vector<double>{0.0, 10.0});
  CHECK(cfg.trials == 3);
  CHECK(cfg.seed == 17);
  CHECK(cfg.uses(Architecture::kStem));
  CHECK(cfg.uses(Architecture::kFully));
  CHECK(cfg.y0 == kDefaultY0);

  std::istringstream full(
      "streams=4\nantennas=16\nsnr_db=-5.5\narchitectures = stem\ny0 = 1\n"
      "tol_verify = 1e-7\ntol_rate=1e-8\noutput_dir = out dir\nworkers = 3\n"
      "seed = 18446744073709551615\n");
  const CampaignConfig c2 = CampaignConfig::parse(full);
  CHECK_FALSE(c2.uses(Architecture::kFully));
  CHECK(c2.snr_db[0] == -5.5);
  CHECK(c2.output_dir == "out dir");
  CHECK(c2.workers == 3);
  CHECK(c2.seed == 18446744073709551615ull);
  CHECK(c2.tol_verify == 1e-7);
}

TEST_CASE("config errors") {
  auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return CampaignConfig::parse(in);
  };
  CHECK_THROWS_AS(parse("streams = 8\nantennas = 4\nsnr_db = 0\n"), ValidationError);
  CHECK_THROWS_AS(parse("streams = 1\nantennas = 4\n"), ParseError);
  CHECK_THROWS_AS(parse("streams = 1\nantennas = 4\nsnr_db = 0\ncolor = red\n"), ParseError);
  CHECK_THROWS_AS(parse("streams = 1\nantennas = 4\nsnr_db = 0\ntrials = 0\n"), ValidationError);
  CHECK_THROWS_AS(parse("streams = 1\nantennas = 4\nsnr_db = 0\ntrials = two\n"), ParseError);
  CHECK_THROWS_AS(parse("streams = 1\nstreams = 2\nantennas = 4\nsnr_db = 0\n"), ParseError);
  CHECK_THROWS_AS(parse("streams = 1\nantennas = 4\nsnr_db = 0\narchitectures = hybrid\n"), ParseError);
  CHECK_THROWS_AS(parse("streams 1\n"), ParseError);
  CHECK_THROWS_AS(parse("streams = 1\nantennas = 4\nsnr_db = 0\ny0 = -1\n"), ValidationError);
}

TEST_CASE("small campaign reaches capacity") {
  const CampaignConfig cfg = small_config();
  const CampaignResult r = run_campaign(cfg, {1, std::nullopt});
  CHECK(r.passed());
  CHECK(r.records.size() == 4 * 3 * 2);
  for (const TrialRecord& rec : r.records) {
    REQUIRE(rec.rate_stem);
    REQUIRE(rec.rate_fully);
    CHECK(std::abs(*rec.rate_stem - rec.capacity) <= 1e-9 * rec.capacity);
    CHECK(std::abs(*rec.rate_fully - rec.capacity) <= 1e-9 * rec.capacity);
    CHECK(*rec.residual_stem <= 1e-8);
    CHECK(rec.capacity > 0.0);
    // Single-stream targets are always phase-regularized.
    if (rec.n_streams == 1) CHECK(rec.attempts_stem_tx >= 2);
  }
  // Summary: stem, fully, capacity per (grid, snr).
  CHECK(r.summary.size() == 4 * 2 * 3);
  for (std::size_t i = 0; i < r.summary.size(); i += 3) {
    CHECK(r.summary[i].series == "stem");
    CHECK(r.summary[i + 2].series == "capacity");
    CHECK(r.summary[i].mean == doctest::Approx(r.summary[i + 2].mean).epsilon(1e-12));
    CHECK(r.summary[i + 1].mean == doctest::Approx(r.summary[i + 2].mean).epsilon(1e-12));
    CHECK(r.summary[i].trials == 3);
  }
  // Higher SNR, higher capacity on the same channel.
  CHECK(r.records[1].capacity > r.records[0].capacity);
  CHECK(r.records[0].seed == r.records[1].seed);
}

TEST_CASE("campaign output is deterministic") {
  const CampaignConfig cfg = small_config();
  const std::string serial = trial_csv(run_campaign(cfg, {1, std::nullopt}));
  const std::string parallel = trial_csv(run_campaign(cfg, {4, std::nullopt}));
  CHECK(serial == parallel);
  CHECK(serial.rfind("# milac-kit v1\n", 0) == 0);

  CampaignConfig other = cfg;
  other.seed = 18;
  CHECK(trial_csv(run_campaign(other, {2, std::nullopt})) != serial);
}

TEST_CASE("stem-only campaign leaves fully columns empty") {
  CampaignConfig cfg = small_config();
  cfg.architectures = {Architecture::kStem};
  cfg.trials = 1;
  const CampaignResult r = run_campaign(cfg, {1, std::nullopt});
  CHECK_FALSE(r.records[0].rate_fully);
  const std::string csv = trial_csv(r);
  CHECK(csv.find(",,") != std::string::npos);
  std::ostringstream summary;
  write_summary_csv(summary, r);
  CHECK(summary.str().find("fully") == std::string::npos);
}

TEST_CASE("worker resolution") {
  ::unsetenv("MILAC_WORKERS");
  CHECK(resolve_workers(3) == 3);
  CHECK(resolve_workers(0) >= 1);
  ::setenv("MILAC_WORKERS", "5", 1);
  CHECK(resolve_workers(3) == 5);
  ::setenv("MILAC_WORKERS", "five", 1);
  CHECK_THROWS_AS(resolve_workers(3), ParseError);
  ::unsetenv("MILAC_WORKERS");
}

TEST_CASE("complexity table") {
  const auto rows = complexity_table({1, 4}, {1, 2, 3, 4, 100});
  REQUIRE(rows.size() == 5 + 2);
  CHECK(rows[0].stem == 3);
  CHECK(rows[0].fully == 3);
  const ComplexityRow& big = rows.back();
  CHECK(big.n_streams == 4);
  CHECK(big.n_antennas == 100);
  CHECK(big.stem == 804);
  CHECK(big.fully == 5460);
  for (const auto& r : rows) CHECK(r.graph_checked);

  std::vector<int> ns{3};
  std::vector<int> n;
  for (int k = 3; k <= 40; ++k) n.push_back(k);
  const auto series = complexity_table(ns, n, 0);
  for (std::size_t i = 2; i < series.size(); ++i) {
    const auto d2 = [&](auto pick) {
      return static_cast<long>(pick(series[i])) - 2 * static_cast<long>(pick(series[i - 1])) +
             static_cast<long>(pick(series[i - 2]));
    };
    CHECK(d2([](const ComplexityRow& r) { return r.stem; }) == 0);
    CHECK(d2([](const ComplexityRow& r) { return r.fully; }) == 1);
    CHECK_FALSE(series[i].graph_checked);
  }
  std::ostringstream os;
  write_complexity_csv(os, rows);
  CHECK(os.str().find("4,100,804,5460,1") != std::string::npos);
}

TEST_CASE("verify_only") {
  VerifyRequest req;
  req.n_streams = 3;
  req.n_tx = 8;
  req.n_rx = 7;
  req.seed = 5;
  const VerifyOutcome ok = verify_only(req);
  CHECK(ok.passed());
  CHECK(ok.tx_steps);
  CHECK(std::abs(ok.rate_gap()) <= 1e-9 * ok.capacity);
  CHECK(ok.tx.scattering_residual <= 1e-8);

  VerifyRequest zero = req;
  zero.b_tx = Eigen::MatrixXd::Zero(11, 11);
  const VerifyOutcome z = verify_only(zero);
  CHECK_FALSE(z.passed());
  CHECK(z.tx.condition_residual == doctest::Approx(kDefaultY0 * std::sqrt(6.0)).epsilon(1e-12));
  CHECK(z.rate == 0.0);

  VerifyRequest bad = req;
  Eigen::MatrixXd b = ok.b_tx;
  b(9, 10) = b(10, 9) = 1e-3;
  bad.b_tx = b;
  const VerifyOutcome c = verify_only(bad);
  CHECK_FALSE(c.tx.mask_ok);
  CHECK_FALSE(c.passed());
  const std::string json = verification_report_json(c);
  CHECK(json.find("\"mask_ok\": false") != std::string::npos);
  CHECK(json.find("\"passed\": false") != std::string::npos);

  // Supplying the optimizer's own output reproduces the report.
  VerifyRequest same = req;
  same.b_tx = ok.b_tx;
  same.b_rx = ok.b_rx;
  CHECK(verify_only(same).passed());

  VerifyRequest fully = req;
  fully.arch = Architecture::kFully;
  CHECK(verify_only(fully).passed());

  VerifyRequest wrong = req;
  wrong.b_tx = Eigen::MatrixXd::Zero(4, 4);
  CHECK_THROWS_AS(verify_only(wrong), DimensionError);
  VerifyRequest too_many = req;
  too_many.n_streams = 9;
  CHECK_THROWS_AS(verify_only(too_many), ValidationError);
}
