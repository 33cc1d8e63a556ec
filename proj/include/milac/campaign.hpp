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

// Monte Carlo campaigns over (N_S, N) grids, the complexity table, and
// single-realization verification.
//
// Config file grammar (one `key = value` per line, `#` starts a comment,
// list values are comma separated):
//
//   streams        = 4, 8, 12, 16      N_S values (required)
//   antennas       = 16, 32, 64        N_T = N_R values (required)
//   snr_db         = 0, 10             P_T / sigma^2 in dB (required)
//   trials         = 100               channels per (N_S, N), default 100
//   seed           = 1                 master seed, default 0
//   architectures  = stem, fully       default both
//   y0             = 0.02              reference admittance, default 1/50
//   tol_verify     = 1e-8              scattering-residual limit
//   tol_rate       = 1e-9              relative |rate - C| limit
//   output_dir     = out               default "."
//   workers        = 4                 0 = hardware concurrency
//
// The environment variable MILAC_WORKERS overrides `workers`.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "milac/chancap.hpp"
#include "milac/netcore.hpp"
#include "milac/stemopt.hpp"

namespace milac {

enum class Architecture { kStem, kFully };

const char* to_string(Architecture a);
Architecture parse_architecture(const std::string& name);

struct CampaignConfig {
  std::vector<int> n_streams;
  std::vector<int> n_antennas;
  std::vector<double> snr_db;
  int trials = 100;
  std::uint64_t seed = 0;
  std::vector<Architecture> architectures{Architecture::kStem, Architecture::kFully};
  double y0 = kDefaultY0;
  double tol_verify = 1e-8;
  double tol_rate = 1e-9;
  std::string output_dir = ".";
  int workers = 0;

  bool uses(Architecture a) const;
  // Throws ValidationError on empty lists, N_S > N, trials < 1, y0 <= 0, ...
  void validate() const;

  static CampaignConfig parse(std::istream& is);
  static CampaignConfig load(const std::string& path);
};

// Worker count after the MILAC_WORKERS override; always >= 1.
int resolve_workers(int configured);

// Outcome of one architecture (tx and rx MiLACs) on one channel.
struct ArchOutcome {
  bool ran = false;
  bool ok = false;  // optimizers succeeded and every check passed
  double max_residual = 0.0;  // largest scattering / lossless / symmetry residual
  int attempts_tx = 0;        // stem regularization attempts (1 = raw target)
  int attempts_rx = 0;
  std::string error;          // optimizer failure, empty if none
  Eigen::MatrixXcd f;         // realized precoder, N_T x N_S
  Eigen::MatrixXcd g;         // realized combiner, N_S x N_R
};

struct TrialRecord {
  int grid = 0;  // index into the (N_S, N) grid, streams-major
  int trial = 0;
  std::uint64_t seed = 0;
  int n_streams = 0;
  int n_tx = 0;
  int n_rx = 0;
  double snr_db = 0.0;
  std::optional<double> rate_stem;
  std::optional<double> rate_fully;
  double capacity = 0.0;
  std::optional<double> residual_stem;
  std::optional<double> residual_fully;
  int attempts_stem_tx = 0;
  int attempts_stem_rx = 0;
  double wall_seconds = 0.0;  // optimizer + verification time, not written to CSV
  bool passed = true;
};

struct SummaryRow {
  int n_streams = 0;
  int n_antennas = 0;
  double snr_db = 0.0;
  std::string series;  // stem, fully or capacity
  double mean = 0.0;
  double stddev = 0.0;
  int trials = 0;
};

struct CampaignResult {
  std::vector<TrialRecord> records;  // grid, then trial, then SNR order
  std::vector<SummaryRow> summary;
  std::vector<std::string> log;      // degeneracy retries and failures
  std::size_t failures = 0;
  bool passed() const { return failures == 0; }
};

struct CampaignRunOptions {
  int workers = 1;
  // When set, the stem blocks of trial 0 of every grid point are written here.
  std::optional<std::string> dump_blocks_dir;
};

CampaignResult run_campaign(const CampaignConfig& config, const CampaignRunOptions& opts);

// Per-trial and summary CSVs, each starting with `# milac-kit v1`.
void write_trial_csv(std::ostream& os, const CampaignResult& result);
void write_summary_csv(std::ostream& os, const CampaignResult& result);
// Writes trials.csv, summary.csv and campaign.log into config.output_dir.
void write_campaign_outputs(const CampaignConfig& config, const CampaignResult& result);

struct ComplexityRow {
  int n_streams = 0;
  int n_antennas = 0;
  std::size_t stem = 0;
  std::size_t fully = 0;
  bool graph_checked = false;  // both values equal graph-counted complexity
};

// Rows for every (N_S, N) with N >= N_S; the closed forms are cross-checked
// against explicitly built graphs when N_S + N <= graph_check_limit.
std::vector<ComplexityRow> complexity_table(const std::vector<int>& n_streams,
                                            const std::vector<int>& n_antennas,
                                            int graph_check_limit = 600);
void write_complexity_csv(std::ostream& os, const std::vector<ComplexityRow>& rows);

// Inputs of a single-realization verification.
struct VerifyRequest {
  int n_streams = 1;
  int n_tx = 1;
  int n_rx = 1;
  std::uint64_t seed = 0;
  std::optional<Eigen::MatrixXcd> channel;   // replaces the seeded channel
  Architecture arch = Architecture::kStem;
  std::optional<Eigen::MatrixXd> b_tx;       // replaces the optimizer output
  std::optional<Eigen::MatrixXd> b_rx;
  double y0 = kDefaultY0;
  double snr_db = 10.0;
  double tol_verify = 1e-8;
  double tol_rate = 1e-9;
};

struct VerifyOutcome {
  VerifyRequest request;
  ChannelRealization channel;
  Eigen::MatrixXd b_tx;
  Eigen::MatrixXd b_rx;
  Eigen::MatrixXcd v_target;  // column phases aligned with the realized precoder
  Eigen::MatrixXcd u_target;
  VerificationReport tx;
  VerificationReport rx;
  LosslessReciprocalReport tx_lossless;
  LosslessReciprocalReport rx_lossless;
  double rate = 0.0;
  double capacity = 0.0;
  std::string error;  // optimizer or scattering failure
  std::optional<TxStemSteps> tx_steps;
  std::optional<RxStemSteps> rx_steps;

  double rate_gap() const { return rate - capacity; }
  bool passed() const;
};

VerifyOutcome verify_only(const VerifyRequest& request);

// JSON text of a verification outcome.
std::string verification_report_json(const VerifyOutcome& outcome);

// Each intermediate block as a real CSV named <prefix>_<block>.csv.
void dump_tx_blocks(const std::string& dir, const std::string& prefix, const TxStemSteps& st);
void dump_rx_blocks(const std::string& dir, const std::string& prefix, const RxStemSteps& st);

}  // namespace milac
