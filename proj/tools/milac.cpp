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

// milac command-line front end.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "milac/archgraph.hpp"
#include "milac/campaign.hpp"
#include "milac/error.hpp"
#include "milac/matrix_io.hpp"

namespace {

std::vector<int> parse_dims(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
  if (out.size() != 3) throw milac::ParseError("--dims expects NS,NT,NR");
  return out;
}

int run_campaign_cmd(const std::string& config_path, const std::string& output_dir,
                     const std::string& dump_dir) {
  milac::CampaignConfig cfg = milac::CampaignConfig::load(config_path);
  if (!output_dir.empty()) cfg.output_dir = output_dir;
  milac::CampaignRunOptions opts;
  opts.workers = milac::resolve_workers(cfg.workers);
  if (!dump_dir.empty()) opts.dump_blocks_dir = dump_dir;
  const milac::CampaignResult result = milac::run_campaign(cfg, opts);
  milac::write_campaign_outputs(cfg, result);
  for (const auto& line : result.log) std::cerr << line << '\n';
  std::cout << "trials: " << result.records.size() << " records, " << result.failures
            << " failed; outputs in " << cfg.output_dir << '\n';
  return result.passed() ? 0 : 1;
}

int run_complexity_cmd(const std::vector<int>& streams, const std::vector<int>& antennas,
                       const std::string& out_path) {
  const auto rows = milac::complexity_table(streams, antennas);
  if (out_path.empty()) {
    milac::write_complexity_csv(std::cout, rows);
  } else {
    std::ofstream out(out_path);
    if (!out) throw milac::Error("cannot write " + out_path);
    milac::write_complexity_csv(out, rows);
  }
  return 0;
}

int run_verify_cmd(milac::VerifyRequest req, const std::string& dims,
                   const std::string& arch, const std::string& channel_path,
                   const std::string& tx_path, const std::string& rx_path,
                   const std::string& dump_dir) {
  const auto d = parse_dims(dims);
  req.n_streams = d[0];
  req.n_tx = d[1];
  req.n_rx = d[2];
  req.arch = milac::parse_architecture(arch);
  if (!channel_path.empty()) req.channel = milac::load_complex_csv(channel_path);
  if (!tx_path.empty()) req.b_tx = milac::load_real_csv(tx_path);
  if (!rx_path.empty()) req.b_rx = milac::load_real_csv(rx_path);
  const milac::VerifyOutcome out = milac::verify_only(req);
  if (!dump_dir.empty()) {
    if (out.tx_steps) milac::dump_tx_blocks(dump_dir, "tx", *out.tx_steps);
    if (out.rx_steps) milac::dump_rx_blocks(dump_dir, "rx", *out.rx_steps);
    milac::save_real_csv(dump_dir + "/tx_B.csv", out.b_tx);
    milac::save_real_csv(dump_dir + "/rx_B.csv", out.b_rx);
  }
  std::cout << milac::verification_report_json(out) << '\n';
  return out.passed() ? 0 : 1;
}

int run_graph_cmd(const std::string& kind, int streams, int antennas, const std::string& format) {
  milac::MilacGraph g = kind == "tx-stem"  ? milac::tx_stem_graph(streams, antennas)
                        : kind == "rx-stem" ? milac::rx_stem_graph(streams, antennas)
                                            : milac::complete_graph(streams + antennas);
  if (format == "mask") {
    milac::write_mask_csv(std::cout, milac::mask_from_graph(g));
  } else {
    milac::write_edge_list(std::cout, g);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"milac: stem-connected MiLAC design, verification and campaigns"};
  app.require_subcommand(1);

  auto* campaign = app.add_subcommand("campaign", "run a Monte Carlo campaign from a config file");
  std::string config_path, output_dir, campaign_dump;
  campaign->add_option("config", config_path, "campaign config file")->required()->check(CLI::ExistingFile);
  campaign->add_option("--output-dir", output_dir, "override output_dir from the config");
  campaign->add_option("--dump-blocks", campaign_dump, "write stem blocks of trial 0 per grid point");

  auto* complexity = app.add_subcommand("complexity", "circuit complexity table (CSV)");
  std::vector<int> streams, antennas;
  std::string complexity_out;
  complexity->add_option("--streams", streams, "N_S values")->required()->delimiter(',');
  complexity->add_option("--antennas", antennas, "N values")->required()->delimiter(',');
  complexity->add_option("--out", complexity_out, "output file (default stdout)");

  auto* verify = app.add_subcommand("verify", "optimize and verify one channel realization");
  milac::VerifyRequest req;
  std::string dims, arch = "stem", channel_path, tx_path, rx_path, verify_dump;
  verify->add_option("--seed", req.seed, "channel seed");
  verify->add_option("--dims", dims, "NS,NT,NR")->required();
  verify->add_option("--arch", arch, "stem or fully")->check(CLI::IsMember({"stem", "fully"}));
  verify->add_option("--channel", channel_path, "channel CSV (N_R x N_T) instead of a seed")->check(CLI::ExistingFile);
  verify->add_option("--tx-susceptance", tx_path, "transmitter B CSV instead of the optimizer")->check(CLI::ExistingFile);
  verify->add_option("--rx-susceptance", rx_path, "receiver B CSV instead of the optimizer")->check(CLI::ExistingFile);
  verify->add_option("--y0", req.y0, "reference admittance (S)");
  verify->add_option("--snr-db", req.snr_db, "P_T / sigma^2 in dB");
  verify->add_option("--tol", req.tol_verify, "scattering residual tolerance");
  verify->add_option("--dump-blocks", verify_dump, "write intermediate blocks as CSV");

  auto* graph = app.add_subcommand("graph", "export an architecture graph");
  std::string kind = "tx-stem", format = "edges";
  int g_streams = 1, g_antennas = 1;
  graph->add_option("kind", kind, "tx-stem, rx-stem or fully")->check(CLI::IsMember({"tx-stem", "rx-stem", "fully"}));
  graph->add_option("--streams", g_streams)->required();
  graph->add_option("--antennas", g_antennas)->required();
  graph->add_option("--format", format, "edges or mask")->check(CLI::IsMember({"edges", "mask"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (campaign->parsed()) return run_campaign_cmd(config_path, output_dir, campaign_dump);
    if (complexity->parsed()) return run_complexity_cmd(streams, antennas, complexity_out);
    if (verify->parsed())
      return run_verify_cmd(req, dims, arch, channel_path, tx_path, rx_path, verify_dump);
    if (graph->parsed()) return run_graph_cmd(kind, g_streams, g_antennas, format);
  } catch (const std::exception& e) {
    std::cerr << "milac: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
