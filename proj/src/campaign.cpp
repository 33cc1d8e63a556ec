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

#include "milac/campaign.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "milac/archgraph.hpp"
#include "milac/error.hpp"
#include "milac/matrix_io.hpp"
#include "milac/seeding.hpp"

namespace milac {

namespace {

constexpr const char* kCsvVersion = "# milac-kit v1";

// Stream tags for derive_seed.
constexpr std::uint64_t kTagTxPhase = 1;
constexpr std::uint64_t kTagRxPhase = 2;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

template <typename T>
T parse_number(const std::string& text, const std::string& key) {
  T value{};
  const char* first = text.data();
  const char* last = first + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) {
    throw ParseError("invalid value '" + text + "' for key '" + key + "'");
  }
  return value;
}

template <typename T>
std::vector<T> parse_list(const std::string& value, const std::string& key) {
  std::vector<T> out;
  for (const auto& item : split_list(value)) out.push_back(parse_number<T>(item, key));
  return out;
}

std::string csv_cell(const std::optional<double>& v) { return v ? format_double(*v) : ""; }

double max_lossless(const LosslessReciprocalReport& r) {
  return std::max(r.unitarity_residual, r.symmetry_residual);
}

ArchitectureMask arch_mask(Architecture arch, Side side, int n_streams, int n_antennas) {
  if (arch == Architecture::kFully) return mask_from_graph(complete_graph(n_streams + n_antennas));
  return mask_from_graph(side == Side::kTransmitter ? tx_stem_graph(n_streams, n_antennas)
                                                    : rx_stem_graph(n_streams, n_antennas));
}

// One side of one architecture: B, the realized target and its checks.
struct SideResult {
  Eigen::MatrixXd b;
  Eigen::MatrixXcd target;
  int attempts = 1;
  VerificationReport report;
  LosslessReciprocalReport lossless;
};

LosslessReciprocalReport lossless_of(const Eigen::MatrixXd& b, double y0) {
  try {
    return check_lossless_reciprocal(scattering_from_admittance(AdmittanceMatrix::lossless(b, y0)));
  } catch (const NumericalError&) {
    const double inf = std::numeric_limits<double>::infinity();
    return {inf, inf};
  }
}

SideResult run_side(Architecture arch, Side side, const Eigen::MatrixXcd& target, double y0,
                    std::uint64_t phase_seed) {
  SideResult out;
  const bool tx = side == Side::kTransmitter;
  if (arch == Architecture::kStem) {
    RegularizedSolution sol = tx ? optimize_tx_stem_regularized(target, y0, phase_seed)
                                 : optimize_rx_stem_regularized(target, y0, phase_seed);
    out.b = sol.b.dense();
    out.target = std::move(sol.target);
    out.attempts = sol.attempts;
  } else {
    out.b = (tx ? optimize_tx_fully(target, y0) : optimize_rx_fully(target, y0)).dense();
    out.target = target;
  }
  const int ns = static_cast<int>(target.cols());
  const int n = static_cast<int>(target.rows());
  const ArchitectureMask mask = arch_mask(arch, side, ns, n);
  out.report = tx ? verify_tx(out.b, out.target, y0, mask) : verify_rx(out.b, out.target, y0, mask);
  out.lossless = lossless_of(out.b, y0);
  return out;
}

ArchOutcome run_architecture(Architecture arch, const ChannelRealization& ch, double y0,
                             std::uint64_t seed, double tol_verify) {
  ArchOutcome out;
  out.ran = true;
  try {
    const SideResult tx = run_side(arch, Side::kTransmitter, ch.v_bar, y0,
                                   derive_seed(seed, kTagTxPhase, 0));
    const SideResult rx = run_side(arch, Side::kReceiver, ch.u_bar, y0,
                                   derive_seed(seed, kTagRxPhase, 0));
    out.attempts_tx = tx.attempts;
    out.attempts_rx = rx.attempts;
    out.max_residual = std::max({tx.report.scattering_residual, rx.report.scattering_residual,
                                 max_lossless(tx.lossless), max_lossless(rx.lossless)});
    out.ok = tx.report.mask_ok && rx.report.mask_ok && out.max_residual <= tol_verify;
    const int ns = ch.n_streams();
    out.f = precoder_from_admittance(AdmittanceMatrix::lossless(tx.b, y0), ns, ch.n_tx());
    out.g = combiner_from_admittance(AdmittanceMatrix::lossless(rx.b, y0), ns, ch.n_rx());
  } catch (const Error& e) {
    out.ok = false;
    out.error = e.what();
  }
  return out;
}

struct UnitResult {
  std::vector<TrialRecord> records;
  std::vector<std::string> log;
};

UnitResult run_unit(const CampaignConfig& cfg, const CampaignRunOptions& opts, int grid,
                    int trial) {
  UnitResult out;
  const int ns = cfg.n_streams[static_cast<std::size_t>(grid) / cfg.n_antennas.size()];
  const int n = cfg.n_antennas[static_cast<std::size_t>(grid) % cfg.n_antennas.size()];
  const std::uint64_t seed =
      derive_seed(cfg.seed, static_cast<std::uint64_t>(grid), static_cast<std::uint64_t>(trial));
  const std::string where = "grid " + std::to_string(grid) + " (N_S=" + std::to_string(ns) +
                            ", N=" + std::to_string(n) + ") trial " + std::to_string(trial);

  const auto start = std::chrono::steady_clock::now();
  const Eigen::MatrixXcd h = rayleigh_channel(n, n, seed);
  const ChannelRealization ch = truncated_svd(h, ns);

  ArchOutcome stem, fully;
  if (cfg.uses(Architecture::kStem)) stem = run_architecture(Architecture::kStem, ch, cfg.y0, seed, cfg.tol_verify);
  if (cfg.uses(Architecture::kFully)) fully = run_architecture(Architecture::kFully, ch, cfg.y0, seed, cfg.tol_verify);
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  for (const ArchOutcome* a : {&stem, &fully}) {
    if (!a->ran) continue;
    const char* name = a == &stem ? "stem" : "fully";
    if (!a->error.empty()) out.log.push_back(where + ": " + name + " optimizer failed: " + a->error);
    if (a->attempts_tx > 1)
      out.log.push_back(where + ": " + name + " tx target phase-regularized, attempts " +
                        std::to_string(a->attempts_tx));
    if (a->attempts_rx > 1)
      out.log.push_back(where + ": " + name + " rx target phase-regularized, attempts " +
                        std::to_string(a->attempts_rx));
  }

  if (opts.dump_blocks_dir && trial == 0 && stem.ran && stem.error.empty()) {
    // Re-derive the realized targets so the dumped blocks match the run.
    const auto tx = optimize_tx_stem_regularized(ch.v_bar, cfg.y0, derive_seed(seed, kTagTxPhase, 0));
    const auto rx = optimize_rx_stem_regularized(ch.u_bar, cfg.y0, derive_seed(seed, kTagRxPhase, 0));
    const std::string prefix = "grid" + std::to_string(grid) + "_trial0";
    dump_tx_blocks(*opts.dump_blocks_dir, prefix + "_tx", tx_stem_steps(tx.target, cfg.y0));
    dump_rx_blocks(*opts.dump_blocks_dir, prefix + "_rx", rx_stem_steps(rx.target, cfg.y0));
  }

  const Eigen::VectorXd lambda = ch.eigenvalues();
  const std::span<const double> lambda_span(lambda.data(), static_cast<std::size_t>(lambda.size()));
  for (double snr : cfg.snr_db) {
    TrialRecord rec;
    rec.grid = grid;
    rec.trial = trial;
    rec.seed = seed;
    rec.n_streams = ns;
    rec.n_tx = n;
    rec.n_rx = n;
    rec.snr_db = snr;
    rec.wall_seconds = wall;
    const LinkBudget link = LinkBudget::from_snr_db(snr);
    const PowerAllocation alloc = water_filling(lambda_span, link);
    rec.capacity = capacity(lambda_span, alloc.p, link);

    auto evaluate = [&](const ArchOutcome& a, std::optional<double>& rate,
                        std::optional<double>& residual, const char* name) {
      if (!a.ran) return;
      if (!a.error.empty()) {
        rec.passed = false;
        return;
      }
      rate = achievable_rate(a.g, h, a.f, alloc.p, link);
      residual = a.max_residual;
      const double gap = std::abs(*rate - rec.capacity);
      if (!a.ok || !(gap <= cfg.tol_rate * rec.capacity)) {
        rec.passed = false;
        out.log.push_back(where + " snr " + format_double(snr) + " dB: " + name +
                          " verification failed (residual " + format_double(a.max_residual) +
                          ", rate gap " + format_double(gap) + ")");
      }
    };
    evaluate(stem, rec.rate_stem, rec.residual_stem, "stem");
    evaluate(fully, rec.rate_fully, rec.residual_fully, "fully");
    rec.attempts_stem_tx = stem.attempts_tx;
    rec.attempts_stem_rx = stem.attempts_rx;
    out.records.push_back(std::move(rec));
  }
  return out;
}

void summarize(const CampaignConfig& cfg, CampaignResult& result) {
  const std::size_t n_snr = cfg.snr_db.size();
  const std::size_t n_grid = cfg.n_streams.size() * cfg.n_antennas.size();
  const std::size_t trials = static_cast<std::size_t>(cfg.trials);
  for (std::size_t grid = 0; grid < n_grid; ++grid) {
    for (std::size_t si = 0; si < n_snr; ++si) {
      auto series = [&](const char* name, auto pick) {
        std::vector<double> values;
        for (std::size_t t = 0; t < trials; ++t) {
          const TrialRecord& rec = result.records[(grid * trials + t) * n_snr + si];
          if (std::optional<double> v = pick(rec)) values.push_back(*v);
        }
        SummaryRow row;
        row.n_streams = cfg.n_streams[grid / cfg.n_antennas.size()];
        row.n_antennas = cfg.n_antennas[grid % cfg.n_antennas.size()];
        row.snr_db = cfg.snr_db[si];
        row.series = name;
        row.trials = static_cast<int>(values.size());
        if (!values.empty()) {
          CompensatedSum sum;
          for (double v : values) sum.add(v);
          row.mean = sum.value() / static_cast<double>(values.size());
          CompensatedSum sq;
          for (double v : values) sq.add((v - row.mean) * (v - row.mean));
          row.stddev = values.size() > 1
                           ? std::sqrt(sq.value() / static_cast<double>(values.size() - 1))
                           : 0.0;
        }
        result.summary.push_back(std::move(row));
      };
      if (cfg.uses(Architecture::kStem))
        series("stem", [](const TrialRecord& r) { return r.rate_stem; });
      if (cfg.uses(Architecture::kFully))
        series("fully", [](const TrialRecord& r) { return r.rate_fully; });
      series("capacity", [](const TrialRecord& r) { return std::optional<double>(r.capacity); });
    }
  }
}

}  // namespace

const char* to_string(Architecture a) { return a == Architecture::kStem ? "stem" : "fully"; }

Architecture parse_architecture(const std::string& name) {
  if (name == "stem") return Architecture::kStem;
  if (name == "fully") return Architecture::kFully;
  throw ParseError("unknown architecture '" + name + "' (expected stem or fully)");
}

bool CampaignConfig::uses(Architecture a) const {
  return std::find(architectures.begin(), architectures.end(), a) != architectures.end();
}

void CampaignConfig::validate() const {
  if (n_streams.empty()) throw ValidationError("config: streams is empty");
  if (n_antennas.empty()) throw ValidationError("config: antennas is empty");
  if (snr_db.empty()) throw ValidationError("config: snr_db is empty");
  if (architectures.empty()) throw ValidationError("config: architectures is empty");
  if (trials < 1) throw ValidationError("config: trials must be >= 1");
  if (!(y0 > 0.0)) throw ValidationError("config: y0 must be positive");
  if (!(tol_verify > 0.0) || !(tol_rate > 0.0))
    throw ValidationError("config: tolerances must be positive");
  if (workers < 0) throw ValidationError("config: workers must be >= 0");
  for (int ns : n_streams)
    if (ns < 1) throw ValidationError("config: streams must be >= 1");
  for (int ns : n_streams)
    for (int n : n_antennas)
      if (ns > n) {
        throw ValidationError("config: infeasible grid point N_S=" + std::to_string(ns) +
                              " > N=" + std::to_string(n));
      }
  for (double s : snr_db)
    if (!std::isfinite(s)) throw ValidationError("config: snr_db must be finite");
}

CampaignConfig CampaignConfig::parse(std::istream& is) {
  CampaignConfig cfg;
  std::string line;
  int lineno = 0;
  std::vector<std::string> seen;
  while (std::getline(is, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ParseError("config line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (std::find(seen.begin(), seen.end(), key) != seen.end())
      throw ParseError("config line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
    seen.push_back(key);
    if (key == "streams") {
      cfg.n_streams = parse_list<int>(value, key);
    } else if (key == "antennas") {
      cfg.n_antennas = parse_list<int>(value, key);
    } else if (key == "snr_db") {
      cfg.snr_db = parse_list<double>(value, key);
    } else if (key == "trials") {
      cfg.trials = parse_number<int>(value, key);
    } else if (key == "seed") {
      cfg.seed = parse_number<std::uint64_t>(value, key);
    } else if (key == "architectures") {
      cfg.architectures.clear();
      for (const auto& name : split_list(value)) {
        const Architecture a = parse_architecture(name);
        if (!cfg.uses(a)) cfg.architectures.push_back(a);
      }
    } else if (key == "y0") {
      cfg.y0 = parse_number<double>(value, key);
    } else if (key == "tol_verify") {
      cfg.tol_verify = parse_number<double>(value, key);
    } else if (key == "tol_rate") {
      cfg.tol_rate = parse_number<double>(value, key);
    } else if (key == "output_dir") {
      cfg.output_dir = value;
    } else if (key == "workers") {
      cfg.workers = parse_number<int>(value, key);
    } else {
      throw ParseError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
  }
  for (const char* required : {"streams", "antennas", "snr_db"})
    if (std::find(seen.begin(), seen.end(), required) == seen.end())
      throw ParseError(std::string("config: missing required key '") + required + "'");
  cfg.validate();
  return cfg;
}

CampaignConfig CampaignConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config file " + path);
  return parse(in);
}

int resolve_workers(int configured) {
  int workers = configured;
  if (const char* env = std::getenv("MILAC_WORKERS"); env != nullptr && *env != '\0') {
    workers = parse_number<int>(trim(env), "MILAC_WORKERS");
    if (workers < 0) throw ValidationError("MILAC_WORKERS must be >= 0");
  }
  if (workers == 0) workers = static_cast<int>(std::thread::hardware_concurrency());
  return std::max(workers, 1);
}

CampaignResult run_campaign(const CampaignConfig& config, const CampaignRunOptions& opts) {
  config.validate();
  if (opts.dump_blocks_dir) std::filesystem::create_directories(*opts.dump_blocks_dir);
  const int n_grid = static_cast<int>(config.n_streams.size() * config.n_antennas.size());
  const int n_units = n_grid * config.trials;
  std::vector<UnitResult> units(static_cast<std::size_t>(n_units));
  std::vector<std::string> errors(static_cast<std::size_t>(n_units));

  std::atomic<int> next{0};
  auto worker = [&] {
    for (int u = next++; u < n_units; u = next++) {
      try {
        units[static_cast<std::size_t>(u)] = run_unit(config, opts, u / config.trials, u % config.trials);
      } catch (const std::exception& e) {
        errors[static_cast<std::size_t>(u)] = e.what();
      }
    }
  };
  const int n_workers = std::min(std::max(opts.workers, 1), std::max(n_units, 1));
  if (n_workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < n_workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors)
    if (!e.empty()) throw Error("campaign trial failed: " + e);

  CampaignResult result;
  for (auto& unit : units) {
    for (auto& rec : unit.records) {
      if (!rec.passed) ++result.failures;
      result.records.push_back(std::move(rec));
    }
    for (auto& line : unit.log) result.log.push_back(std::move(line));
  }
  summarize(config, result);
  return result;
}

void write_trial_csv(std::ostream& os, const CampaignResult& result) {
  os << kCsvVersion << '\n'
     << "grid,trial,seed,N_S,N_T,N_R,snr_db,rate_stem,rate_fully,capacity,"
        "max_residual_stem,max_residual_fully,attempts_stem_tx,attempts_stem_rx,passed\n";
  for (const TrialRecord& r : result.records) {
    os << r.grid << ',' << r.trial << ',' << r.seed << ',' << r.n_streams << ',' << r.n_tx << ','
       << r.n_rx << ',' << format_double(r.snr_db) << ',' << csv_cell(r.rate_stem) << ','
       << csv_cell(r.rate_fully) << ',' << format_double(r.capacity) << ','
       << csv_cell(r.residual_stem) << ',' << csv_cell(r.residual_fully) << ','
       << r.attempts_stem_tx << ',' << r.attempts_stem_rx << ',' << (r.passed ? 1 : 0) << '\n';
  }
}

void write_summary_csv(std::ostream& os, const CampaignResult& result) {
  os << kCsvVersion << '\n' << "N_S,N,snr_db,series,mean,std,trials\n";
  for (const SummaryRow& r : result.summary) {
    os << r.n_streams << ',' << r.n_antennas << ',' << format_double(r.snr_db) << ',' << r.series
       << ',' << format_double(r.mean) << ',' << format_double(r.stddev) << ',' << r.trials
       << '\n';
  }
}

void write_campaign_outputs(const CampaignConfig& config, const CampaignResult& result) {
  const std::filesystem::path dir(config.output_dir);
  std::filesystem::create_directories(dir);
  auto open = [&](const char* name) {
    std::ofstream out(dir / name, std::ios::binary);
    if (!out) throw Error("cannot write " + (dir / name).string());
    return out;
  };
  {
    auto out = open("trials.csv");
    write_trial_csv(out, result);
  }
  {
    auto out = open("summary.csv");
    write_summary_csv(out, result);
  }
  auto log = open("campaign.log");
  for (const auto& line : result.log) log << line << '\n';
}

std::vector<ComplexityRow> complexity_table(const std::vector<int>& n_streams,
                                            const std::vector<int>& n_antennas,
                                            int graph_check_limit) {
  std::vector<ComplexityRow> rows;
  for (int ns : n_streams) {
    if (ns < 1) throw ValidationError("complexity: streams must be >= 1");
    for (int n : n_antennas) {
      if (n < 1) throw ValidationError("complexity: antennas must be >= 1");
      if (n < ns) continue;
      ComplexityRow row;
      row.n_streams = ns;
      row.n_antennas = n;
      row.stem = stem_complexity(static_cast<std::size_t>(ns), static_cast<std::size_t>(n));
      row.fully = fully_complexity(static_cast<std::size_t>(ns), static_cast<std::size_t>(n));
      if (ns + n <= graph_check_limit) {
        const std::size_t stem_tx = circuit_complexity(tx_stem_graph(ns, n)).count;
        const std::size_t stem_rx = circuit_complexity(rx_stem_graph(ns, n)).count;
        const std::size_t full = circuit_complexity(complete_graph(ns + n)).count;
        if (stem_tx != row.stem || stem_rx != row.stem || full != row.fully) {
          throw Error("complexity mismatch at N_S=" + std::to_string(ns) +
                      ", N=" + std::to_string(n));
        }
        row.graph_checked = true;
      }
      rows.push_back(row);
    }
  }
  return rows;
}

void write_complexity_csv(std::ostream& os, const std::vector<ComplexityRow>& rows) {
  os << kCsvVersion << '\n' << "N_S,N,stem,fully,graph_checked\n";
  for (const auto& r : rows)
    os << r.n_streams << ',' << r.n_antennas << ',' << r.stem << ',' << r.fully << ','
       << (r.graph_checked ? 1 : 0) << '\n';
}

namespace {

// Rotates each target column onto the realized output column.
Eigen::MatrixXcd align_phases(const Eigen::MatrixXcd& target, const Eigen::MatrixXcd& realized) {
  Eigen::MatrixXcd out = target;
  for (Eigen::Index s = 0; s < target.cols(); ++s) {
    const cplx inner = target.col(s).dot(realized.col(s));
    if (std::abs(inner) > 0.0) out.col(s) *= inner / std::abs(inner);
  }
  return out;
}

}  // namespace

bool VerifyOutcome::passed() const {
  if (!error.empty()) return false;
  const double tol = request.tol_verify;
  return tx.passed(tol) && rx.passed(tol) && tx_lossless.ok(tol) && rx_lossless.ok(tol) &&
         std::abs(rate_gap()) <= request.tol_rate * capacity;
}

VerifyOutcome verify_only(const VerifyRequest& req) {
  VerifyOutcome out;
  out.request = req;
  if (req.n_streams < 1 || req.n_streams > std::min(req.n_tx, req.n_rx)) {
    throw ValidationError("verify: need 1 <= N_S <= min(N_T, N_R)");
  }
  if (!(req.y0 > 0.0)) throw ValidationError("verify: y0 must be positive");
  Eigen::MatrixXcd h;
  if (req.channel) {
    h = *req.channel;
    if (h.rows() != req.n_rx || h.cols() != req.n_tx) {
      throw DimensionError("verify: channel is " + std::to_string(h.rows()) + "x" +
                           std::to_string(h.cols()) + ", expected N_R x N_T");
    }
  } else {
    h = rayleigh_channel(req.n_rx, req.n_tx, req.seed);
  }
  out.channel = truncated_svd(h, req.n_streams);
  const ChannelRealization& ch = out.channel;
  const int ns = req.n_streams;

  try {
    if (req.b_tx) {
      out.b_tx = *req.b_tx;
      if (out.b_tx.rows() != ns + req.n_tx || out.b_tx.cols() != ns + req.n_tx)
        throw DimensionError("verify: transmitter susceptance must be (N_S + N_T) square");
      const Precoder f = precoder_from_admittance(AdmittanceMatrix::lossless(out.b_tx, req.y0), ns, req.n_tx);
      out.v_target = align_phases(ch.v_bar, 2.0 * f);
    } else if (req.arch == Architecture::kStem) {
      auto sol = optimize_tx_stem_regularized(ch.v_bar, req.y0, derive_seed(req.seed, kTagTxPhase, 0));
      out.b_tx = sol.b.dense();
      out.v_target = sol.target;
      out.tx_steps = tx_stem_steps(out.v_target, req.y0);
    } else {
      out.b_tx = optimize_tx_fully(ch.v_bar, req.y0).dense();
      out.v_target = ch.v_bar;
    }
    if (req.b_rx) {
      out.b_rx = *req.b_rx;
      if (out.b_rx.rows() != ns + req.n_rx || out.b_rx.cols() != ns + req.n_rx)
        throw DimensionError("verify: receiver susceptance must be (N_R + N_S) square");
      const Combiner g = combiner_from_admittance(AdmittanceMatrix::lossless(out.b_rx, req.y0), ns, req.n_rx);
      out.u_target = align_phases(ch.u_bar, 2.0 * g.adjoint());
    } else if (req.arch == Architecture::kStem) {
      auto sol = optimize_rx_stem_regularized(ch.u_bar, req.y0, derive_seed(req.seed, kTagRxPhase, 0));
      out.b_rx = sol.b.dense();
      out.u_target = sol.target;
      out.rx_steps = rx_stem_steps(out.u_target, req.y0);
    } else {
      out.b_rx = optimize_rx_fully(ch.u_bar, req.y0).dense();
      out.u_target = ch.u_bar;
    }

    out.tx = verify_tx(out.b_tx, out.v_target, req.y0,
                       arch_mask(req.arch, Side::kTransmitter, ns, req.n_tx));
    out.rx = verify_rx(out.b_rx, out.u_target, req.y0,
                       arch_mask(req.arch, Side::kReceiver, ns, req.n_rx));
    out.tx_lossless = lossless_of(out.b_tx, req.y0);
    out.rx_lossless = lossless_of(out.b_rx, req.y0);

    const LinkBudget link = LinkBudget::from_snr_db(req.snr_db);
    const Eigen::VectorXd lambda = ch.eigenvalues();
    const std::span<const double> ls(lambda.data(), static_cast<std::size_t>(lambda.size()));
    const PowerAllocation alloc = water_filling(ls, link);
    out.capacity = capacity(ls, alloc.p, link);
    const Precoder f = precoder_from_admittance(AdmittanceMatrix::lossless(out.b_tx, req.y0), ns, req.n_tx);
    const Combiner g = combiner_from_admittance(AdmittanceMatrix::lossless(out.b_rx, req.y0), ns, req.n_rx);
    out.rate = achievable_rate(g, h, f, alloc.p, link);
  } catch (const DimensionError&) {
    throw;
  } catch (const Error& e) {
    out.error = e.what();
  }
  return out;
}

}  // namespace milac
