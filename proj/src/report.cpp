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

#include <cmath>
#include <filesystem>
#include <fstream>

#include "json.hpp"

#include "milac/campaign.hpp"
#include "milac/error.hpp"
#include "milac/matrix_io.hpp"

namespace milac {

namespace {

nlohmann::json finite_or_null(double x) {
  if (std::isfinite(x)) return x;
  return nullptr;
}

nlohmann::json report_json(const VerificationReport& r, const LosslessReciprocalReport& l) {
  nlohmann::json cases = nlohmann::json::array();
  for (double c : r.case_residuals) cases.push_back(finite_or_null(c));
  return {
      {"condition_residual", finite_or_null(r.condition_residual)},
      {"scattering_residual", finite_or_null(r.scattering_residual)},
      {"case_residuals", cases},
      {"b11_symmetry", r.b11_symmetry},
      {"b22_symmetry", r.b22_symmetry},
      {"b12_symmetry", r.b12_symmetry},
      {"mask_ok", r.mask_ok},
      {"unitarity_residual", finite_or_null(l.unitarity_residual)},
      {"reciprocity_residual", finite_or_null(l.symmetry_residual)},
  };
}

void write_block(const std::filesystem::path& dir, const std::string& prefix, const char* name,
                 const Eigen::MatrixXd& m) {
  const auto path = dir / (prefix + "_" + name + ".csv");
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  write_real_csv(out, m);
}

}  // namespace

std::string verification_report_json(const VerifyOutcome& o) {
  const VerifyRequest& q = o.request;
  nlohmann::json j;
  j["dims"] = {{"N_S", q.n_streams}, {"N_T", q.n_tx}, {"N_R", q.n_rx}};
  j["architecture"] = to_string(q.arch);
  j["seed"] = q.channel ? nlohmann::json(nullptr) : nlohmann::json(q.seed);
  j["y0"] = q.y0;
  j["snr_db"] = q.snr_db;
  j["tolerances"] = {{"verify", q.tol_verify}, {"rate", q.tol_rate}};
  if (!o.error.empty()) j["error"] = o.error;
  j["tx"] = report_json(o.tx, o.tx_lossless);
  j["rx"] = report_json(o.rx, o.rx_lossless);
  j["rate"] = o.rate;
  j["capacity"] = o.capacity;
  j["rate_gap"] = o.rate_gap();
  j["passed"] = o.passed();
  return j.dump(2);
}

void dump_tx_blocks(const std::string& dir, const std::string& prefix, const TxStemSteps& st) {
  const std::filesystem::path d(dir);
  std::filesystem::create_directories(d);
  write_block(d, prefix, "R", st.target.r);
  write_block(d, prefix, "J", st.target.j);
  write_block(d, prefix, "B22_22", Eigen::MatrixXd(st.b22_22.asDiagonal()));
  write_block(d, prefix, "B22_12", st.b22_12);
  write_block(d, prefix, "B22_21", st.b22_21);
  write_block(d, prefix, "B22_11", st.b22_11);
  write_block(d, prefix, "B22", st.b22);
  write_block(d, prefix, "B12", st.b12);
  write_block(d, prefix, "B21", st.b21);
  write_block(d, prefix, "B11", st.b11);
  write_block(d, prefix, "B", st.assembled());
}

void dump_rx_blocks(const std::string& dir, const std::string& prefix, const RxStemSteps& st) {
  const std::filesystem::path d(dir);
  std::filesystem::create_directories(d);
  write_block(d, prefix, "R", st.target.r);
  write_block(d, prefix, "J", st.target.j);
  write_block(d, prefix, "B11_22", Eigen::MatrixXd(st.b11_22.asDiagonal()));
  write_block(d, prefix, "B11_12", st.b11_12);
  write_block(d, prefix, "B11_21", st.b11_21);
  write_block(d, prefix, "B11_11", st.b11_11);
  write_block(d, prefix, "B11", st.b11);
  write_block(d, prefix, "B21", st.b21);
  write_block(d, prefix, "B12", st.b12);
  write_block(d, prefix, "B22", st.b22);
  write_block(d, prefix, "B", st.assembled());
}

}  // namespace milac
