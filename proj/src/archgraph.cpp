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

#include "milac/archgraph.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "milac/error.hpp"

namespace milac {

namespace {

void require_ports(int n_ports) {
  if (n_ports < 1) {
    throw ValidationError("graph must have at least one port, got " + std::to_string(n_ports));
  }
}

void require_stem_dims(int n_streams, int n_antennas) {
  if (n_streams < 1) {
    throw DimensionError("number of streams must be >= 1");
  }
  if (n_antennas < n_streams) {
    throw DimensionError("stem-connected MiLAC needs N_antennas >= N_S (got " +
                         std::to_string(n_antennas) + " < " + std::to_string(n_streams) + ")");
  }
}

std::vector<int> checked_antennas(int n_streams, int n_antennas, std::span<const int> antennas) {
  if (static_cast<int>(antennas.size()) != n_streams - 1) {
    throw ValidationError("stem graph needs exactly N_S - 1 = " + std::to_string(n_streams - 1) +
                          " central antennas, got " + std::to_string(antennas.size()));
  }
  std::vector<bool> seen(static_cast<std::size_t>(n_antennas), false);
  for (int a : antennas) {
    if (a < 0 || a >= n_antennas) {
      throw ValidationError("central antenna index " + std::to_string(a) + " out of range");
    }
    if (seen[static_cast<std::size_t>(a)]) {
      throw ValidationError("duplicate central antenna index " + std::to_string(a));
    }
    seen[static_cast<std::size_t>(a)] = true;
  }
  return {antennas.begin(), antennas.end()};
}

}  // namespace

MilacGraph::MilacGraph(int n_ports, std::vector<Edge> edges)
    : n_ports_(n_ports), edges_(std::move(edges)) {
  require_ports(n_ports);
  for (auto& [i, j] : edges_) {
    if (i < 0 || j < 0 || i >= n_ports || j >= n_ports) {
      throw ValidationError("edge (" + std::to_string(i) + ", " + std::to_string(j) +
                            ") outside [0, " + std::to_string(n_ports) + ")");
    }
    if (i == j) {
      throw ValidationError("self-loop at vertex " + std::to_string(i));
    }
    if (i > j) std::swap(i, j);
  }
  std::sort(edges_.begin(), edges_.end());
  auto dup = std::adjacent_find(edges_.begin(), edges_.end());
  if (dup != edges_.end()) {
    throw ValidationError("duplicate edge (" + std::to_string(dup->first) + ", " +
                          std::to_string(dup->second) + ")");
  }
  degree_.assign(static_cast<std::size_t>(n_ports), 0);
  for (const auto& [i, j] : edges_) {
    ++degree_[static_cast<std::size_t>(i)];
    ++degree_[static_cast<std::size_t>(j)];
  }
}

bool MilacGraph::has_edge(int m, int n) const {
  if (m > n) std::swap(m, n);
  return std::binary_search(edges_.begin(), edges_.end(), Edge{m, n});
}

int MilacGraph::degree(int v) const {
  if (v < 0 || v >= n_ports_) throw ValidationError("vertex out of range");
  return degree_[static_cast<std::size_t>(v)];
}

ArchitectureMask::ArchitectureMask(int n_ports) : n_(n_ports) {
  require_ports(n_ports);
  bits_.assign(static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_), 0);
  for (int i = 0; i < n_; ++i) bits_[static_cast<std::size_t>(i) * n_ + i] = 1;
}

bool ArchitectureMask::tunable(int m, int n) const {
  if (m < 0 || n < 0 || m >= n_ || n >= n_) throw DimensionError("mask index out of range");
  return bits_[static_cast<std::size_t>(m) * n_ + n] != 0;
}

void ArchitectureMask::set_tunable(int m, int n) {
  if (m < 0 || n < 0 || m >= n_ || n >= n_) throw DimensionError("mask index out of range");
  bits_[static_cast<std::size_t>(m) * n_ + n] = 1;
  bits_[static_cast<std::size_t>(n) * n_ + m] = 1;
}

Eigen::MatrixXi ArchitectureMask::matrix() const {
  Eigen::MatrixXi out(n_, n_);
  for (int m = 0; m < n_; ++m)
    for (int n = 0; n < n_; ++n) out(m, n) = tunable(m, n) ? 1 : 0;
  return out;
}

MilacGraph complete_graph(int n_ports) {
  require_ports(n_ports);
  std::vector<MilacGraph::Edge> edges;
  edges.reserve(static_cast<std::size_t>(n_ports) * (n_ports - 1) / 2);
  for (int i = 0; i < n_ports; ++i)
    for (int j = i + 1; j < n_ports; ++j) edges.emplace_back(i, j);
  return MilacGraph(n_ports, std::move(edges));
}

MilacGraph center_graph(int n_ports, std::span<const int> central) {
  require_ports(n_ports);
  if (central.empty()) throw ValidationError("center graph needs at least one central vertex");
  std::vector<bool> is_central(static_cast<std::size_t>(n_ports), false);
  for (int c : central) {
    if (c < 0 || c >= n_ports) {
      throw ValidationError("central vertex " + std::to_string(c) + " out of range");
    }
    if (is_central[static_cast<std::size_t>(c)]) {
      throw ValidationError("duplicate central vertex " + std::to_string(c));
    }
    is_central[static_cast<std::size_t>(c)] = true;
  }
  std::vector<MilacGraph::Edge> edges;
  for (int i = 0; i < n_ports; ++i)
    for (int j = i + 1; j < n_ports; ++j)
      if (is_central[static_cast<std::size_t>(i)] || is_central[static_cast<std::size_t>(j)])
        edges.emplace_back(i, j);
  return MilacGraph(n_ports, std::move(edges));
}

std::vector<int> canonical_central_antennas(int n_streams) {
  std::vector<int> out;
  for (int a = 0; a + 1 < n_streams; ++a) out.push_back(a);
  return out;
}

MilacGraph tx_stem_graph(int n_streams, int n_tx) {
  return tx_stem_graph(n_streams, n_tx, canonical_central_antennas(n_streams));
}

MilacGraph tx_stem_graph(int n_streams, int n_tx, std::span<const int> central_antennas) {
  require_stem_dims(n_streams, n_tx);
  std::vector<int> central;
  for (int s = 0; s < n_streams; ++s) central.push_back(s);
  for (int a : checked_antennas(n_streams, n_tx, central_antennas)) central.push_back(n_streams + a);
  return center_graph(n_streams + n_tx, central);
}

MilacGraph rx_stem_graph(int n_streams, int n_rx) {
  return rx_stem_graph(n_streams, n_rx, canonical_central_antennas(n_streams));
}

MilacGraph rx_stem_graph(int n_streams, int n_rx, std::span<const int> central_antennas) {
  require_stem_dims(n_streams, n_rx);
  std::vector<int> central = checked_antennas(n_streams, n_rx, central_antennas);
  for (int s = 0; s < n_streams; ++s) central.push_back(n_rx + s);
  return center_graph(n_rx + n_streams, central);
}

std::optional<std::vector<int>> stem_central_antennas(const MilacGraph& g, Side side,
                                                      int n_streams) {
  const int nv = g.num_vertices();
  if (n_streams < 1 || nv < 2 * n_streams) return std::nullopt;
  const int n_antennas = nv - n_streams;
  const int stream_offset = side == Side::kTransmitter ? 0 : n_antennas;
  const int antenna_offset = side == Side::kTransmitter ? n_streams : 0;

  auto full = [&](int v) { return g.degree(v) == nv - 1; };
  for (int s = 0; s < n_streams; ++s)
    if (!full(stream_offset + s)) return std::nullopt;

  std::vector<int> antennas;
  for (int a = 0; a < n_antennas && static_cast<int>(antennas.size()) < n_streams - 1; ++a)
    if (full(antenna_offset + a)) antennas.push_back(a);
  if (static_cast<int>(antennas.size()) != n_streams - 1) return std::nullopt;

  // The Q central vertices already account for Q(Q-1)/2 + Q(N_V-Q) edges;
  // any extra edge joins two non-central vertices.
  const std::size_t q = static_cast<std::size_t>(2 * n_streams - 1);
  const std::size_t expected = q * (q - 1) / 2 + q * (static_cast<std::size_t>(nv) - q);
  if (g.num_edges() != expected) return std::nullopt;
  return antennas;
}

ArchitectureMask mask_from_graph(const MilacGraph& g) {
  ArchitectureMask mask(g.num_vertices());
  for (const auto& [i, j] : g.edges()) mask.set_tunable(i, j);
  return mask;
}

CircuitComplexity circuit_complexity(const MilacGraph& g) {
  return {static_cast<std::size_t>(g.num_vertices()) + g.num_edges()};
}

std::size_t complete_graph_complexity(std::size_t n_ports) { return n_ports * (n_ports + 1) / 2; }

std::size_t center_graph_complexity(std::size_t n_ports, std::size_t q) {
  return (q + 1) * (2 * n_ports - q) / 2;
}

std::size_t stem_complexity(std::size_t n_streams, std::size_t n_antennas) {
  return n_streams * (2 * n_antennas + 1);
}

std::size_t fully_complexity(std::size_t n_streams, std::size_t n_antennas) {
  return complete_graph_complexity(n_streams + n_antennas);
}

bool mask_membership(const Eigen::MatrixXd& b, const ArchitectureMask& mask, double tol) {
  if (b.rows() != mask.size() || b.cols() != mask.size()) {
    throw DimensionError("susceptance matrix is " + std::to_string(b.rows()) + "x" +
                         std::to_string(b.cols()) + ", mask is " + std::to_string(mask.size()) +
                         "x" + std::to_string(mask.size()));
  }
  for (int m = 0; m < mask.size(); ++m)
    for (int n = 0; n < mask.size(); ++n)
      if (!mask.tunable(m, n) && !(std::abs(b(m, n)) <= tol)) return false;
  return true;
}

void write_edge_list(std::ostream& os, const MilacGraph& g) {
  os << g.num_vertices() << '\n';
  for (const auto& [i, j] : g.edges()) os << (i + 1) << ' ' << (j + 1) << '\n';
}

MilacGraph read_edge_list(std::istream& is) {
  std::string line;
  int n_ports = -1;
  std::vector<MilacGraph::Edge> edges;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    if (n_ports < 0) {
      if (!(ls >> n_ports) || n_ports < 1) {
        throw ParseError("edge list line " + std::to_string(line_no) + ": bad vertex count");
      }
    } else {
      int i = 0;
      int j = 0;
      if (!(ls >> i >> j)) {
        throw ParseError("edge list line " + std::to_string(line_no) + ": expected 'i j'");
      }
      edges.emplace_back(i - 1, j - 1);
    }
    std::string rest;
    if (ls >> rest) {
      throw ParseError("edge list line " + std::to_string(line_no) + ": trailing '" + rest + "'");
    }
  }
  if (n_ports < 0) throw ParseError("edge list is empty");
  try {
    return MilacGraph(n_ports, std::move(edges));
  } catch (const ValidationError& e) {
    throw ParseError(std::string("edge list: ") + e.what());
  }
}

void write_mask_csv(std::ostream& os, const ArchitectureMask& mask) {
  for (int m = 0; m < mask.size(); ++m) {
    for (int n = 0; n < mask.size(); ++n) {
      if (n) os << ',';
      os << (mask.tunable(m, n) ? 1 : 0);
    }
    os << '\n';
  }
}

}  // namespace milac
