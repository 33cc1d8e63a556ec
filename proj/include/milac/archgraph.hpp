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

// Graph model of MiLAC circuit topologies.
//
// A MiLAC with N_V ports is a simple undirected graph: vertices are ports, an
// edge (m, n) means a tunable admittance interconnects ports m and n. Every
// port also has a tunable admittance to ground, so the circuit complexity is
// N_V + N_E.
//
// Index convention: the C++ API is 0-based throughout. The edge-list text
// format is 1-based (see write_edge_list).

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace milac {

class MilacGraph {
 public:
  using Edge = std::pair<int, int>;

  // Validates the edge set: indices in [0, n_ports), no self-loops, no
  // duplicates (in either orientation). Edges are stored as (i, j), i < j,
  // sorted lexicographically.
  MilacGraph(int n_ports, std::vector<Edge> edges);

  int num_vertices() const noexcept { return n_ports_; }
  std::size_t num_edges() const noexcept { return edges_.size(); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  bool has_edge(int m, int n) const;
  int degree(int v) const;

  friend bool operator==(const MilacGraph&, const MilacGraph&) = default;

 private:
  int n_ports_;
  std::vector<Edge> edges_;
  std::vector<int> degree_;
};

// Symmetric tunability pattern over port pairs. The diagonal is always
// tunable (every port has a grounding admittance).
class ArchitectureMask {
 public:
  explicit ArchitectureMask(int n_ports);  // diagonal only

  int size() const noexcept { return n_; }
  bool tunable(int m, int n) const;
  void set_tunable(int m, int n);  // sets both (m, n) and (n, m)

  // 0/1 matrix, for export.
  Eigen::MatrixXi matrix() const;

  friend bool operator==(const ArchitectureMask&, const ArchitectureMask&) = default;

 private:
  int n_;
  std::vector<std::uint8_t> bits_;
};

struct CircuitComplexity {
  std::size_t count = 0;  // N_C = N_V + N_E
  friend bool operator==(const CircuitComplexity&, const CircuitComplexity&) = default;
};

// Which end of the link a MiLAC sits on. Transmitter ports are ordered
// [N_S inputs, N_T antennas]; receiver ports are [N_R antennas, N_S outputs].
enum class Side { kTransmitter, kReceiver };

MilacGraph complete_graph(int n_ports);

// Definition of a center graph: every vertex of `central` is adjacent to all
// other vertices, the remaining vertices are adjacent only to central ones.
// Throws ValidationError on empty/duplicate/out-of-range central indices.
MilacGraph center_graph(int n_ports, std::span<const int> central);

// Stem-connected graph at the transmitter, center size Q = 2N_S - 1.
// Central vertices are the N_S input ports plus the antenna ports listed in
// `central_antennas` (0-based antenna indices, N_S - 1 distinct values in
// [0, N_T)). Without the override the first N_S - 1 antennas are used, i.e.
// ports 0 .. 2N_S-2. Throws DimensionError when N_T < N_S.
MilacGraph tx_stem_graph(int n_streams, int n_tx);
MilacGraph tx_stem_graph(int n_streams, int n_tx, std::span<const int> central_antennas);

// Stem-connected graph at the receiver, center size Q = 2N_S - 1. Central
// vertices are the N_S output ports plus N_S - 1 antenna ports (default the
// first N_S - 1 antennas, ports 0 .. N_S-2).
MilacGraph rx_stem_graph(int n_streams, int n_rx);
MilacGraph rx_stem_graph(int n_streams, int n_rx, std::span<const int> central_antennas);

// Canonical central antenna choice, {0, ..., N_S - 2}.
std::vector<int> canonical_central_antennas(int n_streams);

// Detects the antenna ports acting as non-input (tx) / non-output (rx)
// central vertices of a stem-connected graph. Returns nullopt unless `g` is a
// center graph with Q = 2N_S - 1 whose central set contains every input (tx)
// or output (rx) port. When several choices are possible (complete graph
// corner cases) the lowest antenna indices are returned.
std::optional<std::vector<int>> stem_central_antennas(const MilacGraph& g, Side side,
                                                      int n_streams);

ArchitectureMask mask_from_graph(const MilacGraph& g);

CircuitComplexity circuit_complexity(const MilacGraph& g);

// Closed forms.
std::size_t complete_graph_complexity(std::size_t n_ports);            // N_V(N_V+1)/2
std::size_t center_graph_complexity(std::size_t n_ports, std::size_t q);  // (Q+1)(2N_V-Q)/2
std::size_t stem_complexity(std::size_t n_streams, std::size_t n_antennas);   // N_S(2N+1)
std::size_t fully_complexity(std::size_t n_streams, std::size_t n_antennas);  // (N_S+N)(N_S+N+1)/2

inline constexpr double kDefaultMaskTolerance = 1e-12;

// True iff |B(m, n)| <= tol wherever the mask forbids (m, n).
// Throws DimensionError if B is not mask.size() square.
bool mask_membership(const Eigen::MatrixXd& b, const ArchitectureMask& mask,
                     double tol = kDefaultMaskTolerance);

// Edge-list text format: first line N_V, then one "i j" line per edge with
// 1-based indices and i < j. Blank lines and lines starting with '#' are
// ignored on input.
void write_edge_list(std::ostream& os, const MilacGraph& g);
MilacGraph read_edge_list(std::istream& is);

// Mask as a 0/1 CSV matrix.
void write_mask_csv(std::ostream& os, const ArchitectureMask& mask);

}  // namespace milac
