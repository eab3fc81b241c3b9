// Copyright 2026 The mirrorbench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>
#include <utility>
#include <vector>

namespace mirrorbench {

/// Undirected, connected coupling graph over physical qubits 0..size()-1.
class ConnectivityGraph {
 public:
  ConnectivityGraph() = default;
  /// Throws std::invalid_argument for self-loops, out-of-range endpoints, or
  /// a disconnected graph.
  ConnectivityGraph(int nodes, std::vector<std::pair<int, int>> edges, std::string kind = "custom");

  /// Connected n-node patch of a heavy-hexagon lattice (degree <= 3).
  static ConnectivityGraph heavy_hex(int n);
  /// Row-major prefix of a near-square grid.
  static ConnectivityGraph grid(int n);
  static ConnectivityGraph grid(int rows, int cols);
  static ConnectivityGraph line(int n);
  static ConnectivityGraph complete(int n);
  /// "heavyhex", "heavy-hexagon", "grid", "line", "complete".
  static ConnectivityGraph preset(const std::string& name, int n);

  int size() const { return nodes_; }
  const std::string& kind() const { return kind_; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  const std::vector<int>& neighbors(int v) const { return adj_[static_cast<std::size_t>(v)]; }
  bool has_edge(int a, int b) const;
  int distance(int a, int b) const { return dist_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]; }
  /// Vertices of a shortest path from a to b, inclusive.
  std::vector<int> shortest_path(int a, int b) const;

 private:
  int nodes_ = 0;
  std::string kind_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::vector<int>> adj_;
  std::vector<std::vector<int>> dist_;
};

}  // namespace mirrorbench
