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

#include "mirrorbench/connectivity.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <stdexcept>

namespace mirrorbench {

ConnectivityGraph::ConnectivityGraph(int nodes, std::vector<std::pair<int, int>> edges, std::string kind)
    : nodes_(nodes), kind_(std::move(kind)), adj_(static_cast<std::size_t>(nodes)) {
  if (nodes < 1) throw std::invalid_argument("connectivity graph needs at least one node");
  for (auto [a, b] : edges) {
    if (a < 0 || b < 0 || a >= nodes || b >= nodes || a == b) {
      throw std::invalid_argument("invalid edge (" + std::to_string(a) + ", " + std::to_string(b) + ")");
    }
    if (a > b) std::swap(a, b);
    if (std::find(edges_.begin(), edges_.end(), std::make_pair(a, b)) != edges_.end()) continue;
    edges_.emplace_back(a, b);
    adj_[static_cast<std::size_t>(a)].push_back(b);
    adj_[static_cast<std::size_t>(b)].push_back(a);
  }
  for (auto& nb : adj_) std::sort(nb.begin(), nb.end());
  dist_.assign(static_cast<std::size_t>(nodes), std::vector<int>(static_cast<std::size_t>(nodes), -1));
  for (int s = 0; s < nodes; ++s) {
    auto& d = dist_[static_cast<std::size_t>(s)];
    std::queue<int> frontier;
    d[static_cast<std::size_t>(s)] = 0;
    frontier.push(s);
    while (!frontier.empty()) {
      const int v = frontier.front();
      frontier.pop();
      for (int w : neighbors(v)) {
        if (d[static_cast<std::size_t>(w)] < 0) {
          d[static_cast<std::size_t>(w)] = d[static_cast<std::size_t>(v)] + 1;
          frontier.push(w);
        }
      }
    }
    if (std::count(d.begin(), d.end(), -1) > 0) throw std::invalid_argument("connectivity graph is disconnected");
  }
}

bool ConnectivityGraph::has_edge(int a, int b) const {
  if (a < 0 || a >= nodes_) return false;
  const auto& nb = neighbors(a);
  return std::binary_search(nb.begin(), nb.end(), b);
}

std::vector<int> ConnectivityGraph::shortest_path(int a, int b) const {
  std::vector<int> path{a};
  int v = a;
  while (v != b) {
    // Lowest-numbered neighbor one step closer keeps paths deterministic.
    for (int w : neighbors(v)) {
      if (distance(w, b) == distance(v, b) - 1) {
        v = w;
        break;
      }
    }
    path.push_back(v);
  }
  return path;
}

ConnectivityGraph ConnectivityGraph::heavy_hex(int n) {
  if (n < 1) throw std::invalid_argument("heavy_hex needs n >= 1");
  // Rows of `width` qubits joined by bridge qubits every fourth column, with
  // the bridge columns offset by two between successive row gaps.
  constexpr int width = 11;
  const int rows = n / width + 2;
  std::map<std::pair<int, int>, int> id;  // (row slot, column) -> lattice id
  std::vector<std::pair<int, int>> lattice_edges;
  int next = 0;
  auto node = [&](int slot, int col) {
    auto [it, inserted] = id.emplace(std::make_pair(slot, col), next);
    if (inserted) ++next;
    return it->second;
  };
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < width; ++c) {
      node(2 * r, c);
      if (c > 0) lattice_edges.emplace_back(node(2 * r, c - 1), node(2 * r, c));
    }
    if (r + 1 < rows) {
      for (int c = (r % 2 == 0) ? 0 : 2; c < width; c += 4) {
        lattice_edges.emplace_back(node(2 * r, c), node(2 * r + 1, c));
        lattice_edges.emplace_back(node(2 * r + 1, c), node(2 * r + 2, c));
      }
    }
  }
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(next));
  for (auto [a, b] : lattice_edges) {
    adj[static_cast<std::size_t>(a)].push_back(b);
    adj[static_cast<std::size_t>(b)].push_back(a);
  }
  for (auto& nb : adj) std::sort(nb.begin(), nb.end());
  // Breadth-first prefix from a corner gives a connected patch.
  std::vector<int> label(static_cast<std::size_t>(next), -1);
  std::queue<int> frontier;
  int count = 0;
  label[0] = count++;
  frontier.push(0);
  while (!frontier.empty() && count < n) {
    const int v = frontier.front();
    frontier.pop();
    for (int w : adj[static_cast<std::size_t>(v)]) {
      if (label[static_cast<std::size_t>(w)] < 0 && count < n) {
        label[static_cast<std::size_t>(w)] = count++;
        frontier.push(w);
      }
    }
  }
  std::vector<std::pair<int, int>> edges;
  for (auto [a, b] : lattice_edges) {
    const int la = label[static_cast<std::size_t>(a)], lb = label[static_cast<std::size_t>(b)];
    if (la >= 0 && lb >= 0) edges.emplace_back(std::min(la, lb), std::max(la, lb));
  }
  std::sort(edges.begin(), edges.end());
  return ConnectivityGraph(n, std::move(edges), "heavy-hexagon");
}

ConnectivityGraph ConnectivityGraph::grid(int n) {
  const int rows = std::max(1, static_cast<int>(std::floor(std::sqrt(static_cast<double>(n)))));
  const int cols = (n + rows - 1) / rows;
  std::vector<std::pair<int, int>> edges;
  for (int v = 0; v < n; ++v) {
    if ((v % cols) + 1 < cols && v + 1 < n) edges.emplace_back(v, v + 1);
    if (v + cols < n) edges.emplace_back(v, v + cols);
  }
  return ConnectivityGraph(n, std::move(edges), "grid");
}

ConnectivityGraph ConnectivityGraph::grid(int rows, int cols) {
  std::vector<std::pair<int, int>> edges;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const int v = r * cols + c;
      if (c + 1 < cols) edges.emplace_back(v, v + 1);
      if (r + 1 < rows) edges.emplace_back(v, v + cols);
    }
  }
  return ConnectivityGraph(rows * cols, std::move(edges), "grid");
}

ConnectivityGraph ConnectivityGraph::line(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
  return ConnectivityGraph(n, std::move(edges), "line");
}

ConnectivityGraph ConnectivityGraph::complete(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) edges.emplace_back(a, b);
  }
  return ConnectivityGraph(n, std::move(edges), "complete");
}

ConnectivityGraph ConnectivityGraph::preset(const std::string& name, int n) {
  if (name == "heavyhex" || name == "heavy-hexagon" || name == "heavy_hex") return heavy_hex(n);
  if (name == "grid") return grid(n);
  if (name == "line") return line(n);
  if (name == "complete") return complete(n);
  throw std::invalid_argument("unknown connectivity preset: " + name);
}

}  // namespace mirrorbench
