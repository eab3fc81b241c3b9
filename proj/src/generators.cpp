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

#include "mirrorbench/generators.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace mirrorbench {

MatX sample_haar_unitary(int dim, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0 / std::sqrt(2.0));
  MatX z(dim, dim);
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) z(r, c) = cplx(normal(rng), normal(rng));
  }
  Eigen::HouseholderQR<MatX> qr(z);
  MatX q = qr.householderQ();
  const MatX r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < dim; ++i) {
    const cplx d = r(i, i);
    q.col(i) *= d / std::abs(d);
  }
  const cplx det = q.determinant();
  q *= std::polar(1.0, -std::arg(det) / dim);
  return q;
}

Mat4 sample_haar_su4(Rng& rng) { return sample_haar_unitary(4, rng); }
Mat2 sample_haar_su2(Rng& rng) { return sample_haar_unitary(2, rng); }

Circuit sample_qv_circuit(CircuitShape shape, Rng& rng) {
  if (shape.n < 1 || shape.d < 1) throw std::invalid_argument("QV shape needs n >= 1 and d >= 1");
  CircuitMetadata meta{"qv", shape.d, 0, {}};
  Circuit c(shape.n, meta);
  std::vector<int> order(static_cast<std::size_t>(shape.n));
  for (int layer = 0; layer < shape.d; ++layer) {
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    Layer l;
    for (int k = 0; k + 1 < shape.n; k += 2) {
      l.gates.emplace_back(TwoQubitBlock{order[static_cast<std::size_t>(k)], order[static_cast<std::size_t>(k + 1)],
                                         sample_haar_su4(rng)});
    }
    c.append_layer(std::move(l));
  }
  return c;
}

GeometrySpec GeometrySpec::grid_for(int n) {
  int rows = std::max(1, static_cast<int>(std::floor(std::sqrt(static_cast<double>(n)))));
  int cols = (n + rows - 1) / rows;
  return grid(rows, cols);
}

std::vector<std::pair<int, int>> geometry_edges(int n, const GeometrySpec& geom) {
  std::vector<std::pair<int, int>> edges;
  switch (geom.kind) {
    case GeometrySpec::Kind::kAllToAll:
      for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) edges.emplace_back(a, b);
      }
      break;
    case GeometrySpec::Kind::kLine:
      for (int a = 0; a + 1 < n; ++a) edges.emplace_back(a, a + 1);
      break;
    case GeometrySpec::Kind::kGrid:
      if (geom.rows < 1 || geom.cols < 1 || geom.rows * geom.cols < n) {
        throw std::invalid_argument("grid geometry too small for " + std::to_string(n) + " qubits");
      }
      for (int v = 0; v < n; ++v) {
        const int r = v / geom.cols, col = v % geom.cols;
        if (col + 1 < geom.cols && v + 1 < n) edges.emplace_back(v, v + 1);
        if (r + 1 < geom.rows && v + geom.cols < n) edges.emplace_back(v, v + geom.cols);
      }
      break;
  }
  return edges;
}

namespace {

std::vector<std::pair<int, int>> random_maximal_matching(int n, std::vector<std::pair<int, int>> edges, Rng& rng) {
  std::shuffle(edges.begin(), edges.end(), rng);
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  std::vector<std::pair<int, int>> matching;
  for (const auto& [a, b] : edges) {
    if (used[static_cast<std::size_t>(a)] || used[static_cast<std::size_t>(b)]) continue;
    used[static_cast<std::size_t>(a)] = used[static_cast<std::size_t>(b)] = true;
    matching.emplace_back(a, b);
  }
  return matching;
}

}  // namespace

double expected_maximal_matching_size(int n, const std::vector<std::pair<int, int>>& edges) {
  static std::mutex mu;
  static std::map<std::pair<int, std::vector<std::pair<int, int>>>, double> cache;
  const auto key = std::make_pair(n, edges);
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  constexpr int kSamples = 200000;
  Rng rng(0x5EED0F6E0ULL + static_cast<std::uint64_t>(n));
  double total = 0.0;
  for (int s = 0; s < kSamples; ++s) total += static_cast<double>(random_maximal_matching(n, edges, rng).size());
  const double mean = total / kSamples;
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(key, mean);
  return mean;
}

double geometry_keep_probability(int n, const GeometrySpec& geom) {
  const auto edges = geometry_edges(n, geom);
  if (edges.empty()) return 0.0;
  return std::min(1.0, (n / 4.0) / expected_maximal_matching_size(n, edges));
}

Layer sample_geometry_layer(int n, const std::vector<std::pair<int, int>>& edges, double keep, Rng& rng) {
  Layer l;
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  for (const auto& [a, b] : random_maximal_matching(n, edges, rng)) {
    if (uniform01(rng) >= keep) continue;
    used[static_cast<std::size_t>(a)] = used[static_cast<std::size_t>(b)] = true;
    l.gates.emplace_back(TwoQubitBlock{a, b, sample_haar_su4(rng)});
  }
  for (int q = 0; q < n; ++q) {
    if (!used[static_cast<std::size_t>(q)]) l.gates.emplace_back(SingleQubitGate{q, euler_from_matrix(sample_haar_su2(rng))});
  }
  return l;
}

Circuit sample_geometry_circuit(CircuitShape shape, const GeometrySpec& geom, Rng& rng) {
  if (geom.kind == GeometrySpec::Kind::kAllToAll) {
    throw std::invalid_argument("geometry circuits need a grid or line geometry");
  }
  if (shape.n < 1 || shape.d < 1) throw std::invalid_argument("geometry shape needs n >= 1 and d >= 1");
  const auto edges = geometry_edges(shape.n, geom);
  const double keep = geometry_keep_probability(shape.n, geom);
  CircuitMetadata meta{geom.kind == GeometrySpec::Kind::kGrid ? "grid" : "line", shape.d, 0, {}};
  Circuit c(shape.n, meta);
  for (int layer = 0; layer < shape.d; ++layer) c.append_layer(sample_geometry_layer(shape.n, edges, keep, rng));
  return c;
}

Circuit build_hamsim_circuit(int n, const HamSimParams& params) {
  if (n < 2) throw std::invalid_argument("Hamiltonian simulation needs at least 2 qubits");
  if (std::abs(params.h_z) > 1.0 || std::abs(params.h_x) > 1.0) {
    throw std::invalid_argument("h_z and h_x must lie in [-1, 1]");
  }
  if (params.steps < 1) throw std::invalid_argument("Trotter step count must be >= 1");
  CircuitMetadata meta{"hamsim", params.steps, 0, {}};
  Circuit c(n, meta);
  if (params.neel_prelude) {
    Layer l;
    for (int q = 1; q < n; q += 2) l.gates.emplace_back(SingleQubitGate{q, {0.0, M_PI, 0.0}});
    c.append_layer(std::move(l));
  }
  const EulerAngles z_rot{2.0 * params.tau * params.h_z, 0.0, 0.0};
  const EulerAngles x_rot{0.0, 2.0 * params.tau * params.h_x, 0.0};
  const EulerAngles zz_rot{2.0 * params.tau * params.coupling, 0.0, 0.0};
  for (int step = 0; step < params.steps; ++step) {
    Layer lz, lx;
    for (int q = 0; q < n; ++q) {
      lz.gates.emplace_back(SingleQubitGate{q, z_rot});
      lx.gates.emplace_back(SingleQubitGate{q, x_rot});
    }
    c.append_layer(std::move(lz));
    c.append_layer(std::move(lx));
    for (int parity = 0; parity < 2; ++parity) {
      Layer cx, rz;
      for (int a = parity; a + 1 < n; a += 2) {
        cx.gates.emplace_back(TwoQubitClifford{a, a + 1, CliffordKind::kCNOT});
        rz.gates.emplace_back(SingleQubitGate{a + 1, zz_rot});
      }
      if (cx.gates.empty()) continue;
      c.append_layer(cx);
      c.append_layer(std::move(rz));
      c.append_layer(std::move(cx));
    }
  }
  return c;
}

namespace {

std::array<EulerAngles, 24> build_cliffords() {
  const double s = 1.0 / std::sqrt(2.0);
  Mat2 h;
  h << s, s, s, -s;
  Mat2 sg;
  sg << 1, 0, 0, cplx(0, 1);
  // Canonical form modulo global phase: first significant entry real positive.
  auto canon = [](const Mat2& m) {
    cplx ref = 0;
    for (int i = 0; i < 4 && std::abs(ref) < 1e-6; ++i) ref = m(i / 2, i % 2);
    Mat2 c = m * (std::abs(ref) / ref);
    std::array<long long, 8> key{};
    for (int i = 0; i < 4; ++i) {
      key[static_cast<std::size_t>(2 * i)] = std::llround(c(i / 2, i % 2).real() * 1e6);
      key[static_cast<std::size_t>(2 * i + 1)] = std::llround(c(i / 2, i % 2).imag() * 1e6);
    }
    return key;
  };
  std::vector<Mat2> group{Mat2::Identity()};
  std::map<std::array<long long, 8>, int> seen{{canon(Mat2::Identity()), 0}};
  for (std::size_t i = 0; i < group.size(); ++i) {
    for (const Mat2& g : {h, sg}) {
      const Mat2 next = g * group[i];
      if (seen.emplace(canon(next), static_cast<int>(group.size())).second) group.push_back(next);
    }
  }
  if (group.size() != 24) throw std::logic_error("single-qubit Clifford closure did not yield 24 elements");
  std::array<EulerAngles, 24> out;
  for (std::size_t i = 0; i < 24; ++i) out[i] = euler_from_matrix(group[i]);
  return out;
}

}  // namespace

const std::array<EulerAngles, 24>& single_qubit_cliffords() {
  static const std::array<EulerAngles, 24> table = build_cliffords();
  return table;
}

Layer sample_2design_layer(int n, Rng& rng) {
  const auto& table = single_qubit_cliffords();
  Layer l;
  for (int q = 0; q < n; ++q) l.gates.emplace_back(SingleQubitGate{q, table[static_cast<std::size_t>(uniform_int(rng, 0, 23))]});
  return l;
}

}  // namespace mirrorbench
