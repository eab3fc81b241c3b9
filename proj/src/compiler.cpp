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

#include "mirrorbench/compiler.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "mirrorbench/kak.hpp"

namespace mirrorbench {

namespace {

Mat4 kron2(const Mat2& a, const Mat2& b) {
  Mat4 out;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  }
  return out;
}

// Packs a per-qubit-ordered gate sequence into layers as early as possible.
std::vector<Layer> pack_asap(int width, const std::vector<Gate>& seq) {
  std::vector<int> ready(static_cast<std::size_t>(width), 0);
  std::vector<Layer> layers;
  for (const auto& g : seq) {
    if (std::holds_alternative<Idle>(g)) continue;
    const auto qs = gate_qubits(g);
    int start = 0;
    for (int q : qs) start = std::max(start, ready[static_cast<std::size_t>(q)]);
    if (static_cast<int>(layers.size()) <= start) layers.resize(static_cast<std::size_t>(start) + 1);
    layers[static_cast<std::size_t>(start)].gates.push_back(g);
    for (int q : qs) ready[static_cast<std::size_t>(q)] = start + 1;
  }
  return layers;
}

Gate relabel(const Gate& g, const std::vector<int>& pos) {
  auto p = [&](int q) { return pos[static_cast<std::size_t>(q)]; };
  if (const auto* s = std::get_if<SingleQubitGate>(&g)) return SingleQubitGate{p(s->qubit), s->angles};
  if (const auto* t = std::get_if<TwoQubitClifford>(&g)) return TwoQubitClifford{p(t->q0), p(t->q1), t->kind};
  if (const auto* b = std::get_if<TwoQubitBlock>(&g)) return TwoQubitBlock{p(b->q0), p(b->q1), b->matrix};
  return Idle{p(std::get<Idle>(g).qubit)};
}

// Rx(pi) then Rx(-pi): both are X up to phase and the pair is exactly I.
const EulerAngles kXAngles{0.0, M_PI, 0.0};
const EulerAngles kXInverseAngles{0.0, -M_PI, 0.0};

}  // namespace

Circuit widen(const Circuit& c, int width) {
  if (width < c.width()) throw std::invalid_argument("circuit wider than target register");
  if (width == c.width()) return c;
  Circuit out(width, c.metadata());
  for (const auto& layer : c.layers()) out.append_layer(layer);
  return out;
}

Circuit consolidate_blocks(const Circuit& c) {
  struct Block {
    int q0 = 0, q1 = 0;
    Mat4 m = Mat4::Identity();
    bool has_su4 = false;
  };
  const int n = c.width();
  std::vector<Mat2> pending(static_cast<std::size_t>(n), Mat2::Identity());
  std::vector<int> owner(static_cast<std::size_t>(n), -1);
  std::vector<Block> blocks;
  std::vector<Gate> seq;

  auto close = [&](int q) {
    const int id = owner[static_cast<std::size_t>(q)];
    if (id < 0) return;
    const Block& b = blocks[static_cast<std::size_t>(id)];
    seq.emplace_back(TwoQubitBlock{b.q0, b.q1, b.m});
    owner[static_cast<std::size_t>(b.q0)] = owner[static_cast<std::size_t>(b.q1)] = -1;
  };

  for (const auto& layer : c.layers()) {
    for (const auto& g : layer.gates) {
      if (std::holds_alternative<Idle>(g)) continue;
      if (const auto* s = std::get_if<SingleQubitGate>(&g)) {
        const Mat2 m = euler_matrix(s->angles);
        const int id = owner[static_cast<std::size_t>(s->qubit)];
        if (id < 0) {
          pending[static_cast<std::size_t>(s->qubit)] = m * pending[static_cast<std::size_t>(s->qubit)];
        } else {
          Block& b = blocks[static_cast<std::size_t>(id)];
          const Mat4 e = s->qubit == b.q0 ? kron2(m, Mat2::Identity()) : kron2(Mat2::Identity(), m);
          b.m = e * b.m;
        }
        continue;
      }
      const auto qs = gate_qubits(g);
      const bool su4 = std::holds_alternative<TwoQubitBlock>(g);
      const Mat4 gm = gate_matrix(g);
      const int ia = owner[static_cast<std::size_t>(qs[0])];
      const int ib = owner[static_cast<std::size_t>(qs[1])];
      if (ia >= 0 && ia == ib && !(su4 && blocks[static_cast<std::size_t>(ia)].has_su4)) {
        Block& b = blocks[static_cast<std::size_t>(ia)];
        b.m = (qs[0] == b.q0 ? gm : Mat4(swap_matrix() * gm * swap_matrix())) * b.m;
        b.has_su4 = b.has_su4 || su4;
        continue;
      }
      close(qs[0]);
      close(qs[1]);
      Block b{qs[0], qs[1], Mat4::Identity(), su4};
      b.m = gm * kron2(pending[static_cast<std::size_t>(qs[0])], pending[static_cast<std::size_t>(qs[1])]);
      pending[static_cast<std::size_t>(qs[0])] = pending[static_cast<std::size_t>(qs[1])] = Mat2::Identity();
      owner[static_cast<std::size_t>(qs[0])] = owner[static_cast<std::size_t>(qs[1])] = static_cast<int>(blocks.size());
      blocks.push_back(b);
    }
  }
  for (int q = 0; q < n; ++q) close(q);
  for (int q = 0; q < n; ++q) {
    const Mat2& m = pending[static_cast<std::size_t>(q)];
    if (phase_distance(m, Mat2::Identity()) > 1e-12) seq.emplace_back(SingleQubitGate{q, euler_from_matrix(m)});
  }
  Circuit out(n, c.metadata());
  for (auto& layer : pack_asap(n, seq)) out.append_layer(std::move(layer));
  return out;
}

Circuit lower_blocks(const Circuit& c) {
  std::vector<Gate> seq;
  for (const auto& layer : c.layers()) {
    for (const auto& g : layer.gates) {
      if (const auto* b = std::get_if<TwoQubitBlock>(&g)) {
        for (const auto& sub : kak_layers(b->matrix, b->q0, b->q1)) {
          for (const auto& sg : sub.gates) seq.push_back(sg);
        }
      } else {
        seq.push_back(g);
      }
    }
  }
  Circuit out(c.width(), c.metadata());
  for (auto& layer : pack_asap(c.width(), seq)) out.append_layer(std::move(layer));
  return out;
}

CompiledCircuit route(const Circuit& c_in, const ConnectivityGraph& g, Rng& rng, const CompileOptions& options) {
  if (c_in.width() > g.size()) {
    throw std::invalid_argument("circuit width " + std::to_string(c_in.width()) + " exceeds device size " +
                                std::to_string(g.size()));
  }
  const Circuit c = widen(c_in, g.size());
  const int n = g.size();
  std::vector<int> pos(static_cast<std::size_t>(n));
  std::iota(pos.begin(), pos.end(), 0);
  if (options.initial_layout) {
    if (options.initial_layout->size() != n) throw std::invalid_argument("initial layout size mismatch");
    pos = options.initial_layout->image();
  } else if (options.random_placement) {
    std::shuffle(pos.begin(), pos.end(), rng);
  }
  const QubitPermutation initial(pos);
  std::vector<int> at(static_cast<std::size_t>(n));  // physical -> logical
  for (int l = 0; l < n; ++l) at[static_cast<std::size_t>(pos[static_cast<std::size_t>(l)])] = l;

  auto is_local = [&](const Gate& gate) {
    if (!is_two_qubit(gate)) return true;
    const auto qs = gate_qubits(gate);
    return g.has_edge(pos[static_cast<std::size_t>(qs[0])], pos[static_cast<std::size_t>(qs[1])]);
  };

  Circuit out(n, c.metadata());
  for (const auto& layer : c.layers()) {
    if (std::all_of(layer.gates.begin(), layer.gates.end(), is_local)) {
      Layer mapped;
      for (const auto& gate : layer.gates) mapped.gates.push_back(relabel(gate, pos));
      out.append_layer(std::move(mapped));
      continue;
    }
    std::vector<Gate> seq;
    std::vector<const Gate*> distant;
    for (const auto& gate : layer.gates) {
      if (is_local(gate)) {
        seq.push_back(relabel(gate, pos));
      } else {
        distant.push_back(&gate);
      }
    }
    for (const Gate* gate : distant) {
      const auto qs = gate_qubits(*gate);
      const auto path = g.shortest_path(pos[static_cast<std::size_t>(qs[0])], pos[static_cast<std::size_t>(qs[1])]);
      for (std::size_t k = 0; k + 2 < path.size(); ++k) {
        const int a = path[k], b = path[k + 1];
        seq.emplace_back(TwoQubitClifford{a, b, CliffordKind::kCNOT});
        seq.emplace_back(TwoQubitClifford{b, a, CliffordKind::kCNOT});
        seq.emplace_back(TwoQubitClifford{a, b, CliffordKind::kCNOT});
        std::swap(at[static_cast<std::size_t>(a)], at[static_cast<std::size_t>(b)]);
        pos[static_cast<std::size_t>(at[static_cast<std::size_t>(a)])] = a;
        pos[static_cast<std::size_t>(at[static_cast<std::size_t>(b)])] = b;
      }
      seq.push_back(relabel(*gate, pos));
    }
    for (auto& l : pack_asap(n, seq)) out.append_layer(std::move(l));
  }
  CompiledCircuit comp;
  comp.circuit = std::move(out);
  comp.permutation = QubitPermutation(pos);
  comp.initial_layout = initial;
  comp.connectivity = g.kind();
  return comp;
}

CompiledCircuit compile_exact(const Circuit& c, const ConnectivityGraph& g, Rng& rng, const CompileOptions& options) {
  if (c.width() > g.size()) {
    throw std::invalid_argument("circuit width " + std::to_string(c.width()) + " exceeds device size " +
                                std::to_string(g.size()));
  }
  const Circuit lowered = lower_blocks(consolidate_blocks(widen(c, g.size())));
  CompiledCircuit comp = route(lowered, g, rng, options);
  if (options.dynamical_decoupling) comp.circuit = insert_dd(comp.circuit);
  return comp;
}

Circuit insert_dd(const Circuit& c) {
  Circuit out(c.width(), c.metadata());
  for (const auto& layer : c.layers()) {
    const bool has_idle = std::any_of(layer.gates.begin(), layer.gates.end(),
                                      [](const Gate& g) { return std::holds_alternative<Idle>(g); });
    if (!layer.has_two_qubit_gate() || !has_idle) {
      out.append_layer(layer);
      continue;
    }
    Layer first, second;
    for (const auto& g : layer.gates) {
      if (const auto* idle = std::get_if<Idle>(&g)) {
        first.gates.emplace_back(SingleQubitGate{idle->qubit, kXAngles});
        second.gates.emplace_back(SingleQubitGate{idle->qubit, kXInverseAngles});
      } else {
        first.gates.push_back(g);
      }
    }
    out.append_layer(std::move(first));
    out.append_layer(std::move(second));
  }
  return out;
}

void validate_compiled(const Circuit& c, const ConnectivityGraph& g) {
  if (c.width() != g.size()) {
    throw std::invalid_argument("compiled width " + std::to_string(c.width()) + " does not match device size " +
                                std::to_string(g.size()));
  }
  for (std::size_t li = 0; li < c.depth(); ++li) {
    for (const auto& gate : c.layers()[li].gates) {
      if (std::holds_alternative<TwoQubitBlock>(gate)) {
        throw std::invalid_argument("gate-set violation: opaque two-qubit block in layer " + std::to_string(li));
      }
      if (const auto* t = std::get_if<TwoQubitClifford>(&gate); t != nullptr && !g.has_edge(t->q0, t->q1)) {
        throw std::invalid_argument("gate-set violation: two-qubit gate on (" + std::to_string(t->q0) + ", " +
                                    std::to_string(t->q1) + ") is not a device edge");
      }
    }
  }
}

MatX expected_unitary(const CompiledCircuit& comp, const MatX& target) {
  const int n = comp.width();
  const Eigen::Index dim = Eigen::Index{1} << n;
  MatX padded = target;
  if (target.rows() < dim) {
    const Eigen::Index rest = dim / target.rows();
    padded = MatX::Zero(dim, dim);
    for (Eigen::Index r = 0; r < target.rows(); ++r) {
      for (Eigen::Index col = 0; col < target.cols(); ++col) {
        padded.block(r * rest, col * rest, rest, rest) = target(r, col) * MatX::Identity(rest, rest);
      }
    }
  }
  return comp.permutation.unitary() * padded * comp.initial_layout.unitary().adjoint();
}

json compiled_to_json(const CompiledCircuit& comp) {
  json j = circuit_to_json(comp.circuit);
  j["permutation"] = permutation_to_json(comp.permutation);
  j["initial_layout"] = permutation_to_json(comp.initial_layout);
  j["connectivity"] = comp.connectivity;
  j["approx"] = comp.approx;
  j["approx_error"] = comp.approx_error;
  return j;
}

CompiledCircuit compiled_from_json(const json& j) {
  CompiledCircuit comp;
  comp.circuit = circuit_from_json(j);
  if (!j.contains("permutation")) throw std::invalid_argument("compiled circuit JSON lacks 'permutation'");
  comp.permutation = permutation_from_json(j.at("permutation"));
  comp.initial_layout = j.contains("initial_layout") ? permutation_from_json(j.at("initial_layout"))
                                                     : QubitPermutation::identity(comp.circuit.width());
  if (comp.permutation.size() != comp.circuit.width() || comp.initial_layout.size() != comp.circuit.width()) {
    throw std::invalid_argument("permutation size does not match circuit width");
  }
  comp.connectivity = j.value("connectivity", std::string("complete"));
  comp.approx = j.value("approx", false);
  comp.approx_error = j.value("approx_error", 0.0);
  return comp;
}

}  // namespace mirrorbench
