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

#include "mirrorbench/circuit.hpp"

#include <algorithm>
#include <stdexcept>

namespace mirrorbench {

namespace {
template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
}  // namespace

std::vector<int> gate_qubits(const Gate& g) {
  return std::visit(overloaded{
                        [](const SingleQubitGate& s) { return std::vector<int>{s.qubit}; },
                        [](const TwoQubitClifford& t) { return std::vector<int>{t.q0, t.q1}; },
                        [](const TwoQubitBlock& b) { return std::vector<int>{b.q0, b.q1}; },
                        [](const Idle& i) { return std::vector<int>{i.qubit}; },
                    },
                    g);
}

bool is_two_qubit(const Gate& g) {
  return std::holds_alternative<TwoQubitClifford>(g) || std::holds_alternative<TwoQubitBlock>(g);
}

Mat4 clifford_matrix(CliffordKind kind) {
  switch (kind) {
    case CliffordKind::kCNOT:
      return cnot_matrix();
    case CliffordKind::kCPHASE:
      return cphase_matrix();
    case CliffordKind::kSWAP:
      return swap_matrix();
  }
  throw std::logic_error("unknown CliffordKind");
}

const char* clifford_name(CliffordKind kind) {
  switch (kind) {
    case CliffordKind::kCNOT:
      return "CNOT";
    case CliffordKind::kCPHASE:
      return "CPHASE";
    case CliffordKind::kSWAP:
      return "SWAP";
  }
  return "?";
}

CliffordKind clifford_from_name(const std::string& name) {
  if (name == "CNOT") return CliffordKind::kCNOT;
  if (name == "CPHASE") return CliffordKind::kCPHASE;
  if (name == "SWAP") return CliffordKind::kSWAP;
  throw std::invalid_argument("unknown two-qubit Clifford: " + name);
}

MatX gate_matrix(const Gate& g) {
  return std::visit(overloaded{
                        [](const SingleQubitGate& s) -> MatX { return euler_matrix(s.angles); },
                        [](const TwoQubitClifford& t) -> MatX { return clifford_matrix(t.kind); },
                        [](const TwoQubitBlock& b) -> MatX { return b.matrix; },
                        [](const Idle&) -> MatX { return Mat2::Identity(); },
                    },
                    g);
}

bool Layer::has_two_qubit_gate() const {
  return std::any_of(gates.begin(), gates.end(), [](const Gate& g) { return is_two_qubit(g); });
}

Circuit::Circuit(int width, CircuitMetadata metadata) : width_(width), metadata_(std::move(metadata)) {
  if (width < 0) throw std::invalid_argument("Circuit: negative width");
}

void Circuit::append_layer(Layer layer) {
  std::vector<bool> used(static_cast<std::size_t>(width_), false);
  for (const auto& g : layer.gates) {
    const auto qs = gate_qubits(g);
    if (qs.size() == 2 && qs[0] == qs[1]) throw std::invalid_argument("gate touches the same qubit twice");
    for (int q : qs) {
      if (q < 0 || q >= width_) {
        throw std::invalid_argument("gate qubit " + std::to_string(q) + " outside circuit width " +
                                    std::to_string(width_));
      }
      if (used[static_cast<std::size_t>(q)]) {
        throw std::invalid_argument("qubit " + std::to_string(q) + " appears twice in one layer");
      }
      used[static_cast<std::size_t>(q)] = true;
    }
  }
  for (int q = 0; q < width_; ++q) {
    if (!used[static_cast<std::size_t>(q)]) layer.gates.emplace_back(Idle{q});
  }
  layers_.push_back(std::move(layer));
}

void Circuit::append(const Circuit& other) {
  if (other.width() != width_) throw std::invalid_argument("Circuit::append: width mismatch");
  for (const auto& l : other.layers()) layers_.push_back(l);
}

std::size_t Circuit::count_two_qubit_gates() const {
  std::size_t n = 0;
  for (const auto& l : layers_) {
    for (const auto& g : l.gates) n += std::holds_alternative<TwoQubitClifford>(g) ? 1 : 0;
  }
  return n;
}

std::size_t Circuit::count_single_qubit_gates() const {
  std::size_t n = 0;
  for (const auto& l : layers_) {
    for (const auto& g : l.gates) n += std::holds_alternative<SingleQubitGate>(g) ? 1 : 0;
  }
  return n;
}

std::size_t Circuit::count_blocks() const {
  std::size_t n = 0;
  for (const auto& l : layers_) {
    for (const auto& g : l.gates) n += std::holds_alternative<TwoQubitBlock>(g) ? 1 : 0;
  }
  return n;
}

Circuit layer_by_layer_inverse(const Circuit& c) {
  Circuit out(c.width(), c.metadata());
  for (auto it = c.layers().rbegin(); it != c.layers().rend(); ++it) {
    Layer inv;
    inv.gates.reserve(it->gates.size());
    for (const auto& g : it->gates) {
      inv.gates.push_back(std::visit(overloaded{
                                         [](const SingleQubitGate& s) -> Gate {
                                           return SingleQubitGate{s.qubit, euler_inverse(s.angles)};
                                         },
                                         [](const TwoQubitBlock& b) -> Gate {
                                           return TwoQubitBlock{b.q0, b.q1, b.matrix.adjoint()};
                                         },
                                         [](const auto& other) -> Gate { return other; },
                                     },
                                     g));
    }
    out.append_layer(std::move(inv));
  }
  return out;
}

Circuit apply_permutation(const Circuit& c, const QubitPermutation& p) {
  if (p.size() != c.width()) throw std::invalid_argument("apply_permutation: width mismatch");
  Circuit out(c.width(), c.metadata());
  for (const auto& layer : c.layers()) {
    Layer moved;
    for (const auto& g : layer.gates) {
      moved.gates.push_back(std::visit(overloaded{
                                           [&](SingleQubitGate s) -> Gate {
                                             s.qubit = p(s.qubit);
                                             return s;
                                           },
                                           [&](TwoQubitClifford t) -> Gate {
                                             t.q0 = p(t.q0);
                                             t.q1 = p(t.q1);
                                             return t;
                                           },
                                           [&](TwoQubitBlock b) -> Gate {
                                             b.q0 = p(b.q0);
                                             b.q1 = p(b.q1);
                                             return b;
                                           },
                                           [&](Idle i) -> Gate {
                                             i.qubit = p(i.qubit);
                                             return i;
                                           },
                                       },
                                       g));
    }
    out.append_layer(std::move(moved));
  }
  return out;
}

bool gates_equal(const Gate& a, const Gate& b) {
  if (a.index() != b.index()) return false;
  return std::visit(overloaded{
                        [&](const SingleQubitGate& s) {
                          const auto& o = std::get<SingleQubitGate>(b);
                          return s.qubit == o.qubit && s.angles == o.angles;
                        },
                        [&](const TwoQubitClifford& t) {
                          const auto& o = std::get<TwoQubitClifford>(b);
                          return t.q0 == o.q0 && t.q1 == o.q1 && t.kind == o.kind;
                        },
                        [&](const TwoQubitBlock& k) {
                          const auto& o = std::get<TwoQubitBlock>(b);
                          return k.q0 == o.q0 && k.q1 == o.q1 && k.matrix == o.matrix;
                        },
                        [&](const Idle& i) { return i.qubit == std::get<Idle>(b).qubit; },
                    },
                    a);
}

bool circuits_equal(const Circuit& a, const Circuit& b) {
  if (a.width() != b.width() || a.depth() != b.depth() || !(a.metadata() == b.metadata())) return false;
  for (std::size_t i = 0; i < a.depth(); ++i) {
    const auto& la = a.layers()[i].gates;
    const auto& lb = b.layers()[i].gates;
    if (la.size() != lb.size()) return false;
    for (std::size_t j = 0; j < la.size(); ++j) {
      if (!gates_equal(la[j], lb[j])) return false;
    }
  }
  return true;
}

}  // namespace mirrorbench
