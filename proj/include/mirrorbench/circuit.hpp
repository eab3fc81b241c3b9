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

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "mirrorbench/gates.hpp"
#include "mirrorbench/permutation.hpp"

namespace mirrorbench {

enum class CliffordKind { kCNOT, kCPHASE, kSWAP };

struct SingleQubitGate {
  int qubit = 0;
  EulerAngles angles;
};

/// Self-inverse two-qubit Clifford. For CNOT, q0 is the control.
struct TwoQubitClifford {
  int q0 = 0;
  int q1 = 1;
  CliffordKind kind = CliffordKind::kCNOT;
};

/// Opaque two-qubit unitary (QV and geometry circuits). Only high-level
/// circuits carry these; the compiler lowers them to SQ + CNOT.
struct TwoQubitBlock {
  int q0 = 0;
  int q1 = 1;
  Mat4 matrix = Mat4::Identity();
};

struct Idle {
  int qubit = 0;
};

using Gate = std::variant<SingleQubitGate, TwoQubitClifford, TwoQubitBlock, Idle>;

/// Qubits touched by g, in the gate's own order. Single-qubit ops return one entry.
std::vector<int> gate_qubits(const Gate& g);
bool is_two_qubit(const Gate& g);
/// Matrix of the gate on its own qubits (2x2 or 4x4).
MatX gate_matrix(const Gate& g);
Mat4 clifford_matrix(CliffordKind kind);
const char* clifford_name(CliffordKind kind);
CliffordKind clifford_from_name(const std::string& name);

struct Layer {
  std::vector<Gate> gates;

  bool has_two_qubit_gate() const;
};

struct CircuitMetadata {
  std::string family;
  int depth = 0;
  std::uint64_t seed = 0;
  /// Free-form string tags carried through serialization.
  std::map<std::string, std::string> tags;

  friend bool operator==(const CircuitMetadata&, const CircuitMetadata&) = default;
};

/// Ordered layers over a fixed number of qubits. Every qubit appears in
/// exactly one gate of every layer; append_layer fills gaps with Idle.
class Circuit {
 public:
  Circuit() = default;
  explicit Circuit(int width, CircuitMetadata metadata = {});

  int width() const { return width_; }
  const std::vector<Layer>& layers() const { return layers_; }
  std::size_t depth() const { return layers_.size(); }
  const CircuitMetadata& metadata() const { return metadata_; }
  CircuitMetadata& metadata() { return metadata_; }

  /// Validates disjointness and index range; missing qubits become Idle.
  void append_layer(Layer layer);
  void append(const Circuit& other);

  std::size_t count_two_qubit_gates() const;
  std::size_t count_single_qubit_gates() const;
  std::size_t count_blocks() const;
  bool has_blocks() const { return count_blocks() > 0; }

 private:
  int width_ = 0;
  CircuitMetadata metadata_;
  std::vector<Layer> layers_;
};

/// Reversed layer order with every gate inverted: SQ angles analytically,
/// blocks by adjoint, Cliffords unchanged.
Circuit layer_by_layer_inverse(const Circuit& c);

/// Relabels qubit q to p(q) in every gate.
Circuit apply_permutation(const Circuit& c, const QubitPermutation& p);

bool gates_equal(const Gate& a, const Gate& b);
bool circuits_equal(const Circuit& a, const Circuit& b);

}  // namespace mirrorbench
