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

#include <optional>
#include <string>

#include "mirrorbench/circuit.hpp"
#include "mirrorbench/circuit_json.hpp"
#include "mirrorbench/connectivity.hpp"
#include "mirrorbench/permutation.hpp"
#include "mirrorbench/random.hpp"

namespace mirrorbench {

/// A low-level circuit over the physical qubits of a device.
///
/// With Pi(p) the unitary that carries qubit i to p(i), the circuit implements
/// Pi(permutation) * U * Pi(initial_layout)^dagger, where U is the target
/// unitary (padded with identities up to the device size). Logical qubit i
/// starts on physical qubit initial_layout(i) and ends on permutation(i).
struct CompiledCircuit {
  Circuit circuit;
  QubitPermutation permutation;
  QubitPermutation initial_layout;
  /// Zero for exact compilations; otherwise as reported by the compiler.
  double approx_error = 0.0;
  bool approx = false;
  std::string connectivity = "complete";

  int width() const { return circuit.width(); }
};

struct CompileOptions {
  /// Fixed logical-to-physical placement; identity when unset.
  std::optional<QubitPermutation> initial_layout;
  /// Draw a uniformly random placement from the rng (ignored if initial_layout is set).
  bool random_placement = false;
  bool dynamical_decoupling = false;
};

/// Adds idle qubits so that c has the given width.
Circuit widen(const Circuit& c, int width);

/// Merges runs of gates acting on one qubit pair (with the single-qubit gates
/// around them) into opaque two-qubit blocks. Two blocks that each hold an
/// input SU(4) are never merged, so every input SU(4) costs its own 3 CNOTs.
Circuit consolidate_blocks(const Circuit& c);

/// Replaces every TwoQubitBlock with its 3-CNOT KAK form and packs the
/// result as-soon-as-possible.
Circuit lower_blocks(const Circuit& c);

/// Greedy SWAP routing. Layers whose two-qubit gates already sit on edges are
/// emitted unchanged; for the others each distant pair is brought together
/// along a shortest path, each SWAP written as 3 CNOTs.
CompiledCircuit route(const Circuit& c, const ConnectivityGraph& g, Rng& rng, const CompileOptions& options = {});

/// consolidate_blocks + lower_blocks + route (+ insert_dd): an exact
/// compilation using only single-qubit gates and CNOTs on graph edges.
CompiledCircuit compile_exact(const Circuit& c, const ConnectivityGraph& g, Rng& rng,
                              const CompileOptions& options = {});

/// Replaces each Idle that shares a layer with a two-qubit gate by an
/// Rx(pi), Rx(-pi) pair. Such a layer is split in two: the gates plus Rx(pi)
/// on the idlers, then Rx(-pi) on the idlers alone.
Circuit insert_dd(const Circuit& c);

/// Throws std::invalid_argument unless every gate is SQ/Idle or a Clifford on a graph edge.
void validate_compiled(const Circuit& c, const ConnectivityGraph& g);

/// Unitary the compiled circuit is meant to implement: Pi(final) U Pi(initial)^dagger.
MatX expected_unitary(const CompiledCircuit& comp, const MatX& target);

json compiled_to_json(const CompiledCircuit& comp);
CompiledCircuit compiled_from_json(const json& j);

}  // namespace mirrorbench
