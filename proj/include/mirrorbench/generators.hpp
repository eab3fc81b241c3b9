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

#include <array>
#include <utility>
#include <vector>

#include "mirrorbench/circuit.hpp"
#include "mirrorbench/random.hpp"

namespace mirrorbench {

struct CircuitShape {
  int n = 1;
  int d = 1;

  friend auto operator<=>(const CircuitShape&, const CircuitShape&) = default;
};

/// Haar-random d x d unitary, normalized to unit determinant.
MatX sample_haar_unitary(int dim, Rng& rng);
Mat4 sample_haar_su4(Rng& rng);
Mat2 sample_haar_su2(Rng& rng);

/// d layers of floor(n/2) Haar SU(4) blocks on a uniformly random pairing.
Circuit sample_qv_circuit(CircuitShape shape, Rng& rng);

struct GeometrySpec {
  enum class Kind { kAllToAll, kGrid, kLine };
  Kind kind = Kind::kLine;
  int rows = 0;
  int cols = 0;

  static GeometrySpec line() { return {Kind::kLine, 0, 0}; }
  static GeometrySpec grid(int rows, int cols) { return {Kind::kGrid, rows, cols}; }
  /// Near-square grid that holds n qubits.
  static GeometrySpec grid_for(int n);
};

/// Edges among qubits 0..n-1. Grid qubits are numbered row-major.
std::vector<std::pair<int, int>> geometry_edges(int n, const GeometrySpec& geom);

/// Expected size of a random greedy maximal matching on the edge set
/// (deterministic Monte Carlo estimate, cached per edge set).
double expected_maximal_matching_size(int n, const std::vector<std::pair<int, int>>& edges);

/// Probability with which each edge of a sampled maximal matching is kept so
/// that the mean number of two-qubit blocks per layer is n/4 (clamped to 1).
double geometry_keep_probability(int n, const GeometrySpec& geom);

/// One geometry layer: disjoint Haar SU(4) blocks on graph edges plus Haar
/// SU(2) gates on every other qubit.
Layer sample_geometry_layer(int n, const std::vector<std::pair<int, int>>& edges, double keep, Rng& rng);
Circuit sample_geometry_circuit(CircuitShape shape, const GeometrySpec& geom, Rng& rng);

struct HamSimParams {
  double h_z = 0.0;
  double h_x = 0.0;
  int steps = 1;
  double tau = 0.1;
  double coupling = 1.0;
  /// Prepend X on odd qubits to start from |0101...>.
  bool neel_prelude = false;
};

/// Trotterized Ising chain: per step Rz(2 tau h_z), Rx(2 tau h_x) on every
/// qubit, then CNOT Rz(2 tau J) CNOT on even edges and then odd edges.
Circuit build_hamsim_circuit(int n, const HamSimParams& params);

/// Euler angles of the 24 single-qubit Cliffords, in a fixed order with the
/// identity first.
const std::array<EulerAngles, 24>& single_qubit_cliffords();
Layer sample_2design_layer(int n, Rng& rng);

}  // namespace mirrorbench
