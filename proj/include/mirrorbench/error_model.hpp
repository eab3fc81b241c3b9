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

#include "mirrorbench/circuit_json.hpp"

namespace mirrorbench {

struct PauliRates {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double total() const { return x + y + z; }
  friend bool operator==(const PauliRates&, const PauliRates&) = default;
};

/// Declarative noise model. All channels act right after the gate they are
/// attached to.
///
/// A depolarizing channel with polarization g on k qubits is
/// rho -> g rho + (1 - g) Tr_k(rho) (x) I / 2^k, i.e. with probability 1 - g a
/// uniformly random k-qubit Pauli (identity included) is applied.
struct ErrorModel {
  /// After every single-qubit gate.
  double g1_pol = 1.0;
  /// After every two-qubit gate, on its two qubits.
  double g2_pol = 1.0;
  /// Coherent Rz(theta) on every Idle in a layer that holds a two-qubit gate.
  double idle_z_rad = 0.0;
  /// Independent bit flip on every measured bit.
  double readout_flip = 0.0;
  /// Depolarizing channel on the whole register at the end of the circuit.
  double global_pol = 1.0;
  /// Stochastic Pauli channel on every qubit touched by a non-idle gate.
  PauliRates pauli_rates;

  /// Throws std::invalid_argument when some channel is not CPTP.
  void validate() const;
  bool is_noiseless() const;

  friend bool operator==(const ErrorModel&, const ErrorModel&) = default;
};

json error_model_to_json(const ErrorModel& em);
/// Unknown keys are rejected so that typos do not silently disable noise.
ErrorModel error_model_from_json(const json& j);

}  // namespace mirrorbench
