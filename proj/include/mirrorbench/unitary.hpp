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

#include <Eigen/Dense>

#include "mirrorbench/circuit.hpp"

namespace mirrorbench {

inline constexpr int kDefaultOracleLimit = 10;

/// Dense unitary of the whole circuit (basis index big-endian in qubit order).
/// Throws std::invalid_argument when width exceeds `limit`.
MatX unitary_of(const Circuit& c, int limit = kDefaultOracleLimit);

/// Noiseless output state from |0...0>.
Eigen::VectorXcd statevector_of(const Circuit& c, int limit = 14);

/// Process fidelity |Tr(u^dagger v)|^2 / d^2 between two unitary channels.
double unitary_process_fidelity(const MatX& u, const MatX& v);

}  // namespace mirrorbench
