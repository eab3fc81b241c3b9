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

#include "mirrorbench/circuit.hpp"

namespace mirrorbench {

/// Cartan form u ~ (a1 x b1) exp(i(a XX + b YY + c ZZ)) (a2 x b2).
struct KakForm {
  Mat2 a1, b1, a2, b2;
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
};

/// Throws std::invalid_argument if u is not unitary within 1e-10.
KakForm kak_form(const Mat4& u);

/// Two-qubit circuit (qubits 0 and 1) with exactly 3 CNOTs and 8 single-qubit
/// gates in 7 layers, equal to u up to global phase. The 3-CNOT form is
/// emitted even when fewer CNOTs would do.
Circuit kak_decompose_su4(const Mat4& u);

/// The same decomposition as layers acting on (q0, q1) of a wider register.
std::array<Layer, 7> kak_layers(const Mat4& u, int q0, int q1);

}  // namespace mirrorbench
