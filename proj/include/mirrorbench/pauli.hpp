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
#include <string>
#include <vector>

#include "mirrorbench/bitstring.hpp"
#include "mirrorbench/circuit.hpp"
#include "mirrorbench/gates.hpp"
#include "mirrorbench/random.hpp"

namespace mirrorbench {

/// Signed n-qubit Pauli operator sign * prod_q X_q^x[q] Z_q^z[q].
///
/// Only the +-1 sign is tracked. A qubit with both bits set stands for Y with
/// the factor of i absorbed (X Z = -iY), which is all the frame bookkeeping
/// needs because global phases never reach a measurement.
class PauliString {
 public:
  PauliString() = default;
  explicit PauliString(int width);
  PauliString(std::vector<std::uint8_t> x, std::vector<std::uint8_t> z, int sign = 1);

  /// Parses "+XIZY" / "-ZZ" / "XY" (leading sign optional).
  static PauliString from_string(const std::string& text);
  static PauliString identity(int width) { return PauliString(width); }
  static PauliString random(int width, Rng& rng);

  int width() const { return static_cast<int>(x_.size()); }
  bool x(int q) const { return x_[static_cast<std::size_t>(q)] != 0; }
  bool z(int q) const { return z_[static_cast<std::size_t>(q)] != 0; }
  int sign() const { return sign_; }
  const std::vector<std::uint8_t>& x_bits() const { return x_; }
  const std::vector<std::uint8_t>& z_bits() const { return z_; }

  void set(int q, bool x, bool z);
  void negate() { sign_ = -sign_; }

  bool is_identity() const;
  /// True iff the operator is diagonal (only I and Z factors).
  bool is_z_type() const;
  /// Bits flipped when the operator acts on a computational basis state.
  Bitstring flip_mask() const;
  /// Single-qubit factor on qubit q as a 2x2 matrix, X^x Z^z.
  Mat2 factor_matrix(int q) const;
  /// Dense 2^n x 2^n matrix including the sign.
  MatX to_matrix() const;
  std::string to_string() const;

  friend bool operator==(const PauliString&, const PauliString&) = default;

 private:
  std::vector<std::uint8_t> x_;
  std::vector<std::uint8_t> z_;
  int sign_ = 1;
};

/// Operator product a * b with sign from the X/Z overlap parity.
PauliString compose_pauli(const PauliString& a, const PauliString& b);

/// g p g^dagger for a two-qubit Clifford gate g.
PauliString conjugate_pauli_by_clifford(const PauliString& p, const TwoQubitClifford& g);
/// Overload accepting any gate; throws std::invalid_argument unless g is a Clifford.
PauliString conjugate_pauli_by_clifford(const PauliString& p, const Gate& g);

}  // namespace mirrorbench
