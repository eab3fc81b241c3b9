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

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace mirrorbench {

/// Measurement outcome over n qubits. Character i of the text form is
/// qubit i, so "10" means qubit 0 read 1. Read as a binary number, the text
/// form is also the computational-basis index used by the simulators.
class Bitstring {
 public:
  Bitstring() = default;
  explicit Bitstring(int width) : bits_(static_cast<std::size_t>(width), 0) {}

  static Bitstring from_string(std::string_view text);
  static Bitstring from_index(std::uint64_t index, int width);

  int width() const { return static_cast<int>(bits_.size()); }
  bool get(int qubit) const { return bits_[static_cast<std::size_t>(qubit)] != 0; }
  void set(int qubit, bool value) { bits_[static_cast<std::size_t>(qubit)] = value ? 1 : 0; }
  void flip(int qubit) { bits_[static_cast<std::size_t>(qubit)] ^= 1; }

  std::uint64_t to_index() const;
  std::string to_string() const;
  int weight() const;

  friend auto operator<=>(const Bitstring&, const Bitstring&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

int hamming_distance(const Bitstring& a, const Bitstring& b);

}  // namespace mirrorbench
