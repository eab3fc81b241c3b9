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

#include <vector>

#include "mirrorbench/bitstring.hpp"
#include "mirrorbench/gates.hpp"

namespace mirrorbench {

/// Bijection on qubit labels. image()[i] is where label i is sent: for a
/// compiled circuit, logical qubit i ends on physical qubit image()[i].
class QubitPermutation {
 public:
  QubitPermutation() = default;
  explicit QubitPermutation(std::vector<int> image);

  static QubitPermutation identity(int n);
  static QubitPermutation transposition(int n, int a, int b);

  int size() const { return static_cast<int>(image_.size()); }
  int operator()(int i) const { return image_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& image() const { return image_; }
  bool is_identity() const;

  QubitPermutation inverse() const;
  /// (this after first)(i) = this(first(i)).
  QubitPermutation after(const QubitPermutation& first) const;

  /// Unitary that moves the state of qubit i onto qubit image()[i].
  MatX unitary() const;

  friend bool operator==(const QubitPermutation&, const QubitPermutation&) = default;

 private:
  std::vector<int> image_;
};

/// Relabels bit positions: result.get(p(i)) == b.get(i).
Bitstring apply_permutation(const Bitstring& b, const QubitPermutation& p);

}  // namespace mirrorbench
