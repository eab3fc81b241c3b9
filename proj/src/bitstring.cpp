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

#include "mirrorbench/bitstring.hpp"

#include <stdexcept>

namespace mirrorbench {

Bitstring Bitstring::from_string(std::string_view text) {
  Bitstring out(static_cast<int>(text.size()));
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] != '0' && text[i] != '1') {
      throw std::invalid_argument("bitstring must contain only '0' and '1': " + std::string(text));
    }
    out.bits_[i] = text[i] == '1' ? 1 : 0;
  }
  return out;
}

Bitstring Bitstring::from_index(std::uint64_t index, int width) {
  if (width > 64) throw std::invalid_argument("index form limited to 64 qubits");
  Bitstring out(width);
  for (int q = 0; q < width; ++q) {
    out.set(q, ((index >> (width - 1 - q)) & 1U) != 0);
  }
  return out;
}

std::uint64_t Bitstring::to_index() const {
  if (width() > 64) throw std::invalid_argument("index form limited to 64 qubits");
  std::uint64_t index = 0;
  for (auto b : bits_) index = (index << 1U) | b;
  return index;
}

std::string Bitstring::to_string() const {
  std::string s(bits_.size(), '0');
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i]) s[i] = '1';
  }
  return s;
}

int Bitstring::weight() const {
  int w = 0;
  for (auto b : bits_) w += b;
  return w;
}

int hamming_distance(const Bitstring& a, const Bitstring& b) {
  if (a.width() != b.width()) throw std::invalid_argument("hamming_distance: width mismatch");
  int d = 0;
  for (int q = 0; q < a.width(); ++q) d += a.get(q) != b.get(q) ? 1 : 0;
  return d;
}

}  // namespace mirrorbench
