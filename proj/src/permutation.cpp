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

#include "mirrorbench/permutation.hpp"

#include <stdexcept>
#include <utility>

namespace mirrorbench {

QubitPermutation::QubitPermutation(std::vector<int> image) : image_(std::move(image)) {
  std::vector<bool> seen(image_.size(), false);
  for (int v : image_) {
    if (v < 0 || v >= size() || seen[static_cast<std::size_t>(v)]) {
      throw std::invalid_argument("QubitPermutation: image is not a bijection");
    }
    seen[static_cast<std::size_t>(v)] = true;
  }
}

QubitPermutation QubitPermutation::identity(int n) {
  std::vector<int> image(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) image[static_cast<std::size_t>(i)] = i;
  return QubitPermutation(std::move(image));
}

QubitPermutation QubitPermutation::transposition(int n, int a, int b) {
  auto image = identity(n).image_;
  std::swap(image.at(static_cast<std::size_t>(a)), image.at(static_cast<std::size_t>(b)));
  return QubitPermutation(std::move(image));
}

bool QubitPermutation::is_identity() const {
  for (int i = 0; i < size(); ++i) {
    if ((*this)(i) != i) return false;
  }
  return true;
}

QubitPermutation QubitPermutation::inverse() const {
  std::vector<int> inv(image_.size());
  for (int i = 0; i < size(); ++i) inv[static_cast<std::size_t>((*this)(i))] = i;
  return QubitPermutation(std::move(inv));
}

QubitPermutation QubitPermutation::after(const QubitPermutation& first) const {
  if (first.size() != size()) throw std::invalid_argument("QubitPermutation: size mismatch");
  std::vector<int> out(image_.size());
  for (int i = 0; i < size(); ++i) out[static_cast<std::size_t>(i)] = (*this)(first(i));
  return QubitPermutation(std::move(out));
}

MatX QubitPermutation::unitary() const {
  const int n = size();
  const auto dim = Eigen::Index{1} << n;
  MatX u = MatX::Zero(dim, dim);
  for (Eigen::Index col = 0; col < dim; ++col) {
    const auto in = Bitstring::from_index(static_cast<std::uint64_t>(col), n);
    const auto out = apply_permutation(in, *this);
    u(static_cast<Eigen::Index>(out.to_index()), col) = 1.0;
  }
  return u;
}

Bitstring apply_permutation(const Bitstring& b, const QubitPermutation& p) {
  if (b.width() != p.size()) throw std::invalid_argument("apply_permutation: width mismatch");
  Bitstring out(b.width());
  for (int i = 0; i < b.width(); ++i) out.set(p(i), b.get(i));
  return out;
}

}  // namespace mirrorbench
