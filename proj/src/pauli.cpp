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

#include "mirrorbench/pauli.hpp"

#include <stdexcept>
#include <utility>

namespace mirrorbench {

PauliString::PauliString(int width)
    : x_(static_cast<std::size_t>(width), 0), z_(static_cast<std::size_t>(width), 0) {}

PauliString::PauliString(std::vector<std::uint8_t> x, std::vector<std::uint8_t> z, int sign)
    : x_(std::move(x)), z_(std::move(z)), sign_(sign) {
  if (x_.size() != z_.size()) throw std::invalid_argument("PauliString: x/z width mismatch");
  if (sign_ != 1 && sign_ != -1) throw std::invalid_argument("PauliString: sign must be +1 or -1");
  for (auto& b : x_) b = b ? 1 : 0;
  for (auto& b : z_) b = b ? 1 : 0;
}

PauliString PauliString::from_string(const std::string& text) {
  std::size_t start = 0;
  int sign = 1;
  if (!text.empty() && (text[0] == '+' || text[0] == '-')) {
    sign = text[0] == '-' ? -1 : 1;
    start = 1;
  }
  PauliString p(static_cast<int>(text.size() - start));
  p.sign_ = sign;
  for (std::size_t i = start; i < text.size(); ++i) {
    const int q = static_cast<int>(i - start);
    switch (text[i]) {
      case 'I':
        break;
      case 'X':
        p.set(q, true, false);
        break;
      case 'Z':
        p.set(q, false, true);
        break;
      case 'Y':
        p.set(q, true, true);
        break;
      default:
        throw std::invalid_argument("PauliString: unexpected character in " + text);
    }
  }
  return p;
}

PauliString PauliString::random(int width, Rng& rng) {
  PauliString p(width);
  for (int q = 0; q < width; ++q) {
    const auto r = rng();
    p.set(q, (r & 1U) != 0, (r & 2U) != 0);
  }
  return p;
}

void PauliString::set(int q, bool x, bool z) {
  x_.at(static_cast<std::size_t>(q)) = x ? 1 : 0;
  z_.at(static_cast<std::size_t>(q)) = z ? 1 : 0;
}

bool PauliString::is_identity() const {
  for (int q = 0; q < width(); ++q) {
    if (x(q) || z(q)) return false;
  }
  return true;
}

bool PauliString::is_z_type() const {
  for (int q = 0; q < width(); ++q) {
    if (x(q)) return false;
  }
  return true;
}

Bitstring PauliString::flip_mask() const {
  Bitstring b(width());
  for (int q = 0; q < width(); ++q) b.set(q, x(q));
  return b;
}

Mat2 PauliString::factor_matrix(int q) const {
  Mat2 xm;
  xm << 0, 1, 1, 0;
  Mat2 zm;
  zm << 1, 0, 0, -1;
  Mat2 m = Mat2::Identity();
  if (x(q)) m = m * xm;
  if (z(q)) m = m * zm;
  return m;
}

MatX PauliString::to_matrix() const {
  MatX m = MatX::Identity(1, 1) * static_cast<double>(sign_);
  for (int q = 0; q < width(); ++q) {
    const Mat2 f = factor_matrix(q);
    // Qubit 0 is the most significant tensor factor, so new factors go on the right.
    MatX kron(m.rows() * 2, m.cols() * 2);
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      for (Eigen::Index c = 0; c < m.cols(); ++c) kron.block(r * 2, c * 2, 2, 2) = m(r, c) * f;
    }
    m = std::move(kron);
  }
  return m;
}

std::string PauliString::to_string() const {
  std::string s(1, sign_ < 0 ? '-' : '+');
  for (int q = 0; q < width(); ++q) {
    if (x(q) && z(q)) {
      s += 'Y';
    } else if (x(q)) {
      s += 'X';
    } else if (z(q)) {
      s += 'Z';
    } else {
      s += 'I';
    }
  }
  return s;
}

PauliString compose_pauli(const PauliString& a, const PauliString& b) {
  if (a.width() != b.width()) throw std::invalid_argument("compose_pauli: width mismatch");
  std::vector<std::uint8_t> x(static_cast<std::size_t>(a.width()));
  std::vector<std::uint8_t> z(static_cast<std::size_t>(a.width()));
  int parity = 0;
  for (int q = 0; q < a.width(); ++q) {
    // X^xa Z^za X^xb Z^zb = (-1)^(za xb) X^(xa+xb) Z^(za+zb)
    parity ^= (a.z(q) && b.x(q)) ? 1 : 0;
    x[static_cast<std::size_t>(q)] = a.x(q) != b.x(q);
    z[static_cast<std::size_t>(q)] = a.z(q) != b.z(q);
  }
  const int sign = a.sign() * b.sign() * (parity ? -1 : 1);
  return PauliString(std::move(x), std::move(z), sign);
}

PauliString conjugate_pauli_by_clifford(const PauliString& p, const TwoQubitClifford& g) {
  if (g.q0 < 0 || g.q1 < 0 || g.q0 >= p.width() || g.q1 >= p.width() || g.q0 == g.q1) {
    throw std::invalid_argument("conjugate_pauli_by_clifford: bad gate qubits");
  }
  PauliString out = p;
  const bool xa = p.x(g.q0), za = p.z(g.q0), xb = p.x(g.q1), zb = p.z(g.q1);
  switch (g.kind) {
    case CliffordKind::kCNOT:
      // X_c -> X_c X_t, Z_t -> Z_c Z_t; no reordering sign in X^x Z^z form.
      out.set(g.q0, xa, za != zb);
      out.set(g.q1, xb != xa, zb);
      break;
    case CliffordKind::kCPHASE:
      // X_a -> X_a Z_b, X_b -> Z_a X_b; moving Z_b past X_b costs (-1)^(xa xb).
      out.set(g.q0, xa, za != xb);
      out.set(g.q1, xb, zb != xa);
      if (xa && xb) out.negate();
      break;
    case CliffordKind::kSWAP:
      out.set(g.q0, xb, zb);
      out.set(g.q1, xa, za);
      break;
  }
  return out;
}

PauliString conjugate_pauli_by_clifford(const PauliString& p, const Gate& g) {
  if (const auto* t = std::get_if<TwoQubitClifford>(&g)) return conjugate_pauli_by_clifford(p, *t);
  throw std::invalid_argument("conjugate_pauli_by_clifford: gate is not a two-qubit Clifford");
}

}  // namespace mirrorbench
