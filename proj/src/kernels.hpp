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

// Dense amplitude kernels shared by the unitary oracle and the simulators.
// Qubit q of an n-qubit register lives at bit position n-1-q of the basis
// index. A density matrix rho is stored row-major as a 2n-qubit vector, so
// row qubit q is register qubit q and column qubit q is register qubit n+q.

#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <utility>

#include "mirrorbench/circuit.hpp"
#include "mirrorbench/gates.hpp"

namespace mirrorbench::detail {

inline std::size_t bit_of(int n, int q) { return std::size_t{1} << static_cast<unsigned>(n - 1 - q); }

/// Inserts a zero bit into k at the position of the single-bit mask `bit`.
/// Insert several positions in increasing order of significance.
inline std::size_t insert_zero(std::size_t k, std::size_t bit) {
  const std::size_t low = k & (bit - 1);
  return ((k ^ low) << 1U) | low;
}

inline void apply_1q(cplx* psi, int n, int q, const Mat2& m) {
  const std::size_t s = bit_of(n, q);
  const std::size_t half = (std::size_t{1} << static_cast<unsigned>(n)) >> 1U;
  const cplx m00 = m(0, 0), m01 = m(0, 1), m10 = m(1, 0), m11 = m(1, 1);
  for (std::size_t k = 0; k < half; ++k) {
    const std::size_t i = insert_zero(k, s);
    const cplx a = psi[i];
    const cplx b = psi[i | s];
    psi[i] = m00 * a + m01 * b;
    psi[i | s] = m10 * a + m11 * b;
  }
}

/// Multiplies amplitudes with qubit q = 1 by phase1 and q = 0 by phase0.
inline void apply_diag_1q(cplx* psi, int n, int q, cplx phase0, cplx phase1) {
  const std::size_t s = bit_of(n, q);
  const std::size_t half = (std::size_t{1} << static_cast<unsigned>(n)) >> 1U;
  for (std::size_t k = 0; k < half; ++k) {
    const std::size_t i = insert_zero(k, s);
    psi[i] *= phase0;
    psi[i | s] *= phase1;
  }
}

/// Local index of the 4x4 matrix is 2*bit(q0) + bit(q1).
inline void apply_2q(cplx* psi, int n, int q0, int q1, const Mat4& m) {
  const std::size_t s0 = bit_of(n, q0);
  const std::size_t s1 = bit_of(n, q1);
  const std::size_t lo = s0 < s1 ? s0 : s1;
  const std::size_t hi = s0 < s1 ? s1 : s0;
  const std::size_t quarter = (std::size_t{1} << static_cast<unsigned>(n)) >> 2U;
  for (std::size_t k = 0; k < quarter; ++k) {
    const std::size_t i = insert_zero(insert_zero(k, lo), hi);
    const std::array<std::size_t, 4> idx{i, i | s1, i | s0, i | s0 | s1};
    std::array<cplx, 4> v{psi[idx[0]], psi[idx[1]], psi[idx[2]], psi[idx[3]]};
    for (int r = 0; r < 4; ++r) {
      psi[idx[static_cast<std::size_t>(r)]] = m(r, 0) * v[0] + m(r, 1) * v[1] + m(r, 2) * v[2] + m(r, 3) * v[3];
    }
  }
}

/// Permutation-only CNOT (control q0, target q1).
inline void apply_cnot(cplx* psi, int n, int c, int t) {
  const std::size_t sc = bit_of(n, c);
  const std::size_t st = bit_of(n, t);
  const std::size_t lo = sc < st ? sc : st;
  const std::size_t hi = sc < st ? st : sc;
  const std::size_t quarter = (std::size_t{1} << static_cast<unsigned>(n)) >> 2U;
  for (std::size_t k = 0; k < quarter; ++k) {
    const std::size_t i = insert_zero(insert_zero(k, lo), hi) | sc;
    std::swap(psi[i], psi[i | st]);
  }
}

inline void apply_cphase(cplx* psi, int n, int a, int b) {
  const std::size_t sa = bit_of(n, a);
  const std::size_t sb = bit_of(n, b);
  const std::size_t lo = sa < sb ? sa : sb;
  const std::size_t hi = sa < sb ? sb : sa;
  const std::size_t quarter = (std::size_t{1} << static_cast<unsigned>(n)) >> 2U;
  for (std::size_t k = 0; k < quarter; ++k) {
    const std::size_t i = insert_zero(insert_zero(k, lo), hi) | sa | sb;
    psi[i] = -psi[i];
  }
}

inline void apply_swap(cplx* psi, int n, int a, int b) {
  const std::size_t sa = bit_of(n, a);
  const std::size_t sb = bit_of(n, b);
  const std::size_t lo = sa < sb ? sa : sb;
  const std::size_t hi = sa < sb ? sb : sa;
  const std::size_t quarter = (std::size_t{1} << static_cast<unsigned>(n)) >> 2U;
  for (std::size_t k = 0; k < quarter; ++k) {
    const std::size_t i = insert_zero(insert_zero(k, lo), hi);
    std::swap(psi[i | sa], psi[i | sb]);
  }
}

/// Single-qubit Pauli channel on register qubit q of a vectorized density
/// matrix over n register qubits: rho -> pi rho + px X rho X + py Y rho Y + pz Z rho Z.
inline void dm_pauli_channel(cplx* rho, int n, int q, double px, double py, double pz) {
  const double pi = 1.0 - px - py - pz;
  const std::size_t sr = bit_of(2 * n, q);
  const std::size_t sc = bit_of(2 * n, n + q);
  const std::size_t quarter = (std::size_t{1} << static_cast<unsigned>(2 * n)) >> 2U;
  // Diagonal pair mixes with weight (px + py); off-diagonal pair keeps pi - pz
  // of itself, pz is sign-flipped, and X/Y swap the two with opposite signs.
  const double keep_d = pi + pz, swap_d = px + py;
  const double keep_o = pi - pz, swap_o = px - py;
  for (std::size_t k = 0; k < quarter; ++k) {
    const std::size_t i = insert_zero(insert_zero(k, sc), sr);
    const cplx a = rho[i], b = rho[i | sc], c = rho[i | sr], e = rho[i | sr | sc];
    rho[i] = keep_d * a + swap_d * e;
    rho[i | sr | sc] = keep_d * e + swap_d * a;
    rho[i | sc] = keep_o * b + swap_o * c;
    rho[i | sr] = keep_o * c + swap_o * b;
  }
}

/// rho -> gamma rho + (1 - gamma) Tr_{q0,q1}(rho) (x) I/4.
inline void dm_depolarize_2q(cplx* rho, int n, int q0, int q1, double gamma) {
  const std::size_t r0 = bit_of(2 * n, q0), r1 = bit_of(2 * n, q1);
  const std::size_t c0 = bit_of(2 * n, n + q0), c1 = bit_of(2 * n, n + q1);
  std::array<std::size_t, 4> bits{r0, r1, c0, c1};
  std::sort(bits.begin(), bits.end());
  const std::size_t count = (std::size_t{1} << static_cast<unsigned>(2 * n)) >> 4U;
  const std::array<std::size_t, 4> diag{0, c1 | r1, c0 | r0, c0 | r0 | c1 | r1};
  const double mix = (1.0 - gamma) / 4.0;
  for (std::size_t k = 0; k < count; ++k) {
    std::size_t i = k;
    for (auto b : bits) i = insert_zero(i, b);
    // Off-diagonal entries in the (q0,q1) block scale by gamma.
    cplx trace = 0.0;
    for (auto d : diag) trace += rho[i | d];
    for (std::size_t m = 0; m < 16; ++m) {
      const std::size_t off = ((m & 1U) ? r0 : 0) | ((m & 2U) ? r1 : 0) | ((m & 4U) ? c0 : 0) | ((m & 8U) ? c1 : 0);
      rho[i | off] *= gamma;
    }
    for (auto d : diag) rho[i | d] += mix * trace;
  }
}

/// A gate with its matrix precomputed, ready to be applied many times.
struct Op {
  enum class Kind { kNone, k1q, k2q, kCnot, kCphase, kSwap };
  Kind kind = Kind::kNone;
  int q0 = 0;
  int q1 = 0;
  Mat2 m2 = Mat2::Identity();
  Mat4 m4 = Mat4::Identity();
};

inline Op make_op(const Gate& g) {
  Op op;
  if (const auto* s = std::get_if<SingleQubitGate>(&g)) {
    op.kind = Op::Kind::k1q;
    op.q0 = s->qubit;
    op.m2 = euler_matrix(s->angles);
  } else if (const auto* t = std::get_if<TwoQubitClifford>(&g)) {
    op.q0 = t->q0;
    op.q1 = t->q1;
    switch (t->kind) {
      case CliffordKind::kCNOT:
        op.kind = Op::Kind::kCnot;
        break;
      case CliffordKind::kCPHASE:
        op.kind = Op::Kind::kCphase;
        break;
      case CliffordKind::kSWAP:
        op.kind = Op::Kind::kSwap;
        break;
    }
  } else if (const auto* b = std::get_if<TwoQubitBlock>(&g)) {
    op.kind = Op::Kind::k2q;
    op.q0 = b->q0;
    op.q1 = b->q1;
    op.m4 = b->matrix;
  } else {
    op.q0 = std::get<Idle>(g).qubit;
  }
  return op;
}

/// Applies op to an n-qubit register. With conj = true the complex conjugate
/// of the gate is applied instead (used for density-matrix column indices).
inline void apply_op(cplx* psi, int n, const Op& op, int offset = 0, bool conj = false) {
  const int a = op.q0 + offset;
  const int b = op.q1 + offset;
  switch (op.kind) {
    case Op::Kind::kNone:
      break;
    case Op::Kind::k1q:
      apply_1q(psi, n, a, conj ? Mat2(op.m2.conjugate()) : op.m2);
      break;
    case Op::Kind::k2q:
      apply_2q(psi, n, a, b, conj ? Mat4(op.m4.conjugate()) : op.m4);
      break;
    case Op::Kind::kCnot:
      apply_cnot(psi, n, a, b);
      break;
    case Op::Kind::kCphase:
      apply_cphase(psi, n, a, b);
      break;
    case Op::Kind::kSwap:
      apply_swap(psi, n, a, b);
      break;
  }
}

/// rho -> U rho U^dagger on a vectorized n-qubit density matrix.
inline void dm_apply_op(cplx* rho, int n, const Op& op) {
  apply_op(rho, 2 * n, op, 0, false);
  apply_op(rho, 2 * n, op, n, true);
}

}  // namespace mirrorbench::detail
