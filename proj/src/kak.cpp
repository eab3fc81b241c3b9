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

#include "mirrorbench/kak.hpp"

#include <cmath>
#include <stdexcept>

#include "mirrorbench/unitary.hpp"

namespace mirrorbench {

namespace {

const Mat4& magic_basis() {
  static const Mat4 mb = [] {
    const double s = 1.0 / std::sqrt(2.0);
    const cplx i(0.0, 1.0);
    Mat4 m;
    m << 1, 0, 0, i,  //
        0, i, 1, 0,   //
        0, i, -1, 0,  //
        1, 0, 0, -i;
    return Mat4(m * s);
  }();
  return mb;
}

Mat4 kron(const Mat2& a, const Mat2& b) {
  Mat4 out;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  }
  return out;
}

// Diagonals of XX, YY, ZZ in the magic basis; each entry is +-1.
const std::array<Eigen::Vector4d, 3>& interaction_signs() {
  static const std::array<Eigen::Vector4d, 3> signs = [] {
    Mat2 x, y, z;
    x << 0, 1, 1, 0;
    y << 0, cplx(0, -1), cplx(0, 1), 0;
    z << 1, 0, 0, -1;
    std::array<Eigen::Vector4d, 3> out;
    const Mat4& mb = magic_basis();
    const std::array<Mat2, 3> paulis{x, y, z};
    for (std::size_t k = 0; k < 3; ++k) {
      const Mat4 d = mb.adjoint() * kron(paulis[k], paulis[k]) * mb;
      for (int i = 0; i < 4; ++i) out[k](i) = d(i, i).real();
    }
    return out;
  }();
  return signs;
}

// Splits a 4x4 matrix that is (up to rounding) a tensor product into its factors.
void split_tensor(const Mat4& m, Mat2& a, Mat2& b) {
  int bi = 0, bj = 0;
  double best = -1.0;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      if (std::abs(m(i, j)) > best) {
        best = std::abs(m(i, j));
        bi = i;
        bj = j;
      }
    }
  }
  const int ai = bi / 2, aj = bj / 2, ki = bi % 2, kj = bj % 2;
  b = m.block<2, 2>(2 * ai, 2 * aj);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) a(i, j) = m(2 * i + ki, 2 * j + kj) / b(ki, kj);
  }
}

}  // namespace

KakForm kak_form(const Mat4& u_in) {
  if (unitarity_error(u_in) > 1e-10) throw std::invalid_argument("kak_form: input is not unitary");
  const cplx det = u_in.determinant();
  const Mat4 u = u_in * std::polar(1.0, -std::arg(det) / 4.0);
  const Mat4& mb = magic_basis();
  const Mat4 um = mb.adjoint() * u * mb;
  const Mat4 m = um.transpose() * um;
  const Eigen::Matrix4d re = m.real();
  const Eigen::Matrix4d im = m.imag();

  // Re M and Im M commute; a generic real combination shares their eigenbasis.
  Eigen::Matrix4d p;
  Eigen::Vector4cd d2;
  bool ok = false;
  for (int attempt = 0; attempt < 32 && !ok; ++attempt) {
    const double r = 0.5 + 0.61803398875 * attempt + 0.1 * std::sin(1.0 + attempt);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(re + r * im);
    p = es.eigenvectors();
    if (p.determinant() < 0) p.col(0) = -p.col(0);
    const Mat4 dm = p.transpose().cast<cplx>() * m * p.cast<cplx>();
    double off = 0.0;
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) {
        if (i != j) off = std::max(off, std::abs(dm(i, j)));
      }
    }
    d2 = dm.diagonal();
    ok = off < 1e-11;
  }
  if (!ok) throw std::runtime_error("kak_form: simultaneous diagonalization failed");

  Eigen::Vector4cd d;
  for (int i = 0; i < 4; ++i) d(i) = std::sqrt(d2(i));
  // K1 = Um P D^-1 must lie in SO(4); flip one square root if its determinant is -1.
  Mat4 k1 = um * p.cast<cplx>() * d.cwiseInverse().asDiagonal();
  if (k1.determinant().real() < 0) {
    d(0) = -d(0);
    k1.col(0) = -k1.col(0);
  }
  const Mat4 k2 = p.transpose().cast<cplx>();

  KakForm form;
  split_tensor(mb * k1 * mb.adjoint(), form.a1, form.b1);
  split_tensor(mb * k2 * mb.adjoint(), form.a2, form.b2);
  Eigen::Vector4d theta;
  for (int i = 0; i < 4; ++i) theta(i) = std::arg(d(i));
  const auto& s = interaction_signs();
  form.a = s[0].dot(theta) / 4.0;
  form.b = s[1].dot(theta) / 4.0;
  form.c = s[2].dot(theta) / 4.0;
  return form;
}

std::array<Layer, 7> kak_layers(const Mat4& u, int q0, int q1) {
  const KakForm f = kak_form(u);
  const double half_pi = M_PI / 2.0;
  const Mat2 first0 = f.a2;
  const Mat2 first1 = rz(-half_pi) * f.b2;
  const Mat2 last0 = f.a1 * rz(half_pi);
  const Mat2 last1 = f.b1;
  auto sq = [](int q, const Mat2& m) { return Gate(SingleQubitGate{q, euler_from_matrix(m)}); };
  const Gate cx10 = TwoQubitClifford{q1, q0, CliffordKind::kCNOT};
  const Gate cx01 = TwoQubitClifford{q0, q1, CliffordKind::kCNOT};
  std::array<Layer, 7> layers;
  layers[0].gates = {sq(q0, first0), sq(q1, first1)};
  layers[1].gates = {cx10};
  layers[2].gates = {sq(q0, rz(half_pi - 2.0 * f.c)), sq(q1, ry(2.0 * f.a - half_pi))};
  layers[3].gates = {cx01};
  layers[4].gates = {sq(q0, Mat2::Identity()), sq(q1, ry(half_pi - 2.0 * f.b))};
  layers[5].gates = {cx10};
  layers[6].gates = {sq(q0, last0), sq(q1, last1)};
  return layers;
}

Circuit kak_decompose_su4(const Mat4& u) {
  Circuit c(2);
  for (auto& layer : kak_layers(u, 0, 1)) c.append_layer(std::move(layer));
  return c;
}

}  // namespace mirrorbench
