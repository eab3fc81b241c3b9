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

#include "mirrorbench/gates.hpp"

#include <cmath>
#include <numbers>

namespace mirrorbench {

namespace {
constexpr cplx kI{0.0, 1.0};
}

Mat2 rz(double theta) {
  Mat2 m = Mat2::Zero();
  m(0, 0) = std::exp(-kI * (theta / 2));
  m(1, 1) = std::exp(kI * (theta / 2));
  return m;
}

Mat2 rx(double theta) {
  const double c = std::cos(theta / 2);
  const double s = std::sin(theta / 2);
  Mat2 m;
  m << c, -kI * s, -kI * s, c;
  return m;
}

Mat2 ry(double theta) {
  const double c = std::cos(theta / 2);
  const double s = std::sin(theta / 2);
  Mat2 m;
  m << c, -s, s, c;
  return m;
}

Mat2 euler_matrix(const EulerAngles& e) { return rz(e.a) * rx(e.b) * rz(e.c); }

EulerAngles euler_from_matrix(const Mat2& u) {
  // Project onto SU(2); the sign ambiguity of the square root is a global phase.
  const cplx det = u.determinant();
  const Mat2 w = u / std::sqrt(det);
  // w = [[ cos(b/2) e^{-i(a+c)/2}, -i sin(b/2) e^{-i(a-c)/2}],
  //      [-i sin(b/2) e^{ i(a-c)/2},   cos(b/2) e^{ i(a+c)/2}]]
  const double cos_half = std::abs(w(1, 1));
  const double sin_half = std::abs(w(1, 0));
  const double b = 2.0 * std::atan2(sin_half, cos_half);
  double sum = 0.0;
  double diff = 0.0;
  constexpr double kDegenerate = 1e-12;
  if (cos_half > kDegenerate) sum = 2.0 * std::arg(w(1, 1));
  if (sin_half > kDegenerate) diff = 2.0 * (std::arg(w(1, 0)) + std::numbers::pi / 2);
  return {(sum + diff) / 2, b, (sum - diff) / 2};
}

Mat4 cnot_matrix() {
  Mat4 m = Mat4::Zero();
  m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1.0;
  return m;
}

Mat4 cphase_matrix() {
  Mat4 m = Mat4::Identity();
  m(3, 3) = -1.0;
  return m;
}

Mat4 swap_matrix() {
  Mat4 m = Mat4::Zero();
  m(0, 0) = m(1, 2) = m(2, 1) = m(3, 3) = 1.0;
  return m;
}

double phase_distance(const MatX& a, const MatX& b) {
  const cplx overlap = (b.adjoint() * a).trace();
  const cplx phase = std::abs(overlap) > 0 ? overlap / std::abs(overlap) : cplx{1.0, 0.0};
  return (a - phase * b).cwiseAbs().maxCoeff();
}

double unitarity_error(const MatX& u) {
  return (u.adjoint() * u - MatX::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
}

}  // namespace mirrorbench
