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

#include <complex>

#include <Eigen/Dense>

namespace mirrorbench {

using cplx = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4cd;
using MatX = Eigen::MatrixXcd;

/// Single-qubit gate parameters in the Z-X-Z convention:
/// U = Rz(a) * Rx(b) * Rz(c), so Rz(c) acts first in time.
struct EulerAngles {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;

  friend bool operator==(const EulerAngles&, const EulerAngles&) = default;
};

Mat2 rz(double theta);
Mat2 rx(double theta);
Mat2 ry(double theta);

Mat2 euler_matrix(const EulerAngles& e);

/// Recovers Z-X-Z angles of any 2x2 unitary. Global phase is discarded.
EulerAngles euler_from_matrix(const Mat2& u);

/// Exact inverse: Rz(-c) Rx(-b) Rz(-a).
inline EulerAngles euler_inverse(const EulerAngles& e) { return {-e.c, -e.b, -e.a}; }

// Two-qubit matrices use the local basis index 2*bit(q0) + bit(q1).
Mat4 cnot_matrix();
Mat4 cphase_matrix();
Mat4 swap_matrix();

/// Largest entry-wise deviation between a and b after the best global phase
/// has been applied to b. Zero iff a and b agree up to global phase.
double phase_distance(const MatX& a, const MatX& b);

/// max |U^dagger U - I|.
double unitarity_error(const MatX& u);

}  // namespace mirrorbench
