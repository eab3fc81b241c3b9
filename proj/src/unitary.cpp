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

#include "mirrorbench/unitary.hpp"

#include <stdexcept>
#include <string>

#include "kernels.hpp"

namespace mirrorbench {

namespace {
void check_width(const Circuit& c, int limit) {
  if (c.width() > limit) {
    throw std::invalid_argument("circuit width " + std::to_string(c.width()) + " exceeds oracle limit " +
                                std::to_string(limit));
  }
}
}  // namespace

MatX unitary_of(const Circuit& c, int limit) {
  check_width(c, limit);
  const int n = c.width();
  const Eigen::Index dim = Eigen::Index{1} << n;
  MatX u = MatX::Identity(dim, dim);
  for (const auto& layer : c.layers()) {
    for (const auto& g : layer.gates) {
      const auto op = detail::make_op(g);
      if (op.kind == detail::Op::Kind::kNone) continue;
      for (Eigen::Index col = 0; col < dim; ++col) detail::apply_op(u.col(col).data(), n, op);
    }
  }
  return u;
}

Eigen::VectorXcd statevector_of(const Circuit& c, int limit) {
  check_width(c, limit);
  const int n = c.width();
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(Eigen::Index{1} << n);
  psi(0) = 1.0;
  for (const auto& layer : c.layers()) {
    for (const auto& g : layer.gates) detail::apply_op(psi.data(), n, detail::make_op(g));
  }
  return psi;
}

double unitary_process_fidelity(const MatX& u, const MatX& v) {
  if (u.rows() != v.rows() || u.cols() != v.cols()) {
    throw std::invalid_argument("unitary_process_fidelity: dimension mismatch");
  }
  const double d = static_cast<double>(u.rows());
  return std::norm((u.adjoint() * v).trace()) / (d * d);
}

}  // namespace mirrorbench
