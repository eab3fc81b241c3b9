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

#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <set>

#include "mirrorbench/generators.hpp"
#include "mirrorbench/pauli.hpp"
#include "mirrorbench/unitary.hpp"
#include "oracle.hpp"

namespace mb = mirrorbench;
using mb::MatX;
using cplx = std::complex<double>;

TEST(Haar, Su4IsUnitaryWithUnitDeterminant) {
  mb::Rng rng(11);
  for (int i = 0; i < 500; ++i) {
    const mb::Mat4 u = mb::sample_haar_su4(rng);
    EXPECT_LT(mb::unitarity_error(u), 1e-12);
    EXPECT_LT(std::abs(u.determinant() - cplx(1.0, 0.0)), 1e-12);
  }
}

TEST(Haar, SecondMomentOfEntries) {
  // E|U_ij|^2 = 1/4 and E|U_ij|^4 = 2/(d(d+1)) = 1/10 for Haar U(4).
  mb::Rng rng(12);
  const int samples = 10000;
  double m2 = 0.0, m4 = 0.0;
  for (int i = 0; i < samples; ++i) {
    const mb::Mat4 u = mb::sample_haar_su4(rng);
    for (int r = 0; r < 4; ++r) {
      for (int c = 0; c < 4; ++c) {
        const double a = std::norm(u(r, c));
        m2 += a;
        m4 += a * a;
      }
    }
  }
  m2 /= 16.0 * samples;
  m4 /= 16.0 * samples;
  EXPECT_NEAR(m2, 0.25, 0.25 * 0.02);
  EXPECT_NEAR(m4, 0.1, 0.1 * 0.03);
}

TEST(QvSampler, ShapeExamples) {
  mb::Rng rng(13);
  const auto c44 = mb::sample_qv_circuit({4, 4}, rng);
  ASSERT_EQ(c44.depth(), 4U);
  for (const auto& l : c44.layers()) {
    int blocks = 0;
    for (const auto& g : l.gates) blocks += std::holds_alternative<mb::TwoQubitBlock>(g);
    EXPECT_EQ(blocks, 2);
  }
  const auto c53 = mb::sample_qv_circuit({5, 3}, rng);
  ASSERT_EQ(c53.depth(), 3U);
  for (const auto& l : c53.layers()) {
    int blocks = 0, idles = 0;
    for (const auto& g : l.gates) {
      blocks += std::holds_alternative<mb::TwoQubitBlock>(g);
      idles += std::holds_alternative<mb::Idle>(g);
    }
    EXPECT_EQ(blocks, 2);
    EXPECT_EQ(idles, 1);
  }
  const auto c11 = mb::sample_qv_circuit({1, 1}, rng);
  ASSERT_EQ(c11.depth(), 1U);
  EXPECT_TRUE(std::holds_alternative<mb::Idle>(c11.layers()[0].gates[0]));
}

TEST(QvSampler, PairsAreUniform) {
  // Chi-square over the 6 unordered pairs of 4 qubits; 5 dof, p = 0.01 cut at 15.09.
  mb::Rng rng(14);
  std::map<std::pair<int, int>, int> freq;
  const int layers = 10000;
  const auto c = mb::sample_qv_circuit({4, layers}, rng);
  for (const auto& l : c.layers()) {
    for (const auto& g : l.gates) {
      if (const auto* b = std::get_if<mb::TwoQubitBlock>(&g)) freq[{std::min(b->q0, b->q1), std::max(b->q0, b->q1)}]++;
    }
  }
  ASSERT_EQ(freq.size(), 6U);
  const double expect = 2.0 * layers / 6.0;
  double chi2 = 0.0;
  for (const auto& [pair, k] : freq) chi2 += (k - expect) * (k - expect) / expect;
  EXPECT_LT(chi2, 15.09);
}

TEST(QvSampler, ReproducibleFromSeed) {
  mb::Rng a(99), b(99);
  EXPECT_TRUE(mb::circuits_equal(mb::sample_qv_circuit({4, 3}, a), mb::sample_qv_circuit({4, 3}, b)));
}

TEST(GeometrySampler, LineOfTwoHasHalfABlockPerLayer) {
  EXPECT_NEAR(mb::geometry_keep_probability(2, mb::GeometrySpec::line()), 0.5, 1e-12);
  mb::Rng rng(15);
  const auto c = mb::sample_geometry_circuit({2, 20000}, mb::GeometrySpec::line(), rng);
  EXPECT_NEAR(static_cast<double>(c.count_blocks()) / 20000.0, 0.5, 0.02);
}

TEST(GeometrySampler, GridOfEightAveragesTwoBlocks) {
  const auto geom = mb::GeometrySpec::grid_for(8);
  const auto edges = mb::geometry_edges(8, geom);
  const std::set<std::pair<int, int>> edge_set(edges.begin(), edges.end());
  const double keep = mb::geometry_keep_probability(8, geom);
  mb::Rng rng(16);
  const int layers = 10000;
  double total = 0.0;
  for (int i = 0; i < layers; ++i) {
    const auto layer = mb::sample_geometry_layer(8, edges, keep, rng);
    std::set<int> used;
    for (const auto& g : layer.gates) {
      for (int q : mb::gate_qubits(g)) EXPECT_TRUE(used.insert(q).second);
      if (const auto* b = std::get_if<mb::TwoQubitBlock>(&g)) {
        ++total;
        EXPECT_TRUE(edge_set.count({std::min(b->q0, b->q1), std::max(b->q0, b->q1)}));
      } else {
        EXPECT_TRUE(std::holds_alternative<mb::SingleQubitGate>(g));
      }
    }
  }
  EXPECT_NEAR(total / layers, 2.0, 0.05);
}

TEST(GeometrySampler, RejectsAllToAll) {
  mb::Rng rng(17);
  EXPECT_THROW(mb::sample_geometry_circuit({4, 2}, {mb::GeometrySpec::Kind::kAllToAll, 0, 0}, rng),
               std::invalid_argument);
}

namespace {

MatX rx_ref(double t) {
  MatX m(2, 2);
  m << std::cos(t / 2), cplx(0, -std::sin(t / 2)), cplx(0, -std::sin(t / 2)), std::cos(t / 2);
  return m;
}

MatX rz_ref(double t) {
  MatX m = MatX::Zero(2, 2);
  m(0, 0) = std::exp(cplx(0, -t / 2));
  m(1, 1) = std::exp(cplx(0, t / 2));
  return m;
}

// exp(-i t Z (x) Z) on qubits (a, a+1).
MatX zz_ref(double t, int a, int n) {
  const Eigen::Index dim = Eigen::Index{1} << n;
  MatX m = MatX::Zero(dim, dim);
  for (Eigen::Index x = 0; x < dim; ++x) {
    const int za = ((x >> (n - 1 - a)) & 1) ? -1 : 1;
    const int zb = ((x >> (n - 2 - a)) & 1) ? -1 : 1;
    m(x, x) = std::exp(cplx(0, -t * za * zb));
  }
  return m;
}

MatX trotter_step_ref(int n, const mb::HamSimParams& p) {
  const Eigen::Index dim = Eigen::Index{1} << n;
  MatX u = MatX::Identity(dim, dim);
  for (int q = 0; q < n; ++q) u = oracle::embed(rz_ref(2 * p.tau * p.h_z), {q}, n) * u;
  for (int q = 0; q < n; ++q) u = oracle::embed(rx_ref(2 * p.tau * p.h_x), {q}, n) * u;
  for (int parity = 0; parity < 2; ++parity) {
    for (int a = parity; a + 1 < n; a += 2) u = zz_ref(p.tau * p.coupling, a, n) * u;
  }
  return u;
}

}  // namespace

TEST(HamSim, MatchesExplicitStepProduct) {
  mb::HamSimParams p;
  p.h_x = 0.5;
  p.h_z = -0.3;
  p.tau = 0.1;
  p.steps = 1;
  const auto c = mb::build_hamsim_circuit(3, p);
  EXPECT_LT(mb::phase_distance(trotter_step_ref(3, p), mb::unitary_of(c)), 1e-12);

  p.steps = 3;
  const MatX step = trotter_step_ref(4, p);
  EXPECT_LT(mb::phase_distance(step * step * step, mb::unitary_of(mb::build_hamsim_circuit(4, p))), 1e-12);
}

TEST(HamSim, StructureRepeatsPerStep) {
  mb::HamSimParams p{0.2, -0.7, 2, 0.1, 1.0, false};
  const auto c2 = mb::build_hamsim_circuit(5, p);
  p.steps = 4;
  const auto c4 = mb::build_hamsim_circuit(5, p);
  EXPECT_EQ(c4.depth(), 2 * c2.depth());
  const std::size_t per_step = c2.depth() / 2;
  for (std::size_t l = 0; l < c4.depth(); ++l) {
    const auto& a = c4.layers()[l].gates;
    const auto& b = c4.layers()[l % per_step].gates;
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t g = 0; g < a.size(); ++g) EXPECT_TRUE(mb::gates_equal(a[g], b[g]));
  }
  EXPECT_TRUE(mb::circuits_equal(c4, mb::build_hamsim_circuit(5, p)));
}

TEST(HamSim, DiagonalWithoutFields) {
  mb::HamSimParams p{0.0, 0.0, 2, 0.37, 1.0, false};
  const MatX u = mb::unitary_of(mb::build_hamsim_circuit(4, p));
  const MatX off = u - MatX(u.diagonal().asDiagonal());
  EXPECT_LT(off.cwiseAbs().maxCoeff(), 1e-12);
}

TEST(HamSim, NeelPreludeAndErrors) {
  mb::HamSimParams p{0.0, 0.0, 1, 0.1, 1.0, true};
  const auto psi = mb::statevector_of(mb::build_hamsim_circuit(4, p));
  EXPECT_NEAR(std::norm(psi(0b0101)), 1.0, 1e-12);
  EXPECT_THROW(mb::build_hamsim_circuit(1, p), std::invalid_argument);
  p.h_x = 1.5;
  EXPECT_THROW(mb::build_hamsim_circuit(3, p), std::invalid_argument);
}

TEST(TwoDesign, CliffordsMapPaulisToPaulis) {
  const auto& cl = mb::single_qubit_cliffords();
  std::vector<MatX> mats;
  for (const auto& e : cl) {
    const MatX u = mb::euler_matrix(e);
    for (char p : {'X', 'Y', 'Z'}) {
      const MatX img = u * oracle::pauli(p) * u.adjoint();
      bool found = false;
      for (char q : {'X', 'Y', 'Z'}) {
        for (double s : {1.0, -1.0}) found |= (img - s * oracle::pauli(q)).norm() < 1e-12;
      }
      EXPECT_TRUE(found);
    }
    for (const auto& m : mats) EXPECT_GT(mb::phase_distance(m, u), 1e-6);
    mats.push_back(u);
  }
  EXPECT_EQ(mats.size(), 24U);
}

TEST(TwoDesign, SamplerFrequenciesAreUniform) {
  const auto& cl = mb::single_qubit_cliffords();
  mb::Rng rng(18);
  const int draws = 100000;
  std::vector<int> freq(24, 0);
  for (int i = 0; i < draws; ++i) {
    const auto layer = mb::sample_2design_layer(1, rng);
    const auto& s = std::get<mb::SingleQubitGate>(layer.gates.at(0));
    int idx = -1;
    for (int k = 0; k < 24; ++k) {
      if (cl[static_cast<std::size_t>(k)] == s.angles) idx = k;
    }
    ASSERT_GE(idx, 0);
    ++freq[static_cast<std::size_t>(idx)];
  }
  const double p = 1.0 / 24.0;
  const double sigma = std::sqrt(draws * p * (1 - p));
  for (int k : freq) EXPECT_NEAR(k, draws * p, 3 * sigma);
}

namespace {

// Superoperator of rho -> U rho U^dagger on row-major vec(rho).
MatX superop(const MatX& u) { return oracle::kron(u, u.conjugate()); }

// Haar twirl of S: alpha I + beta |vec I><vec I| with the two invariants of S kept.
MatX haar_twirl(const MatX& s) {
  MatX phi = MatX::Zero(4, 4);
  for (int a : {0, 3}) {
    for (int b : {0, 3}) phi(a, b) = 1.0;
  }
  const cplx t = s.trace();
  const cplx tp = (s * phi).trace();
  // 4 alpha + 2 beta = t, 2 alpha + 4 beta = tp.
  const cplx beta = (2.0 * tp - t) / 6.0;
  const cplx alpha = (t - 2.0 * beta) / 4.0;
  return alpha * MatX::Identity(4, 4) + beta * phi;
}

}  // namespace

TEST(TwoDesign, SecondMomentMatchesHaarTwirl) {
  const MatX s = superop(rz_ref(0.1)) * 0.7 + superop(rx_ref(0.4)) * 0.3;
  const MatX haar = haar_twirl(s);

  MatX exact = MatX::Zero(4, 4);
  for (const auto& e : mb::single_qubit_cliffords()) {
    const MatX m = superop(mb::euler_matrix(e));
    exact += m.adjoint() * s * m;
  }
  exact /= 24.0;
  EXPECT_LT((exact - haar).cwiseAbs().maxCoeff(), 1e-12);

  const MatX s_small = superop(rz_ref(0.1));
  const MatX haar_small = haar_twirl(s_small);
  mb::Rng rng(19);
  MatX sampled = MatX::Zero(4, 4);
  const int draws = 100000;
  for (int i = 0; i < draws; ++i) {
    const auto layer = mb::sample_2design_layer(1, rng);
    const MatX m = superop(mb::gate_matrix(layer.gates.at(0)));
    sampled += m.adjoint() * s_small * m;
  }
  sampled /= static_cast<double>(draws);
  EXPECT_LT((sampled - haar_small).cwiseAbs().maxCoeff(), 1e-3);
}
