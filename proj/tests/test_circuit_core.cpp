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
#include <numbers>

#include "mirrorbench/circuit.hpp"
#include "mirrorbench/circuit_json.hpp"
#include "mirrorbench/generators.hpp"
#include "mirrorbench/pauli.hpp"
#include "mirrorbench/permutation.hpp"
#include "mirrorbench/random.hpp"
#include "mirrorbench/unitary.hpp"
#include "oracle.hpp"

namespace mb = mirrorbench;
using mb::MatX;

namespace {

constexpr double kPi = std::numbers::pi;

mb::EulerAngles random_angles(mb::Rng& rng) {
  return {2 * kPi * mb::uniform01(rng), kPi * mb::uniform01(rng), 2 * kPi * mb::uniform01(rng)};
}

// Random layers of SQ gates and self-inverse Cliffords on a shuffled pairing.
mb::Circuit random_clifford_layer_circuit(int n, int depth, mb::Rng& rng) {
  mb::Circuit c(n);
  for (int l = 0; l < depth; ++l) {
    mb::Layer layer;
    if (l % 2 == 0) {
      for (int q = 0; q < n; ++q) layer.gates.emplace_back(mb::SingleQubitGate{q, random_angles(rng)});
    } else {
      std::vector<int> order(static_cast<std::size_t>(n));
      for (int q = 0; q < n; ++q) order[static_cast<std::size_t>(q)] = q;
      std::shuffle(order.begin(), order.end(), rng);
      for (int i = 0; i + 1 < n; i += 2) {
        const auto kind = static_cast<mb::CliffordKind>(mb::uniform_int(rng, 0, 2));
        layer.gates.emplace_back(mb::TwoQubitClifford{order[static_cast<std::size_t>(i)],
                                                       order[static_cast<std::size_t>(i + 1)], kind});
      }
    }
    c.append_layer(layer);
  }
  return c;
}

}  // namespace

TEST(Gates, EulerRoundTripAndInverse) {
  mb::Rng rng(1);
  for (int i = 0; i < 200; ++i) {
    const mb::Mat2 u = mb::sample_haar_su2(rng);
    const auto e = mb::euler_from_matrix(u);
    EXPECT_LT(mb::phase_distance(u, mb::euler_matrix(e)), 1e-10);
    const MatX prod = mb::euler_matrix(mb::euler_inverse(e)) * mb::euler_matrix(e);
    EXPECT_LT(mb::phase_distance(MatX::Identity(2, 2), prod), 1e-12);
  }
}

TEST(Gates, ZxzConvention) {
  const mb::EulerAngles e{0.3, 1.1, -0.7};
  const MatX expect = mb::rz(0.3) * mb::rx(1.1) * mb::rz(-0.7);
  EXPECT_LT((mb::euler_matrix(e) - expect).norm(), 1e-14);
  MatX rz_ref(2, 2);
  rz_ref << std::exp(std::complex<double>(0, -0.25)), 0, 0, std::exp(std::complex<double>(0, 0.25));
  EXPECT_LT((mb::rz(0.5) - rz_ref).norm(), 1e-15);
}

TEST(Bitstring, TextAndIndex) {
  const auto b = mb::Bitstring::from_string("10");
  EXPECT_TRUE(b.get(0));
  EXPECT_FALSE(b.get(1));
  EXPECT_EQ(b.to_index(), 2U);
  EXPECT_EQ(mb::Bitstring::from_index(5, 3).to_string(), "101");
  EXPECT_EQ(mb::hamming_distance(mb::Bitstring::from_string("1100"), mb::Bitstring::from_string("1010")), 2);
  EXPECT_THROW(mb::Bitstring::from_string("12"), std::invalid_argument);
}

TEST(Permutation, InverseLawAndBitstrings) {
  const mb::QubitPermutation p({2, 0, 3, 1});
  EXPECT_TRUE(p.after(p.inverse()).is_identity());
  EXPECT_TRUE(p.inverse().after(p).is_identity());
  const auto b = mb::Bitstring::from_string("1011");
  EXPECT_EQ(mb::apply_permutation(b, mb::QubitPermutation::identity(4)), b);
  EXPECT_EQ(mb::apply_permutation(mb::Bitstring::from_string("10"), mb::QubitPermutation::transposition(2, 0, 1)),
            mb::Bitstring::from_string("01"));
  EXPECT_THROW(mb::QubitPermutation({0, 0}), std::invalid_argument);
  EXPECT_THROW(mb::apply_permutation(b, mb::QubitPermutation::identity(3)), std::invalid_argument);
}

TEST(Permutation, UnitaryMovesQubitStates) {
  // Qubit 0 in |1>, others |0>; the permutation sends qubit 0 to qubit 2.
  const mb::QubitPermutation p({2, 0, 1});
  const MatX u = p.unitary();
  Eigen::VectorXcd in = Eigen::VectorXcd::Zero(8);
  in(4) = 1.0;  // "100"
  const Eigen::VectorXcd out = u * in;
  EXPECT_NEAR(std::abs(out(1)), 1.0, 1e-15);  // "001"
  // Composition law: Pi(a) Pi(b) = Pi(a after b).
  const mb::QubitPermutation q({1, 2, 0});
  EXPECT_LT((p.unitary() * q.unitary() - p.after(q).unitary()).norm(), 1e-14);
}

TEST(Circuit, LayerValidationAndIdleFill) {
  mb::Circuit c(3);
  c.append_layer({{mb::TwoQubitClifford{0, 2, mb::CliffordKind::kCNOT}}});
  ASSERT_EQ(c.layers()[0].gates.size(), 2U);
  EXPECT_TRUE(std::holds_alternative<mb::Idle>(c.layers()[0].gates[1]));
  EXPECT_THROW(c.append_layer({{mb::SingleQubitGate{3, {}}}}), std::invalid_argument);
  EXPECT_THROW(c.append_layer({{mb::SingleQubitGate{0, {}}, mb::TwoQubitClifford{0, 1}}}), std::invalid_argument);
  EXPECT_THROW(c.append_layer({{mb::TwoQubitClifford{1, 1}}}), std::invalid_argument);
  EXPECT_EQ(c.count_two_qubit_gates(), 1U);
}

TEST(Circuit, InverseExamples) {
  const mb::Circuit empty(2);
  EXPECT_EQ(mb::layer_by_layer_inverse(empty).depth(), 0U);

  mb::Circuit one(2);
  one.append_layer({{mb::TwoQubitClifford{0, 1, mb::CliffordKind::kCNOT}}});
  EXPECT_TRUE(mb::circuits_equal(mb::layer_by_layer_inverse(one), one));
}

TEST(Circuit, InverseIsAdjointOnRandomCircuits) {
  mb::Rng rng(2);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 1 + trial % 4;
    mb::Circuit c = random_clifford_layer_circuit(n, 5, rng);
    if (n >= 2 && trial % 3 == 0) {
      mb::Layer blk;
      blk.gates.emplace_back(mb::TwoQubitBlock{0, n - 1, mb::sample_haar_su4(rng)});
      c.append_layer(blk);
    }
    const MatX u = oracle::circuit_unitary(c);
    const MatX ui = oracle::circuit_unitary(mb::layer_by_layer_inverse(c));
    EXPECT_LT((ui * u - MatX::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff(), 1e-9);
  }
}

TEST(Circuit, ApplyPermutationConjugatesUnitary) {
  mb::Rng rng(3);
  const mb::Circuit c = random_clifford_layer_circuit(3, 4, rng);
  const mb::QubitPermutation p({1, 2, 0});
  const mb::Circuit moved = mb::apply_permutation(c, p);
  const MatX expect = p.unitary() * oracle::circuit_unitary(c) * p.unitary().adjoint();
  EXPECT_LT((oracle::circuit_unitary(moved) - expect).norm(), 1e-10);
  EXPECT_TRUE(mb::circuits_equal(mb::apply_permutation(moved, p.inverse()), c));
  EXPECT_TRUE(mb::circuits_equal(mb::apply_permutation(c, mb::QubitPermutation::identity(3)), c));
  EXPECT_THROW(mb::apply_permutation(c, mb::QubitPermutation::identity(2)), std::invalid_argument);
}

TEST(Unitary, Examples) {
  mb::Circuit idle(3);
  idle.append_layer({});
  idle.append_layer({});
  EXPECT_LT((mb::unitary_of(idle) - MatX::Identity(8, 8)).norm(), 1e-15);

  mb::Circuit cx(2);
  cx.append_layer({{mb::TwoQubitClifford{0, 1, mb::CliffordKind::kCNOT}}});
  MatX expect = MatX::Zero(4, 4);
  expect(0, 0) = expect(1, 1) = expect(2, 3) = expect(3, 2) = 1.0;
  EXPECT_LT((mb::unitary_of(cx) - expect).norm(), 1e-15);

  mb::Rng rng(4);
  const auto qv = mb::sample_qv_circuit({3, 3}, rng);
  const MatX u = mb::unitary_of(qv);
  EXPECT_LT(mb::unitarity_error(u), 1e-10);
  EXPECT_LT((u - oracle::circuit_unitary(qv)).norm(), 1e-10);

  EXPECT_THROW(mb::unitary_of(mb::Circuit(11)), std::invalid_argument);
}

TEST(Unitary, MatchesOracleOnRandomCircuits) {
  mb::Rng rng(5);
  for (int n = 1; n <= 5; ++n) {
    const auto c = random_clifford_layer_circuit(n, 6, rng);
    EXPECT_LT((mb::unitary_of(c) - oracle::circuit_unitary(c)).norm(), 1e-10) << "n=" << n;
    const Eigen::VectorXcd psi = mb::statevector_of(c);
    EXPECT_LT((psi - oracle::circuit_unitary(c).col(0)).norm(), 1e-10);
  }
}

TEST(Pauli, ComposeExamples) {
  using P = mb::PauliString;
  EXPECT_EQ(mb::compose_pauli(P::from_string("XI"), P::from_string("XI")), P::from_string("+II"));
  const auto xz = mb::compose_pauli(P::from_string("X"), P::from_string("Z"));
  const auto zx = mb::compose_pauli(P::from_string("Z"), P::from_string("X"));
  EXPECT_EQ(xz.sign(), -zx.sign());
  EXPECT_TRUE(mb::compose_pauli(mb::compose_pauli(P::from_string("X"), P::from_string("Z")),
                                mb::compose_pauli(P::from_string("Z"), P::from_string("X")))
                  .is_identity());
  EXPECT_EQ(mb::compose_pauli(mb::compose_pauli(P::from_string("X"), P::from_string("Z")),
                              mb::compose_pauli(P::from_string("Z"), P::from_string("X")))
                .sign(),
            1);
  EXPECT_THROW(mb::compose_pauli(P::from_string("X"), P::from_string("XX")), std::invalid_argument);
}

TEST(Pauli, ComposeMatchesDenseProduct) {
  mb::Rng rng(6);
  // (X (x) Z)(Z (x) Z) first, then random pairs.
  const auto a0 = mb::PauliString::from_string("XZ");
  const auto b0 = mb::PauliString::from_string("ZZ");
  const auto c0 = mb::compose_pauli(a0, b0);
  EXPECT_TRUE(c0.x(0) && c0.z(0) && !c0.x(1) && !c0.z(1));
  EXPECT_LT((c0.to_matrix() - a0.to_matrix() * b0.to_matrix()).norm(), 1e-14);
  for (int i = 0; i < 200; ++i) {
    const int n = 1 + i % 3;
    auto a = mb::PauliString::random(n, rng);
    auto b = mb::PauliString::random(n, rng);
    if (i % 2) a.negate();
    EXPECT_LT((mb::compose_pauli(a, b).to_matrix() - a.to_matrix() * b.to_matrix()).norm(), 1e-13);
  }
}

TEST(Pauli, ToMatrixUsesAbsorbedPhaseForY) {
  // Y is stored as X Z = -iY.
  const MatX m = mb::PauliString::from_string("Y").to_matrix();
  EXPECT_LT((m - std::complex<double>(0, -1) * oracle::pauli('Y')).norm(), 1e-15);
  EXPECT_LT((mb::PauliString::from_string("-XZ").to_matrix() + oracle::pauli_matrix("XZ")).norm(), 1e-15);
  EXPECT_TRUE(mb::PauliString::from_string("IZZ").is_z_type());
  EXPECT_EQ(mb::PauliString::from_string("XYZ").flip_mask().to_string(), "110");
}

TEST(Pauli, CliffordConjugationExamples) {
  using P = mb::PauliString;
  const mb::TwoQubitClifford cx{0, 1, mb::CliffordKind::kCNOT};
  EXPECT_EQ(mb::conjugate_pauli_by_clifford(P::from_string("XI"), cx), P::from_string("XX"));
  EXPECT_EQ(mb::conjugate_pauli_by_clifford(P::from_string("IZ"), cx), P::from_string("ZZ"));
  const mb::TwoQubitClifford cz{0, 1, mb::CliffordKind::kCPHASE};
  const auto out = mb::conjugate_pauli_by_clifford(P::from_string("XI"), cz);
  const MatX g = mb::cphase_matrix();
  EXPECT_LT((out.to_matrix() - g * P::from_string("XI").to_matrix() * g.adjoint()).norm(), 1e-14);
  EXPECT_THROW(mb::conjugate_pauli_by_clifford(P::from_string("XI"), mb::Gate{mb::SingleQubitGate{0, {}}}),
               std::invalid_argument);
}

TEST(Pauli, ConjugationThroughCliffordCircuitsMatchesDense) {
  mb::Rng rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + trial % 2;
    mb::Circuit c(n);
    for (int l = 0; l < 4; ++l) {
      int a = mb::uniform_int(rng, 0, n - 1);
      int b = mb::uniform_int(rng, 0, n - 2);
      if (b >= a) ++b;
      c.append_layer({{mb::TwoQubitClifford{a, b, static_cast<mb::CliffordKind>(mb::uniform_int(rng, 0, 2))}}});
    }
    auto p = mb::PauliString::random(n, rng);
    const MatX u = oracle::circuit_unitary(c);
    const MatX expect = u * p.to_matrix() * u.adjoint();
    for (const auto& layer : c.layers()) {
      for (const auto& g : layer.gates) {
        if (mb::is_two_qubit(g)) p = mb::conjugate_pauli_by_clifford(p, g);
      }
    }
    EXPECT_LT((p.to_matrix() - expect).norm(), 1e-12);
  }
}

TEST(Json, CircuitRoundTripAllGateKinds) {
  mb::Rng rng(8);
  mb::CircuitMetadata meta{"qv", 3, 42, {{"note", "x"}}};
  mb::Circuit c(4, meta);
  c.append_layer({{mb::SingleQubitGate{0, {0.1, 0.2, 0.3}}, mb::TwoQubitClifford{1, 2, mb::CliffordKind::kCPHASE}}});
  c.append_layer({{mb::TwoQubitBlock{3, 0, mb::sample_haar_su4(rng)}, mb::TwoQubitClifford{2, 1, mb::CliffordKind::kSWAP}}});
  c.append_layer({{mb::TwoQubitClifford{1, 3, mb::CliffordKind::kCNOT}}});
  const auto j = mb::circuit_to_json(c);
  const auto back = mb::circuit_from_json(mb::json::parse(j.dump()));
  EXPECT_TRUE(mb::circuits_equal(back, c));
  EXPECT_EQ(j.at("layers")[0][0].at("kind"), "SQ");
  EXPECT_THROW(mb::circuit_from_json(mb::json{{"width", 2}}), std::invalid_argument);
  EXPECT_THROW(mb::circuit_from_json(mb::json::parse(R"({"width":2,"layers":[[{"kind":"TQ","gate":"FOO","control":0,"target":1}]]})")),
               std::invalid_argument);
}

TEST(Seeds, DeriveSeedIsStableAndPathSensitive) {
  EXPECT_EQ(mb::derive_seed(1, {2, 3}), mb::derive_seed(1, {2, 3}));
  EXPECT_NE(mb::derive_seed(1, {2, 3}), mb::derive_seed(1, {3, 2}));
  EXPECT_NE(mb::derive_seed(1, {2}), mb::derive_seed(2, {2}));
  static_assert(mb::fnv1a("") == 0xCBF29CE484222325ULL);
  static_assert(mb::fnv1a("a") == 0xAF63DC4C8601EC8CULL);
}
