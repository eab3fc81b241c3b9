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

#include <filesystem>
#include <fstream>
#include <queue>

#include "mirrorbench/compiler.hpp"
#include "mirrorbench/external.hpp"
#include "mirrorbench/generators.hpp"
#include "mirrorbench/kak.hpp"
#include "mirrorbench/unitary.hpp"
#include "oracle.hpp"

namespace mb = mirrorbench;
namespace fs = std::filesystem;
using mb::MatX;

namespace {

// Pi(final) (U (x) I) Pi(initial)^dagger, built from the oracle helpers.
MatX expected_oracle(const mb::CompiledCircuit& comp, const MatX& u) {
  const Eigen::Index rest = (Eigen::Index{1} << comp.width()) / u.rows();
  const MatX padded = oracle::kron(u, MatX::Identity(rest, rest));
  return comp.permutation.unitary() * padded * comp.initial_layout.unitary().adjoint();
}

double compiled_fidelity(const mb::CompiledCircuit& comp, const mb::Circuit& high) {
  return oracle::process_fidelity(oracle::circuit_unitary(comp.circuit),
                                  expected_oracle(comp, oracle::circuit_unitary(high)));
}

mb::Circuit random_high_level(int n, mb::Rng& rng) {
  switch (mb::uniform_int(rng, 0, 2)) {
    case 0:
      return mb::sample_qv_circuit({n, mb::uniform_int(rng, 1, 4)}, rng);
    case 1:
      return mb::sample_geometry_circuit({n, mb::uniform_int(rng, 1, 4)}, mb::GeometrySpec::grid_for(n), rng);
    default: {
      mb::HamSimParams p{2 * mb::uniform01(rng) - 1, 2 * mb::uniform01(rng) - 1, mb::uniform_int(rng, 1, 3), 0.1, 1.0,
                         false};
      return mb::build_hamsim_circuit(std::max(n, 2), p);
    }
  }
}

std::size_t cnot_count(const mb::Circuit& c) { return c.count_two_qubit_gates(); }

bool connected(const mb::ConnectivityGraph& g) {
  std::vector<bool> seen(static_cast<std::size_t>(g.size()), false);
  std::queue<int> q;
  q.push(0);
  seen[0] = true;
  int count = 1;
  while (!q.empty()) {
    const int v = q.front();
    q.pop();
    for (int w : g.neighbors(v)) {
      if (!seen[static_cast<std::size_t>(w)]) {
        seen[static_cast<std::size_t>(w)] = true;
        ++count;
        q.push(w);
      }
    }
  }
  return count == g.size();
}

}  // namespace

TEST(Kak, SpecialGates) {
  const mb::Mat4 id = mb::Mat4::Identity();
  for (const mb::Mat4& u : {id, mb::cnot_matrix(), mb::swap_matrix(), mb::cphase_matrix()}) {
    const auto c = mb::kak_decompose_su4(u);
    EXPECT_EQ(cnot_count(c), 3U);
    EXPECT_LT(mb::phase_distance(u, oracle::circuit_unitary(c)), 1e-9);
  }
}

TEST(Kak, HaarSamples) {
  mb::Rng rng(21);
  double worst = 0.0;
  for (int i = 0; i < 500; ++i) {
    const mb::Mat4 u = mb::sample_haar_su4(rng);
    const auto c = mb::kak_decompose_su4(u);
    EXPECT_EQ(cnot_count(c), 3U);
    EXPECT_EQ(c.count_blocks(), 0U);
    worst = std::max(worst, mb::phase_distance(u, oracle::circuit_unitary(c)));
  }
  EXPECT_LT(worst, 1e-9);
}

TEST(Kak, RejectsNonUnitary) {
  mb::Mat4 m = mb::Mat4::Identity();
  m(0, 1) = 0.5;
  EXPECT_THROW(mb::kak_decompose_su4(m), std::invalid_argument);
}

TEST(Connectivity, HeavyHexPatches) {
  for (int n = 1; n <= 40; ++n) {
    const auto g = mb::ConnectivityGraph::heavy_hex(n);
    EXPECT_EQ(g.size(), n);
    EXPECT_TRUE(connected(g));
    for (int v = 0; v < n; ++v) EXPECT_LE(g.neighbors(v).size(), 3U);
    EXPECT_EQ(g.kind(), "heavy-hexagon");
  }
  // A heavy-hex lattice has no triangles and no 4-cycles (smallest cycle is 12).
  const auto g = mb::ConnectivityGraph::heavy_hex(40);
  for (const auto& [a, b] : g.edges()) {
    for (int c : g.neighbors(a)) {
      if (c != b) {
        EXPECT_FALSE(g.has_edge(b, c));
      }
    }
  }
}

TEST(Connectivity, PresetsAndErrors) {
  EXPECT_EQ(mb::ConnectivityGraph::preset("line", 5).edges().size(), 4U);
  EXPECT_EQ(mb::ConnectivityGraph::preset("complete", 5).edges().size(), 10U);
  EXPECT_TRUE(connected(mb::ConnectivityGraph::preset("grid", 7)));
  EXPECT_THROW(mb::ConnectivityGraph::preset("torus", 4), std::invalid_argument);
  EXPECT_THROW(mb::ConnectivityGraph(4, {{0, 1}, {2, 3}}), std::invalid_argument);
  const auto line = mb::ConnectivityGraph::line(5);
  EXPECT_EQ(line.distance(0, 4), 4);
  EXPECT_EQ(line.shortest_path(0, 3), (std::vector<int>{0, 1, 2, 3}));
}

TEST(Route, RespectingCircuitIsUnchanged) {
  mb::Circuit c(3);
  c.append_layer({{mb::TwoQubitClifford{0, 1, mb::CliffordKind::kCNOT}}});
  c.append_layer({{mb::SingleQubitGate{2, {0.1, 0.2, 0.3}}, mb::TwoQubitClifford{1, 0, mb::CliffordKind::kCNOT}}});
  mb::Rng rng(22);
  const auto comp = mb::route(c, mb::ConnectivityGraph::line(3), rng);
  EXPECT_TRUE(comp.permutation.is_identity());
  EXPECT_EQ(comp.circuit.depth(), c.depth());
  EXPECT_EQ(cnot_count(comp.circuit), 2U);
  for (std::size_t l = 0; l < c.depth(); ++l) {
    for (std::size_t g = 0; g < c.layers()[l].gates.size(); ++g) {
      EXPECT_TRUE(mb::gates_equal(c.layers()[l].gates[g], comp.circuit.layers()[l].gates[g]));
    }
  }
}

TEST(Route, DistantCnotOnLineNeedsSwap) {
  mb::Circuit c(3);
  c.append_layer({{mb::TwoQubitClifford{0, 2, mb::CliffordKind::kCNOT}}});
  mb::Rng rng(23);
  const auto g = mb::ConnectivityGraph::line(3);
  const auto comp = mb::route(c, g, rng);
  EXPECT_GE(cnot_count(comp.circuit), 4U);  // one SWAP (3 CNOTs) + the gate
  EXPECT_NO_THROW(mb::validate_compiled(comp.circuit, g));
  EXPECT_NEAR(compiled_fidelity(comp, c), 1.0, 1e-10);
  EXPECT_FALSE(comp.permutation.is_identity());
}

TEST(Route, QvOnHeavyHexPaysThreeCnotsPerBlock) {
  mb::Rng rng(24);
  const auto c = mb::sample_qv_circuit({4, 4}, rng);
  const auto g = mb::ConnectivityGraph::heavy_hex(4);
  const auto comp = mb::compile_exact(c, g, rng);
  EXPECT_GE(cnot_count(comp.circuit), 24U);
  EXPECT_NEAR(compiled_fidelity(comp, c), 1.0, 1e-8);
}

TEST(CompileExact, RandomCircuitsOnHeavyHexAndLine) {
  mb::Rng rng(25);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + trial % 3;
    const auto c = random_high_level(n, rng);
    const auto g = trial % 2 ? mb::ConnectivityGraph::line(c.width()) : mb::ConnectivityGraph::heavy_hex(c.width());
    mb::CompileOptions opts;
    opts.random_placement = trial % 4 == 0;
    const auto comp = mb::compile_exact(c, g, rng, opts);
    EXPECT_NO_THROW(mb::validate_compiled(comp.circuit, g));
    EXPECT_EQ(comp.approx_error, 0.0);
    EXPECT_NEAR(compiled_fidelity(comp, c), 1.0, 1e-8) << "trial " << trial;
    EXPECT_NEAR(mb::unitary_process_fidelity(mb::unitary_of(comp.circuit),
                                             mb::expected_unitary(comp, mb::unitary_of(c))),
                1.0, 1e-8);
  }
}

TEST(CompileExact, Examples) {
  mb::Rng rng(26);
  for (int d = 1; d <= 4; ++d) {
    mb::HamSimParams p{0.3, -0.6, d, 0.1, 1.0, false};
    const auto c = mb::build_hamsim_circuit(2, p);
    const auto comp = mb::compile_exact(c, mb::ConnectivityGraph::line(2), rng);
    EXPECT_EQ(cnot_count(comp.circuit), 3U) << "d=" << d;
    EXPECT_NEAR(compiled_fidelity(comp, c), 1.0, 1e-8);
  }
  mb::Circuit idle(3);
  idle.append_layer({});
  idle.append_layer({{mb::SingleQubitGate{1, {0, 0, 0}}}});
  EXPECT_EQ(cnot_count(mb::compile_exact(idle, mb::ConnectivityGraph::line(3), rng).circuit), 0U);

  const auto qv = mb::sample_qv_circuit({3, 3}, rng);
  const auto comp = mb::compile_exact(qv, mb::ConnectivityGraph::complete(3), rng);
  EXPECT_NEAR(compiled_fidelity(comp, qv), 1.0, 1e-8);
}

TEST(CompileExact, NarrowCircuitOnLargerDevice) {
  mb::Rng rng(27);
  const auto qv = mb::sample_qv_circuit({3, 2}, rng);
  const auto g = mb::ConnectivityGraph::heavy_hex(5);
  const auto comp = mb::compile_exact(qv, g, rng);
  EXPECT_EQ(comp.width(), 5);
  EXPECT_NEAR(compiled_fidelity(comp, qv), 1.0, 1e-8);
}

TEST(Dd, Examples) {
  mb::Circuit busy(2);
  busy.append_layer({{mb::TwoQubitClifford{0, 1, mb::CliffordKind::kCNOT}}});
  EXPECT_TRUE(mb::circuits_equal(mb::insert_dd(busy), busy));

  mb::Circuit c(3);
  c.append_layer({{mb::TwoQubitClifford{0, 1, mb::CliffordKind::kCNOT}}});
  const auto dd = mb::insert_dd(c);
  EXPECT_EQ(dd.depth(), 2U);
  int xs = 0;
  for (const auto& l : dd.layers()) {
    for (const auto& g : l.gates) {
      if (const auto* s = std::get_if<mb::SingleQubitGate>(&g)) {
        EXPECT_EQ(s->qubit, 2);
        EXPECT_LT(mb::phase_distance(mb::euler_matrix(s->angles), oracle::pauli('X')), 1e-12);
        ++xs;
      }
    }
  }
  EXPECT_EQ(xs, 2);
  EXPECT_LT((oracle::circuit_unitary(dd) - oracle::circuit_unitary(c)).cwiseAbs().maxCoeff(), 1e-10);

  mb::Rng rng(28);
  const auto qv = mb::sample_qv_circuit({5, 5}, rng);
  const auto comp = mb::compile_exact(qv, mb::ConnectivityGraph::heavy_hex(5), rng);
  const auto with_dd = mb::insert_dd(comp.circuit);
  EXPECT_LT(mb::phase_distance(oracle::circuit_unitary(with_dd), oracle::circuit_unitary(comp.circuit)), 1e-9);
  mb::CompileOptions opts;
  opts.dynamical_decoupling = true;
  mb::Rng rng2(29);
  const auto comp_dd = mb::compile_exact(qv, mb::ConnectivityGraph::heavy_hex(5), rng2, opts);
  EXPECT_NEAR(compiled_fidelity(comp_dd, qv), 1.0, 1e-8);
}

TEST(Validate, RejectsBlocksAndOffGraphGates) {
  const auto g = mb::ConnectivityGraph::line(3);
  mb::Circuit off(3);
  off.append_layer({{mb::TwoQubitClifford{0, 2, mb::CliffordKind::kCNOT}}});
  EXPECT_THROW(mb::validate_compiled(off, g), std::invalid_argument);
  mb::Circuit blk(3);
  blk.append_layer({{mb::TwoQubitBlock{0, 1, mb::Mat4::Identity()}}});
  EXPECT_THROW(mb::validate_compiled(blk, g), std::invalid_argument);
}

TEST(CompiledJson, RoundTrip) {
  mb::Rng rng(30);
  const auto qv = mb::sample_qv_circuit({3, 2}, rng);
  const auto comp = mb::compile_exact(qv, mb::ConnectivityGraph::line(3), rng);
  const auto back = mb::compiled_from_json(mb::json::parse(mb::compiled_to_json(comp).dump()));
  EXPECT_TRUE(mb::circuits_equal(back.circuit, comp.circuit));
  EXPECT_EQ(back.permutation, comp.permutation);
  EXPECT_EQ(back.initial_layout, comp.initial_layout);
  EXPECT_THROW(mb::compiled_from_json(mb::circuit_to_json(qv)), std::invalid_argument);
}

class External : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("mirrorbench_external_" + std::to_string(::getpid()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string script(const std::string& name, const std::string& body) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << "#!/bin/sh\n" << body << "\n";
    fs::permissions(p, fs::perms::owner_all);
    return p.string();
  }

  fs::path dir_;
};

TEST_F(External, EchoPreprocessorIsAccepted) {
  mb::Circuit c(3);
  c.append_layer({{mb::SingleQubitGate{0, {0.1, 0.2, 0.3}}, mb::TwoQubitClifford{1, 2, mb::CliffordKind::kCNOT}}});
  c.append_layer({{mb::TwoQubitClifford{0, 2, mb::CliffordKind::kCPHASE}}});
  mb::ExternalOptions opts;
  opts.command = script("echo.sh", "cp \"$1\" \"$2\"");
  const auto comp = mb::external_preprocess(c, dir_ / "x", mb::ConnectivityGraph::complete(3), opts);
  EXPECT_TRUE(mb::circuits_equal(comp.circuit, c));
  EXPECT_TRUE(comp.permutation.is_identity());
  EXPECT_TRUE(fs::exists(dir_ / "x" / "request_0.json"));
}

TEST_F(External, OffGraphResponseIsAViolation) {
  mb::Circuit c(3);
  c.append_layer({{mb::TwoQubitClifford{0, 2, mb::CliffordKind::kCNOT}}});
  mb::ExternalOptions opts;
  opts.command = script("echo.sh", "cp \"$1\" \"$2\"");
  try {
    mb::external_preprocess(c, dir_, mb::ConnectivityGraph::line(3), opts);
    FAIL() << "expected a gate-set violation";
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("gate-set violation"), std::string::npos);
  }
}

TEST_F(External, PermutedResponseIsRecorded) {
  mb::Rng rng(31);
  const auto high = mb::sample_qv_circuit({4, 2}, rng);
  const auto g = mb::ConnectivityGraph::line(4);
  // A stand-in external compiler: our own router with a random placement.
  mb::CompileOptions co;
  co.random_placement = true;
  const auto reference = mb::compile_exact(high, g, rng, co);
  ASSERT_FALSE(reference.permutation.is_identity());
  mb::write_json_file(dir_ / "canned.json", mb::compiled_to_json(reference));
  mb::ExternalOptions opts;
  opts.command = script("canned.sh", "cp '" + (dir_ / "canned.json").string() + "' \"$2\"");
  opts.id = "perm";
  const auto comp = mb::external_preprocess(high, dir_, g, opts);
  EXPECT_EQ(comp.permutation, reference.permutation);
  EXPECT_NEAR(compiled_fidelity(comp, high), 1.0, 1e-8);
}

TEST_F(External, NarrowResponseIsPaddedToDevice) {
  mb::Circuit c(2);
  c.append_layer({{mb::TwoQubitClifford{0, 1, mb::CliffordKind::kCNOT}}});
  mb::ExternalOptions opts;
  opts.command = script("echo.sh", "cp \"$1\" \"$2\"");
  const auto comp = mb::external_preprocess(c, dir_, mb::ConnectivityGraph::line(4), opts);
  EXPECT_EQ(comp.width(), 4);
  EXPECT_NEAR(compiled_fidelity(comp, c), 1.0, 1e-12);
}

TEST_F(External, ApproximateResponseIsAccepted) {
  mb::Circuit c(2);
  c.append_layer({{mb::TwoQubitClifford{0, 1, mb::CliffordKind::kCNOT}}});
  mb::Circuit empty(2);
  empty.append_layer({});
  auto j = mb::circuit_to_json(empty);
  j["permutation"] = {0, 1};
  j["approx"] = true;
  j["approx_error"] = 0.25;
  mb::write_json_file(dir_ / "approx.json", j);
  mb::ExternalOptions opts;
  opts.command = script("approx.sh", "cp '" + (dir_ / "approx.json").string() + "' \"$2\"");
  const auto comp = mb::external_preprocess(c, dir_, mb::ConnectivityGraph::line(2), opts);
  EXPECT_TRUE(comp.approx);
  EXPECT_DOUBLE_EQ(comp.approx_error, 0.25);
}

TEST_F(External, ErrorsAreReported) {
  mb::Circuit c(2);
  c.append_layer({{mb::TwoQubitClifford{0, 1, mb::CliffordKind::kCNOT}}});
  const auto g = mb::ConnectivityGraph::line(2);
  mb::ExternalOptions opts;
  opts.command = script("garbage.sh", "echo 'not json' > \"$2\"");
  EXPECT_THROW(mb::external_preprocess(c, dir_, g, opts), std::invalid_argument);

  opts.command = script("nopermutation.sh", "echo '{\"width\":2,\"layers\":[]}' > \"$2\"");
  EXPECT_THROW(mb::external_preprocess(c, dir_, g, opts), std::invalid_argument);

  opts.command = script("fail.sh", "exit 3");
  EXPECT_THROW(mb::external_preprocess(c, dir_, g, opts), std::runtime_error);

  opts.command.clear();
  opts.timeout = std::chrono::milliseconds(100);
  opts.poll_interval = std::chrono::milliseconds(10);
  EXPECT_THROW(mb::external_preprocess(c, dir_, g, opts), std::runtime_error);
}
