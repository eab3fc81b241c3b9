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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mirrorbench/bitstring.hpp"
#include "mirrorbench/circuit.hpp"
#include "mirrorbench/circuit_json.hpp"
#include "mirrorbench/compiler.hpp"
#include "mirrorbench/connectivity.hpp"
#include "mirrorbench/pauli.hpp"
#include "mirrorbench/random.hpp"

namespace mirrorbench {

struct RcResult {
  Circuit circuit;
  /// Residual Pauli: unitary_of(circuit) * initial = net * unitary_of(input), up to phase.
  PauliString net;
};

/// Pauli-frame randomization. Every single-qubit gate g on qubit q becomes
/// R g F_q, where F_q is the incoming frame on q and R a fresh uniformly random
/// Pauli that becomes the outgoing frame; Idle passes the frame through and
/// Clifford two-qubit gates conjugate it. The rewritten gates are stored back
/// in Euler form. Throws std::invalid_argument on opaque two-qubit blocks.
RcResult randomized_compile(const Circuit& c, Rng& rng);
/// As above, starting from the frame `initial` already applied before the circuit.
RcResult randomized_compile(const Circuit& c, Rng& rng, const PauliString& initial);

enum class MirrorKind { kM1, kM2, kM3 };
const char* mirror_kind_name(MirrorKind k);
MirrorKind mirror_kind_from_name(const std::string& s);

struct MirrorCircuit {
  Circuit circuit;
  Bitstring target;
  MirrorKind kind = MirrorKind::kM1;
  std::uint64_t rc_seed = 0;
};

struct MirrorOptions {
  /// Draw the outer layer L from the single-qubit Clifford group (else identity).
  bool two_design = true;
  /// Apply Pauli-frame randomization (else the net Pauli stays the identity).
  bool randomize = true;
  /// Graph used for the SWAP network needed when comp and ref end on
  /// different permutations. Unrestricted pairs when null.
  const ConnectivityGraph* graph = nullptr;
};

/// SWAP-network circuit (SWAP = 3 CNOTs) whose unitary is Pi(tau), moving
/// qubit j to tau(j). Uses token swapping along a spanning tree of g when given.
Circuit permutation_network(const QubitPermutation& tau, const ConnectivityGraph* g);

/// Exact reference compilation used by M1 and M2.
///
/// With the permutation trick, the inverse of the high-level circuit is
/// compiled starting from comp's final placement, so that ref ends exactly
/// where comp ends and M1 needs no SWAP network. Without it, ref is an
/// independent exact compilation from the identity placement.
CompiledCircuit make_reference(const CompiledCircuit& comp, const Circuit& high_level, const ConnectivityGraph& g,
                               Rng& rng, bool permutation_trick = true);

/// rc(L) comp rc([SWAP network] ref_rev L_rev'), with L_rev' relabeled to
/// undo the net qubit permutation.
MirrorCircuit build_m1(const CompiledCircuit& comp, const CompiledCircuit& ref, Rng& rng,
                       const MirrorOptions& options = {});
/// rc(L ref ref_rev L_rev) as one randomization scope.
MirrorCircuit build_m2(const CompiledCircuit& ref, Rng& rng, const MirrorOptions& options = {});
/// rc(L L_rev).
MirrorCircuit build_m3(int n, Rng& rng, const MirrorOptions& options = {});

struct MirrorSuite {
  std::vector<MirrorCircuit> m1, m2, m3;
  std::string source_id;
  std::string reference_id;

  std::size_t size() const { return m1.size() + m2.size() + m3.size(); }
  const std::vector<MirrorCircuit>& of(MirrorKind k) const;
};

/// Each circuit gets its own rc seed (distinct within the suite), drawn from rng.
MirrorSuite build_suite(const CompiledCircuit& comp, const CompiledCircuit& ref, int k1, int k2, int k3, Rng& rng,
                        const MirrorOptions& options = {});

json mirror_to_json(const MirrorCircuit& m);
MirrorCircuit mirror_from_json(const json& j);

}  // namespace mirrorbench
