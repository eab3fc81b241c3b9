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

// Circuit interchange format:
//
//   {"width": n,
//    "layers": [[{"kind": "SQ", "q": 0, "angles": [a, b, c]},
//                {"kind": "TQ", "gate": "CNOT", "control": 1, "target": 2},
//                {"kind": "SU4", "q": [3, 4], "matrix": [[[re, im], ...], ...]},
//                {"kind": "IDLE", "q": 5}], ...],
//    "metadata": {"family": "qv", "depth": 3, "seed": 17, "tags": {...}}}
//
// For CPHASE and SWAP, "control"/"target" are just the two operands.

#pragma once

#include <filesystem>

#include "json.hpp"
#include "mirrorbench/circuit.hpp"
#include "mirrorbench/permutation.hpp"

namespace mirrorbench {

using json = nlohmann::json;

json gate_to_json(const Gate& g);
Gate gate_from_json(const json& j);

json circuit_to_json(const Circuit& c);
/// Throws std::invalid_argument on malformed input.
Circuit circuit_from_json(const json& j);

json permutation_to_json(const QubitPermutation& p);
QubitPermutation permutation_from_json(const json& j);

json matrix_to_json(const MatX& m);
MatX matrix_from_json(const json& j);

/// Pretty-printed, trailing newline. Creates parent directories.
void write_json_file(const std::filesystem::path& path, const json& j);
json read_json_file(const std::filesystem::path& path);

}  // namespace mirrorbench
