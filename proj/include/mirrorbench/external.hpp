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

#include <chrono>
#include <filesystem>
#include <string>

#include "mirrorbench/compiler.hpp"
#include "mirrorbench/connectivity.hpp"

namespace mirrorbench {

struct ExternalOptions {
  /// Shell command run once after the request is written, with the request
  /// and response paths appended as two arguments. Empty means some other
  /// process watches the exchange directory.
  std::string command;
  std::chrono::milliseconds timeout{30000};
  std::chrono::milliseconds poll_interval{50};
  /// Used in the file names request_<id>.json / response_<id>.json.
  std::string id = "0";
};

/// Hands a high-level circuit to an outside compiler through files.
///
/// The request carries the circuit, the device graph under "device" and
/// an identity "permutation". The response must be
/// a compiled-circuit document (circuit + "permutation", optional
/// "initial_layout", "approx", "approx_error"). The circuit may be wider than
/// the request (device width) but not narrower; a narrower-than-device
/// response is padded with idle qubits.
///
/// Throws std::invalid_argument for a malformed response or a gate-set /
/// connectivity violation, std::runtime_error on timeout or command failure.
CompiledCircuit external_preprocess(const Circuit& c, const std::filesystem::path& exchange_dir,
                                    const ConnectivityGraph& graph, const ExternalOptions& options = {});

json connectivity_to_json(const ConnectivityGraph& g);

}  // namespace mirrorbench
