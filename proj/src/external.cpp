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

#include "mirrorbench/external.hpp"

#include <cstdlib>
#include <fstream>
#include <stdexcept>
#include <thread>
#include <utility>

namespace mirrorbench {

namespace {

std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char ch : s) {
    if (ch == '\'') {
      out += "'\\''";
    } else {
      out += ch;
    }
  }
  return out + "'";
}

}  // namespace

json connectivity_to_json(const ConnectivityGraph& g) {
  json edges = json::array();
  for (const auto& [a, b] : g.edges()) edges.push_back({a, b});
  return {{"kind", g.kind()}, {"nodes", g.size()}, {"edges", edges}};
}

CompiledCircuit external_preprocess(const Circuit& c, const std::filesystem::path& exchange_dir,
                                    const ConnectivityGraph& graph, const ExternalOptions& options) {
  namespace fs = std::filesystem;
  if (c.width() > graph.size()) throw std::invalid_argument("external_preprocess: circuit wider than device");
  fs::create_directories(exchange_dir);
  const fs::path request = exchange_dir / ("request_" + options.id + ".json");
  const fs::path response = exchange_dir / ("response_" + options.id + ".json");
  fs::remove(response);

  json req = circuit_to_json(c);
  req["device"] = connectivity_to_json(graph);
  // Identity placement, so a pass-through tool can echo the request back.
  req["permutation"] = permutation_to_json(QubitPermutation::identity(c.width()));
  write_json_file(request, req);

  if (!options.command.empty()) {
    const std::string cmd =
        options.command + " " + shell_quote(request.string()) + " " + shell_quote(response.string());
    const int rc = std::system(cmd.c_str());
    if (rc != 0) throw std::runtime_error("external preprocessor exited with status " + std::to_string(rc));
  }

  const auto deadline = std::chrono::steady_clock::now() + options.timeout;
  while (!fs::exists(response)) {
    if (std::chrono::steady_clock::now() >= deadline) {
      throw std::runtime_error("external preprocessor timed out waiting for " + response.string());
    }
    std::this_thread::sleep_for(options.poll_interval);
  }

  json resp;
  try {
    resp = read_json_file(response);
  } catch (const std::exception& e) {
    throw std::invalid_argument(std::string("malformed preprocessor response: ") + e.what());
  }
  CompiledCircuit comp;
  try {
    comp = compiled_from_json(resp);
  } catch (const std::exception& e) {
    throw std::invalid_argument(std::string("malformed preprocessor response: ") + e.what());
  }
  if (comp.width() < c.width() || comp.width() > graph.size()) {
    throw std::invalid_argument("malformed preprocessor response: circuit width does not fit the device");
  }
  if (comp.width() < graph.size()) {
    // Responses may omit idle device qubits; they stay where they are.
    auto extend = [&](const QubitPermutation& p) {
      auto image = p.image();
      for (int q = p.size(); q < graph.size(); ++q) image.push_back(q);
      return QubitPermutation(std::move(image));
    };
    comp.permutation = extend(comp.permutation);
    comp.initial_layout = extend(comp.initial_layout);
    comp.circuit = widen(comp.circuit, graph.size());
  }
  validate_compiled(comp.circuit, graph);
  if (comp.approx_error < 0.0) throw std::invalid_argument("malformed preprocessor response: negative approx_error");
  comp.connectivity = graph.kind();
  return comp;
}

}  // namespace mirrorbench
