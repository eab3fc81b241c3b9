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

#include "mirrorbench/circuit_json.hpp"

#include <fstream>
#include <stdexcept>
#include <string>

namespace mirrorbench {

namespace {

int get_qubit(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number_integer()) {
    throw std::invalid_argument(std::string("gate field '") + key + "' missing or not an integer");
  }
  return j.at(key).get<int>();
}

}  // namespace

json matrix_to_json(const MatX& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

MatX matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) throw std::invalid_argument("matrix must be a nested array");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  MatX m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw std::invalid_argument("matrix rows must have equal length");
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      const auto& e = row[static_cast<std::size_t>(c)];
      if (!e.is_array() || e.size() != 2) throw std::invalid_argument("matrix entries must be [re, im]");
      m(r, c) = cplx(e[0].get<double>(), e[1].get<double>());
    }
  }
  return m;
}

json gate_to_json(const Gate& g) {
  if (const auto* s = std::get_if<SingleQubitGate>(&g)) {
    return {{"kind", "SQ"}, {"q", s->qubit}, {"angles", {s->angles.a, s->angles.b, s->angles.c}}};
  }
  if (const auto* t = std::get_if<TwoQubitClifford>(&g)) {
    return {{"kind", "TQ"}, {"gate", clifford_name(t->kind)}, {"control", t->q0}, {"target", t->q1}};
  }
  if (const auto* b = std::get_if<TwoQubitBlock>(&g)) {
    return {{"kind", "SU4"}, {"q", {b->q0, b->q1}}, {"matrix", matrix_to_json(b->matrix)}};
  }
  return {{"kind", "IDLE"}, {"q", std::get<Idle>(g).qubit}};
}

Gate gate_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind")) throw std::invalid_argument("gate must be an object with 'kind'");
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "SQ") {
    const auto& a = j.at("angles");
    if (!a.is_array() || a.size() != 3) throw std::invalid_argument("SQ gate needs three angles");
    return SingleQubitGate{get_qubit(j, "q"), {a[0].get<double>(), a[1].get<double>(), a[2].get<double>()}};
  }
  if (kind == "TQ") {
    return TwoQubitClifford{get_qubit(j, "control"), get_qubit(j, "target"),
                            clifford_from_name(j.at("gate").get<std::string>())};
  }
  if (kind == "SU4") {
    const auto& q = j.at("q");
    if (!q.is_array() || q.size() != 2) throw std::invalid_argument("SU4 gate needs two qubits");
    const MatX m = matrix_from_json(j.at("matrix"));
    if (m.rows() != 4 || m.cols() != 4) throw std::invalid_argument("SU4 matrix must be 4x4");
    return TwoQubitBlock{q[0].get<int>(), q[1].get<int>(), Mat4(m)};
  }
  if (kind == "IDLE") return Idle{get_qubit(j, "q")};
  throw std::invalid_argument("unknown gate kind: " + kind);
}

json circuit_to_json(const Circuit& c) {
  json layers = json::array();
  for (const auto& layer : c.layers()) {
    json gates = json::array();
    for (const auto& g : layer.gates) gates.push_back(gate_to_json(g));
    layers.push_back(std::move(gates));
  }
  const auto& m = c.metadata();
  json meta = {{"family", m.family}, {"depth", m.depth}, {"seed", m.seed}, {"tags", m.tags}};
  return {{"width", c.width()}, {"layers", std::move(layers)}, {"metadata", std::move(meta)}};
}

Circuit circuit_from_json(const json& j) {
  try {
    if (!j.is_object() || !j.contains("width") || !j.contains("layers")) {
      throw std::invalid_argument("circuit must have 'width' and 'layers'");
    }
    CircuitMetadata meta;
    if (j.contains("metadata")) {
      const auto& m = j.at("metadata");
      meta.family = m.value("family", std::string{});
      meta.depth = m.value("depth", 0);
      meta.seed = m.value("seed", std::uint64_t{0});
      if (m.contains("tags")) meta.tags = m.at("tags").get<std::map<std::string, std::string>>();
    }
    Circuit c(j.at("width").get<int>(), std::move(meta));
    for (const auto& lj : j.at("layers")) {
      Layer layer;
      for (const auto& gj : lj) layer.gates.push_back(gate_from_json(gj));
      c.append_layer(std::move(layer));
    }
    return c;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed circuit JSON: ") + e.what());
  }
}

json permutation_to_json(const QubitPermutation& p) { return p.image(); }

QubitPermutation permutation_from_json(const json& j) {
  if (!j.is_array()) throw std::invalid_argument("permutation must be an array");
  return QubitPermutation(j.get<std::vector<int>>());
}

void write_json_file(const std::filesystem::path& path, const json& j) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << j.dump(1) << '\n';
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw std::invalid_argument("malformed JSON in " + path.string() + ": " + e.what());
  }
}

}  // namespace mirrorbench
