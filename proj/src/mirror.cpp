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

#include "mirrorbench/mirror.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <stdexcept>

#include "mirrorbench/generators.hpp"

namespace mirrorbench {

RcResult randomized_compile(const Circuit& c, Rng& rng) {
  return randomized_compile(c, rng, PauliString::identity(c.width()));
}

RcResult randomized_compile(const Circuit& c, Rng& rng, const PauliString& initial) {
  if (initial.width() != c.width()) throw std::invalid_argument("randomized_compile: frame width mismatch");
  PauliString frame = initial;
  Circuit out(c.width(), c.metadata());
  for (const auto& layer : c.layers()) {
    Layer next;
    next.gates.reserve(layer.gates.size());
    for (const auto& g : layer.gates) {
      if (const auto* s = std::get_if<SingleQubitGate>(&g)) {
        const auto bits = rng();
        PauliString fresh(1);
        fresh.set(0, (bits & 1U) != 0, (bits & 2U) != 0);
        const Mat2 merged = fresh.factor_matrix(0) * euler_matrix(s->angles) * frame.factor_matrix(s->qubit);
        next.gates.emplace_back(SingleQubitGate{s->qubit, euler_from_matrix(merged)});
        frame.set(s->qubit, fresh.x(0), fresh.z(0));
      } else if (const auto* t = std::get_if<TwoQubitClifford>(&g)) {
        frame = conjugate_pauli_by_clifford(frame, *t);
        next.gates.push_back(g);
      } else if (std::holds_alternative<TwoQubitBlock>(g)) {
        throw std::invalid_argument("randomized_compile: opaque two-qubit blocks are not supported");
      } else {
        next.gates.push_back(g);
      }
    }
    out.append_layer(std::move(next));
  }
  return {std::move(out), std::move(frame)};
}

const char* mirror_kind_name(MirrorKind k) {
  switch (k) {
    case MirrorKind::kM1:
      return "M1";
    case MirrorKind::kM2:
      return "M2";
    case MirrorKind::kM3:
      return "M3";
  }
  return "?";
}

MirrorKind mirror_kind_from_name(const std::string& s) {
  if (s == "M1") return MirrorKind::kM1;
  if (s == "M2") return MirrorKind::kM2;
  if (s == "M3") return MirrorKind::kM3;
  throw std::invalid_argument("unknown mirror kind: " + s);
}

Circuit permutation_network(const QubitPermutation& tau, const ConnectivityGraph* g) {
  const int n = tau.size();
  const ConnectivityGraph complete = ConnectivityGraph::complete(std::max(n, 1));
  const ConnectivityGraph& graph = g != nullptr ? *g : complete;
  if (graph.size() != n) throw std::invalid_argument("permutation_network: graph size mismatch");

  // BFS spanning tree.
  std::vector<std::vector<int>> tree(static_cast<std::size_t>(n));
  {
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    std::queue<int> frontier;
    seen[0] = true;
    frontier.push(0);
    while (!frontier.empty()) {
      const int v = frontier.front();
      frontier.pop();
      for (int w : graph.neighbors(v)) {
        if (seen[static_cast<std::size_t>(w)]) continue;
        seen[static_cast<std::size_t>(w)] = true;
        tree[static_cast<std::size_t>(v)].push_back(w);
        tree[static_cast<std::size_t>(w)].push_back(v);
        frontier.push(w);
      }
    }
  }
  std::vector<int> dest(static_cast<std::size_t>(n));  // destination of the token now on each vertex
  for (int j = 0; j < n; ++j) dest[static_cast<std::size_t>(j)] = tau(j);
  std::vector<bool> alive(static_cast<std::size_t>(n), true);
  std::vector<Gate> seq;

  auto tree_path = [&](int from, int to) {
    std::vector<int> parent(static_cast<std::size_t>(n), -1);
    std::queue<int> frontier;
    parent[static_cast<std::size_t>(from)] = from;
    frontier.push(from);
    while (!frontier.empty()) {
      const int v = frontier.front();
      frontier.pop();
      for (int w : tree[static_cast<std::size_t>(v)]) {
        if (!alive[static_cast<std::size_t>(w)] || parent[static_cast<std::size_t>(w)] >= 0) continue;
        parent[static_cast<std::size_t>(w)] = v;
        frontier.push(w);
      }
    }
    std::vector<int> path{to};
    while (path.back() != from) path.push_back(parent[static_cast<std::size_t>(path.back())]);
    std::reverse(path.begin(), path.end());
    return path;
  };

  for (int remaining = n; remaining > 1; --remaining) {
    int leaf = -1;
    for (int v = 0; v < n && leaf < 0; ++v) {
      if (!alive[static_cast<std::size_t>(v)]) continue;
      const auto& nb = tree[static_cast<std::size_t>(v)];
      const auto degree = std::count_if(nb.begin(), nb.end(), [&](int w) { return alive[static_cast<std::size_t>(w)]; });
      if (degree <= 1) leaf = v;
    }
    int holder = 0;
    while (dest[static_cast<std::size_t>(holder)] != leaf) ++holder;
    const auto path = tree_path(holder, leaf);
    for (std::size_t k = 0; k + 1 < path.size(); ++k) {
      const int a = path[k], b = path[k + 1];
      seq.emplace_back(TwoQubitClifford{a, b, CliffordKind::kCNOT});
      seq.emplace_back(TwoQubitClifford{b, a, CliffordKind::kCNOT});
      seq.emplace_back(TwoQubitClifford{a, b, CliffordKind::kCNOT});
      std::swap(dest[static_cast<std::size_t>(a)], dest[static_cast<std::size_t>(b)]);
    }
    alive[static_cast<std::size_t>(leaf)] = false;
  }

  Circuit out(n);
  std::vector<int> ready(static_cast<std::size_t>(n), 0);
  std::vector<Layer> layers;
  for (const auto& gate : seq) {
    const auto qs = gate_qubits(gate);
    const int start = std::max(ready[static_cast<std::size_t>(qs[0])], ready[static_cast<std::size_t>(qs[1])]);
    if (static_cast<int>(layers.size()) <= start) layers.resize(static_cast<std::size_t>(start) + 1);
    layers[static_cast<std::size_t>(start)].gates.push_back(gate);
    ready[static_cast<std::size_t>(qs[0])] = ready[static_cast<std::size_t>(qs[1])] = start + 1;
  }
  for (auto& l : layers) out.append_layer(std::move(l));
  return out;
}

CompiledCircuit make_reference(const CompiledCircuit& comp, const Circuit& high_level, const ConnectivityGraph& g,
                               Rng& rng, bool permutation_trick) {
  if (!permutation_trick) return compile_exact(high_level, g, rng);
  CompileOptions opts;
  opts.initial_layout = comp.permutation;
  // inverse_comp implements Pi(Q) U^-1 Pi(P)^-1 with P = comp.permutation,
  // so its layer-by-layer inverse implements Pi(P) U Pi(Q)^-1.
  const CompiledCircuit inverse_comp = compile_exact(layer_by_layer_inverse(high_level), g, rng, opts);
  CompiledCircuit ref;
  ref.circuit = layer_by_layer_inverse(inverse_comp.circuit);
  ref.circuit.metadata() = high_level.metadata();
  ref.initial_layout = inverse_comp.permutation;
  ref.permutation = comp.permutation;
  ref.connectivity = inverse_comp.connectivity;
  return ref;
}

namespace {

Circuit outer_layer(int n, Rng& rng, const MirrorOptions& options) {
  Circuit c(n);
  c.append_layer(options.two_design ? sample_2design_layer(n, rng) : Layer{});
  return c;
}

MirrorCircuit finish(Circuit body, const PauliString& net, MirrorKind kind, const CircuitMetadata& source) {
  MirrorCircuit m;
  m.kind = kind;
  m.target = net.flip_mask();
  body.metadata() = source;
  body.metadata().tags["mirror"] = mirror_kind_name(kind);
  m.circuit = std::move(body);
  return m;
}

}  // namespace

MirrorCircuit build_m1(const CompiledCircuit& comp, const CompiledCircuit& ref, Rng& rng,
                       const MirrorOptions& options) {
  const int n = comp.width();
  if (ref.width() != n) throw std::invalid_argument("build_m1: compiled and reference widths differ");
  Circuit head = outer_layer(n, rng, options);
  if (options.randomize) head = randomized_compile(head, rng).circuit;

  Circuit tail(n);
  const QubitPermutation tau = ref.permutation.after(comp.permutation.inverse());
  if (!tau.is_identity()) tail.append(permutation_network(tau, options.graph));
  tail.append(layer_by_layer_inverse(ref.circuit));
  const QubitPermutation sigma = ref.initial_layout.after(comp.initial_layout.inverse());
  tail.append(apply_permutation(layer_by_layer_inverse(head), sigma));

  PauliString net = PauliString::identity(n);
  if (options.randomize) {
    auto rc = randomized_compile(tail, rng);
    tail = std::move(rc.circuit);
    net = std::move(rc.net);
  }
  Circuit body(n);
  body.append(head);
  body.append(comp.circuit);
  body.append(tail);
  return finish(std::move(body), net, MirrorKind::kM1, comp.circuit.metadata());
}

MirrorCircuit build_m2(const CompiledCircuit& ref, Rng& rng, const MirrorOptions& options) {
  const int n = ref.width();
  const Circuit l = outer_layer(n, rng, options);
  Circuit body(n);
  body.append(l);
  body.append(ref.circuit);
  body.append(layer_by_layer_inverse(ref.circuit));
  body.append(layer_by_layer_inverse(l));
  PauliString net = PauliString::identity(n);
  if (options.randomize) {
    auto rc = randomized_compile(body, rng);
    body = std::move(rc.circuit);
    net = std::move(rc.net);
  }
  return finish(std::move(body), net, MirrorKind::kM2, ref.circuit.metadata());
}

MirrorCircuit build_m3(int n, Rng& rng, const MirrorOptions& options) {
  const Circuit l = outer_layer(n, rng, options);
  Circuit body(n);
  body.append(l);
  body.append(layer_by_layer_inverse(l));
  PauliString net = PauliString::identity(n);
  if (options.randomize) {
    auto rc = randomized_compile(body, rng);
    body = std::move(rc.circuit);
    net = std::move(rc.net);
  }
  return finish(std::move(body), net, MirrorKind::kM3, CircuitMetadata{});
}

const std::vector<MirrorCircuit>& MirrorSuite::of(MirrorKind k) const {
  switch (k) {
    case MirrorKind::kM1:
      return m1;
    case MirrorKind::kM2:
      return m2;
    case MirrorKind::kM3:
      return m3;
  }
  throw std::logic_error("unknown mirror kind");
}

MirrorSuite build_suite(const CompiledCircuit& comp, const CompiledCircuit& ref, int k1, int k2, int k3, Rng& rng,
                        const MirrorOptions& options) {
  if (k1 < 1 || k2 < 1 || k3 < 1) throw std::invalid_argument("build_suite: every K must be >= 1");
  std::set<std::uint64_t> used;
  auto fresh_seed = [&] {
    std::uint64_t s = rng();
    while (!used.insert(s).second) s = rng();
    return s;
  };
  MirrorSuite suite;
  for (int i = 0; i < k1; ++i) {
    const auto seed = fresh_seed();
    Rng r(seed);
    suite.m1.push_back(build_m1(comp, ref, r, options));
    suite.m1.back().rc_seed = seed;
  }
  for (int i = 0; i < k2; ++i) {
    const auto seed = fresh_seed();
    Rng r(seed);
    suite.m2.push_back(build_m2(ref, r, options));
    suite.m2.back().rc_seed = seed;
  }
  for (int i = 0; i < k3; ++i) {
    const auto seed = fresh_seed();
    Rng r(seed);
    suite.m3.push_back(build_m3(comp.width(), r, options));
    suite.m3.back().rc_seed = seed;
  }
  return suite;
}

json mirror_to_json(const MirrorCircuit& m) {
  return {{"kind", mirror_kind_name(m.kind)},
          {"target", m.target.to_string()},
          {"rc_seed", m.rc_seed},
          {"circuit", circuit_to_json(m.circuit)}};
}

MirrorCircuit mirror_from_json(const json& j) {
  MirrorCircuit m;
  try {
    m.kind = mirror_kind_from_name(j.at("kind").get<std::string>());
    m.target = Bitstring::from_string(j.at("target").get<std::string>());
    m.rc_seed = j.at("rc_seed").get<std::uint64_t>();
    m.circuit = circuit_from_json(j.at("circuit"));
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed mirror circuit JSON: ") + e.what());
  }
  if (m.target.width() != m.circuit.width()) throw std::invalid_argument("mirror target width mismatch");
  return m;
}

}  // namespace mirrorbench
