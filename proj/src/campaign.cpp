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

#include "mirrorbench/campaign.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>

#include "mirrorbench/compiler.hpp"
#include "mirrorbench/connectivity.hpp"
#include "mirrorbench/external.hpp"
#include "mirrorbench/mirror.hpp"
#include "mirrorbench/parallel.hpp"
#include "mirrorbench/simulator.hpp"
#include "mirrorbench/unitary.hpp"

namespace mirrorbench {

namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kGenerateSalt = 1;
constexpr std::uint64_t kCompileSalt = 2;
constexpr std::uint64_t kMirrorSalt = 3;
constexpr std::uint64_t kSimulateSalt = 4;
constexpr std::uint64_t kAnalyzeSalt = 5;

const std::vector<std::string> kFamilies = {"qv", "grid", "line", "hamsim"};

struct Task {
  std::string id;
  CircuitShape shape;
  int index = 0;
};

std::vector<Task> tasks_of(const CampaignConfig& cfg) {
  std::vector<Task> out;
  for (const auto& s : cfg.shapes) {
    for (int i = 0; i < cfg.circuits_per_shape; ++i) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "n%d_d%d_c%03d", s.n, s.d, i);
      out.push_back({buf, s, i});
    }
  }
  return out;
}

std::uint64_t task_seed(const CampaignConfig& cfg, std::uint64_t salt, const Task& t) {
  return derive_seed(cfg.seed, {salt, static_cast<std::uint64_t>(t.shape.n), static_cast<std::uint64_t>(t.shape.d),
                                static_cast<std::uint64_t>(t.index)});
}

json provenance(const CampaignConfig& cfg, std::uint64_t seed) {
  return {{"root_seed", cfg.seed}, {"config_hash", config_hash(cfg)}, {"seed", seed}};
}

fs::path circuit_path(const CampaignConfig& cfg, const Task& t) { return cfg.output_dir / "circuits" / (t.id + ".json"); }
fs::path compiled_path(const CampaignConfig& cfg, const Task& t) { return cfg.output_dir / "compiled" / (t.id + ".json"); }
fs::path reference_path(const CampaignConfig& cfg, const Task& t) {
  return cfg.output_dir / "compiled" / (t.id + "_ref.json");
}
fs::path suite_dir(const CampaignConfig& cfg, const Task& t) { return cfg.output_dir / "suites" / t.id; }
fs::path counts_dir(const CampaignConfig& cfg, const Task& t) { return cfg.output_dir / "counts" / t.id; }

std::string mirror_file(MirrorKind k, std::size_t i) {
  std::string name = mirror_kind_name(k);
  for (auto& ch : name) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  return name + "_" + std::to_string(i) + ".json";
}

json with_provenance(json j, const json& prov) {
  j["provenance"] = prov;
  return j;
}

ConnectivityGraph graph_for(const CampaignConfig& cfg, int n) { return ConnectivityGraph::preset(cfg.graph, n); }

Circuit generate_circuit(const CampaignConfig& cfg, const Task& t, std::uint64_t seed) {
  Rng rng(seed);
  Circuit c;
  if (cfg.family == "qv") {
    c = sample_qv_circuit(t.shape, rng);
  } else if (cfg.family == "grid") {
    c = sample_geometry_circuit(t.shape, GeometrySpec::grid_for(t.shape.n), rng);
  } else if (cfg.family == "line") {
    c = sample_geometry_circuit(t.shape, GeometrySpec::line(), rng);
  } else {
    HamSimParams p;
    p.h_z = 2.0 * uniform01(rng) - 1.0;
    p.h_x = 2.0 * uniform01(rng) - 1.0;
    p.steps = t.shape.d;
    p.neel_prelude = cfg.neel_prelude;
    c = build_hamsim_circuit(t.shape.n, p);
    std::ostringstream hz, hx;
    hz.precision(17);
    hx.precision(17);
    hz << p.h_z;
    hx << p.h_x;
    c.metadata().tags["h_z"] = hz.str();
    c.metadata().tags["h_x"] = hx.str();
  }
  c.metadata().seed = seed;
  return c;
}

json manifest_of(const CampaignConfig& cfg, const std::vector<std::string>& stages) {
  json circuits = json::array();
  for (const auto& t : tasks_of(cfg)) {
    circuits.push_back({{"id", t.id},
                        {"n", t.shape.n},
                        {"d", t.shape.d},
                        {"index", t.index},
                        {"seeds",
                         {{"generate", task_seed(cfg, kGenerateSalt, t)},
                          {"compile", task_seed(cfg, kCompileSalt, t)},
                          {"mirror", task_seed(cfg, kMirrorSalt, t)},
                          {"simulate", task_seed(cfg, kSimulateSalt, t)},
                          {"analyze", task_seed(cfg, kAnalyzeSalt, t)}}}});
  }
  return {{"provenance", provenance(cfg, cfg.seed)}, {"stages", stages}, {"circuits", circuits}};
}

std::vector<std::string> completed_stages(const CampaignConfig& cfg) {
  const fs::path p = cfg.output_dir / "manifest.json";
  if (!fs::exists(p)) return {};
  return read_json_file(p).value("stages", std::vector<std::string>{});
}

void require_upstream(const CampaignConfig& cfg, Stage stage) {
  if (stage == Stage::kGenerate) return;
  const Stage prev = static_cast<Stage>(static_cast<int>(stage) - 1);
  const auto done = completed_stages(cfg);
  if (std::find(done.begin(), done.end(), stage_name(prev)) == done.end()) {
    throw StageError(stage, std::string("bundle incomplete: stage '") + stage_name(prev) + "' has not run in " +
                                cfg.output_dir.string());
  }
}

void mark_done(const CampaignConfig& cfg, Stage stage) {
  std::vector<std::string> stages;
  for (Stage s : all_stages()) {
    if (static_cast<int>(s) < static_cast<int>(stage)) stages.push_back(stage_name(s));
  }
  stages.push_back(stage_name(stage));
  write_json_file(cfg.output_dir / "manifest.json", manifest_of(cfg, stages));
}

void stage_generate(const CampaignConfig& cfg) {
  const auto tasks = tasks_of(cfg);
  parallel_for(tasks.size(), cfg.jobs, [&](std::size_t i) {
    const auto seed = task_seed(cfg, kGenerateSalt, tasks[i]);
    const Circuit c = generate_circuit(cfg, tasks[i], seed);
    write_json_file(circuit_path(cfg, tasks[i]), with_provenance(circuit_to_json(c), provenance(cfg, seed)));
  });
}

void stage_compile(const CampaignConfig& cfg) {
  const auto tasks = tasks_of(cfg);
  // The external tool may not be reentrant, so it only ever sees one request at a time.
  const int jobs = cfg.external_command.empty() ? cfg.jobs : 1;
  parallel_for(tasks.size(), jobs, [&](std::size_t i) {
    const auto& t = tasks[i];
    const auto seed = task_seed(cfg, kCompileSalt, t);
    const Circuit c = circuit_from_json(read_json_file(circuit_path(cfg, t)));
    const auto g = graph_for(cfg, t.shape.n);
    Rng rng(seed);
    CompiledCircuit comp;
    if (cfg.external_command.empty()) {
      CompileOptions opts;
      opts.dynamical_decoupling = cfg.dynamical_decoupling;
      comp = compile_exact(c, g, rng, opts);
    } else {
      ExternalOptions opts;
      opts.command = cfg.external_command;
      opts.timeout = std::chrono::milliseconds(cfg.external_timeout_ms);
      opts.id = t.id;
      comp = external_preprocess(c, cfg.output_dir / "exchange", g, opts);
      if (cfg.dynamical_decoupling) comp.circuit = insert_dd(comp.circuit);
    }
    write_json_file(compiled_path(cfg, t), with_provenance(compiled_to_json(comp), provenance(cfg, seed)));
  });
}

void stage_mirror(const CampaignConfig& cfg) {
  const auto tasks = tasks_of(cfg);
  parallel_for(tasks.size(), cfg.jobs, [&](std::size_t i) {
    const auto& t = tasks[i];
    const auto seed = task_seed(cfg, kMirrorSalt, t);
    const auto prov = provenance(cfg, seed);
    const Circuit high = circuit_from_json(read_json_file(circuit_path(cfg, t)));
    const CompiledCircuit comp = compiled_from_json(read_json_file(compiled_path(cfg, t)));
    const auto g = graph_for(cfg, t.shape.n);
    Rng rng(seed);
    const CompiledCircuit ref = make_reference(comp, high, g, rng, cfg.permutation_trick);
    write_json_file(reference_path(cfg, t), with_provenance(compiled_to_json(ref), prov));
    MirrorOptions opts;
    opts.graph = &g;
    MirrorSuite suite = build_suite(comp, ref, cfg.k1, cfg.k2, cfg.k3, rng, opts);
    const fs::path dir = suite_dir(cfg, t);
    fs::remove_all(dir);
    json entries = json::array();
    for (MirrorKind k : {MirrorKind::kM1, MirrorKind::kM2, MirrorKind::kM3}) {
      const auto& list = suite.of(k);
      for (std::size_t j = 0; j < list.size(); ++j) {
        const std::string file = mirror_file(k, j);
        write_json_file(dir / file, with_provenance(mirror_to_json(list[j]), prov));
        entries.push_back({{"file", file},
                           {"kind", mirror_kind_name(k)},
                           {"target", list[j].target.to_string()},
                           {"rc_seed", list[j].rc_seed}});
      }
    }
    write_json_file(dir / "manifest.json", {{"provenance", prov},
                                            {"source", t.id},
                                            {"reference", t.id + "_ref"},
                                            {"permutation_trick", cfg.permutation_trick},
                                            {"k", {cfg.k1, cfg.k2, cfg.k3}},
                                            {"circuits", entries}});
  });
}

void stage_simulate(const CampaignConfig& cfg) {
  const auto tasks = tasks_of(cfg);
  // Flatten (circuit, mirror) pairs so that threads stay busy on unbalanced shapes.
  struct Job {
    std::size_t task;
    std::string file;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    const auto manifest = read_json_file(suite_dir(cfg, tasks[i]) / "manifest.json");
    const auto base = task_seed(cfg, kSimulateSalt, tasks[i]);
    std::uint64_t k = 0;
    for (const auto& e : manifest.at("circuits")) {
      jobs.push_back({i, e.at("file").get<std::string>(), derive_seed(base, {++k})});
    }
    jobs.push_back({i, "direct.json", derive_seed(base, {0})});
    fs::remove_all(counts_dir(cfg, tasks[i]));
  }
  parallel_for(jobs.size(), cfg.jobs, [&](std::size_t j) {
    const auto& job = jobs[j];
    const auto& t = tasks[job.task];
    const auto prov = provenance(cfg, job.seed);
    Rng rng(job.seed);
    if (job.file == "direct.json") {
      // The compiled circuit run on its own feeds the heavy-output and
      // classical-fidelity metrics; the ideal distribution is its noiseless output.
      const CompiledCircuit comp = compiled_from_json(read_json_file(compiled_path(cfg, t)));
      const int w = comp.width();
      const auto oc = simulate_counts(comp.circuit, cfg.error_model, cfg.shots, rng, Bitstring(w));
      write_json_file(counts_dir(cfg, t) / job.file, with_provenance(counts_to_json(oc), prov));
      const Eigen::VectorXcd psi = statevector_of(comp.circuit);
      std::vector<double> ideal(static_cast<std::size_t>(psi.size()));
      for (Eigen::Index x = 0; x < psi.size(); ++x) ideal[static_cast<std::size_t>(x)] = std::norm(psi[x]);
      write_json_file(counts_dir(cfg, t) / "ideal.json", with_provenance({{"probabilities", ideal}}, prov));
      if (t.shape.n <= cfg.oracle_max_n) {
        const Circuit high = circuit_from_json(read_json_file(circuit_path(cfg, t)));
        const MatX v = expected_unitary(comp, unitary_of(high));
        const double pol = exact_polarization(comp.circuit, cfg.error_model, v, std::max(cfg.oracle_max_n, w));
        write_json_file(counts_dir(cfg, t) / "oracle.json", with_provenance({{"exact_polarization", pol}}, prov));
      }
      return;
    }
    const MirrorCircuit m = mirror_from_json(read_json_file(suite_dir(cfg, t) / job.file));
    const auto oc = simulate_counts(m.circuit, cfg.error_model, cfg.shots, rng, m.target);
    write_json_file(counts_dir(cfg, t) / job.file, with_provenance(counts_to_json(oc), prov));
  });
}

json estimate_to_json(const PolarizationEstimate& e) {
  json j = {{"available", e.available}, {"status", e.status}, {"n", e.n}, {"d", e.d}};
  if (e.available) {
    j["polarization"] = e.polarization;
    j["fidelity"] = e.fidelity;
    j["ci_low"] = e.ci_low;
    j["ci_high"] = e.ci_high;
    j["confidence"] = e.confidence;
  }
  return j;
}

struct CircuitResult {
  PolarizationEstimate mcfe;
  std::vector<double> replicates;
  double hop_observed = 0.0;
  double hop_ideal = 0.0;
  std::optional<double> classical;
  std::optional<double> oracle;
  json doc;
};

CircuitResult analyze_circuit(const CampaignConfig& cfg, const Task& t) {
  const auto manifest = read_json_file(suite_dir(cfg, t) / "manifest.json");
  std::map<std::string, std::vector<double>> pols;
  for (const auto& e : manifest.at("circuits")) {
    const auto oc = counts_from_json(read_json_file(counts_dir(cfg, t) / e.at("file").get<std::string>()));
    pols[e.at("kind").get<std::string>()].push_back(observed_polarization(oc));
  }
  const auto seed = task_seed(cfg, kAnalyzeSalt, t);
  Rng rng(seed);
  BootstrapOptions bo{cfg.bootstrap_resamples, cfg.confidence};
  CircuitResult r;
  r.mcfe = estimate_fidelity(pols["M1"], pols["M2"], pols["M3"], t.shape.n, rng, bo);
  r.mcfe.d = t.shape.d;
  r.replicates = bootstrap_replicates(pols["M1"], pols["M2"], pols["M3"], t.shape.n, rng, cfg.bootstrap_resamples);

  const auto direct = counts_from_json(read_json_file(counts_dir(cfg, t) / "direct.json"));
  const auto ideal = read_json_file(counts_dir(cfg, t) / "ideal.json").at("probabilities").get<std::vector<double>>();
  const auto heavy = heavy_output_set(ideal);
  r.hop_observed = heavy_output_fraction(direct, heavy);
  r.hop_ideal = heavy.p_heavy;
  std::vector<double> observed(ideal.size(), 0.0);
  for (const auto& [b, k] : direct.counts) {
    observed[b.to_index()] = static_cast<double>(k) / static_cast<double>(direct.shots);
  }
  const auto cf = normalized_classical_fidelity(ideal, observed);
  r.classical = cf.value;
  if (const fs::path p = counts_dir(cfg, t) / "oracle.json"; fs::exists(p)) {
    r.oracle = read_json_file(p).at("exact_polarization").get<double>();
  }

  auto mean_of = [](const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return v.empty() ? 0.0 : s / static_cast<double>(v.size());
  };
  r.doc = {{"id", t.id},
           {"seed", seed},
           {"mcfe", estimate_to_json(r.mcfe)},
           {"mean_observed_polarization", {{"M1", mean_of(pols["M1"])}, {"M2", mean_of(pols["M2"])}, {"M3", mean_of(pols["M3"])}}},
           {"heavy_output", {{"observed", r.hop_observed}, {"ideal", r.hop_ideal}, {"rescaled", rescale_hop_standard(r.hop_observed)}}},
           {"classical_fidelity", cf.value ? json(*cf.value) : json(nullptr)},
           {"classical_ill_conditioned", cf.ill_conditioned}};
  if (r.oracle) r.doc["exact_polarization"] = *r.oracle;
  return r;
}

void add_cell(std::vector<VolumetricCell>& cells, const PolarizationEstimate& e, const std::string& metric) {
  VolumetricCell c;
  c.n = e.n;
  c.d = e.d;
  c.metric = metric;
  c.measured = true;
  if (e.available) {
    c.value = e.polarization;
    c.ci_low = e.ci_low;
    c.ci_high = e.ci_high;
  }
  cells.push_back(c);
}

void stage_analyze(const CampaignConfig& cfg) {
  const auto tasks = tasks_of(cfg);
  std::vector<CircuitResult> results(tasks.size());
  parallel_for(tasks.size(), cfg.jobs, [&](std::size_t i) { results[i] = analyze_circuit(cfg, tasks[i]); });

  BootstrapOptions bo{cfg.bootstrap_resamples, cfg.confidence};
  json shapes = json::array();
  std::map<std::string, std::vector<VolumetricCell>> cells;
  std::vector<ShapeBound> bounds;
  std::size_t pos = 0;
  for (const auto& s : cfg.shapes) {
    std::vector<PolarizationEstimate> ests;
    std::vector<std::vector<double>> reps;
    std::vector<double> hop, classical, oracle_dev;
    json circuits = json::array();
    for (int i = 0; i < cfg.circuits_per_shape; ++i, ++pos) {
      const auto& r = results[pos];
      ests.push_back(r.mcfe);
      reps.push_back(r.replicates);
      hop.push_back(rescale_hop_standard(r.hop_observed));
      if (r.classical) classical.push_back(*r.classical);
      if (r.oracle && r.mcfe.available) oracle_dev.push_back(std::abs(r.mcfe.polarization - *r.oracle));
      circuits.push_back(r.doc);
    }
    Rng rng(derive_seed(cfg.seed, {kAnalyzeSalt, static_cast<std::uint64_t>(s.n), static_cast<std::uint64_t>(s.d)}));
    const auto mcfe = shape_average(ests, reps, s.n, s.d, rng, bo);
    const auto hop_est = mean_with_ci(hop, s.n, s.d, rng, bo);
    const auto cf_est = mean_with_ci(classical, s.n, s.d, rng, bo);
    add_cell(cells["mcfe_pol"], mcfe, "mcfe_pol");
    add_cell(cells["hop_rescaled"], hop_est, "hop_rescaled");
    add_cell(cells["classical_fid"], cf_est, "classical_fid");
    if (s.n == s.d && mcfe.available) bounds.push_back({s.n, s.d, mcfe.ci_low});
    json shape = {{"n", s.n},
                  {"d", s.d},
                  {"mcfe_pol", estimate_to_json(mcfe)},
                  {"hop_rescaled", estimate_to_json(hop_est)},
                  {"classical_fid", estimate_to_json(cf_est)},
                  {"circuits", circuits}};
    if (!oracle_dev.empty()) {
      double s2 = 0.0;
      for (double x : oracle_dev) s2 += x;
      shape["oracle_mean_abs_deviation"] = s2 / static_cast<double>(oracle_dev.size());
    }
    shapes.push_back(shape);
  }

  VolumetricOptions vo;
  vo.column_fit_min_n = cfg.column_fit_min_n;
  vo.column_fit_depth_one = cfg.column_fit_depth_one;
  std::vector<VolumetricCell> all_cells;
  json fits = json::object();
  for (const auto& [metric, list] : cells) {
    const auto grid = volumetric_fit(list, vo);
    all_cells.insert(all_cells.end(), grid.cells.begin(), grid.cells.end());
    json rows = json::object(), cols = json::object();
    for (const auto& [n, f] : grid.row_fits) rows[std::to_string(n)] = {{"A", f.a}, {"p", f.p}, {"points", f.points}};
    for (const auto& [d, f] : grid.column_fits) cols[std::to_string(d)] = {{"A", f.a}, {"p", f.p}, {"points", f.points}};
    fits[metric] = {{"rows", rows}, {"columns", cols}};
  }
  const auto qv = qv_decision(bounds);
  json qv_json = {{"threshold", qv_threshold()}, {"summary", qv.summary}};
  if (qv.largest_passing_n) {
    qv_json["largest_passing_n"] = *qv.largest_passing_n;
    qv_json["quantum_volume"] = qv.quantum_volume;
  }
  const json results_doc = {{"provenance", provenance(cfg, cfg.seed)},
                            {"family", cfg.family},
                            {"shapes", shapes},
                            {"fits", fits},
                            {"quantum_volume", qv_json}};
  write_json_file(cfg.output_dir / "results.json", results_doc);
  std::ofstream csv(cfg.output_dir / "volumetric.csv", std::ios::binary);
  csv << volumetric_csv(all_cells);
  if (!csv) throw std::runtime_error("cannot write volumetric.csv");
}

std::string fmt(const json& est) {
  if (!est.value("available", false)) return "unavailable";
  std::ostringstream s;
  s << std::fixed << std::setprecision(4) << est.at("polarization").get<double>() << " ["
    << est.at("ci_low").get<double>() << ", " << est.at("ci_high").get<double>() << "]";
  return s.str();
}

void stage_report(const CampaignConfig& cfg) {
  const json r = read_json_file(cfg.output_dir / "results.json");
  std::ostringstream out;
  out << "family: " << r.at("family").get<std::string>() << "\n";
  out << "config hash: " << r.at("provenance").at("config_hash").get<std::string>()
      << "  root seed: " << r.at("provenance").at("root_seed").get<std::uint64_t>() << "\n\n";
  out << std::left << std::setw(8) << "shape" << std::setw(34) << "mcfe polarization" << std::setw(34)
      << "rescaled heavy-output" << "normalized classical fidelity\n";
  for (const auto& s : r.at("shapes")) {
    const std::string shape = std::to_string(s.at("n").get<int>()) + "x" + std::to_string(s.at("d").get<int>());
    out << std::setw(8) << shape << std::setw(34) << fmt(s.at("mcfe_pol")) << std::setw(34)
        << fmt(s.at("hop_rescaled")) << fmt(s.at("classical_fid")) << "\n";
    if (s.contains("oracle_mean_abs_deviation")) {
      out << "        mean |mcfe - exact| = " << s.at("oracle_mean_abs_deviation").get<double>() << "\n";
    }
  }
  out << "\nquantum volume: " << r.at("quantum_volume").at("summary").get<std::string>() << "\n";
  std::ofstream f(cfg.output_dir / "report.txt", std::ios::binary);
  f << out.str();
  if (!f) throw std::runtime_error("cannot write report.txt");
}

template <class T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(std::string("config key '") + key + "' has the wrong type");
  }
}

}  // namespace

const char* stage_name(Stage s) {
  switch (s) {
    case Stage::kGenerate:
      return "generate";
    case Stage::kCompile:
      return "compile";
    case Stage::kMirror:
      return "mirror";
    case Stage::kSimulate:
      return "simulate";
    case Stage::kAnalyze:
      return "analyze";
    case Stage::kReport:
      return "report";
  }
  return "?";
}

Stage stage_from_name(const std::string& name) {
  for (Stage s : all_stages()) {
    if (name == stage_name(s)) return s;
  }
  throw ConfigError("unknown stage: " + name);
}

const std::vector<Stage>& all_stages() {
  static const std::vector<Stage> stages = {Stage::kGenerate, Stage::kCompile, Stage::kMirror,
                                            Stage::kSimulate, Stage::kAnalyze, Stage::kReport};
  return stages;
}

StageError::StageError(Stage stage, const std::string& message)
    : std::runtime_error(std::string("[") + stage_name(stage) + "] " + message), stage_(stage) {}

CampaignConfig config_from_json(const json& j, const fs::path& base_dir) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  static const std::vector<std::string> known = {
      "family", "shapes", "circuits_per_shape", "k", "shots", "error_model", "error_model_file", "graph", "seed",
      "permutation_trick", "dynamical_decoupling", "neel_prelude", "bootstrap_resamples", "confidence",
      "oracle_max_n", "external_command", "external_timeout_ms", "column_fit_min_n", "column_fit_depth_one",
      "output_dir", "jobs", "config_hash"};
  for (const auto& [key, value] : j.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) throw ConfigError("unknown config key: " + key);
  }
  CampaignConfig cfg;
  cfg.family = get_or<std::string>(j, "family", cfg.family);
  if (std::find(kFamilies.begin(), kFamilies.end(), cfg.family) == kFamilies.end()) {
    throw ConfigError("family must be one of qv, grid, line, hamsim; got " + cfg.family);
  }
  if (!j.contains("shapes") || !j.at("shapes").is_array() || j.at("shapes").empty()) {
    throw ConfigError("config needs a nonempty 'shapes' list of [n, d] pairs");
  }
  for (const auto& s : j.at("shapes")) {
    if (!s.is_array() || s.size() != 2 || !s[0].is_number_integer() || !s[1].is_number_integer()) {
      throw ConfigError("each shape must be [n, d]");
    }
    CircuitShape shape{s[0].get<int>(), s[1].get<int>()};
    if (shape.n < 1 || shape.d < 1) throw ConfigError("shape widths and depths must be >= 1");
    if (shape.n < 2 && cfg.family != "hamsim") throw ConfigError("qv and geometry circuits need n >= 2");
    if (shape.n > 14) throw ConfigError("shape width above the simulator limit of 14");
    cfg.shapes.push_back(shape);
  }
  cfg.circuits_per_shape = get_or(j, "circuits_per_shape", cfg.circuits_per_shape);
  if (cfg.circuits_per_shape < 1) throw ConfigError("circuits_per_shape must be >= 1");
  if (j.contains("k")) {
    const auto k = get_or<std::vector<int>>(j, "k", {});
    if (k.size() != 3) throw ConfigError("'k' must list three counts [k1, k2, k3]");
    cfg.k1 = k[0];
    cfg.k2 = k[1];
    cfg.k3 = k[2];
  }
  if (cfg.k1 < 1 || cfg.k2 < 1 || cfg.k3 < 1) throw ConfigError("mirror counts must be >= 1");
  cfg.shots = get_or(j, "shots", cfg.shots);
  if (cfg.shots < 1) throw ConfigError("shots must be >= 1");
  if (j.contains("error_model") && j.contains("error_model_file")) {
    throw ConfigError("give either 'error_model' or 'error_model_file', not both");
  }
  try {
    if (j.contains("error_model")) {
      cfg.error_model = error_model_from_json(j.at("error_model"));
    } else if (j.contains("error_model_file")) {
      fs::path p = get_or<std::string>(j, "error_model_file", "");
      if (p.is_relative()) p = base_dir / p;
      if (!fs::exists(p)) throw ConfigError("error model file not found: " + p.string());
      cfg.error_model = error_model_from_json(read_json_file(p));
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(std::string("invalid error model: ") + e.what());
  }
  cfg.graph = get_or(j, "graph", cfg.graph);
  try {
    for (const auto& s : cfg.shapes) (void)ConnectivityGraph::preset(cfg.graph, s.n);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("invalid graph: ") + e.what());
  }
  cfg.seed = get_or(j, "seed", cfg.seed);
  cfg.permutation_trick = get_or(j, "permutation_trick", cfg.permutation_trick);
  cfg.dynamical_decoupling = get_or(j, "dynamical_decoupling", cfg.dynamical_decoupling);
  cfg.neel_prelude = get_or(j, "neel_prelude", cfg.neel_prelude);
  cfg.bootstrap_resamples = get_or(j, "bootstrap_resamples", cfg.bootstrap_resamples);
  if (cfg.bootstrap_resamples < 1) throw ConfigError("bootstrap_resamples must be >= 1");
  cfg.confidence = get_or(j, "confidence", cfg.confidence);
  if (!(cfg.confidence > 0.0 && cfg.confidence < 1.0)) throw ConfigError("confidence must lie in (0, 1)");
  cfg.oracle_max_n = get_or(j, "oracle_max_n", cfg.oracle_max_n);
  if (cfg.oracle_max_n > kExactOracleLimit) {
    throw ConfigError("oracle_max_n above " + std::to_string(kExactOracleLimit) + " is too expensive");
  }
  cfg.external_command = get_or(j, "external_command", cfg.external_command);
  cfg.external_timeout_ms = get_or(j, "external_timeout_ms", cfg.external_timeout_ms);
  cfg.column_fit_min_n = get_or(j, "column_fit_min_n", cfg.column_fit_min_n);
  cfg.column_fit_depth_one = get_or(j, "column_fit_depth_one", cfg.column_fit_depth_one);
  if (j.contains("output_dir")) {
    fs::path p = get_or<std::string>(j, "output_dir", "");
    cfg.output_dir = p.is_relative() ? base_dir / p : p;
  }
  cfg.jobs = get_or(j, "jobs", cfg.jobs);
  return cfg;
}

CampaignConfig load_config(const fs::path& path) {
  if (!fs::exists(path)) throw ConfigError("config file not found: " + path.string());
  json j;
  try {
    j = read_json_file(path);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("cannot parse config: ") + e.what());
  }
  return config_from_json(j, path.parent_path().empty() ? fs::path(".") : path.parent_path());
}

json config_to_json(const CampaignConfig& cfg) {
  json shapes = json::array();
  for (const auto& s : cfg.shapes) shapes.push_back({s.n, s.d});
  return {{"family", cfg.family},
          {"shapes", shapes},
          {"circuits_per_shape", cfg.circuits_per_shape},
          {"k", {cfg.k1, cfg.k2, cfg.k3}},
          {"shots", cfg.shots},
          {"error_model", error_model_to_json(cfg.error_model)},
          {"graph", cfg.graph},
          {"seed", cfg.seed},
          {"permutation_trick", cfg.permutation_trick},
          {"dynamical_decoupling", cfg.dynamical_decoupling},
          {"neel_prelude", cfg.neel_prelude},
          {"bootstrap_resamples", cfg.bootstrap_resamples},
          {"confidence", cfg.confidence},
          {"oracle_max_n", cfg.oracle_max_n},
          {"external_command", cfg.external_command},
          {"external_timeout_ms", cfg.external_timeout_ms},
          {"column_fit_min_n", cfg.column_fit_min_n},
          {"column_fit_depth_one", cfg.column_fit_depth_one}};
}

std::string config_hash(const CampaignConfig& cfg) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(config_to_json(cfg).dump())));
  return buf;
}

void run_stage(const CampaignConfig& cfg, Stage stage) {
  require_upstream(cfg, stage);
  try {
    switch (stage) {
      case Stage::kGenerate:
        stage_generate(cfg);
        break;
      case Stage::kCompile:
        stage_compile(cfg);
        break;
      case Stage::kMirror:
        stage_mirror(cfg);
        break;
      case Stage::kSimulate:
        stage_simulate(cfg);
        break;
      case Stage::kAnalyze:
        stage_analyze(cfg);
        break;
      case Stage::kReport:
        stage_report(cfg);
        break;
    }
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError(stage, e.what());
  }
  mark_done(cfg, stage);
}

json run_campaign(const CampaignConfig& cfg) {
  fs::create_directories(cfg.output_dir);
  json stored = config_to_json(cfg);
  stored["config_hash"] = config_hash(cfg);
  write_json_file(cfg.output_dir / "config.json", stored);
  for (Stage s : all_stages()) run_stage(cfg, s);
  return read_json_file(cfg.output_dir / "results.json");
}

json replay(const fs::path& dir, Stage from, int jobs) {
  const fs::path cfg_path = dir / "config.json";
  if (!fs::exists(cfg_path)) {
    throw StageError(from, "bundle incomplete: no config.json in " + dir.string());
  }
  CampaignConfig cfg = load_config(cfg_path);
  cfg.output_dir = dir;
  cfg.jobs = jobs;
  for (Stage s : all_stages()) {
    if (static_cast<int>(s) >= static_cast<int>(from)) run_stage(cfg, s);
  }
  return read_json_file(dir / "results.json");
}

}  // namespace mirrorbench
