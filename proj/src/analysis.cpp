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

#include "mirrorbench/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace mirrorbench {

namespace {

double mean(const std::vector<double>& v) {
  if (v.empty()) throw std::invalid_argument("mean of an empty sample");
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

// Linear interpolation between order statistics of a sorted sample.
double quantile(const std::vector<double>& sorted, double q) {
  if (sorted.empty()) return std::numeric_limits<double>::quiet_NaN();
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] * (1.0 - frac) + sorted[hi] * frac;
}

double resampled_mean(const std::vector<double>& v, Rng& rng) {
  std::uniform_int_distribution<std::size_t> pick(0, v.size() - 1);
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) s += v[pick(rng)];
  return s / static_cast<double>(v.size());
}

void set_interval(PolarizationEstimate& e, std::vector<double> reps, double confidence) {
  reps.erase(std::remove_if(reps.begin(), reps.end(), [](double x) { return !std::isfinite(x); }), reps.end());
  e.confidence = confidence;
  if (reps.empty()) {
    e.ci_low = e.ci_high = e.polarization;
    return;
  }
  std::sort(reps.begin(), reps.end());
  const double alpha = (1.0 - confidence) / 2.0;
  e.ci_low = std::min(quantile(reps, alpha), e.polarization);
  e.ci_high = std::max(quantile(reps, 1.0 - alpha), e.polarization);
}

double pow4(int n) { return std::pow(4.0, n); }
double pow2(int n) { return std::pow(2.0, n); }

}  // namespace

std::vector<double> hamming_distribution(const OutcomeCounts& oc) {
  if (oc.shots == 0) throw std::invalid_argument("observed polarization needs at least one shot");
  std::vector<double> h(static_cast<std::size_t>(oc.width()) + 1, 0.0);
  for (const auto& [b, k] : oc.counts) h[static_cast<std::size_t>(hamming_distance(b, oc.target))] += static_cast<double>(k);
  for (auto& x : h) x /= static_cast<double>(oc.shots);
  return h;
}

double observed_polarization(const OutcomeCounts& oc) {
  const auto h = hamming_distribution(oc);
  const int n = oc.width();
  double s = 0.0;
  double w = 1.0;
  for (double hk : h) {
    s += w * hk;
    w *= -0.5;
  }
  const double d2 = pow4(n);
  return d2 / (d2 - 1.0) * s - 1.0 / (d2 - 1.0);
}

PolarizationEstimate estimate_from_means(double m1, double m2, double m3, int n) {
  PolarizationEstimate e;
  e.n = n;
  const double denom = m2 * m3;
  if (!(denom > 0.0) || !std::isfinite(m1)) {
    e.available = false;
    e.status = "estimate unavailable: avg polarization of M2 times M3 is not positive";
    return e;
  }
  e.available = true;
  e.polarization = m1 / std::sqrt(denom);
  e.fidelity = 1.0 - (pow4(n) - 1.0) / pow4(n) * (1.0 - e.polarization);
  e.ci_low = e.ci_high = e.polarization;
  return e;
}

std::vector<double> bootstrap_replicates(const std::vector<double>& pol_m1, const std::vector<double>& pol_m2,
                                         const std::vector<double>& pol_m3, int n, Rng& rng, int resamples) {
  std::vector<double> reps;
  reps.reserve(static_cast<std::size_t>(resamples));
  for (int b = 0; b < resamples; ++b) {
    const double a = resampled_mean(pol_m1, rng);
    const double c = resampled_mean(pol_m2, rng);
    const double s = resampled_mean(pol_m3, rng);
    const auto e = estimate_from_means(a, c, s, n);
    reps.push_back(e.available ? e.polarization : std::numeric_limits<double>::quiet_NaN());
  }
  return reps;
}

PolarizationEstimate estimate_fidelity(const std::vector<double>& pol_m1, const std::vector<double>& pol_m2,
                                       const std::vector<double>& pol_m3, int n, Rng& rng,
                                       const BootstrapOptions& options) {
  if (pol_m1.empty() || pol_m2.empty() || pol_m3.empty()) {
    throw std::invalid_argument("estimate_fidelity needs at least one circuit of each kind");
  }
  auto e = estimate_from_means(mean(pol_m1), mean(pol_m2), mean(pol_m3), n);
  e.k1 = pol_m1.size();
  e.k2 = pol_m2.size();
  e.k3 = pol_m3.size();
  e.confidence = options.confidence;
  if (!e.available) return e;
  set_interval(e, bootstrap_replicates(pol_m1, pol_m2, pol_m3, n, rng, options.resamples), options.confidence);
  return e;
}

PolarizationEstimate shape_average(const std::vector<PolarizationEstimate>& per_circuit,
                                   const std::vector<std::vector<double>>& replicates, int n, int d, Rng& rng,
                                   const BootstrapOptions& options) {
  if (per_circuit.size() != replicates.size()) throw std::invalid_argument("shape_average: size mismatch");
  std::vector<std::size_t> ok;
  for (std::size_t i = 0; i < per_circuit.size(); ++i) {
    if (per_circuit[i].available) ok.push_back(i);
  }
  PolarizationEstimate e;
  e.n = n;
  e.d = d;
  if (ok.empty()) {
    e.status = "estimate unavailable: no circuit of this shape has a usable estimate";
    return e;
  }
  double s = 0.0;
  for (auto i : ok) s += per_circuit[i].polarization;
  e.available = true;
  e.polarization = s / static_cast<double>(ok.size());
  e.fidelity = polarization_to_fidelity(e.polarization, n);
  e.k1 = ok.size();
  if (ok.size() < per_circuit.size()) {
    e.status = "ok (" + std::to_string(per_circuit.size() - ok.size()) + " circuits without an estimate skipped)";
  }
  std::uniform_int_distribution<std::size_t> pick(0, ok.size() - 1);
  std::vector<double> reps;
  reps.reserve(static_cast<std::size_t>(options.resamples));
  for (int b = 0; b < options.resamples; ++b) {
    double t = 0.0;
    for (std::size_t k = 0; k < ok.size(); ++k) {
      const std::size_t i = ok[pick(rng)];
      const auto& r = replicates[i];
      double v = r.empty() ? per_circuit[i].polarization : r[static_cast<std::size_t>(b) % r.size()];
      if (!std::isfinite(v)) v = per_circuit[i].polarization;
      t += v;
    }
    reps.push_back(t / static_cast<double>(ok.size()));
  }
  set_interval(e, std::move(reps), options.confidence);
  return e;
}

PolarizationEstimate mean_with_ci(const std::vector<double>& values, int n, int d, Rng& rng,
                                  const BootstrapOptions& options) {
  PolarizationEstimate e;
  e.n = n;
  e.d = d;
  if (values.empty()) {
    e.status = "estimate unavailable: no values";
    return e;
  }
  e.available = true;
  e.polarization = mean(values);
  e.fidelity = polarization_to_fidelity(e.polarization, n);
  e.k1 = values.size();
  std::vector<double> reps;
  for (int b = 0; b < options.resamples; ++b) reps.push_back(resampled_mean(values, rng));
  set_interval(e, std::move(reps), options.confidence);
  return e;
}

HeavyOutputResult heavy_output_set(const std::vector<double>& dist) {
  if (dist.empty()) throw std::invalid_argument("heavy_output_set: empty distribution");
  const double total = std::accumulate(dist.begin(), dist.end(), 0.0);
  if (std::abs(total - 1.0) > 1e-9) throw std::invalid_argument("heavy_output_set: distribution does not sum to 1");
  std::vector<double> sorted = dist;
  std::sort(sorted.begin(), sorted.end());
  HeavyOutputResult r;
  // With strict '>' the set is the same for the lower median and the midpoint
  // median; the midpoint is what gets reported.
  const std::size_t mid = sorted.size() / 2;
  r.median = sorted.size() % 2 == 1 ? sorted[mid] : 0.5 * (sorted[mid - 1] + sorted[mid]);
  for (std::size_t x = 0; x < dist.size(); ++x) {
    if (dist[x] > r.median) {
      r.heavy.push_back(x);
      r.p_heavy += dist[x];
    }
  }
  return r;
}

double heavy_output_fraction(const OutcomeCounts& oc, const HeavyOutputResult& h) {
  if (oc.shots == 0) throw std::invalid_argument("heavy_output_fraction: no shots");
  const std::set<std::uint64_t> heavy(h.heavy.begin(), h.heavy.end());
  std::uint64_t in = 0;
  for (const auto& [b, k] : oc.counts) {
    if (heavy.count(b.to_index())) in += k;
  }
  return static_cast<double>(in) / static_cast<double>(oc.shots);
}

double rescale_hop_standard(double p) { return (2.0 * p - 1.0) / std::log(2.0); }

std::optional<double> rescale_hop_per_circuit(double p_obs, double p_ideal) {
  if (std::abs(p_ideal - 0.5) < 1e-12) return std::nullopt;
  return (p_obs - 0.5) / (p_ideal - 0.5);
}

double qv_threshold() { return 1.0 / (3.0 * std::log(2.0)); }

QvDecision qv_decision(const std::vector<ShapeBound>& bounds) {
  QvDecision out;
  for (const auto& b : bounds) {
    if (b.n != b.d) continue;
    if (b.lower > qv_threshold() && (!out.largest_passing_n || b.n > *out.largest_passing_n)) {
      out.largest_passing_n = b.n;
    }
  }
  if (out.largest_passing_n) {
    out.quantum_volume = std::pow(2.0, *out.largest_passing_n);
    out.summary = "quantum volume 2^" + std::to_string(*out.largest_passing_n);
  } else {
    out.summary = "none passing";
  }
  return out;
}

double classical_fidelity(const std::vector<double>& p, const std::vector<double>& q) {
  if (p.size() != q.size()) throw std::invalid_argument("classical_fidelity: size mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) s += std::sqrt(std::max(0.0, p[i]) * std::max(0.0, q[i]));
  return s * s;
}

ClassicalFidelityResult normalized_classical_fidelity(const std::vector<double>& ideal,
                                                      const std::vector<double>& observed,
                                                      ClassicalBaseline baseline) {
  if (ideal.size() != observed.size() || ideal.empty()) {
    throw std::invalid_argument("normalized_classical_fidelity: size mismatch");
  }
  const double dim = static_cast<double>(ideal.size());
  double root_sum = 0.0;
  double tv_uniform = 0.0;
  for (double p : ideal) {
    root_sum += std::sqrt(std::max(0.0, p));
    tv_uniform += std::abs(p - 1.0 / dim);
  }
  ClassicalFidelityResult r;
  r.baseline = baseline == ClassicalBaseline::kUniformFidelity ? root_sum * root_sum / dim : root_sum / dim;
  const double denom = 1.0 - r.baseline;
  if (denom < 1e-6 || 0.5 * tv_uniform < 1e-9) {
    r.ill_conditioned = true;
    return r;
  }
  r.value = (classical_fidelity(ideal, observed) - r.baseline) / denom;
  return r;
}

DepolarizingBound depolarizing_fidelity_bound(int n, double gamma) {
  if (n < 1) throw std::invalid_argument("depolarizing_fidelity_bound: n must be >= 1");
  DepolarizingBound b;
  b.classical = (std::pow(1.0 + gamma, n) - 1.0) / (pow2(n) - 1.0);
  b.polarization = (std::pow(1.0 + 3.0 * gamma, n) - 1.0) / (pow4(n) - 1.0);
  b.bound_holds = b.classical - b.polarization >= -1e-12;
  return b;
}

PauliChannelBound pauli_channel_fidelity_bound(int n, const std::vector<std::pair<PauliString, double>>& rates) {
  if (n < 1) throw std::invalid_argument("pauli_channel_fidelity_bound: n must be >= 1");
  PauliChannelBound b;
  double total = 0.0;
  for (const auto& [p, r] : rates) {
    if (p.width() != n) throw std::invalid_argument("pauli_channel_fidelity_bound: Pauli width mismatch");
    if (r < 0.0 || !std::isfinite(r)) throw std::invalid_argument("pauli_channel_fidelity_bound: negative rate");
    if (p.is_identity()) throw std::invalid_argument("pauli_channel_fidelity_bound: list only non-identity Paulis");
    total += r;
    if (p.is_z_type()) b.z_type_rate += r;
  }
  if (total > 1.0 + 1e-12) throw std::invalid_argument("pauli_channel_fidelity_bound: rates sum above 1");
  b.identity_rate = 1.0 - total;
  b.classical = pow2(n) / (pow2(n) - 1.0) * (b.identity_rate + b.z_type_rate - 1.0 / pow2(n));
  b.polarization = pow4(n) / (pow4(n) - 1.0) * b.identity_rate - 1.0 / (pow4(n) - 1.0);
  b.z_condition = b.z_type_rate >= (pow2(n) - 1.0) / (pow4(n) - 1.0) * (1.0 - b.identity_rate) - 1e-15;
  b.bound_holds = b.classical - b.polarization >= -1e-12;
  return b;
}

std::optional<ExponentialFit> fit_exponential(const std::vector<std::pair<double, double>>& xy, double clip) {
  if (xy.size() < 2) return std::nullopt;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [x, y] : xy) {
    const double ly = std::log(std::max(y, clip));
    sx += x;
    sy += ly;
    sxx += x * x;
    sxy += x * ly;
  }
  const double m = static_cast<double>(xy.size());
  const double det = m * sxx - sx * sx;
  if (std::abs(det) < 1e-12) return std::nullopt;
  const double slope = (m * sxy - sx * sy) / det;
  const double icept = (sy - slope * sx) / m;
  return ExponentialFit{std::exp(icept), std::exp(slope), static_cast<int>(xy.size())};
}

VolumetricGrid volumetric_fit(const std::vector<VolumetricCell>& measured, const VolumetricOptions& options) {
  VolumetricGrid grid;
  if (measured.empty()) return grid;
  const std::string metric = measured.front().metric;
  std::map<std::pair<int, int>, const VolumetricCell*> by_shape;
  std::set<int> ns(options.ns.begin(), options.ns.end()), ds(options.ds.begin(), options.ds.end());
  for (const auto& c : measured) {
    if (c.metric != metric) throw std::invalid_argument("volumetric_fit: mixed metrics");
    if (!c.value) continue;
    by_shape[{c.n, c.d}] = &c;
    if (options.ns.empty()) ns.insert(c.n);
    if (options.ds.empty()) ds.insert(c.d);
  }
  std::map<int, std::vector<std::pair<double, double>>> rows, cols;
  for (const auto& [shape, c] : by_shape) {
    rows[shape.first].emplace_back(shape.second, *c->value);
    cols[shape.second].emplace_back(shape.first, *c->value);
  }
  for (const auto& [n, pts] : rows) {
    if (auto f = fit_exponential(pts, options.clip)) grid.row_fits[n] = *f;
  }
  for (const auto& [d, pts] : cols) {
    if (auto f = fit_exponential(pts, options.clip)) grid.column_fits[d] = *f;
  }
  for (int n : ns) {
    for (int d : ds) {
      VolumetricCell cell;
      cell.n = n;
      cell.d = d;
      cell.metric = metric;
      if (auto it = by_shape.find({n, d}); it != by_shape.end()) {
        cell = *it->second;
        cell.measured = true;
      } else {
        const bool by_column = n >= options.column_fit_min_n || (options.column_fit_depth_one && d == 1);
        if (by_column) {
          if (auto f = grid.column_fits.find(d); f != grid.column_fits.end()) cell.value = f->second.a * std::pow(f->second.p, n);
        } else if (auto f = grid.row_fits.find(n); f != grid.row_fits.end()) {
          cell.value = f->second.a * std::pow(f->second.p, d);
        }
      }
      grid.cells.push_back(cell);
    }
  }
  return grid;
}

std::string volumetric_csv(const std::vector<VolumetricCell>& cells) {
  std::ostringstream out;
  out.precision(17);
  out << "shape_n,shape_d,metric,value,ci_low,ci_high,measured_flag\n";
  auto field = [&](const std::optional<double>& v) {
    if (v) out << *v;
  };
  for (const auto& c : cells) {
    out << c.n << ',' << c.d << ',' << c.metric << ',';
    field(c.value);
    out << ',';
    field(c.ci_low);
    out << ',';
    field(c.ci_high);
    out << ',' << (c.measured ? 1 : 0) << '\n';
  }
  return out.str();
}

}  // namespace mirrorbench
