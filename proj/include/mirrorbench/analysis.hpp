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
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mirrorbench/pauli.hpp"
#include "mirrorbench/random.hpp"
#include "mirrorbench/simulator.hpp"

namespace mirrorbench {

/// h_k: fraction of shots at Hamming distance k from the target, k = 0..n.
std::vector<double> hamming_distribution(const OutcomeCounts& oc);

/// gamma = 4^n/(4^n-1) sum_k (-1/2)^k h_k - 1/(4^n-1). Negative values are kept.
double observed_polarization(const OutcomeCounts& oc);

/// Estimator with a point value only when the denominator is positive.
struct PolarizationEstimate {
  bool available = false;
  /// Polarization avg1 / sqrt(avg2 * avg3), and the matching process fidelity.
  double polarization = 0.0;
  double fidelity = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  double confidence = 0.95;
  int n = 0;
  int d = 0;
  std::size_t k1 = 0, k2 = 0, k3 = 0;
  /// "ok" or the reason the estimate is unavailable.
  std::string status = "ok";
};

/// Point estimate from the three per-kind mean observed polarizations:
/// F = 1 - (4^n-1)/4^n (1 - m1 / sqrt(m2 m3)). Unavailable when m2 m3 <= 0.
PolarizationEstimate estimate_from_means(double m1, double m2, double m3, int n);

struct BootstrapOptions {
  int resamples = 1000;
  double confidence = 0.95;
};

/// Per-circuit estimate with a percentile bootstrap CI over mirror circuits.
PolarizationEstimate estimate_fidelity(const std::vector<double>& pol_m1, const std::vector<double>& pol_m2,
                                       const std::vector<double>& pol_m3, int n, Rng& rng,
                                       const BootstrapOptions& options = {});

/// Bootstrap replicates of the per-circuit estimate (NaN where unavailable).
std::vector<double> bootstrap_replicates(const std::vector<double>& pol_m1, const std::vector<double>& pol_m2,
                                         const std::vector<double>& pol_m3, int n, Rng& rng, int resamples);

/// Mean over circuits of one shape. Circuits whose estimate is unavailable
/// are skipped; the CI resamples circuits and, inside each, reuses that
/// circuit's own bootstrap replicates.
PolarizationEstimate shape_average(const std::vector<PolarizationEstimate>& per_circuit,
                                   const std::vector<std::vector<double>>& replicates, int n, int d, Rng& rng,
                                   const BootstrapOptions& options = {});

/// Plain mean with a percentile-bootstrap CI.
PolarizationEstimate mean_with_ci(const std::vector<double>& values, int n, int d, Rng& rng,
                                  const BootstrapOptions& options = {});

struct HeavyOutputResult {
  std::vector<std::uint64_t> heavy;
  double median = 0.0;
  double p_heavy = 0.0;
};

/// Heavy set {x : p(x) > median}, strict. median is the midpoint of the two
/// middle sorted probabilities (the lower median selects the same set). Throws std::invalid_argument unless p sums to 1 within 1e-9.
HeavyOutputResult heavy_output_set(const std::vector<double>& dist);

/// Fraction of shots inside the heavy set.
double heavy_output_fraction(const OutcomeCounts& oc, const HeavyOutputResult& h);

/// gamma = (2 p - 1) / ln 2.
double rescale_hop_standard(double p_heavy_observed);
/// gamma = (p_obs - 1/2) / (p_ideal - 1/2); empty when p_ideal is 1/2.
std::optional<double> rescale_hop_per_circuit(double p_heavy_observed, double p_heavy_ideal);

/// 1 / (3 ln 2).
double qv_threshold();

struct ShapeBound {
  int n = 0;
  int d = 0;
  double lower = 0.0;
};

struct QvDecision {
  std::optional<int> largest_passing_n;
  /// 2^n for the largest passing n; 0 when nothing passes.
  double quantum_volume = 0.0;
  std::string summary;
};

/// Largest square shape n = d whose lower bound strictly exceeds 1/(3 ln 2).
QvDecision qv_decision(const std::vector<ShapeBound>& bounds);

enum class ClassicalBaseline {
  /// F(p_ideal, uniform) = 2^-n (sum_x sqrt(p_ideal(x)))^2.
  kUniformFidelity,
  /// sum_x 2^-n sqrt(p_ideal(x)), the literal subtracted term.
  kLiteralSum,
};

struct ClassicalFidelityResult {
  std::optional<double> value;
  bool ill_conditioned = false;
  double baseline = 0.0;
};

/// (sum_x sqrt(p q))^2.
double classical_fidelity(const std::vector<double>& p, const std::vector<double>& q);

/// (F(ideal, observed) - B) / (1 - B); flagged ill-conditioned when 1 - B < 1e-6
/// or the ideal distribution is uniform to within 1e-9.
ClassicalFidelityResult normalized_classical_fidelity(const std::vector<double>& ideal,
                                                      const std::vector<double>& observed,
                                                      ClassicalBaseline baseline = ClassicalBaseline::kUniformFidelity);

/// Tensor product of single-qubit depolarizing channels on a definite-outcome circuit.
struct DepolarizingBound {
  double classical = 0.0;     // ((1+g)^n - 1) / (2^n - 1)
  double polarization = 0.0;  // ((1+3g)^n - 1) / (4^n - 1)
  bool bound_holds = false;   // classical - polarization >= -1e-12
};
DepolarizingBound depolarizing_fidelity_bound(int n, double gamma);

/// Stochastic Pauli channel; the identity rate is 1 minus the listed rates.
struct PauliChannelBound {
  double identity_rate = 0.0;
  double z_type_rate = 0.0;
  double classical = 0.0;
  double polarization = 0.0;
  /// sum of Z-type rates >= (2^n-1)/(4^n-1) (1 - identity rate).
  bool z_condition = false;
  bool bound_holds = false;
};
/// Throws std::invalid_argument on negative rates, rates summing above 1, or
/// width mismatches.
PauliChannelBound pauli_channel_fidelity_bound(int n, const std::vector<std::pair<PauliString, double>>& rates);

struct VolumetricCell {
  int n = 0;
  int d = 0;
  std::string metric;
  std::optional<double> value;
  std::optional<double> ci_low;
  std::optional<double> ci_high;
  bool measured = false;
};

struct ExponentialFit {
  double a = 0.0;
  double p = 0.0;
  int points = 0;
};

struct VolumetricOptions {
  /// Cells with n >= column_fit_min_n, or d == 1 when column_fit_depth_one,
  /// are filled from fits in n at fixed d; others from fits in d at fixed n.
  int column_fit_min_n = 7;
  bool column_fit_depth_one = true;
  double clip = 1e-4;
  /// Grid axes; the measured values are used when empty.
  std::vector<int> ns;
  std::vector<int> ds;
};

struct VolumetricGrid {
  std::vector<VolumetricCell> cells;
  std::map<int, ExponentialFit> row_fits;     // keyed by n
  std::map<int, ExponentialFit> column_fits;  // keyed by d
};

/// Least-squares fit of log(max(y, clip)) = log A + x log p. Needs >= 2 points.
std::optional<ExponentialFit> fit_exponential(const std::vector<std::pair<double, double>>& xy, double clip = 1e-4);

/// All measured cells must share one metric.
VolumetricGrid volumetric_fit(const std::vector<VolumetricCell>& measured, const VolumetricOptions& options = {});

/// Header: shape_n,shape_d,metric,value,ci_low,ci_high,measured_flag.
std::string volumetric_csv(const std::vector<VolumetricCell>& cells);

}  // namespace mirrorbench
