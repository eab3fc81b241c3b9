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
#include <vector>

#include "mirrorbench/bitstring.hpp"
#include "mirrorbench/circuit.hpp"
#include "mirrorbench/circuit_json.hpp"
#include "mirrorbench/error_model.hpp"
#include "mirrorbench/random.hpp"

namespace mirrorbench {

struct OutcomeCounts {
  std::map<Bitstring, std::uint64_t> counts;
  std::uint64_t shots = 0;
  Bitstring target;

  int width() const { return target.width(); }
  /// Throws std::invalid_argument if the counts do not sum to shots.
  void validate() const;
};

json counts_to_json(const OutcomeCounts& oc);
OutcomeCounts counts_from_json(const json& j);

enum class Backend {
  /// Density matrix up to SimOptions::auto_dm_width qubits, trajectories above.
  kAuto,
  kDensityMatrix,
  kTrajectory,
};

struct SimOptions {
  Backend backend = Backend::kAuto;
  /// Largest width accepted by simulate_counts.
  int max_width = 14;
  int auto_dm_width = 6;
  /// Shots drawn from each sampled noise trajectory.
  int shots_per_trajectory = 1;
};

inline constexpr int kExactOracleLimit = 6;

/// Samples measurement outcomes of the noisy circuit from |0...0>.
OutcomeCounts simulate_counts(const Circuit& c, const ErrorModel& em, std::uint64_t shots, Rng& rng,
                              const Bitstring& target, const SimOptions& options = {});

/// Exact outcome distribution (readout flips included), indexed by the
/// big-endian basis index. Throws std::invalid_argument above `limit` qubits.
std::vector<double> exact_output_distribution(const Circuit& c, const ErrorModel& em,
                                              int limit = kExactOracleLimit);

/// Process fidelity Tr(S_V^dagger S_Lambda) / 4^n between the noisy circuit
/// (readout excluded) and the unitary v.
double exact_process_fidelity(const Circuit& c, const ErrorModel& em, const MatX& v, int limit = kExactOracleLimit);

/// Process fidelity rescaled so the completely depolarizing channel scores 0.
double exact_polarization(const Circuit& c, const ErrorModel& em, const MatX& v, int limit = kExactOracleLimit);

/// Normalized Choi matrix sum_ij |i><j| (x) Lambda(|i><j|) / 2^n of the noisy
/// circuit (readout excluded).
MatX choi_matrix(const Circuit& c, const ErrorModel& em, int limit = 3);

double fidelity_to_polarization(double f, int n);
double polarization_to_fidelity(double gamma, int n);

}  // namespace mirrorbench
