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

#include "mirrorbench/error_model.hpp"

#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

namespace mirrorbench {

namespace {

void check_polarization(const char* name, double g, int k) {
  const double floor = -1.0 / (std::pow(4.0, k) - 1.0);
  if (!std::isfinite(g) || g < floor - 1e-15 || g > 1.0) {
    throw std::invalid_argument(std::string(name) + " must lie in [" + std::to_string(floor) + ", 1]");
  }
}

void check_probability(const char* name, double p) {
  if (!std::isfinite(p) || p < 0.0 || p > 1.0) throw std::invalid_argument(std::string(name) + " must lie in [0, 1]");
}

}  // namespace

void ErrorModel::validate() const {
  check_polarization("g1_pol", g1_pol, 1);
  check_polarization("g2_pol", g2_pol, 2);
  // The bound for the global channel depends on the register size; the
  // simulator re-checks it once the width is known.
  check_polarization("global_pol", global_pol, 1);
  check_probability("readout_flip", readout_flip);
  check_probability("pauli_rates.x", pauli_rates.x);
  check_probability("pauli_rates.y", pauli_rates.y);
  check_probability("pauli_rates.z", pauli_rates.z);
  if (pauli_rates.total() > 1.0) throw std::invalid_argument("pauli_rates must sum to at most 1");
  if (!std::isfinite(idle_z_rad)) throw std::invalid_argument("idle_z_rad must be finite");
}

bool ErrorModel::is_noiseless() const {
  return g1_pol == 1.0 && g2_pol == 1.0 && idle_z_rad == 0.0 && readout_flip == 0.0 && global_pol == 1.0 &&
         pauli_rates.total() == 0.0;
}

json error_model_to_json(const ErrorModel& em) {
  return {{"g1_pol", em.g1_pol},
          {"g2_pol", em.g2_pol},
          {"idle_z_rad", em.idle_z_rad},
          {"readout_flip", em.readout_flip},
          {"global_pol", em.global_pol},
          {"pauli_rates", {{"x", em.pauli_rates.x}, {"y", em.pauli_rates.y}, {"z", em.pauli_rates.z}}}};
}

ErrorModel error_model_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("error model must be a JSON object");
  static const std::set<std::string> known{"g1_pol", "g2_pol", "idle_z_rad", "readout_flip", "global_pol",
                                           "pauli_rates"};
  for (const auto& [key, value] : j.items()) {
    if (!known.count(key)) throw std::invalid_argument("unknown error model key: " + key);
  }
  ErrorModel em;
  try {
    em.g1_pol = j.value("g1_pol", 1.0);
    em.g2_pol = j.value("g2_pol", 1.0);
    em.idle_z_rad = j.value("idle_z_rad", 0.0);
    em.readout_flip = j.value("readout_flip", 0.0);
    em.global_pol = j.value("global_pol", 1.0);
    if (j.contains("pauli_rates")) {
      const auto& r = j.at("pauli_rates");
      em.pauli_rates = {r.value("x", 0.0), r.value("y", 0.0), r.value("z", 0.0)};
    }
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed error model: ") + e.what());
  }
  em.validate();
  return em;
}

}  // namespace mirrorbench
