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

#include "mirrorbench/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "kernels.hpp"

namespace mirrorbench {

namespace {

struct Step {
  enum class Kind { kGate, kDepol1, kDepol2, kPauli1 };
  Kind kind = Kind::kGate;
  detail::Op op;
  int q0 = 0;
  int q1 = 0;
  double gamma = 1.0;
  PauliRates rates;
};

std::vector<Step> build_program(const Circuit& c, const ErrorModel& em) {
  em.validate();
  std::vector<Step> prog;
  for (const auto& layer : c.layers()) {
    const bool has_tq = layer.has_two_qubit_gate();
    for (const auto& g : layer.gates) {
      if (const auto* idle = std::get_if<Idle>(&g)) {
        if (has_tq && em.idle_z_rad != 0.0) {
          Step s;
          s.op.kind = detail::Op::Kind::k1q;
          s.op.q0 = idle->qubit;
          s.op.m2 = rz(em.idle_z_rad);
          prog.push_back(s);
        }
        continue;
      }
      Step gate;
      gate.op = detail::make_op(g);
      prog.push_back(gate);
      const auto qs = gate_qubits(g);
      if (qs.size() == 1 && em.g1_pol != 1.0) {
        Step s;
        s.kind = Step::Kind::kDepol1;
        s.q0 = qs[0];
        s.gamma = em.g1_pol;
        prog.push_back(s);
      }
      if (qs.size() == 2 && em.g2_pol != 1.0) {
        Step s;
        s.kind = Step::Kind::kDepol2;
        s.q0 = qs[0];
        s.q1 = qs[1];
        s.gamma = em.g2_pol;
        prog.push_back(s);
      }
      if (em.pauli_rates.total() > 0.0) {
        for (int q : qs) {
          Step s;
          s.kind = Step::Kind::kPauli1;
          s.q0 = q;
          s.rates = em.pauli_rates;
          prog.push_back(s);
        }
      }
    }
  }
  return prog;
}

void check_global(const ErrorModel& em, int n) {
  const double floor = -1.0 / (std::pow(4.0, n) - 1.0);
  if (em.global_pol < floor - 1e-15) {
    throw std::invalid_argument("global_pol below the CPTP bound for " + std::to_string(n) + " qubits");
  }
}

void check_limit(const Circuit& c, int limit, const char* what) {
  if (c.width() > limit) {
    throw std::invalid_argument(std::string(what) + ": width " + std::to_string(c.width()) + " exceeds limit " +
                                std::to_string(limit));
  }
}

// Evolves a vectorized density matrix through the program and the final
// global depolarizing channel.
void run_dm(const std::vector<Step>& prog, const ErrorModel& em, int n, std::vector<cplx>& rho) {
  cplx* r = rho.data();
  for (const auto& s : prog) {
    switch (s.kind) {
      case Step::Kind::kGate:
        detail::dm_apply_op(r, n, s.op);
        break;
      case Step::Kind::kDepol1: {
        const double p = (1.0 - s.gamma) / 4.0;
        detail::dm_pauli_channel(r, n, s.q0, p, p, p);
        break;
      }
      case Step::Kind::kDepol2:
        detail::dm_depolarize_2q(r, n, s.q0, s.q1, s.gamma);
        break;
      case Step::Kind::kPauli1:
        detail::dm_pauli_channel(r, n, s.q0, s.rates.x, s.rates.y, s.rates.z);
        break;
    }
  }
  if (em.global_pol != 1.0) {
    const std::size_t d = std::size_t{1} << static_cast<unsigned>(n);
    cplx trace = 0.0;
    for (std::size_t i = 0; i < d; ++i) trace += rho[i * d + i];
    for (auto& v : rho) v *= em.global_pol;
    const cplx add = (1.0 - em.global_pol) * trace / static_cast<double>(d);
    for (std::size_t i = 0; i < d; ++i) rho[i * d + i] += add;
  }
}

void apply_readout(std::vector<double>& p, int n, double flip) {
  if (flip == 0.0) return;
  for (int q = 0; q < n; ++q) {
    const std::size_t bit = detail::bit_of(n, q);
    for (std::size_t k = 0; k < p.size() / 2; ++k) {
      const std::size_t i = detail::insert_zero(k, bit);
      const double a = p[i], b = p[i | bit];
      p[i] = (1.0 - flip) * a + flip * b;
      p[i | bit] = (1.0 - flip) * b + flip * a;
    }
  }
}

const Mat2& pauli_matrix(int which) {
  static const std::array<Mat2, 4> mats = [] {
    std::array<Mat2, 4> m;
    m[0] = Mat2::Identity();
    m[1] << 0, 1, 1, 0;
    m[2] << 0, cplx(0, -1), cplx(0, 1), 0;
    m[3] << 1, 0, 0, -1;
    return m;
  }();
  return mats[static_cast<std::size_t>(which)];
}

void apply_pauli(cplx* psi, int n, int q, int which) {
  if (which != 0) detail::apply_1q(psi, n, q, pauli_matrix(which));
}

void run_trajectory(const std::vector<Step>& prog, int n, std::vector<cplx>& psi, Rng& rng) {
  cplx* v = psi.data();
  for (const auto& s : prog) {
    switch (s.kind) {
      case Step::Kind::kGate:
        detail::apply_op(v, n, s.op);
        break;
      case Step::Kind::kDepol1: {
        const double keep = s.gamma + (1.0 - s.gamma) / 4.0;
        if (uniform01(rng) >= keep) apply_pauli(v, n, s.q0, uniform_int(rng, 1, 3));
        break;
      }
      case Step::Kind::kDepol2: {
        const double keep = s.gamma + (1.0 - s.gamma) / 16.0;
        if (uniform01(rng) >= keep) {
          const int which = uniform_int(rng, 1, 15);
          apply_pauli(v, n, s.q0, which / 4);
          apply_pauli(v, n, s.q1, which % 4);
        }
        break;
      }
      case Step::Kind::kPauli1: {
        const double u = uniform01(rng);
        if (u < s.rates.x) {
          apply_pauli(v, n, s.q0, 1);
        } else if (u < s.rates.x + s.rates.y) {
          apply_pauli(v, n, s.q0, 2);
        } else if (u < s.rates.total()) {
          apply_pauli(v, n, s.q0, 3);
        }
        break;
      }
    }
  }
}

}  // namespace

void OutcomeCounts::validate() const {
  std::uint64_t total = 0;
  for (const auto& [b, k] : counts) {
    if (b.width() != target.width()) throw std::invalid_argument("outcome width does not match target width");
    total += k;
  }
  if (total != shots) throw std::invalid_argument("counts do not sum to shots");
}

json counts_to_json(const OutcomeCounts& oc) {
  json counts = json::object();
  for (const auto& [b, k] : oc.counts) counts[b.to_string()] = k;
  return {{"shots", oc.shots}, {"target", oc.target.to_string()}, {"counts", std::move(counts)}};
}

OutcomeCounts counts_from_json(const json& j) {
  OutcomeCounts oc;
  try {
    oc.shots = j.at("shots").get<std::uint64_t>();
    oc.target = Bitstring::from_string(j.at("target").get<std::string>());
    for (const auto& [key, value] : j.at("counts").items()) {
      oc.counts[Bitstring::from_string(key)] = value.get<std::uint64_t>();
    }
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed counts JSON: ") + e.what());
  }
  oc.validate();
  return oc;
}

std::vector<double> exact_output_distribution(const Circuit& c, const ErrorModel& em, int limit) {
  check_limit(c, limit, "exact_output_distribution");
  const int n = c.width();
  check_global(em, n);
  const auto prog = build_program(c, em);
  const std::size_t d = std::size_t{1} << static_cast<unsigned>(n);
  std::vector<cplx> rho(d * d, 0.0);
  rho[0] = 1.0;
  run_dm(prog, em, n, rho);
  std::vector<double> p(d);
  for (std::size_t i = 0; i < d; ++i) p[i] = std::max(0.0, rho[i * d + i].real());
  apply_readout(p, n, em.readout_flip);
  return p;
}

double exact_process_fidelity(const Circuit& c, const ErrorModel& em, const MatX& v, int limit) {
  check_limit(c, limit, "exact_process_fidelity");
  const int n = c.width();
  check_global(em, n);
  const std::size_t d = std::size_t{1} << static_cast<unsigned>(n);
  if (static_cast<std::size_t>(v.rows()) != d || static_cast<std::size_t>(v.cols()) != d) {
    throw std::invalid_argument("exact_process_fidelity: target dimension mismatch");
  }
  const auto prog = build_program(c, em);
  std::vector<cplx> rho(d * d);
  cplx acc = 0.0;
  const MatX vc = v.conjugate();
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      std::fill(rho.begin(), rho.end(), cplx(0.0));
      rho[i * d + j] = 1.0;
      run_dm(prog, em, n, rho);
      // <u_i| Lambda(|i><j|) |u_j> with u_k = V|k>.
      for (std::size_t a = 0; a < d; ++a) {
        cplx row = 0.0;
        for (std::size_t b = 0; b < d; ++b) row += rho[a * d + b] * v(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(j));
        acc += vc(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(i)) * row;
      }
    }
  }
  return acc.real() / static_cast<double>(d * d);
}

double fidelity_to_polarization(double f, int n) {
  const double d2 = std::pow(4.0, n);
  return (d2 * f - 1.0) / (d2 - 1.0);
}

double polarization_to_fidelity(double gamma, int n) {
  const double d2 = std::pow(4.0, n);
  return (1.0 + (d2 - 1.0) * gamma) / d2;
}

double exact_polarization(const Circuit& c, const ErrorModel& em, const MatX& v, int limit) {
  return fidelity_to_polarization(exact_process_fidelity(c, em, v, limit), c.width());
}

MatX choi_matrix(const Circuit& c, const ErrorModel& em, int limit) {
  check_limit(c, limit, "choi_matrix");
  const int n = c.width();
  check_global(em, n);
  const std::size_t d = std::size_t{1} << static_cast<unsigned>(n);
  const auto prog = build_program(c, em);
  const auto dd = static_cast<Eigen::Index>(d * d);
  MatX choi = MatX::Zero(dd, dd);
  std::vector<cplx> rho(d * d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      std::fill(rho.begin(), rho.end(), cplx(0.0));
      rho[i * d + j] = 1.0;
      run_dm(prog, em, n, rho);
      for (std::size_t a = 0; a < d; ++a) {
        for (std::size_t b = 0; b < d; ++b) {
          choi(static_cast<Eigen::Index>(i * d + a), static_cast<Eigen::Index>(j * d + b)) =
              rho[a * d + b] / static_cast<double>(d);
        }
      }
    }
  }
  return choi;
}

OutcomeCounts simulate_counts(const Circuit& c, const ErrorModel& em, std::uint64_t shots, Rng& rng,
                              const Bitstring& target, const SimOptions& options) {
  check_limit(c, options.max_width, "simulate_counts");
  const int n = c.width();
  if (target.width() != n) throw std::invalid_argument("simulate_counts: target width mismatch");
  check_global(em, n);
  OutcomeCounts oc;
  oc.shots = shots;
  oc.target = target;
  const std::size_t d = std::size_t{1} << static_cast<unsigned>(n);
  const bool use_dm = options.backend == Backend::kDensityMatrix ||
                      (options.backend == Backend::kAuto && n <= options.auto_dm_width);
  if (use_dm) {
    const auto p = exact_output_distribution(c, em, options.max_width);
    double remaining_mass = 1.0;
    std::uint64_t remaining = shots;
    for (std::size_t i = 0; i < d && remaining > 0; ++i) {
      if (p[i] <= 0.0) continue;
      std::uint64_t k = remaining;
      const double q = std::clamp(p[i] / std::max(remaining_mass, 1e-300), 0.0, 1.0);
      if (q < 1.0 && i + 1 < d) k = std::binomial_distribution<std::uint64_t>(remaining, q)(rng);
      remaining_mass -= p[i];
      remaining -= k;
      if (k > 0) oc.counts[Bitstring::from_index(i, n)] += k;
    }
    if (remaining > 0) {
      // Rounding left some mass unassigned; give it to the likeliest outcome.
      const auto best = static_cast<std::size_t>(std::max_element(p.begin(), p.end()) - p.begin());
      oc.counts[Bitstring::from_index(best, n)] += remaining;
    }
    return oc;
  }

  if (em.global_pol < 0.0) throw std::invalid_argument("trajectory backend needs global_pol >= 0");
  const auto prog = build_program(c, em);
  const auto per = static_cast<std::uint64_t>(std::max(1, options.shots_per_trajectory));
  std::vector<cplx> psi(d);
  std::vector<double> cumulative(d);
  const auto mask = static_cast<std::uint64_t>(d - 1);
  for (std::uint64_t done = 0; done < shots;) {
    std::fill(psi.begin(), psi.end(), cplx(0.0));
    psi[0] = 1.0;
    run_trajectory(prog, n, psi, rng);
    double acc = 0.0;
    for (std::size_t i = 0; i < d; ++i) cumulative[i] = (acc += std::norm(psi[i]));
    for (std::uint64_t s = 0; s < per && done < shots; ++s, ++done) {
      std::uint64_t idx;
      if (em.global_pol != 1.0 && uniform01(rng) >= em.global_pol) {
        idx = rng() & mask;
      } else {
        const double u = uniform01(rng) * acc;
        idx = static_cast<std::uint64_t>(std::upper_bound(cumulative.begin(), cumulative.end(), u) - cumulative.begin());
        idx = std::min<std::uint64_t>(idx, d - 1);
      }
      if (em.readout_flip > 0.0) {
        for (int q = 0; q < n; ++q) {
          if (uniform01(rng) < em.readout_flip) idx ^= detail::bit_of(n, q);
        }
      }
      oc.counts[Bitstring::from_index(idx, n)] += 1;
    }
  }
  return oc;
}

}  // namespace mirrorbench
