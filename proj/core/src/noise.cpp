// Copyright 2026 The qinstr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qinstr/noise.hpp"

#include <cmath>
#include <string>

#include "qinstr/errors.hpp"

namespace qinstr {
namespace {

bool finite_lifetime(double t) { return std::isfinite(t); }

void check_pair(double t1, double t2r, const std::string& what) {
  if (!(t1 > 0.0) || !(t2r > 0.0)) {
    throw ConfigError("NoiseParams " + what + ": lifetimes must be positive");
  }
  if (t2r > 2.0 * t1 * (1.0 + 1e-12)) {
    throw ConfigError("NoiseParams " + what + ": T2R exceeds 2 T1 (negative pure dephasing)");
  }
}

bool noise_free_moment(const Moment& m) {
  for (const auto& g : m.ops)
    if (g.kind != GateKind::kVirtualZ) return false;
  return true;
}

DmeConfig with_steps(const DmeConfig& cfg, int n) {
  DmeConfig c = cfg;
  c.steps = n;
  c.theta = cfg.delta() * n;
  return c;
}

}  // namespace

bool NoiseParams::is_noiseless() const {
  for (const auto& c : q) {
    if (finite_lifetime(c.t1_us) || finite_lifetime(c.t2r_us) || finite_lifetime(c.t1_eff_us) ||
        finite_lifetime(c.t2r_eff_us))
      return false;
  }
  return true;
}

void validate(const NoiseParams& np) {
  for (int i = 0; i < 2; ++i) {
    const auto& c = np.q[i];
    const std::string tag = "q" + std::to_string(i + 1);
    check_pair(c.t1_us, c.t2r_us, tag);
    check_pair(c.t1_eff_us, c.t2r_eff_us, tag + " (effective)");
  }
  if (!(np.t_1qb_ns >= 0.0) || !(np.t_cz_ns >= 0.0) || !(np.cz_gap_ns >= 0.0)) {
    throw ConfigError("NoiseParams: gate durations must be non-negative");
  }
}

NoiseParams noise_preset(std::string_view name) {
  NoiseParams np;
  np.name = std::string(name);
  if (name == "none") return np;
  if (name == "sim") {
    np.q[0] = {20.0, 10.0, 10.0, 5.0};
    np.q[1] = {20.0, 10.0, 20.0, 10.0};
    return np;
  }
  if (name == "device") {
    np.q[0] = {23.0, 13.0, 17.0, 5.0};
    np.q[1] = {39.0, 25.0, 39.0, 25.0};
    return np;
  }
  throw ConfigError("unknown noise preset '" + std::string(name) + "'");
}

Rates rates_from(double t1_us, double t2r_us) {
  Rates r;
  r.gamma1 = finite_lifetime(t1_us) ? 1e6 / t1_us : 0.0;
  const double g2 = finite_lifetime(t2r_us) ? 1e6 / t2r_us : 0.0;
  r.gamma_phi = std::max(0.0, g2 - 0.5 * r.gamma1);
  return r;
}

KrausChannel idle_channel(const NoiseParams& np, int qubit, double duration_ns, bool cz_moment) {
  if (qubit < 0 || qubit > 1) throw ConfigError("idle_channel: qubit out of range");
  const auto& c = np.q[qubit];
  const Rates r = cz_moment ? rates_from(c.t1_eff_us, c.t2r_eff_us) : rates_from(c.t1_us, c.t2r_us);
  return decoherence_channel(r.gamma1, r.gamma_phi, duration_ns * 1e-9);
}

std::vector<NoisyStep> instrument(const Circuit& c, const NoiseParams& np) {
  validate(np);
  std::vector<NoisyStep> steps;
  steps.reserve(c.moments.size());
  for (const auto& m : c.moments) {
    for (const auto& g : m.ops) {
      if (g.kind == GateKind::kSwapPow || g.kind == GateKind::kCNOT) {
        throw ConfigError("instrument: gate kind '" + std::string(kind_name(g.kind)) +
                          "' is not native; compile it first");
      }
    }
    NoisyStep s;
    s.unitary = moment_unitary(m, c.qubit_count);
    if (!noise_free_moment(m) && !np.is_noiseless()) {
      const bool cz = m.has_two_qubit_gate();
      s.noise_ns = cz ? np.cz_window_ns() : np.t_1qb_ns;
      for (int q = 0; q < c.qubit_count; ++q) s.channel.push_back(idle_channel(np, q, s.noise_ns, cz));
    }
    steps.push_back(std::move(s));
  }
  return steps;
}

CMatrix simulate_noisy(const Circuit& c, const CMatrix& input, const NoiseParams& np) {
  if (input.rows() != (std::size_t{1} << c.qubit_count)) {
    throw ConfigError("simulate_noisy: input dimension does not match the circuit");
  }
  CMatrix rho = input;
  for (const auto& s : instrument(c, np)) {
    rho = s.unitary * rho * s.unitary.adjoint();
    for (std::size_t q = 0; q < s.channel.size(); ++q)
      rho = apply_on(s.channel[q], rho, static_cast<int>(q), c.qubit_count);
  }
  return rho;
}

DensityMatrix simulate_noisy(const Circuit& c, const DensityMatrix& input, const NoiseParams& np) {
  return DensityMatrix::trusted(simulate_noisy(c, input.mat(), np));
}

CMatrix moment_superoperator(const Moment& m, int qubit_count, const NoiseParams& np) {
  Circuit one;
  one.qubit_count = qubit_count;
  one.moments.push_back(m);
  const NoisyStep s = instrument(one, np).front();
  CMatrix sup = unitary_superoperator(s.unitary);
  for (std::size_t q = 0; q < s.channel.size(); ++q)
    sup = lifted_superoperator(s.channel[q], static_cast<int>(q), qubit_count) * sup;
  return sup;
}

DensityMatrix noisy_dme2_average(const DmeConfig& cfg, const NoiseParams& np) {
  validate(cfg);
  const QmeMask zeros(cfg.steps, false), ones(cfg.steps, true);
  const Circuit c0 = build_dme2_circuit(cfg, zeros);
  const Circuit c1 = build_dme2_circuit(cfg, ones);
  std::vector<cplx> v = vec_rows(kron(cfg.sigma_in.mat(), cfg.rho_in.mat()));
  for (std::size_t k = 0; k < c0.moments.size(); ++k) {
    CMatrix s = moment_superoperator(c0.moments[k], 2, np) +
                moment_superoperator(c1.moments[k], 2, np);
    s *= 0.5;
    v = qinstr::apply(s, v);
  }
  return DensityMatrix::trusted(unvec_rows(v, 4));
}

DensityMatrix noisy_dme2_enumerate(const DmeConfig& cfg, const NoiseParams& np) {
  validate(cfg);
  if (cfg.steps > kMaxEnumerateSteps) throw GuardError("noisy_dme2_enumerate: N too large");
  const CMatrix input = kron(cfg.sigma_in.mat(), cfg.rho_in.mat());
  const std::uint64_t total = std::uint64_t{1} << cfg.steps;
  CMatrix sum(4, 4);
  for (std::uint64_t bits = 0; bits < total; ++bits) {
    QmeMask mask(cfg.steps);
    for (int b = 0; b < cfg.steps; ++b) mask[b] = ((bits >> b) & 1u) != 0;
    sum += simulate_noisy(build_dme2_circuit(cfg, mask), input, np);
  }
  sum *= 1.0 / static_cast<double>(total);
  return DensityMatrix::trusted(std::move(sum));
}

std::vector<DensityMatrix> noisy_dme2_trajectory(const DmeConfig& cfg, const NoiseParams& np) {
  validate(cfg);
  std::vector<DensityMatrix> out{tensor(cfg.sigma_in, cfg.rho_in)};
  for (int n = 1; n <= cfg.steps; ++n) out.push_back(noisy_dme2_average(with_steps(cfg, n), np));
  return out;
}

namespace {

Circuit cz_train(int n, double phase_per_gate) {
  Circuit c;
  c.qubit_count = 2;
  for (int k = 0; k < n; ++k) {
    Moment m;
    m.tag = "CZ" + std::to_string(k + 1);
    m.ops.push_back(GateOp::cz(0, 1));
    c.moments.push_back(std::move(m));
    if (phase_per_gate != 0.0) {
      Moment z;
      z.tag = "phase" + std::to_string(k + 1);
      z.ops.push_back(GateOp::virtual_z(0, phase_per_gate));
      c.moments.push_back(std::move(z));
    }
  }
  return c;
}

}  // namespace

std::vector<double> simulate_t1_like(const NoiseParams& np, const std::vector<int>& gate_counts) {
  const CMatrix input = kron(pure_state("1").mat(), pure_state("0").mat());
  std::vector<double> out;
  for (int n : gate_counts) {
    if (n < 0) throw ConfigError("simulate_t1_like: negative gate count");
    const CMatrix rho = simulate_noisy(cz_train(n, 0.0), input, np);
    out.push_back(partial_trace(rho, Subsystem::kFirst)(1, 1).real());
  }
  return out;
}

std::vector<double> simulate_ramsey_like(const NoiseParams& np,
                                         const std::vector<int>& gate_counts,
                                         double phase_per_gate) {
  const CMatrix input = kron(pure_state("+").mat(), pure_state("0").mat());
  const CMatrix post = kron(ry(-M_PI / 2), CMatrix::identity(2));
  std::vector<double> out;
  for (int n : gate_counts) {
    if (n < 0) throw ConfigError("simulate_ramsey_like: negative gate count");
    CMatrix rho = simulate_noisy(cz_train(n, phase_per_gate), input, np);
    rho = post * rho * post.adjoint();
    out.push_back(partial_trace(rho, Subsystem::kFirst)(0, 0).real());
  }
  return out;
}

}  // namespace qinstr
