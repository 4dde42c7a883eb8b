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

#include "qinstr/dme.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qinstr/errors.hpp"
#include "qinstr/rng.hpp"

namespace qinstr {
namespace {

constexpr double kTwoPi = 2.0 * M_PI;

CMatrix conj_by(const CMatrix& u, const CMatrix& m) { return u * m * u.adjoint(); }

// sigma_nu on the instruction qubit, lifted to the joint space.
CMatrix qme_flip(const Axis& axis) {
  const CMatrix s = pauli::X() * axis[0] + pauli::Y() * axis[1] + pauli::Z() * axis[2];
  return kron(CMatrix::identity(2), s);
}

Dme2Trajectory marginals(std::vector<CMatrix> joints, bool mixed) {
  Dme2Trajectory t;
  t.instruction_mixed = mixed;
  for (auto& j : joints) {
    t.sigma.push_back(DensityMatrix::trusted(partial_trace(j, Subsystem::kFirst)));
    t.rho.push_back(DensityMatrix::trusted(partial_trace(j, Subsystem::kSecond)));
    t.joint.push_back(DensityMatrix::trusted(std::move(j)));
  }
  return t;
}

bool is_mixed(const DensityMatrix& rho) { return rho.purity() < 1.0 - 1e-9; }

}  // namespace

void validate(const DmeConfig& cfg) {
  if (cfg.rho_in.dim() != 2 || cfg.sigma_in.dim() != 2) {
    throw ConfigError("DmeConfig: rho_in and sigma_in must be single-qubit states");
  }
  if (cfg.steps < 1) throw ConfigError("DmeConfig: steps must be >= 1");
  const double d = cfg.delta();
  if (!(d > 0.0 && d <= kTwoPi + 1e-12)) {
    throw ConfigError("DmeConfig: delta = theta/N = " + std::to_string(d) +
                      " outside (0, 2pi]");
  }
  if (cfg.mode == DmeMode::kQmeSample && cfg.r <= 0) {
    throw ConfigError("DmeConfig: sample mode requires r > 0");
  }
}

Axis resolve_qme_axis(const DmeConfig& cfg) {
  if (cfg.qme_axis) {
    const Axis& a = *cfg.qme_axis;
    const double n = std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2]);
    if (std::abs(n - 1.0) > 1e-9) throw ConfigError("qme_axis must be a unit vector");
    return a;
  }
  const BlochVector b = bloch(cfg.rho_in);
  const double n = b.norm();
  if (n < 1e-9) {
    throw ConfigError("qme_axis auto: rho_in has zero Bloch vector, axis undefined");
  }
  return {b.x / n, b.y / n, b.z / n};
}

DensityMatrix ideal_target(const DensityMatrix& rho, const DensityMatrix& sigma, double theta) {
  const CMatrix u = expm_herm(rho.mat(), theta);
  return DensityMatrix::trusted(conj_by(u, sigma.mat()));
}

DensityMatrix dswap_step(const DensityMatrix& joint, double delta) {
  if (joint.dim() != 4) throw ConfigError("dswap_step: joint state must be 4x4");
  return DensityMatrix::trusted(conj_by(swap_pow_matrix(delta), joint.mat()));
}

std::vector<DensityMatrix> dme_refresh(const DmeConfig& cfg) {
  validate(cfg);
  const CMatrix u = swap_pow_matrix(cfg.delta());
  std::vector<DensityMatrix> out{cfg.sigma_in};
  CMatrix sigma = cfg.sigma_in.mat();
  for (int n = 0; n < cfg.steps; ++n) {
    const CMatrix joint = conj_by(u, kron(sigma, cfg.rho_in.mat()));
    sigma = partial_trace(joint, Subsystem::kFirst);
    out.push_back(DensityMatrix::trusted(sigma));
  }
  return out;
}

KrausChannel closed_form_channel(const DensityMatrix& rho_in, int steps, double theta) {
  if (rho_in.dim() != 2) throw ConfigError("closed_form_channel: rho_in must be 2x2");
  if (steps < 1) throw ConfigError("closed_form_channel: steps must be >= 1");
  if (is_mixed(rho_in)) {
    throw ConfigError("closed_form_channel: rho_in is mixed; use step simulation");
  }
  const HermEig eig = herm_eig(rho_in.mat());
  // Columns: |phi> (eigenvalue 1), |phi_perp>.
  CMatrix v(2, 2);
  for (int r = 0; r < 2; ++r) {
    v(r, 0) = eig.vectors(r, 1);
    v(r, 1) = eig.vectors(r, 0);
  }
  // Signed coherence factor: for cos(theta/N) < 0 with N odd the off-diagonal
  // flips sign, which plain amplitude damping cannot represent.
  const double c = std::pow(std::cos(theta / steps), steps);
  const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
  const KrausChannel damp{{CMatrix(2, 2, {1.0, 0.0, 0.0, c}), CMatrix(2, 2, {0.0, s, 0.0, 0.0})}, 2};
  const KrausChannel rot = unitary_channel(expm_herm(rho_in.mat(), theta));
  return compose(rot, conjugate(damp, v));
}

GateOp qme_gate(const Axis& axis, bool coin, int qubit) {
  const double n = std::sqrt(axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]);
  if (std::abs(n - 1.0) > 1e-9) throw ConfigError("qme_gate: axis must be a unit vector");
  return GateOp::qme_mark(qubit, axis, coin);
}

Dme2Trajectory dme2_single(const DmeConfig& cfg, const QmeMask& mask) {
  validate(cfg);
  if (static_cast<int>(mask.size()) != cfg.steps) {
    throw ConfigError("dme2_single: mask length " + std::to_string(mask.size()) +
                      " != steps " + std::to_string(cfg.steps));
  }
  const CMatrix u = swap_pow_matrix(cfg.delta());
  const CMatrix flip = qme_flip(resolve_qme_axis(cfg));
  std::vector<CMatrix> joints{kron(cfg.sigma_in.mat(), cfg.rho_in.mat())};
  for (int n = 0; n < cfg.steps; ++n) {
    CMatrix next = conj_by(u, joints.back());
    if (mask[n]) next = conj_by(flip, next);
    joints.push_back(std::move(next));
  }
  return marginals(std::move(joints), is_mixed(cfg.rho_in));
}

Dme2Trajectory dme2_enumerate(const DmeConfig& cfg) {
  validate(cfg);
  if (cfg.steps > kMaxEnumerateSteps) {
    throw GuardError("dme2_enumerate: N=" + std::to_string(cfg.steps) +
                     " exceeds the enumeration limit " + std::to_string(kMaxEnumerateSteps) +
                     "; use sample mode");
  }
  const int n_steps = cfg.steps;
  const CMatrix u = swap_pow_matrix(cfg.delta());
  const CMatrix flip = qme_flip(resolve_qme_axis(cfg));

  // Depth-first walk of the mask tree. The average over full masks at depth n
  // equals the average over the 2^n prefixes, so each node is visited once.
  std::vector<CMatrix> sums(n_steps + 1, CMatrix(4, 4));
  std::vector<CMatrix> stack(n_steps + 1);
  stack[0] = kron(cfg.sigma_in.mat(), cfg.rho_in.mat());
  sums[0] = stack[0];
  std::vector<int> branch(n_steps + 1, -1);
  int depth = 1;
  while (depth >= 1) {
    if (depth > n_steps) {
      --depth;
      continue;
    }
    if (++branch[depth] > 1) {
      branch[depth] = -1;
      --depth;
      continue;
    }
    CMatrix next = conj_by(u, stack[depth - 1]);
    if (branch[depth] == 1) next = conj_by(flip, next);
    sums[depth] += next;
    stack[depth] = std::move(next);
    ++depth;
  }
  std::vector<CMatrix> joints;
  for (int n = 0; n <= n_steps; ++n) {
    CMatrix avg = sums[n];
    avg *= std::ldexp(1.0, -n);
    joints.push_back(std::move(avg));
  }
  return marginals(std::move(joints), is_mixed(cfg.rho_in));
}

Dme2Trajectory dme2_average(const DmeConfig& cfg) {
  validate(cfg);
  const CMatrix u = swap_pow_matrix(cfg.delta());
  const CMatrix flip = qme_flip(resolve_qme_axis(cfg));
  std::vector<CMatrix> joints{kron(cfg.sigma_in.mat(), cfg.rho_in.mat())};
  for (int n = 0; n < cfg.steps; ++n) {
    const CMatrix rotated = conj_by(u, joints.back());
    CMatrix avg = rotated + conj_by(flip, rotated);
    avg *= 0.5;
    joints.push_back(std::move(avg));
  }
  return marginals(std::move(joints), is_mixed(cfg.rho_in));
}

QmeMask sample_mask(int steps, std::uint64_t seed, std::uint64_t index) {
  auto rng = make_rng(seed, index);
  QmeMask m(steps);
  for (int n = 0; n < steps; ++n) m[n] = (rng() >> 63) != 0;
  return m;
}

Dme2Sample dme2_sample(const DmeConfig& cfg, int r, std::uint64_t seed, bool unique) {
  if (r <= 0) throw ConfigError("dme2_sample: r must be positive");
  DmeConfig checked = cfg;
  checked.r = r;
  validate(checked);
  const int n_steps = cfg.steps;
  Dme2Sample out;
  if (unique) {
    if (n_steps > kMaxEnumerateSteps) {
      throw GuardError("dme2_sample: unique sampling limited to N <= " +
                       std::to_string(kMaxEnumerateSteps));
    }
    const std::uint64_t total = std::uint64_t{1} << n_steps;
    if (static_cast<std::uint64_t>(r) > total) {
      throw ConfigError("dme2_sample: r exceeds 2^N distinct masks");
    }
    // Partial Fisher-Yates over mask indices.
    std::vector<std::uint64_t> idx(total);
    for (std::uint64_t i = 0; i < total; ++i) idx[i] = i;
    auto rng = make_rng(seed, 0);
    for (int k = 0; k < r; ++k) {
      const std::uint64_t j = k + uniform_index(rng, total - k);
      std::swap(idx[k], idx[j]);
      QmeMask m(n_steps);
      for (int b = 0; b < n_steps; ++b) m[b] = ((idx[k] >> b) & 1u) != 0;
      out.masks.push_back(std::move(m));
    }
  } else {
    for (int k = 0; k < r; ++k) out.masks.push_back(sample_mask(n_steps, seed, k));
  }

  std::vector<CMatrix> sums(n_steps + 1, CMatrix(4, 4));
  for (const auto& mask : out.masks) {
    const Dme2Trajectory t = dme2_single(cfg, mask);
    for (int n = 0; n <= n_steps; ++n) sums[n] += t.joint[n].mat();
    out.final_joint.push_back(t.joint.back());
  }
  for (auto& s : sums) s *= 1.0 / r;
  out.average = marginals(std::move(sums), is_mixed(cfg.rho_in));
  return out;
}

ErrorBounds error_bounds(double theta, int steps) {
  if (steps < 1) throw ConfigError("error_bounds: steps must be >= 1");
  const double d = theta / steps;
  const double c = std::cos(d), s = std::sin(d);
  ErrorBounds b;
  b.p_discretization = 1.0 - std::pow(c * c, steps);
  b.qme_bound = 2.0 * steps * s * s;
  b.p_asymptote = theta * theta / steps;
  b.qme_asymptote = 2.0 * theta * theta / steps;
  return b;
}

}  // namespace qinstr
