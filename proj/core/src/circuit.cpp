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

#include "qinstr/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qinstr/errors.hpp"

namespace qinstr {
namespace {

constexpr double kAngleEps = 1e-12;

double wrap(double a) {
  a = std::remainder(a, 2.0 * M_PI);
  if (a <= -M_PI) a += 2.0 * M_PI;
  if (std::abs(a) < kAngleEps) a = 0.0;
  return a;
}

std::string step_tag(int step, const char* what) {
  return "step" + std::to_string(step) + ":" + what;
}

Moment layer_moment(const std::vector<CMatrix>& per_qubit, std::string tag) {
  Moment m;
  m.tag = std::move(tag);
  for (int q = 0; q < static_cast<int>(per_qubit.size()); ++q) {
    auto [px, vz] = merge_unitary(per_qubit[q], q);
    m.ops.push_back(vz);
    m.ops.push_back(px);
  }
  return m;
}

Moment cz_moment(std::string tag) {
  Moment m;
  m.tag = std::move(tag);
  m.ops.push_back(GateOp::cz(0, 1));
  return m;
}

}  // namespace

double Moment::duration_ns() const {
  double d = 0.0;
  for (const auto& g : ops) d = std::max(d, g.dur_ns);
  return d;
}

bool Moment::has_two_qubit_gate() const {
  return std::any_of(ops.begin(), ops.end(), [](const GateOp& g) { return g.qubits.size() == 2; });
}

void validate_moment(const Moment& m, int qubit_count) {
  std::vector<int> full(qubit_count, 0), vz(qubit_count, 0);
  for (const auto& g : m.ops) {
    validate_gate(g);
    for (int q : g.qubits) {
      if (q >= qubit_count) {
        throw ConfigError("moment '" + m.tag + "': qubit " + std::to_string(q) +
                          " out of range");
      }
      if (g.kind == GateKind::kVirtualZ) {
        if (++vz[q] > 1) throw ConfigError("moment '" + m.tag + "': two VirtualZ on one qubit");
      } else if (++full[q] > 1) {
        throw ConfigError("moment '" + m.tag + "': qubit " + std::to_string(q) +
                          " used twice");
      }
      if (vz[q] && full[q] && g.qubits.size() == 2) {
        throw ConfigError("moment '" + m.tag + "': VirtualZ shares a qubit with a 2q gate");
      }
    }
  }
}

CMatrix embed(const CMatrix& u, const std::vector<int>& qubits, int n_qubits) {
  const std::size_t k = qubits.size();
  const std::size_t dim = std::size_t{1} << n_qubits;
  if (u.rows() != (std::size_t{1} << k)) throw ConfigError("embed: gate dimension mismatch");
  if (k == static_cast<std::size_t>(n_qubits)) {
    bool ordered = true;
    for (std::size_t i = 0; i < k; ++i) ordered = ordered && qubits[i] == static_cast<int>(i);
    if (ordered) return u;
  }
  auto bit = [&](std::size_t idx, int q) { return (idx >> (n_qubits - 1 - q)) & 1u; };
  CMatrix out(dim, dim);
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) {
      bool spectator_match = true;
      for (int q = 0; q < n_qubits && spectator_match; ++q) {
        if (std::find(qubits.begin(), qubits.end(), q) == qubits.end())
          spectator_match = bit(r, q) == bit(c, q);
      }
      if (!spectator_match) continue;
      std::size_t ur = 0, uc = 0;
      for (std::size_t i = 0; i < k; ++i) {
        ur = (ur << 1) | bit(r, qubits[i]);
        uc = (uc << 1) | bit(c, qubits[i]);
      }
      out(r, c) = u(ur, uc);
    }
  }
  return out;
}

CMatrix moment_unitary(const Moment& m, int qubit_count) {
  validate_moment(m, qubit_count);
  const std::size_t dim = std::size_t{1} << qubit_count;
  CMatrix u = CMatrix::identity(dim);
  // VirtualZ first, then the remaining gates (they act on disjoint qubits).
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& g : m.ops) {
      if ((g.kind == GateKind::kVirtualZ) != (pass == 0)) continue;
      u = embed(unitary_of(g), g.qubits, qubit_count) * u;
    }
  }
  return u;
}

CMatrix circuit_unitary(const Circuit& c) {
  CMatrix u = CMatrix::identity(std::size_t{1} << c.qubit_count);
  for (const auto& m : c.moments) u = moment_unitary(m, c.qubit_count) * u;
  return u;
}

std::size_t depth(const Circuit& c) {
  return static_cast<std::size_t>(std::count_if(c.moments.begin(), c.moments.end(),
                                                [](const Moment& m) { return !m.ops.empty(); }));
}

std::size_t count_kind(const Circuit& c, GateKind kind) {
  std::size_t n = 0;
  for (const auto& m : c.moments)
    for (const auto& g : m.ops) n += g.kind == kind;
  return n;
}

ZxzAngles solve_zxz(const CMatrix& u) {
  if (u.rows() != 2 || u.cols() != 2) throw ConfigError("solve_zxz: expected a 2x2 unitary");
  const cplx det = u(0, 0) * u(1, 1) - u(0, 1) * u(1, 0);
  const cplx s = std::sqrt(det);
  const cplx w00 = u(0, 0) / s, w10 = u(1, 0) / s;
  // w ~ Rz(a) Rx(b) Rz(c).
  const double b = 2.0 * std::atan2(std::abs(w10), std::abs(w00));
  double a = 0.0, c = 0.0;
  if (std::abs(w10) < 1e-12) {
    c = -2.0 * std::arg(w00);
  } else if (std::abs(w00) < 1e-12) {
    a = 2.0 * (std::arg(w10) + M_PI / 2);
  } else {
    const double sum = -2.0 * std::arg(w00);
    const double diff = 2.0 * (std::arg(w10) + M_PI / 2);
    a = 0.5 * (sum + diff);
    c = 0.5 * (sum - diff);
  }
  ZxzAngles z;
  z.theta = b < kAngleEps ? 0.0 : b;
  if (z.theta == 0.0) {
    z.phi = 0.0;
    z.psi = wrap(a + c);
  } else {
    z.phi = wrap(-a);
    z.psi = wrap(a + c);
  }
  return z;
}

std::pair<GateOp, GateOp> merge_unitary(const CMatrix& u, int qubit) {
  const ZxzAngles z = solve_zxz(u);
  return {GateOp::phased_x(qubit, z.theta, z.phi), GateOp::virtual_z(qubit, z.psi)};
}

std::pair<GateOp, GateOp> merge_single_qubit_run(const std::vector<GateOp>& gates, int qubit) {
  CMatrix u = CMatrix::identity(2);
  for (const auto& g : gates) {
    if (g.qubits.size() != 1 || g.qubits[0] != qubit) {
      throw ConfigError("merge_single_qubit_run: gate '" + std::string(kind_name(g.kind)) +
                        "' does not act on qubit " + std::to_string(qubit) + " alone");
    }
    u = unitary_of(g) * u;
  }
  return merge_unitary(u, qubit);
}

std::vector<std::vector<CMatrix>> dswap_layers(double delta) {
  // exp(-i delta SWAP) = e^{-i delta/2} exp(-i (delta/2)(XX + YY + ZZ)); the
  // three-CNOT circuit with a = b = c = delta/2, CNOTs rewritten as H CZ H.
  const double a = delta / 2, b = delta / 2, c = delta / 2;
  const CMatrix h = hadamard();
  return {
      {h, rz(-M_PI / 2)},
      {rz(2 * c - M_PI / 2) * h, h * ry(M_PI / 2 - 2 * a)},
      {h, ry(2 * b - M_PI / 2) * h},
      {rz(M_PI / 2) * h, CMatrix::identity(2)},
  };
}

Circuit decompose_dswap(double delta) {
  const auto layers = dswap_layers(delta);
  Circuit c;
  c.qubit_count = 2;
  c.moments.push_back(layer_moment(layers[0], "L1"));
  c.moments.push_back(cz_moment("CZ1"));
  c.moments.push_back(layer_moment(layers[1], "L2"));
  c.moments.push_back(cz_moment("CZ2"));
  c.moments.push_back(layer_moment(layers[2], "L3"));
  c.moments.push_back(cz_moment("CZ3"));
  c.moments.push_back(layer_moment(layers[3], "L4"));
  return c;
}

namespace {

CMatrix qme_unitary(const Axis& axis, bool coin) { return unitary_of(qme_gate(axis, coin)); }

void check_mask(const DmeConfig& cfg, const QmeMask& mask) {
  validate(cfg);
  if (static_cast<int>(mask.size()) != cfg.steps) {
    throw ConfigError("build_dme2_circuit: mask length " + std::to_string(mask.size()) +
                      " != steps " + std::to_string(cfg.steps));
  }
}

}  // namespace

Circuit build_dme2_circuit(const DmeConfig& cfg, const QmeMask& mask) {
  check_mask(cfg, mask);
  const Axis axis = resolve_qme_axis(cfg);
  const auto layers = dswap_layers(cfg.delta());
  Circuit c;
  c.qubit_count = 2;
  c.moments.push_back(layer_moment(layers[0], step_tag(1, "L1")));
  for (int n = 1; n <= cfg.steps; ++n) {
    c.moments.push_back(cz_moment(step_tag(n, "CZ1")));
    c.moments.push_back(layer_moment(layers[1], step_tag(n, "L2")));
    c.moments.push_back(cz_moment(step_tag(n, "CZ2")));
    c.moments.push_back(layer_moment(layers[2], step_tag(n, "L3")));
    c.moments.push_back(cz_moment(step_tag(n, "CZ3")));
    std::vector<CMatrix> merged = layers[3];
    merged[kInstructionQubit] = qme_unitary(axis, mask[n - 1]) * merged[kInstructionQubit];
    if (n < cfg.steps) {
      for (int q = 0; q < 2; ++q) merged[q] = layers[0][q] * merged[q];
      c.moments.push_back(layer_moment(merged, step_tag(n, "L4+QME+L1")));
    } else {
      c.moments.push_back(layer_moment(merged, step_tag(n, "L4+QME")));
    }
  }
  return c;
}

Circuit build_dme2_circuit_unmerged(const DmeConfig& cfg, const QmeMask& mask) {
  check_mask(cfg, mask);
  const Axis axis = resolve_qme_axis(cfg);
  Circuit c;
  c.qubit_count = 2;
  for (int n = 1; n <= cfg.steps; ++n) {
    Circuit step = decompose_dswap(cfg.delta());
    for (auto& m : step.moments) {
      m.tag = step_tag(n, m.tag.c_str());
      c.moments.push_back(std::move(m));
    }
    Moment q;
    q.tag = step_tag(n, "QME");
    q.ops.push_back(qme_gate(axis, mask[n - 1]));
    c.moments.push_back(std::move(q));
  }
  return c;
}

CMatrix simulate_circuit(const Circuit& c, const CMatrix& rho) {
  CMatrix out = rho;
  for (const auto& m : c.moments) {
    const CMatrix u = moment_unitary(m, c.qubit_count);
    out = u * out * u.adjoint();
  }
  return out;
}

}  // namespace qinstr
