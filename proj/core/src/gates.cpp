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

#include "qinstr/gates.hpp"

#include <cmath>
#include <string>

#include "qinstr/errors.hpp"

namespace qinstr {
namespace {

constexpr std::array<std::pair<GateKind, std::string_view>, 8> kNames = {{
    {GateKind::kPhasedX, "PhasedX"},
    {GateKind::kVirtualZ, "VirtualZ"},
    {GateKind::kH, "H"},
    {GateKind::kCZ, "CZ"},
    {GateKind::kCZGeneral, "CZGeneral"},
    {GateKind::kCNOT, "CNOT"},
    {GateKind::kSwapPow, "SwapPow"},
    {GateKind::kQmeMark, "QmeMark"},
}};

std::size_t param_count(GateKind k) {
  switch (k) {
    case GateKind::kPhasedX: return 2;
    case GateKind::kVirtualZ: return 1;
    case GateKind::kH:
    case GateKind::kCZ:
    case GateKind::kCNOT: return 0;
    case GateKind::kCZGeneral: return 3;
    case GateKind::kSwapPow: return 1;
    case GateKind::kQmeMark: return 4;
  }
  return 0;
}

}  // namespace

std::string_view kind_name(GateKind k) {
  for (const auto& [kind, name] : kNames)
    if (kind == k) return name;
  return "?";
}

GateKind kind_from_name(std::string_view name) {
  for (const auto& [kind, n] : kNames)
    if (n == name) return kind;
  throw ConfigError("unknown gate kind '" + std::string(name) + "'");
}

int kind_arity(GateKind k) {
  switch (k) {
    case GateKind::kCZ:
    case GateKind::kCZGeneral:
    case GateKind::kCNOT:
    case GateKind::kSwapPow: return 2;
    default: return 1;
  }
}

GateOp GateOp::phased_x(int q, double theta, double phi, double dur_ns) {
  return {GateKind::kPhasedX, {theta, phi}, {q}, dur_ns};
}
GateOp GateOp::virtual_z(int q, double phi) { return {GateKind::kVirtualZ, {phi}, {q}, 0.0}; }
GateOp GateOp::hadamard(int q, double dur_ns) { return {GateKind::kH, {}, {q}, dur_ns}; }
GateOp GateOp::cz(int a, int b, double dur_ns) { return {GateKind::kCZ, {}, {a, b}, dur_ns}; }
GateOp GateOp::cz_general(int a, int b, double phi01, double phi10, double phi11, double dur_ns) {
  return {GateKind::kCZGeneral, {phi01, phi10, phi11}, {a, b}, dur_ns};
}
GateOp GateOp::cnot(int control, int target) {
  return {GateKind::kCNOT, {}, {control, target}, 0.0};
}
GateOp GateOp::swap_pow(int a, int b, double delta) {
  return {GateKind::kSwapPow, {delta}, {a, b}, 0.0};
}
GateOp GateOp::qme_mark(int q, const Axis& axis, bool coin, double dur_ns) {
  return {GateKind::kQmeMark, {axis[0], axis[1], axis[2], coin ? 1.0 : 0.0}, {q}, dur_ns};
}

void validate_gate(const GateOp& g) {
  if (g.params.size() != param_count(g.kind)) {
    throw ConfigError(std::string(kind_name(g.kind)) + ": expected " +
                      std::to_string(param_count(g.kind)) + " params, got " +
                      std::to_string(g.params.size()));
  }
  if (static_cast<int>(g.qubits.size()) != kind_arity(g.kind)) {
    throw ConfigError(std::string(kind_name(g.kind)) + ": wrong qubit count");
  }
  if (g.qubits.size() == 2 && g.qubits[0] == g.qubits[1]) {
    throw ConfigError(std::string(kind_name(g.kind)) + ": repeated qubit");
  }
  for (int q : g.qubits)
    if (q < 0) throw ConfigError("negative qubit index");
  if (g.dur_ns < 0.0) throw ConfigError("negative gate duration");
  if (g.kind == GateKind::kQmeMark) {
    const auto& p = g.params;
    if (std::abs(std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]) - 1.0) > 1e-9) {
      throw ConfigError("QmeMark: axis is not a unit vector");
    }
  }
}

CMatrix rotation(const Axis& n, double angle) {
  const double len = std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]);
  if (std::abs(len - 1.0) > 1e-9) throw ConfigError("rotation: axis is not a unit vector");
  const double c = std::cos(angle / 2), s = std::sin(angle / 2);
  const cplx i{0.0, 1.0};
  // c I - i s (nx X + ny Y + nz Z)
  return CMatrix(2, 2,
                 {c - i * s * n[2], -i * s * cplx{n[0], -n[1]},  //
                  -i * s * cplx{n[0], n[1]}, c + i * s * n[2]});
}

CMatrix rx(double angle) { return rotation({1, 0, 0}, angle); }
CMatrix ry(double angle) { return rotation({0, 1, 0}, angle); }
CMatrix rz(double angle) { return rotation({0, 0, 1}, angle); }

CMatrix hadamard() {
  const double s = 1.0 / std::sqrt(2.0);
  return CMatrix(2, 2, {s, s, s, -s});
}

CMatrix phased_x_matrix(double theta, double phi) { return rz(-phi) * rx(theta) * rz(phi); }

CMatrix swap_pow_matrix(double delta) {
  CMatrix u = CMatrix::identity(4);
  u *= std::cos(delta);
  CMatrix s = swap_matrix();
  s *= cplx{0.0, -std::sin(delta)};
  return u + s;
}

CMatrix unitary_of(const GateOp& g) {
  validate_gate(g);
  const auto& p = g.params;
  const cplx i{0.0, 1.0};
  switch (g.kind) {
    case GateKind::kPhasedX: return phased_x_matrix(p[0], p[1]);
    case GateKind::kVirtualZ: return rz(p[0]);
    case GateKind::kH: return hadamard();
    case GateKind::kCZ: {
      const cplx d[4] = {1, 1, 1, -1};
      return CMatrix::diagonal(std::span<const cplx>(d));
    }
    case GateKind::kCZGeneral: {
      const cplx d[4] = {1, std::exp(i * p[0]), std::exp(i * p[1]), std::exp(i * p[2])};
      return CMatrix::diagonal(std::span<const cplx>(d));
    }
    case GateKind::kCNOT:
      return CMatrix(4, 4, {1, 0, 0, 0,  //
                            0, 1, 0, 0,  //
                            0, 0, 0, 1,  //
                            0, 0, 1, 0});
    case GateKind::kSwapPow: return swap_pow_matrix(p[0]);
    case GateKind::kQmeMark:
      return p[3] != 0.0 ? rotation({p[0], p[1], p[2]}, M_PI) : CMatrix::identity(2);
  }
  throw ConfigError("unitary_of: unknown gate kind");
}

}  // namespace qinstr
