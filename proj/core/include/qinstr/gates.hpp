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

#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "qinstr/linalg.hpp"

namespace qinstr {

inline constexpr double kT1qbNs = 30.0;
inline constexpr double kTczNs = 60.0;

enum class GateKind { kPhasedX, kVirtualZ, kH, kCZ, kCZGeneral, kCNOT, kSwapPow, kQmeMark };

std::string_view kind_name(GateKind k);
GateKind kind_from_name(std::string_view name);
// 1 or 2.
int kind_arity(GateKind k);

using Axis = std::array<double, 3>;

// Parameter layout per kind:
//   PhasedX     {theta, phi}          = Rz(-phi) Rx(theta) Rz(phi)
//   VirtualZ    {phi}                 = Rz(phi), zero duration
//   H, CZ       {}
//   CZGeneral   {phi01, phi10, phi11} = diag(1, e^{i phi01}, e^{i phi10}, e^{i phi11})
//   CNOT        {}                    qubits = {control, target}
//   SwapPow     {delta}               = exp(-i delta SWAP)
//   QmeMark     {nx, ny, nz, coin}    coin != 0 -> R_n(pi), else identity
// Two-qubit matrices use qubits[0] as the more significant factor.
struct GateOp {
  GateKind kind = GateKind::kPhasedX;
  std::vector<double> params;
  std::vector<int> qubits;
  double dur_ns = 0.0;

  static GateOp phased_x(int q, double theta, double phi, double dur_ns = kT1qbNs);
  static GateOp virtual_z(int q, double phi);
  static GateOp hadamard(int q, double dur_ns = kT1qbNs);
  static GateOp cz(int a, int b, double dur_ns = kTczNs);
  static GateOp cz_general(int a, int b, double phi01, double phi10, double phi11,
                           double dur_ns = kTczNs);
  static GateOp cnot(int control, int target);
  static GateOp swap_pow(int a, int b, double delta);
  static GateOp qme_mark(int q, const Axis& axis, bool coin, double dur_ns = kT1qbNs);

  bool is_single_qubit() const { return qubits.size() == 1; }
};

// Throws ConfigError when params or qubit arity do not match the kind.
void validate_gate(const GateOp& g);

CMatrix unitary_of(const GateOp& g);

// exp(-i (angle/2) n.sigma); throws ConfigError for |n| != 1 (1e-9).
CMatrix rotation(const Axis& axis, double angle);
CMatrix rx(double angle);
CMatrix ry(double angle);
CMatrix rz(double angle);
CMatrix hadamard();
CMatrix phased_x_matrix(double theta, double phi);
CMatrix swap_pow_matrix(double delta);

}  // namespace qinstr
