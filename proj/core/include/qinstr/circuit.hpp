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

#include <string>
#include <utility>
#include <vector>

#include "qinstr/dme.hpp"
#include "qinstr/gates.hpp"

namespace qinstr {

// Gates executed in parallel. A zero-duration VirtualZ may share a moment
// with one other single-qubit gate on the same qubit and is applied first.
struct Moment {
  std::vector<GateOp> ops;
  std::string tag;

  double duration_ns() const;
  bool has_two_qubit_gate() const;
};

struct Circuit {
  int qubit_count = 2;
  std::vector<Moment> moments;
};

// Throws ConfigError for overlapping qubits or out-of-range indices.
void validate_moment(const Moment& m, int qubit_count);

// Unitary of `u` acting on `qubits` (qubits[0] most significant) inside an
// n-qubit register where qubit 0 is most significant.
CMatrix embed(const CMatrix& u, const std::vector<int>& qubits, int n_qubits);

CMatrix moment_unitary(const Moment& m, int qubit_count);
CMatrix circuit_unitary(const Circuit& c);
std::size_t depth(const Circuit& c);
std::size_t count_kind(const Circuit& c, GateKind kind);

struct ZxzAngles {
  double theta = 0.0;  // PhasedX rotation angle, in [0, pi]
  double phi = 0.0;    // PhasedX axis phase
  double psi = 0.0;    // VirtualZ angle, applied first
};

// u ~ PhasedX(theta, phi) * Rz(psi) up to global phase.
ZxzAngles solve_zxz(const CMatrix& u);

// Product of a time-ordered run of one-qubit gates as (PhasedX, VirtualZ).
// An empty run yields the identity pair.
std::pair<GateOp, GateOp> merge_single_qubit_run(const std::vector<GateOp>& gates, int qubit);
std::pair<GateOp, GateOp> merge_unitary(const CMatrix& u, int qubit);

// The four single-qubit layers of the 3-CZ exp(-i delta SWAP) circuit as
// 2x2 matrices per qubit: layers[l][q].
std::vector<std::vector<CMatrix>> dswap_layers(double delta);

// L1 CZ L2 CZ L3 CZ L4, each layer in canonical (VirtualZ, PhasedX) form.
Circuit decompose_dswap(double delta);

// N compiled steps with QME gates; L4(n), QME(n) and L1(n+1) share one
// merged layer. 6N + 1 moments.
Circuit build_dme2_circuit(const DmeConfig& cfg, const QmeMask& mask);

// Same protocol without layer merging: 8 moments per step (7 + QME).
Circuit build_dme2_circuit_unmerged(const DmeConfig& cfg, const QmeMask& mask);

// Exact state evolution rho -> U rho U^dagger moment by moment.
CMatrix simulate_circuit(const Circuit& c, const CMatrix& rho);

}  // namespace qinstr
