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

#include <vector>

#include "qinstr/linalg.hpp"
#include "qinstr/qstate.hpp"

namespace qinstr {

inline constexpr double kTpTol = 1e-10;
inline constexpr double kChoiTol = 1e-9;

// Kraus form of a CPTP map on a `dim`-dimensional space.
struct KrausChannel {
  std::vector<CMatrix> kraus;
  std::size_t dim = 2;
};

struct CptpReport {
  double tp_residual = 0.0;      // max |sum K^dagger K - I|
  double min_choi_eigenvalue = 0.0;
  bool ok(double tp_tol = kTpTol, double cp_tol = kChoiTol) const {
    return tp_residual <= tp_tol && min_choi_eigenvalue >= -cp_tol;
  }
};

KrausChannel identity_channel(std::size_t dim);
KrausChannel unitary_channel(const CMatrix& u);

// A1 = diag(1, sqrt(1-p)), A2 = sqrt(p)|0><1|.
KrausChannel amplitude_damping(double p);

// Amplitude damping (A_i(t)) composed with pure dephasing (D_j(t)); products
// D_j A_i enumerated with i outer, j inner. Rates in 1/s, t in s. Infinite
// lifetimes are expressed as zero rates.
KrausChannel decoherence_channel(double gamma1, double gamma_phi, double t);

// Basis change: every Kraus operator K -> V K V^dagger.
KrausChannel conjugate(const KrausChannel& c, const CMatrix& v);

// Map applying `first` then `second`.
KrausChannel compose(const KrausChannel& first, const KrausChannel& second);

CMatrix apply(const KrausChannel& c, const CMatrix& m);
DensityMatrix apply(const KrausChannel& c, const DensityMatrix& m);

// Apply a single-qubit channel to `qubit` of an n-qubit operator (qubit 0 is
// the most significant factor). Kraus operators are lifted on the fly.
CMatrix apply_on(const KrausChannel& c, const CMatrix& m, int qubit, int n_qubits);

// Choi matrix J = sum_ij |i><j| (x) E(|i><j|).
CMatrix choi(const KrausChannel& c);
// E(x) from its Choi matrix.
CMatrix apply_choi(const CMatrix& j, const CMatrix& x);

CptpReport is_cptp(const KrausChannel& c);

// Row-major vectorization: vec(A X B) = (A (x) B^T) vec(X).
CMatrix superoperator(const KrausChannel& c);
CMatrix unitary_superoperator(const CMatrix& u);
std::vector<cplx> vec_rows(const CMatrix& m);
CMatrix unvec_rows(std::span<const cplx> v, std::size_t dim);
CMatrix apply_superoperator(const CMatrix& s, const CMatrix& m);
// Superoperator of a single-qubit channel lifted onto `qubit` of n qubits.
CMatrix lifted_superoperator(const KrausChannel& c, int qubit, int n_qubits);

}  // namespace qinstr
