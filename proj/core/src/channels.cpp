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

#include "qinstr/channels.hpp"

#include <cmath>
#include <string>

#include "qinstr/errors.hpp"

namespace qinstr {
namespace {

void require_dim(const KrausChannel& c, std::size_t d, const char* what) {
  if (c.dim != d) {
    throw ConfigError(std::string(what) + ": channel dimension " + std::to_string(c.dim) +
                      " does not match " + std::to_string(d));
  }
}

CMatrix lift(const CMatrix& k, int qubit, int n_qubits) {
  if (qubit < 0 || qubit >= n_qubits) throw ConfigError("lift: qubit index out of range");
  CMatrix out = CMatrix::identity(1);
  for (int q = 0; q < n_qubits; ++q) out = kron(out, q == qubit ? k : CMatrix::identity(2));
  return out;
}

}  // namespace

KrausChannel identity_channel(std::size_t dim) { return {{CMatrix::identity(dim)}, dim}; }

KrausChannel unitary_channel(const CMatrix& u) {
  if (!u.is_square()) throw ConfigError("unitary_channel: non-square matrix");
  return {{u}, u.rows()};
}

KrausChannel amplitude_damping(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw ConfigError("amplitude_damping: p=" + std::to_string(p) + " outside [0,1]");
  }
  return {{CMatrix(2, 2, {1, 0, 0, std::sqrt(1 - p)}), CMatrix(2, 2, {0, std::sqrt(p), 0, 0})}, 2};
}

KrausChannel decoherence_channel(double gamma1, double gamma_phi, double t) {
  if (gamma1 < 0 || gamma_phi < 0 || t < 0) {
    throw ConfigError("decoherence_channel: rates and duration must be non-negative");
  }
  const double e1 = std::exp(-gamma1 * t);
  const double ep = std::exp(-gamma_phi * t);
  const CMatrix a[2] = {CMatrix(2, 2, {1, 0, 0, std::exp(-gamma1 * t / 2)}),
                        CMatrix(2, 2, {0, std::sqrt(1 - e1), 0, 0})};
  const CMatrix d[3] = {CMatrix(2, 2, {std::exp(-gamma_phi * t / 2), 0, 0,
                                       std::exp(-gamma_phi * t / 2)}),
                        CMatrix(2, 2, {std::sqrt(1 - ep), 0, 0, 0}),
                        CMatrix(2, 2, {0, 0, 0, std::sqrt(1 - ep)})};
  KrausChannel out{{}, 2};
  for (const auto& ai : a)
    for (const auto& dj : d) out.kraus.push_back(dj * ai);
  return out;
}

KrausChannel conjugate(const KrausChannel& c, const CMatrix& v) {
  require_dim(c, v.rows(), "conjugate");
  KrausChannel out{{}, c.dim};
  const CMatrix vd = v.adjoint();
  for (const auto& k : c.kraus) out.kraus.push_back(v * k * vd);
  return out;
}

KrausChannel compose(const KrausChannel& first, const KrausChannel& second) {
  require_dim(second, first.dim, "compose");
  KrausChannel out{{}, first.dim};
  for (const auto& k1 : first.kraus)
    for (const auto& k2 : second.kraus) out.kraus.push_back(k2 * k1);
  return out;
}

CMatrix apply(const KrausChannel& c, const CMatrix& m) {
  require_dim(c, m.rows(), "apply");
  CMatrix out(c.dim, c.dim);
  for (const auto& k : c.kraus) out += k * m * k.adjoint();
  return out;
}

DensityMatrix apply(const KrausChannel& c, const DensityMatrix& m) {
  return DensityMatrix::trusted(apply(c, m.mat()));
}

CMatrix apply_on(const KrausChannel& c, const CMatrix& m, int qubit, int n_qubits) {
  require_dim(c, 2, "apply_on");
  if (m.rows() != (std::size_t{1} << n_qubits)) throw ConfigError("apply_on: dimension mismatch");
  CMatrix out(m.rows(), m.cols());
  for (const auto& k : c.kraus) {
    const CMatrix big = lift(k, qubit, n_qubits);
    out += big * m * big.adjoint();
  }
  return out;
}

CMatrix choi(const KrausChannel& c) {
  const std::size_t d = c.dim;
  CMatrix j(d * d, d * d);
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = 0; b < d; ++b) {
      CMatrix e(d, d);
      e(a, b) = 1.0;
      const CMatrix img = apply(c, e);
      for (std::size_t r = 0; r < d; ++r)
        for (std::size_t s = 0; s < d; ++s) j(a * d + r, b * d + s) = img(r, s);
    }
  }
  return j;
}

CMatrix apply_choi(const CMatrix& j, const CMatrix& x) {
  const std::size_t d = x.rows();
  if (j.rows() != d * d) throw ConfigError("apply_choi: dimension mismatch");
  CMatrix out(d, d);
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b) {
      const cplx xab = x(a, b);
      if (xab == cplx{}) continue;
      for (std::size_t r = 0; r < d; ++r)
        for (std::size_t s = 0; s < d; ++s) out(r, s) += xab * j(a * d + r, b * d + s);
    }
  return out;
}

CptpReport is_cptp(const KrausChannel& c) {
  CMatrix sum(c.dim, c.dim);
  for (const auto& k : c.kraus) sum += k.adjoint() * k;
  CptpReport r;
  r.tp_residual = max_abs_diff(sum, CMatrix::identity(c.dim));
  CMatrix j = choi(c);
  CMatrix jh = j + j.adjoint();
  jh *= 0.5;
  r.min_choi_eigenvalue = herm_eig(jh).values.front();
  return r;
}

CMatrix superoperator(const KrausChannel& c) {
  CMatrix s(c.dim * c.dim, c.dim * c.dim);
  for (const auto& k : c.kraus) s += kron(k, k.conj());
  return s;
}

CMatrix unitary_superoperator(const CMatrix& u) { return kron(u, u.conj()); }

std::vector<cplx> vec_rows(const CMatrix& m) {
  return std::vector<cplx>(m.data().begin(), m.data().end());
}

CMatrix unvec_rows(std::span<const cplx> v, std::size_t dim) {
  if (v.size() != dim * dim) throw ConfigError("unvec_rows: size mismatch");
  CMatrix m(dim, dim);
  std::copy(v.begin(), v.end(), m.data().begin());
  return m;
}

CMatrix apply_superoperator(const CMatrix& s, const CMatrix& m) {
  const auto out = qinstr::apply(s, vec_rows(m));
  return unvec_rows(out, m.rows());
}

CMatrix lifted_superoperator(const KrausChannel& c, int qubit, int n_qubits) {
  require_dim(c, 2, "lifted_superoperator");
  KrausChannel big{{}, std::size_t{1} << n_qubits};
  for (const auto& k : c.kraus) big.kraus.push_back(lift(k, qubit, n_qubits));
  return superoperator(big);
}

}  // namespace qinstr
