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

#include "qinstr/qstate.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "qinstr/errors.hpp"

namespace qinstr {
namespace {

CMatrix hermitize(const CMatrix& m) {
  CMatrix h = m + m.adjoint();
  h *= 0.5;
  return h;
}

void require_same_dim(const DensityMatrix& a, const DensityMatrix& b, const char* what) {
  if (a.dim() != b.dim()) {
    throw ConfigError(std::string(what) + ": dimension mismatch " + std::to_string(a.dim()) +
                      " vs " + std::to_string(b.dim()));
  }
}

void require_dim(const DensityMatrix& m, std::size_t d, const char* what) {
  if (m.dim() != d) {
    throw ConfigError(std::string(what) + ": expected dimension " + std::to_string(d) + ", got " +
                      std::to_string(m.dim()));
  }
}

}  // namespace

ValidationReport validate_density(const CMatrix& m) {
  ValidationReport r;
  if (!m.is_square() || m.rows() == 0) {
    r.hermitian_residual = INFINITY;
    return r;
  }
  r.hermitian_residual = max_abs_diff(m, m.adjoint());
  r.trace_residual = std::abs(m.trace() - 1.0);
  r.min_eigenvalue = herm_eig(hermitize(m)).values.front();
  return r;
}

DensityMatrix::DensityMatrix(CMatrix m, std::optional<std::string> label)
    : mat_(std::move(m)), label_(std::move(label)) {
  if (!mat_.is_square() || (mat_.rows() != 2 && mat_.rows() != 4)) {
    throw ConfigError("DensityMatrix: expected 2x2 or 4x4, got " + std::to_string(mat_.rows()) +
                      "x" + std::to_string(mat_.cols()));
  }
  const ValidationReport r = validate_density(mat_);
  if (!r.ok()) {
    throw ConfigError("DensityMatrix: invalid state (hermitian residual " +
                      std::to_string(r.hermitian_residual) + ", trace residual " +
                      std::to_string(r.trace_residual) + ", min eigenvalue " +
                      std::to_string(r.min_eigenvalue) + ")");
  }
}

DensityMatrix DensityMatrix::trusted(CMatrix m) {
  DensityMatrix d;
  d.mat_ = std::move(m);
  return d;
}

double DensityMatrix::purity() const { return hs_inner(mat_, mat_).real(); }

DensityMatrix repair_density(const CMatrix& m) {
  const CMatrix h = hermitize(m);
  HermEig eig = herm_eig(h);
  const double worst = eig.values.front();
  if (worst < -kRepairLimit) {
    throw NumericalError("repair_density: eigenvalue " + std::to_string(worst) +
                         " exceeds the repair limit");
  }
  double total = 0.0;
  std::vector<cplx> f(eig.values.size());
  for (std::size_t k = 0; k < f.size(); ++k) {
    const double v = std::max(eig.values[k], 0.0);
    f[k] = v;
    total += v;
  }
  if (total <= 0.0) throw NumericalError("repair_density: zero trace after clipping");
  for (auto& x : f) x /= total;
  CMatrix out = from_spectrum(eig, f);
  const double magnitude = max_abs_diff(out, m);
  if (worst < 0.0 || magnitude > kStateTol) {
    spdlog::debug("repair_density: clipped min eigenvalue {:.3e}, max entry change {:.3e}", worst,
                  magnitude);
  }
  return DensityMatrix::trusted(std::move(out));
}

std::vector<cplx> pure_ket(std::string_view name) {
  const double s = 1.0 / std::sqrt(2.0);
  const cplx i{0.0, 1.0};
  if (name == "0") return {1.0, 0.0};
  if (name == "1") return {0.0, 1.0};
  if (name == "+") return {s, s};
  if (name == "-" || name == "−") return {s, -s};
  if (name == "+i") return {s, s * i};
  if (name == "-i" || name == "−i") return {s, -s * i};
  throw ConfigError("pure_state: unknown state name '" + std::string(name) + "'");
}

DensityMatrix pure_state(std::string_view name) {
  const auto k = pure_ket(name);
  CMatrix m(2, 2);
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) m(r, c) = k[r] * std::conj(k[c]);
  return DensityMatrix(std::move(m), std::string(name));
}

const std::vector<std::string>& cardinal_names() {
  static const std::vector<std::string> names = {"0", "1", "+", "-", "+i", "-i"};
  return names;
}

DensityMatrix maximally_mixed(std::size_t dim) {
  CMatrix m = CMatrix::identity(dim);
  m *= 1.0 / static_cast<double>(dim);
  return DensityMatrix::trusted(std::move(m));
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  return DensityMatrix::trusted(kron(a.mat(), b.mat()));
}

DensityMatrix reduce(const DensityMatrix& joint, Subsystem keep) {
  require_dim(joint, 4, "reduce");
  return DensityMatrix::trusted(partial_trace(joint.mat(), keep));
}

namespace {

// Eigenvalues at roundoff level are zeroed: the square root would lift a
// 1e-17 residue to 3e-9 and spoil rank-deficient (notably pure) inputs.
double floored_root(double lam, double top) {
  constexpr double kEps = std::numeric_limits<double>::epsilon();
  return lam > 64 * kEps * std::max(top, 1.0) ? std::sqrt(lam) : 0.0;
}

CMatrix floored_sqrtm(const CMatrix& h) {
  const HermEig e = herm_eig(h);
  const double top = e.values.empty() ? 0.0 : e.values.back();
  std::vector<cplx> f(e.values.size());
  for (std::size_t k = 0; k < f.size(); ++k) f[k] = floored_root(e.values[k], top);
  return from_spectrum(e, f);
}

// Square roots of the spectrum, descending.
std::vector<double> floored_roots(const CMatrix& h) {
  const std::vector<double> v = herm_eig(h).values;
  const double top = v.empty() ? 0.0 : v.back();
  std::vector<double> out;
  for (auto it = v.rbegin(); it != v.rend(); ++it) out.push_back(floored_root(*it, top));
  return out;
}

}  // namespace

double uhlmann_fidelity(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || !a.is_square() || !b.is_square()) {
    throw ConfigError("uhlmann_fidelity: dimension mismatch");
  }
  const CMatrix sa = floored_sqrtm(hermitize(a));
  double tr = 0.0;
  for (double r : floored_roots(hermitize(sa * b * sa))) tr += r;
  return tr * tr;
}

double state_fidelity(const DensityMatrix& a, const DensityMatrix& b) {
  require_same_dim(a, b, "state_fidelity");
  return std::clamp(uhlmann_fidelity(a.mat(), b.mat()), 0.0, 1.0);
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  require_same_dim(a, b, "trace_distance");
  return 0.5 * trace_norm(hermitize(a.mat() - b.mat()));
}

double von_neumann_entropy(const DensityMatrix& m) {
  double s = 0.0;
  for (double lam : herm_eig(hermitize(m.mat())).values) {
    if (lam > 1e-15) s -= lam * std::log(lam);
  }
  return std::max(s, 0.0);
}

double mutual_information(const DensityMatrix& omega) {
  require_dim(omega, 4, "mutual_information");
  return von_neumann_entropy(reduce(omega, Subsystem::kFirst)) +
         von_neumann_entropy(reduce(omega, Subsystem::kSecond)) - von_neumann_entropy(omega);
}

double concurrence(const DensityMatrix& omega) {
  require_dim(omega, 4, "concurrence");
  const CMatrix yy = kron(pauli::Y(), pauli::Y());
  const CMatrix tilde = yy * omega.mat().conj() * yy;
  const CMatrix s = floored_sqrtm(repair_density(omega.mat()).mat());
  const std::vector<double> lam = floored_roots(hermitize(s * tilde * s));
  return std::max(0.0, lam[0] - lam[1] - lam[2] - lam[3]);
}

double BlochVector::norm() const { return std::sqrt(x * x + y * y + z * z); }

BlochVector bloch(const DensityMatrix& m) {
  require_dim(m, 2, "bloch");
  const CMatrix& r = m.mat();
  return {2.0 * r(0, 1).real(), -2.0 * r(0, 1).imag(), (r(0, 0) - r(1, 1)).real()};
}

DensityMatrix from_bloch(const BlochVector& v) {
  if (v.norm() > 1.0 + kStateTol) throw ConfigError("from_bloch: vector outside the Bloch ball");
  CMatrix m(2, 2, {cplx{0.5 * (1 + v.z), 0}, cplx{0.5 * v.x, -0.5 * v.y},
                   cplx{0.5 * v.x, 0.5 * v.y}, cplx{0.5 * (1 - v.z), 0}});
  return DensityMatrix::trusted(std::move(m));
}

}  // namespace qinstr
