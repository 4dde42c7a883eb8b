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

#include <optional>
#include <string>
#include <string_view>

#include "qinstr/linalg.hpp"

namespace qinstr {

inline constexpr double kStateTol = 1e-9;
// Largest negative eigenvalue that repair_density() will silently clip.
inline constexpr double kRepairLimit = 1e-7;

struct ValidationReport {
  double hermitian_residual = 0.0;  // max |M - M^dagger|
  double trace_residual = 0.0;      // |Tr M - 1|
  double min_eigenvalue = 0.0;
  bool ok(double tol = kStateTol) const {
    return hermitian_residual <= tol && trace_residual <= tol && min_eigenvalue >= -tol;
  }
};

ValidationReport validate_density(const CMatrix& m);

// Hermitian, unit-trace, PSD operator on one or two qubits.
class DensityMatrix {
 public:
  DensityMatrix() = default;
  // Throws ConfigError unless `m` passes validate_density at kStateTol.
  explicit DensityMatrix(CMatrix m, std::optional<std::string> label = std::nullopt);

  // Skip validation; for internal hot loops whose inputs are valid by construction.
  static DensityMatrix trusted(CMatrix m);

  const CMatrix& mat() const { return mat_; }
  std::size_t dim() const { return mat_.rows(); }
  const std::optional<std::string>& label() const { return label_; }
  double purity() const;

 private:
  CMatrix mat_;
  std::optional<std::string> label_;
};

// Eigenvalue clipping + renormalization for matrices whose negative
// eigenvalues are above -kRepairLimit. Logs the repair magnitude. Throws
// NumericalError for anything worse.
DensityMatrix repair_density(const CMatrix& m);

// Names: "0", "1", "+", "-", "+i", "-i". The unicode minus is accepted too.
DensityMatrix pure_state(std::string_view name);
// Ket for the same names.
std::vector<cplx> pure_ket(std::string_view name);
// The six cardinal names in a fixed order.
const std::vector<std::string>& cardinal_names();

DensityMatrix maximally_mixed(std::size_t dim);
DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);
DensityMatrix reduce(const DensityMatrix& joint, Subsystem keep);

double state_fidelity(const DensityMatrix& a, const DensityMatrix& b);
// (Tr sqrt(sqrt(a) b sqrt(a)))^2 for PSD operators of any dimension; negative
// rounding in the spectrum of `a` is clipped, no normalization applied.
double uhlmann_fidelity(const CMatrix& a, const CMatrix& b);
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);
// Natural logarithm; 0 ln 0 = 0.
double von_neumann_entropy(const DensityMatrix& m);
double mutual_information(const DensityMatrix& omega);
double concurrence(const DensityMatrix& omega);

struct BlochVector {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  double norm() const;
};

BlochVector bloch(const DensityMatrix& m);
DensityMatrix from_bloch(const BlochVector& v);

}  // namespace qinstr
