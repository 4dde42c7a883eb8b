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
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qinstr/channels.hpp"
#include "qinstr/qstate.hpp"

namespace qinstr {

// Column k is the outcome distribution for prepared basis state k:
// {{P(0|0), P(0|1)}, {P(1|0), P(1|1)}}.
using Assignment = std::array<std::array<double, 2>, 2>;

struct ReadoutModel {
  std::vector<Assignment> qubits;

  static ReadoutModel ideal(int n_qubits);
  static ReadoutModel symmetric_flip(int n_qubits, double eps);
  int n_qubits() const { return static_cast<int>(qubits.size()); }
};

void validate(const ReadoutModel& rm);

// Maps Z-type Pauli expectations (I, Z per qubit; two-qubit order II, IZ, ZI,
// ZZ) to outcome probabilities (00, 01, 10, 11). Tensor product over qubits.
CMatrix beta_from_readout(const ReadoutModel& rm);

enum class Prerot { kI, kRyMinus90, kRx90 };
std::string_view prerot_name(Prerot r);  // "I", "Ry-90", "Rx90"
Prerot prerot_from_name(std::string_view name);
CMatrix prerot_matrix(Prerot r);

using Setting = std::vector<Prerot>;  // one rotation per qubit
// All 3^n settings, qubit 0 slowest.
std::vector<Setting> all_settings(int n_qubits);

// Born probabilities after the pre-rotation, corrupted by the readout model.
std::vector<double> outcome_probabilities(const CMatrix& rho, const Setting& s,
                                          const ReadoutModel& rm);

struct Counts {
  Setting setting;
  std::vector<std::uint64_t> counts;  // by outcome index, qubit 0 most significant
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;
};

// Multinomial draw; deterministic per seed.
Counts measure_shots(const DensityMatrix& m, const Setting& s, std::uint64_t shots,
                     const ReadoutModel& rm, std::uint64_t seed);

// Observed weight per outcome: counts, or exact probabilities.
struct SettingData {
  Setting setting;
  std::vector<double> weights;
};

SettingData from_counts(const Counts& c);

// POVM element of outcome k under setting s, given the calibration beta.
CMatrix povm_element(const CMatrix& beta, const Setting& s, int outcome);

struct TomographyResult {
  DensityMatrix rho;
  DensityMatrix linear_estimate;     // PSD-clipped least-squares seed
  std::vector<double> nll_history;   // non-increasing
  double nll = 0.0;
};

struct MleOptions {
  int restarts = 4;
  int max_evals = 40000;
};

// Least-squares inversion over the Pauli basis; falls back to the maximally
// mixed state when the design is rank deficient.
CMatrix linear_inversion(const std::vector<SettingData>& data, const CMatrix& beta);

// Maximum-likelihood state with rho = T T^dagger / Tr(T T^dagger), T lower
// triangular. Requires every setting of all_settings(n).
TomographyResult state_tomography(const std::vector<SettingData>& data, const CMatrix& beta,
                                  const MleOptions& opt = {});

// Convenience: measure every setting (shots > 0) or use exact probabilities
// (shots == 0) and reconstruct. `correct_readout` selects the calibrated beta
// over the ideal one.
TomographyResult tomograph(const DensityMatrix& m, std::uint64_t shots, const ReadoutModel& rm,
                           std::uint64_t seed, bool correct_readout = true,
                           const MleOptions& opt = {});

struct ProcessMap {
  CMatrix chi;  // Pauli basis I, X, Y, Z (tensor order for 2 qubits), Tr chi = 1
  bool cptp_projected = false;
  int iterations = 0;
};

// Input order: |0>, |1>, |+>, |+i>.
const std::vector<std::string>& process_input_names();

// chi from the four mapped outputs.
ProcessMap process_tomography(const std::vector<CMatrix>& outputs);

CMatrix choi_from_chi(const CMatrix& chi);
CMatrix chi_from_choi(const CMatrix& choi);
ProcessMap chi_of_channel(const KrausChannel& c);
ProcessMap chi_of_superoperator(const CMatrix& s, std::size_t dim);

struct CptpProjectOptions {
  double tol = 1e-9;
  int max_iter = 10000;
};

// Dykstra alternating projections between the PSD cone and the
// trace-preserving affine set in Choi space. Throws NumericalError when the
// iteration budget is exhausted.
ProcessMap cptp_project(const ProcessMap& p, const CptpProjectOptions& opt = {});

// Trace-preservation residual and minimum Choi eigenvalue of a chi matrix.
CptpReport chi_cptp_report(const ProcessMap& p);

double process_fidelity(const ProcessMap& a, const ProcessMap& b);
double gate_fidelity(double process_fidelity, int dim);
double gate_fidelity(const ProcessMap& a, const ProcessMap& b);

}  // namespace qinstr
