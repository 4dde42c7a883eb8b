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

#include <cstdint>
#include <optional>
#include <vector>

#include "qinstr/noise.hpp"
#include "qinstr/qstate.hpp"
#include "qinstr/tomography.hpp"

namespace qinstr {

// ---- bootstrap -------------------------------------------------------------

struct BootstrapConfig {
  int n_samp = 100;  // resamples averaged into one bootstrap matrix
  int N_samp = 50;   // bootstrap repetitions
  std::uint64_t seed = 0;
};

struct BootstrapResult {
  double mean = 0.0;
  double sigma = 0.0;  // sample standard deviation over repetitions
  std::vector<double> samples;
};

void validate(const BootstrapConfig& cfg);

// Joint (4x4) inputs are reduced to the data qubit before comparison.
BootstrapResult bootstrap_state(const std::vector<DensityMatrix>& dms, const BootstrapConfig& cfg,
                                const DensityMatrix& reference);

// outputs[input][k]: image of process input `input` (order of
// process_input_names) under randomization k. Each repetition resamples
// every input group independently, builds chi and projects it.
BootstrapResult bootstrap_process(const std::vector<std::vector<CMatrix>>& outputs,
                                  const BootstrapConfig& cfg, const ProcessMap& reference);

// ---- randomized benchmarking ----------------------------------------------

struct RbFit {
  double A = 0.0, p = 0.0, B = 0.0;
  double sigma_A = 0.0, sigma_p = 0.0, sigma_B = 0.0;
  double chi2 = 0.0;
};

// Weighted least squares for A p^m + B (weights are 1/variance; empty means
// uniform). Variable projection: A, B solved exactly for each trial p.
RbFit rb_fit(const std::vector<double>& m, const std::vector<double>& survival,
             const std::vector<double>& weights = {});

enum class CliffordMode { k1q, k2q, kInterleaved1q, kInterleaved2q };

struct CliffordErrors {
  double error = 0.0;     // per Clifford, or per interleaved gate
  double fidelity = 0.0;  // 1 - error
};

// 1q: (1/2)(1 - p); 2q: (3/4)(1 - p); interleaved modes normalize p_gate by
// the reference decay p_ref.
CliffordErrors clifford_errors(double p_ref, std::optional<double> p_gate, CliffordMode mode);
// Inverse of the reference formulas.
double decay_from_error(double error, int n_qubits);

// The 24 single-qubit Cliffords (up to phase), identity first.
const std::vector<CMatrix>& clifford_group_1q();

struct RbCurve {
  std::vector<int> lengths;
  std::vector<double> mean;
  std::vector<double> sigma;
};

struct RbNoise {
  std::optional<double> depolarizing;  // lambda applied after every Clifford
  std::optional<NoiseParams> params;   // coherence-limited 30 ns Cliffords on qubit 0
};

RbCurve simulate_rb_1q(const RbNoise& noise, const std::vector<int>& lengths, int k,
                       std::uint64_t seed);

// ---- curve fits ------------------------------------------------------------

struct ExpFit {
  double amplitude = 0.0, tau = 0.0, offset = 0.0;
  bool decay_detected = false;
};

// y = amplitude e^{-x/tau} + offset. decay_detected is false for flat data.
ExpFit fit_exponential(const std::vector<double>& x, const std::vector<double>& y);

struct DampedSineFit {
  double offset = 0.0, cos_amp = 0.0, sin_amp = 0.0;
  double gamma = 0.0;  // decay rate per unit x
  double omega = 0.0;  // angular frequency per unit x
  double rss = 0.0;
  double period() const;
};

// y = offset + e^{-gamma x} (cos_amp cos(omega x) + sin_amp sin(omega x)).
DampedSineFit fit_damped_sine(const std::vector<double>& x, const std::vector<double>& y);

// ---- coherent-error amplification -----------------------------------------

struct PhaseErrors {
  double phi01 = 0.0;
  double phi10 = 0.0;
  double phi11 = 0.0;  // deviation from pi
};

struct AmplificationSeries {
  std::vector<int> cz_count;
  std::vector<double> process_fidelity;
  std::vector<double> gate_fidelity;
  std::optional<DampedSineFit> fit;  // present when an oscillation is resolved
};

// k = 1..2 n_max blocks of (CZ with phase errors, idle single-qubit slot);
// each compared with the error-free CZ^k.
AmplificationSeries cz_phase_error_amplification(const PhaseErrors& err, int n_max,
                                                 const NoiseParams& np);

// ---- effective coherence ---------------------------------------------------

enum class CoherenceKind { kT1Like, kRamseyLike };

struct EffectiveCoherence {
  bool decay_detected = false;
  double n_char = 0.0;  // characteristic gate count
  double t_us = 0.0;    // n_char * gate window
};

EffectiveCoherence effective_coherence(const std::vector<double>& gate_counts,
                                       const std::vector<double>& signal, CoherenceKind kind,
                                       double window_ns);

// ---- QME randomization convergence ----------------------------------------

struct ConvergencePoint {
  int r = 0;
  double fidelity = 0.0;
  double concurrence = 0.0;
  double mutual_information = 0.0;
};

// Running average of the first r joint states for every r in `r_grid`;
// fidelity of its data marginal to `reference`.
std::vector<ConvergencePoint> qme_convergence(const std::vector<DensityMatrix>& joints,
                                              const std::vector<int>& r_grid,
                                              const DensityMatrix& reference);

}  // namespace qinstr
