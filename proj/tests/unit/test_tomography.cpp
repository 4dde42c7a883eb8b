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

#include <gtest/gtest.h>

#include <cmath>

#include "oracle.hpp"
#include "qinstr/errors.hpp"
#include "qinstr/gates.hpp"
#include "qinstr/tomography.hpp"

namespace qinstr {
namespace {

using test::Gen;

std::vector<SettingData> exact_data(const CMatrix& rho, const ReadoutModel& rm) {
  std::vector<SettingData> out;
  for (const Setting& s : all_settings(rm.n_qubits())) out.push_back({s, outcome_probabilities(rho, s, rm)});
  return out;
}

std::vector<CMatrix> mapped_inputs(const KrausChannel& c) {
  std::vector<CMatrix> out;
  for (const auto& n : process_input_names()) out.push_back(apply(c, pure_state(n).mat()));
  return out;
}

double chi_trace_distance(const ProcessMap& a, const ProcessMap& b) {
  return test::trace_distance(a.chi, b.chi);
}

TEST(Readout, IdealBeta) {
  const CMatrix b1 = beta_from_readout(ReadoutModel::ideal(1));
  EXPECT_LT(max_abs_diff(b1, CMatrix(2, 2, {0.5, 0.5, 0.5, -0.5})), 1e-15);
  const CMatrix b2 = beta_from_readout(ReadoutModel::ideal(2));
  for (const auto& x : b2.data()) EXPECT_NEAR(std::abs(x), 0.25, 1e-15);
}

TEST(Readout, FlipBeta) {
  const CMatrix b = beta_from_readout(ReadoutModel::symmetric_flip(1, 0.05));
  EXPECT_LT(max_abs_diff(b, CMatrix(2, 2, {0.5, 0.45, 0.5, -0.45})), 1e-15);
}

TEST(Readout, BetaReproducesOutcomeProbabilities) {
  Gen g(120);
  ReadoutModel rm;
  for (int q = 0; q < 2; ++q) {
    const double a = g.uniform(0, 0.1), b = g.uniform(0, 0.1);
    rm.qubits.push_back({{{1 - a, b}, {a, 1 - b}}});
  }
  const CMatrix beta = beta_from_readout(rm);
  for (int t = 0; t < 20; ++t) {
    const CMatrix rho = g.density(4).mat();
    const std::vector<double> p = outcome_probabilities(rho, {Prerot::kI, Prerot::kI}, rm);
    const cplx z1 = (rho * kron(pauli::Z(), CMatrix::identity(2))).trace();
    const cplx z2 = (rho * kron(CMatrix::identity(2), pauli::Z())).trace();
    const cplx zz = (rho * kron(pauli::Z(), pauli::Z())).trace();
    const cplx vec[4] = {1.0, z2, z1, zz};
    for (int k = 0; k < 4; ++k) {
      cplx s = 0;
      for (int j = 0; j < 4; ++j) s += beta(k, j) * vec[j];
      EXPECT_NEAR(s.real(), p[k], 1e-12);
    }
  }
}

TEST(Readout, Validation) {
  ReadoutModel bad;
  bad.qubits.push_back({{{0.9, 0.2}, {0.2, 0.8}}});
  EXPECT_THROW(validate(bad), ConfigError);
  EXPECT_THROW(ReadoutModel::symmetric_flip(1, 1.2), ConfigError);
}

TEST(Settings, NineForTwoQubits) {
  const auto s = all_settings(2);
  ASSERT_EQ(s.size(), 9u);
  EXPECT_EQ(all_settings(1).size(), 3u);
  for (Prerot r : {Prerot::kI, Prerot::kRyMinus90, Prerot::kRx90})
    EXPECT_EQ(prerot_from_name(prerot_name(r)), r);
  EXPECT_THROW(prerot_from_name("Rz"), ConfigError);
}

TEST(Shots, Examples) {
  const ReadoutModel ideal = ReadoutModel::ideal(1);
  const Counts z = measure_shots(pure_state("0"), {Prerot::kI}, 1000, ideal, 3);
  EXPECT_EQ(z.counts[0], 1000u);
  const Counts x = measure_shots(pure_state("+"), {Prerot::kRyMinus90}, 1000, ideal, 3);
  EXPECT_EQ(x.counts[0], 1000u);
  const Counts y = measure_shots(pure_state("+i"), {Prerot::kRx90}, 1000, ideal, 3);
  EXPECT_EQ(y.counts[0], 1000u);
  const Counts big = measure_shots(pure_state("+"), {Prerot::kI}, 100000, ideal, 4);
  EXPECT_NEAR(big.counts[0] / 1e5, 0.5, 0.005);
  EXPECT_EQ(big.counts[0] + big.counts[1], 100000u);
}

TEST(Shots, DeterministicPerSeed) {
  Gen g(121);
  const DensityMatrix m = g.density(4);
  const ReadoutModel rm = ReadoutModel::symmetric_flip(2, 0.05);
  const Setting s{Prerot::kRx90, Prerot::kI};
  EXPECT_EQ(measure_shots(m, s, 2000, rm, 9).counts, measure_shots(m, s, 2000, rm, 9).counts);
  EXPECT_NE(measure_shots(m, s, 2000, rm, 9).counts, measure_shots(m, s, 2000, rm, 10).counts);
}

TEST(Povm, ElementsSumToIdentity) {
  const CMatrix beta = beta_from_readout(ReadoutModel::symmetric_flip(2, 0.03));
  for (const Setting& s : all_settings(2)) {
    CMatrix sum(4, 4);
    for (int k = 0; k < 4; ++k) {
      const CMatrix e = povm_element(beta, s, k);
      for (double l : test::eigenvalues(e)) EXPECT_GE(l, -1e-12);
      sum += e;
    }
    EXPECT_LT(max_abs_diff(sum, CMatrix::identity(4)), 1e-12);
  }
}

TEST(StateTomography, ExactBellState) {
  CMatrix bell(4, 4);
  bell(0, 0) = bell(0, 3) = bell(3, 0) = bell(3, 3) = 0.5;
  const TomographyResult r =
      state_tomography(exact_data(bell, ReadoutModel::ideal(2)), beta_from_readout(ReadoutModel::ideal(2)));
  EXPECT_GT(state_fidelity(r.rho, DensityMatrix(bell)), 1 - 1e-6);
}

TEST(StateTomography, ExactProbabilitiesRecoverState) {
  Gen g(122);
  const ReadoutModel rm = ReadoutModel::symmetric_flip(2, 0.05);
  for (int t = 0; t < 10; ++t) {
    const DensityMatrix m = g.density(4, g.integer(1, 4));
    const TomographyResult r = state_tomography(exact_data(m.mat(), rm), beta_from_readout(rm));
    EXPECT_LT(max_abs_diff(r.rho.mat(), m.mat()), 1e-5);
    EXPECT_LT(max_abs_diff(r.linear_estimate.mat(), m.mat()), 1e-10);
  }
}

TEST(StateTomography, BetaCorrectionExactInExpectation) {
  Gen g(123);
  ReadoutModel rm;
  rm.qubits.push_back({{{0.93, 0.06}, {0.07, 0.94}}});
  rm.qubits.push_back({{{0.97, 0.1}, {0.03, 0.9}}});
  for (int t = 0; t < 20; ++t) {
    const CMatrix rho = g.density(4).mat();
    EXPECT_LT(max_abs_diff(linear_inversion(exact_data(rho, rm), beta_from_readout(rm)), rho), 1e-12);
  }
}

TEST(StateTomography, ShotModePureStates) {
  Gen g(124);
  std::vector<double> f;
  for (int t = 0; t < 50; ++t) {
    const DensityMatrix m = g.pure(4);
    f.push_back(state_fidelity(tomograph(m, 2000, ReadoutModel::ideal(2), 1000 + t).rho, m));
  }
  EXPECT_GE(test::median(f), 0.99);
}

TEST(StateTomography, ReadoutCorrectionHelps) {
  Gen g(125);
  const ReadoutModel rm = ReadoutModel::symmetric_flip(2, 0.05);
  std::vector<double> corr, raw;
  for (int t = 0; t < 50; ++t) {
    const DensityMatrix m = g.pure(4);
    corr.push_back(state_fidelity(tomograph(m, 2000, rm, 2000 + t, true).rho, m));
    raw.push_back(state_fidelity(tomograph(m, 2000, rm, 2000 + t, false).rho, m));
  }
  EXPECT_GE(test::median(corr), 0.98);
  EXPECT_GT(test::median(corr), test::median(raw));
}

TEST(StateTomography, OutputValidAndLikelihoodMonotone) {
  Gen g(126);
  for (int t = 0; t < 10; ++t) {
    const TomographyResult r = tomograph(g.density(4), 500, ReadoutModel::symmetric_flip(2, 0.02), 3000 + t);
    EXPECT_TRUE(validate_density(r.rho.mat()).ok());
    ASSERT_FALSE(r.nll_history.empty());
    for (std::size_t i = 1; i < r.nll_history.size(); ++i) EXPECT_LE(r.nll_history[i], r.nll_history[i - 1]);
    EXPECT_DOUBLE_EQ(r.nll_history.back(), r.nll);
  }
}

TEST(StateTomography, MissingSettingRejected) {
  auto data = exact_data(pure_state("0").mat(), ReadoutModel::ideal(1));
  data.pop_back();
  EXPECT_THROW(state_tomography(data, beta_from_readout(ReadoutModel::ideal(1))), ConfigError);
}

TEST(ProcessTomography, IdentityAndPiRotation) {
  const ProcessMap id = process_tomography(mapped_inputs(identity_channel(2)));
  CMatrix e(4, 4);
  e(0, 0) = 1.0;
  EXPECT_LT(max_abs_diff(id.chi, e), 1e-12);
  const ProcessMap x = process_tomography(mapped_inputs(unitary_channel(rx(M_PI))));
  CMatrix ex(4, 4);
  ex(1, 1) = 1.0;
  EXPECT_LT(max_abs_diff(x.chi, ex), 1e-12);
}

TEST(ProcessTomography, DampingCrossOracle) {
  const KrausChannel c = amplitude_damping(0.3);
  EXPECT_LT(max_abs_diff(process_tomography(mapped_inputs(c)).chi, chi_of_channel(c).chi), 1e-9);
  const ProcessMap s = chi_of_superoperator(superoperator(c), 2);
  EXPECT_LT(max_abs_diff(s.chi, chi_of_channel(c).chi), 1e-12);
}

TEST(ProcessTomography, RandomChannelsMatchBeforeProjection) {
  Gen g(127);
  for (int t = 0; t < 20; ++t) {
    const KrausChannel c{g.kraus(2, g.integer(1, 4)), 2};
    const ProcessMap p = process_tomography(mapped_inputs(c));
    EXPECT_LT(max_abs_diff(p.chi, chi_of_channel(c).chi), 1e-8);
    EXPECT_NEAR(p.chi.trace().real(), 1.0, 1e-12);
    EXPECT_LT(max_abs_diff(choi_from_chi(chi_from_choi(choi(c))), choi(c)), 1e-12);
  }
}

TEST(ProcessTomography, IncompleteInputsRejected) {
  auto v = mapped_inputs(identity_channel(2));
  v.pop_back();
  EXPECT_THROW(process_tomography(v), ConfigError);
}

TEST(CptpProjection, AlreadyCptpUnchanged) {
  Gen g(128);
  for (int t = 0; t < 10; ++t) {
    const ProcessMap p = chi_of_channel(KrausChannel{g.kraus(2, 2), 2});
    const ProcessMap q = cptp_project(p);
    EXPECT_LT(max_abs_diff(p.chi, q.chi), 1e-9);
    EXPECT_TRUE(q.cptp_projected);
  }
}

TEST(CptpProjection, RepairsNegativeChoiEigenvalue) {
  // Full damping has a two-dimensional Choi kernel; push one direction negative.
  CMatrix j = choi(amplitude_damping(1.0));
  CMatrix w(4, 1);
  w(1, 0) = 1.0;
  j -= w * w.adjoint() * 0.01;
  const ProcessMap in{chi_from_choi(j), false, 0};
  EXPECT_LT(chi_cptp_report(in).min_choi_eigenvalue, -0.004);
  const ProcessMap out = cptp_project(in);
  EXPECT_TRUE(chi_cptp_report(out).ok());
  EXPECT_LT(chi_trace_distance(in, out), 0.05);
}

TEST(CptpProjection, RoundTripRandomChannels) {
  Gen g(129);
  for (int t = 0; t < 50; ++t) {
    const KrausChannel c{g.kraus(2, g.integer(1, 4)), 2};
    const ProcessMap ref = chi_of_channel(c);
    const ProcessMap p = cptp_project(process_tomography(mapped_inputs(c)));
    EXPECT_GE(process_fidelity(p, ref), 1 - 1e-6);
    EXPECT_TRUE(chi_cptp_report(p).ok());
  }
}

TEST(CptpProjection, SampledRyHalfPi) {
  const KrausChannel c = unitary_channel(ry(M_PI / 2));
  const ProcessMap ref = chi_of_channel(c);
  std::vector<double> f;
  for (int t = 0; t < 50; ++t) {
    std::vector<CMatrix> outs;
    int k = 0;
    for (const auto& n : process_input_names()) {
      const DensityMatrix o = apply(c, pure_state(n));
      outs.push_back(tomograph(o, 500, ReadoutModel::ideal(1), 4000 + 10 * t + k++).rho.mat());
    }
    const ProcessMap p = cptp_project(process_tomography(outs));
    EXPECT_TRUE(chi_cptp_report(p).ok());
    f.push_back(process_fidelity(p, ref));
  }
  EXPECT_GE(test::median(f), 0.98);
}

TEST(Fidelity, Examples) {
  Gen g(130);
  const ProcessMap p = chi_of_channel(KrausChannel{g.kraus(2, 3), 2});
  EXPECT_NEAR(process_fidelity(p, p), 1.0, 1e-9);
  EXPECT_NEAR(gate_fidelity(1.0, 2), 1.0, 1e-15);
  EXPECT_NEAR(gate_fidelity(1.0, 4), 1.0, 1e-15);
  EXPECT_NEAR(gate_fidelity(0.95, 4), 0.96, 1e-15);
  const ProcessMap id = chi_of_channel(identity_channel(2));
  const ProcessMap x = chi_of_channel(unitary_channel(pauli::X()));
  EXPECT_NEAR(process_fidelity(id, x), 0.0, 1e-9);
}

TEST(Fidelity, UnitaryProcessFidelityIsTraceOverlap) {
  Gen g(131);
  for (int t = 0; t < 20; ++t) {
    const CMatrix u = g.unitary(2), v = g.unitary(2);
    const double expect = std::norm((u.adjoint() * v).trace()) / 4;
    EXPECT_NEAR(process_fidelity(chi_of_channel(unitary_channel(u)), chi_of_channel(unitary_channel(v))), expect,
                1e-7);
  }
}

}  // namespace
}  // namespace qinstr
