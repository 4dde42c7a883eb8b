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
#include "qinstr/linalg.hpp"

namespace qinstr {
namespace {

using test::Gen;

CMatrix ket0() { return CMatrix(2, 2, {1.0, 0.0, 0.0, 0.0}); }
CMatrix ket1() { return CMatrix(2, 2, {0.0, 0.0, 0.0, 1.0}); }

TEST(Kron, IdentityTimesIdentity) {
  EXPECT_EQ(max_abs_diff(kron(CMatrix::identity(2), CMatrix::identity(2)), CMatrix::identity(4)), 0.0);
}

TEST(Kron, BasisProjectors) {
  const std::vector<double> d{0, 1, 0, 0};
  EXPECT_EQ(max_abs_diff(kron(ket0(), ket1()), CMatrix::diagonal(std::span<const double>(d))), 0.0);
}

TEST(Kron, PauliZZ) {
  const std::vector<double> d{1, -1, -1, 1};
  EXPECT_EQ(max_abs_diff(kron(pauli::Z(), pauli::Z()), CMatrix::diagonal(std::span<const double>(d))),
            0.0);
}

TEST(Kron, AssociativeAndBilinear) {
  Gen g(11);
  for (int t = 0; t < 20; ++t) {
    const CMatrix a = g.matrix(2, 2), b = g.matrix(2, 3), c = g.matrix(3, 2), d = g.matrix(2, 3);
    EXPECT_LT(max_abs_diff(kron(kron(a, b), c), kron(a, kron(b, c))), 1e-12);
    const cplx s{0.3, -1.1};
    EXPECT_LT(max_abs_diff(kron(a, b + d * s), kron(a, b) + kron(a, d) * s), 1e-12);
    EXPECT_LT(max_abs_diff(kron(a * s, b), kron(a, b) * s), 1e-12);
  }
}

TEST(Kron, IndexLayout) {
  Gen g(12);
  const CMatrix a = g.matrix(2, 3), b = g.matrix(3, 2);
  const CMatrix k = kron(a, b);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t c = 0; c < 2; ++c)
          EXPECT_EQ(k(i * 3 + r, j * 2 + c), a(i, j) * b(r, c));
}

TEST(PartialTrace, ProductProjector) {
  const CMatrix p00 = kron(ket0(), ket0());
  EXPECT_LT(max_abs_diff(partial_trace(p00, Subsystem::kFirst), ket0()), 1e-15);
}

TEST(PartialTrace, KeepsSecondFactorOfProducts) {
  Gen g(13);
  for (int t = 0; t < 10; ++t) {
    const CMatrix rho = g.density(2).mat(), sigma = g.density(2).mat();
    EXPECT_LT(max_abs_diff(partial_trace(kron(rho, sigma), Subsystem::kSecond), sigma), 1e-12);
  }
}

TEST(PartialTrace, BellMarginalIsMaximallyMixed) {
  CMatrix bell(4, 4);
  bell(0, 0) = bell(0, 3) = bell(3, 0) = bell(3, 3) = 0.5;
  EXPECT_LT(max_abs_diff(partial_trace(bell, Subsystem::kFirst), CMatrix::identity(2) * 0.5), 1e-15);
  EXPECT_LT(max_abs_diff(partial_trace(bell, Subsystem::kSecond), CMatrix::identity(2) * 0.5), 1e-15);
}

TEST(PartialTrace, ProductTraceWeighting) {
  Gen g(14);
  for (int t = 0; t < 20; ++t) {
    const CMatrix a = g.matrix(2, 2), b = g.matrix(2, 2);
    EXPECT_LT(max_abs_diff(partial_trace(kron(a, b), Subsystem::kFirst), a * b.trace()), 1e-12);
  }
}

TEST(PartialTrace, SwapProductIdentity) {
  // Tr_2[SWAP (X (x) Y)] = Y X.
  Gen g(15);
  for (int t = 0; t < 20; ++t) {
    const CMatrix x = g.matrix(2, 2), y = g.matrix(2, 2);
    EXPECT_LT(max_abs_diff(partial_trace(swap_matrix() * kron(x, y), Subsystem::kFirst), y * x), 1e-12);
  }
}

TEST(PartialTrace, RejectsWrongShape) {
  EXPECT_THROW(partial_trace(CMatrix::identity(3), Subsystem::kFirst), ConfigError);
}

TEST(HermEig, PauliZ) {
  const HermEig e = herm_eig(pauli::Z());
  ASSERT_EQ(e.values.size(), 2u);
  EXPECT_NEAR(e.values[0], -1.0, 1e-14);
  EXPECT_NEAR(e.values[1], 1.0, 1e-14);
}

TEST(HermEig, PauliXEigenvectors) {
  const HermEig e = herm_eig(pauli::X());
  EXPECT_NEAR(e.values[0], -1.0, 1e-14);
  EXPECT_NEAR(e.values[1], 1.0, 1e-14);
  // |-> for -1, |+> for +1, up to phase.
  const double s = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(std::abs(e.vectors(0, 0) * s - e.vectors(1, 0) * s), 1.0, 1e-12);
  EXPECT_NEAR(std::abs(e.vectors(0, 1) * s + e.vectors(1, 1) * s), 1.0, 1e-12);
}

TEST(HermEig, ReconstructsRandomHermitianAndMatchesOracle) {
  Gen g(16);
  for (int d : {2, 3, 4, 8}) {
    for (int t = 0; t < 10; ++t) {
      const CMatrix h = g.hermitian(d);
      const HermEig e = herm_eig(h);
      std::vector<cplx> f(e.values.begin(), e.values.end());
      EXPECT_LT(max_abs_diff(from_spectrum(e, f), h), 1e-9);
      EXPECT_LT(max_abs_diff(e.vectors.adjoint() * e.vectors, CMatrix::identity(d)), 1e-9);
      EXPECT_TRUE(std::is_sorted(e.values.begin(), e.values.end()));
      const auto ref = test::eigenvalues(h);
      for (int i = 0; i < d; ++i) EXPECT_NEAR(e.values[i], ref[i], 1e-10);
    }
  }
}

TEST(HermEig, DegenerateSpectrum) {
  Gen g(17);
  const CMatrix u = g.unitary(4);
  const std::vector<double> d{1, 1, -2, -2};
  const CMatrix h = u * CMatrix::diagonal(std::span<const double>(d)) * u.adjoint();
  const HermEig e = herm_eig(h);
  EXPECT_NEAR(e.values[0], -2.0, 1e-10);
  EXPECT_NEAR(e.values[3], 1.0, 1e-10);
  EXPECT_LT(max_abs_diff(e.vectors.adjoint() * e.vectors, CMatrix::identity(4)), 1e-9);
}

TEST(HermEig, RejectsNonHermitian) {
  CMatrix m = pauli::X();
  m(0, 1) = 2.0;
  EXPECT_THROW(herm_eig(m), ConfigError);
}

TEST(HermEig, SymmetrizesWithinTolerance) {
  CMatrix m = pauli::Y();
  m(0, 1) += cplx(5e-11, 0.0);
  EXPECT_NO_THROW(herm_eig(m));
}

TEST(ExpmHerm, ZeroAngleIsIdentity) {
  EXPECT_LT(max_abs_diff(expm_herm(swap_matrix(), 0.0), CMatrix::identity(4)), 1e-15);
}

TEST(ExpmHerm, QuarterTurnOfSwap) {
  EXPECT_LT(max_abs_diff(expm_herm(swap_matrix(), M_PI / 2), swap_matrix() * cplx(0, -1)), 1e-12);
}

TEST(ExpmHerm, SwapCosineSineIdentity) {
  const double d = M_PI / 8;
  const CMatrix ref = CMatrix::identity(4) * std::cos(d) + swap_matrix() * cplx(0, -std::sin(d));
  EXPECT_LT(max_abs_diff(expm_herm(swap_matrix(), d), ref), 1e-12);
}

TEST(ExpmHerm, UnitaryAndMatchesPadeOracle) {
  Gen g(18);
  for (int d : {2, 4}) {
    for (int t = 0; t < 10; ++t) {
      const CMatrix h = g.hermitian(d);
      const double s = g.uniform(-3, 3);
      const CMatrix u = expm_herm(h, s);
      EXPECT_LT(max_abs_diff(u.adjoint() * u, CMatrix::identity(d)), 1e-10);
      EXPECT_LT(max_abs_diff(u, test::expm(h * cplx(0, -s))), 1e-10);
    }
  }
}

TEST(ExpmHerm, RejectsNonHermitian) {
  EXPECT_THROW(expm_herm(CMatrix(2, 2, {0.0, 1.0, 0.0, 0.0}), 1.0), ConfigError);
}

TEST(SqrtmPsd, Identity) {
  EXPECT_LT(max_abs_diff(sqrtm_psd(CMatrix::identity(4)), CMatrix::identity(4)), 1e-14);
}

TEST(SqrtmPsd, SquaresBack) {
  Gen g(19);
  for (int t = 0; t < 20; ++t) {
    const CMatrix m = g.density(4, g.integer(1, 4)).mat();
    const CMatrix r = sqrtm_psd(m);
    EXPECT_LT(max_abs_diff(r * r, m), 1e-9);
  }
}

TEST(SqrtmPsd, ClipsTinyNegativesRejectsLarger) {
  const std::vector<double> ok{1.0, -5e-11};
  EXPECT_NO_THROW(sqrtm_psd(CMatrix::diagonal(std::span<const double>(ok))));
  const std::vector<double> bad{1.0, -1e-6};
  EXPECT_THROW(sqrtm_psd(CMatrix::diagonal(std::span<const double>(bad))), NumericalError);
}

TEST(TraceNorm, PauliZ) { EXPECT_NEAR(trace_norm(pauli::Z()), 2.0, 1e-14); }

TEST(TraceNorm, QmeErrorTerm) {
  for (double d : {0.1, M_PI / 8, 1.0}) {
    const double s2 = std::sin(d) * std::sin(d);
    EXPECT_NEAR(trace_norm(kron(ket0(), pauli::Z()) * s2), 2.0 * s2, 1e-14);
  }
}

TEST(TraceNorm, NonHermitianMatchesSvdOracle) {
  Gen g(20);
  for (int t = 0; t < 20; ++t) {
    const CMatrix m = g.matrix(4, 4);
    EXPECT_NEAR(trace_norm(m), test::trace_norm(m), 1e-10);
  }
}

TEST(PhaseInsensitiveDistance, IgnoresGlobalPhase) {
  Gen g(21);
  const CMatrix u = g.unitary(4);
  EXPECT_LT(phase_insensitive_distance(u, u * std::polar(1.0, 0.77)), 1e-14);
  EXPECT_GT(phase_insensitive_distance(u, g.unitary(4)), 0.1);
}

TEST(PhaseInsensitiveDistance, MatchesBruteForceMinimum) {
  Gen g(22);
  const CMatrix u = g.unitary(2), v = g.unitary(2);
  double best = 1e9;
  for (int k = 0; k < 200000; ++k) {
    const double phi = 2 * M_PI * k / 200000.0;
    best = std::min(best, (u - v * std::polar(1.0, phi)).frobenius_norm());
  }
  EXPECT_NEAR(phase_insensitive_distance(u, v), best, 1e-6);
}

TEST(Pauli, StringOrdering) {
  const std::vector<int> xz{1, 3};
  EXPECT_EQ(max_abs_diff(pauli::string(xz), kron(pauli::X(), pauli::Z())), 0.0);
  EXPECT_LT(max_abs_diff(pauli::X() * pauli::Y(), pauli::Z() * cplx(0, 1)), 1e-15);
}

TEST(HsInner, FrobeniusForm) {
  Gen g(23);
  const CMatrix a = g.matrix(3, 3), b = g.matrix(3, 3);
  EXPECT_LT(std::abs(hs_inner(a, b) - (a.adjoint() * b).trace()), 1e-12);
}

}  // namespace
}  // namespace qinstr
