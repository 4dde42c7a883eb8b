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

// Independent reference computations built on Eigen, plus seeded random
// generators for property tests. Nothing here calls into qinstr numerics
// beyond the CMatrix container itself.

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "qinstr/linalg.hpp"
#include "qinstr/qstate.hpp"

namespace qinstr::test {

using EMat = Eigen::MatrixXcd;
using cd = std::complex<double>;

inline EMat to_eigen(const CMatrix& m) {
  EMat e(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) e(r, c) = m(r, c);
  return e;
}

inline CMatrix from_eigen(const EMat& e) {
  CMatrix m(e.rows(), e.cols());
  for (Eigen::Index r = 0; r < e.rows(); ++r)
    for (Eigen::Index c = 0; c < e.cols(); ++c) m(r, c) = e(r, c);
  return m;
}

inline std::vector<double> eigenvalues(const CMatrix& h) {
  Eigen::SelfAdjointEigenSolver<EMat> es(to_eigen(h));
  const auto& v = es.eigenvalues();
  return {v.data(), v.data() + v.size()};
}

inline EMat psd_sqrt(const EMat& a) {
  Eigen::SelfAdjointEigenSolver<EMat> es(a);
  Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

// (Tr sqrt(sqrt(a) b sqrt(a)))^2
inline double fidelity(const CMatrix& a, const CMatrix& b) {
  const EMat sa = psd_sqrt(to_eigen(a));
  Eigen::SelfAdjointEigenSolver<EMat> es(sa * to_eigen(b) * sa);
  const double t = es.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
  return t * t;
}

inline double trace_norm(const CMatrix& a) {
  Eigen::JacobiSVD<EMat> svd(to_eigen(a));
  return svd.singularValues().sum();
}

inline double trace_distance(const CMatrix& a, const CMatrix& b) {
  return 0.5 * test::trace_norm(a - b);
}

inline CMatrix expm(const CMatrix& m) { return from_eigen(to_eigen(m).exp()); }

inline double entropy(const CMatrix& m) {
  double s = 0.0;
  for (double l : eigenvalues(m))
    if (l > 1e-15) s -= l * std::log(l);
  return s;
}

// Wootters concurrence from the non-Hermitian product rho * rho_tilde.
inline double concurrence(const CMatrix& rho) {
  EMat yy = EMat::Zero(4, 4);
  yy(0, 3) = -1.0;
  yy(1, 2) = 1.0;
  yy(2, 1) = 1.0;
  yy(3, 0) = -1.0;
  const EMat r = to_eigen(rho);
  const EMat tilde = yy * r.conjugate() * yy;
  Eigen::ComplexEigenSolver<EMat> es(r * tilde);
  std::vector<double> l;
  for (Eigen::Index i = 0; i < 4; ++i) l.push_back(std::sqrt(std::max(0.0, es.eigenvalues()(i).real())));
  std::sort(l.rbegin(), l.rend());
  return std::max(0.0, l[0] - l[1] - l[2] - l[3]);
}

// ---- seeded generators -------------------------------------------------------

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double normal() { return nd_(rng_); }
  double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng_); }
  int integer(int a, int b) { return std::uniform_int_distribution<int>(a, b)(rng_); }

  EMat ginibre(int r, int c) {
    EMat g(r, c);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) g(i, j) = cd(normal(), normal()) / std::sqrt(2.0);
    return g;
  }

  // Haar unitary via QR with phase-fixed R diagonal.
  CMatrix unitary(int d) {
    Eigen::HouseholderQR<EMat> qr(ginibre(d, d));
    EMat q = qr.householderQ();
    const EMat rr = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < d; ++i) q.col(i) *= rr(i, i) / std::abs(rr(i, i));
    return from_eigen(q);
  }

  CMatrix hermitian(int d) {
    const EMat g = ginibre(d, d);
    return from_eigen((g + g.adjoint()) * 0.5);
  }

  CMatrix matrix(int r, int c) { return from_eigen(ginibre(r, c)); }

  // Random density matrix of the given rank (Hilbert-Schmidt for full rank).
  DensityMatrix density(int d, int rank = -1) {
    if (rank < 0) rank = d;
    const EMat g = ginibre(d, rank);
    EMat rho = g * g.adjoint();
    rho /= rho.trace();
    return DensityMatrix(from_eigen(rho));
  }

  DensityMatrix pure(int d) { return density(d, 1); }

  std::array<double, 3> axis() {
    double x = normal(), y = normal(), z = normal();
    const double n = std::sqrt(x * x + y * y + z * z);
    return {x / n, y / n, z / n};
  }

  // Kraus operators of a random channel on dimension d from a Stinespring
  // isometry with `env` environment levels.
  std::vector<CMatrix> kraus(int d, int env) {
    const CMatrix u = unitary(d * env);
    std::vector<CMatrix> ks;
    for (int e = 0; e < env; ++e) {
      CMatrix k(d, d);
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) k(i, j) = u(e * d + i, j * env);
      ks.push_back(k);
    }
    return ks;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
  std::normal_distribution<double> nd_{0.0, 1.0};
};

inline double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace qinstr::test
