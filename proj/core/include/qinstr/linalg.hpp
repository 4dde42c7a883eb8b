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

// Dense complex matrices sized for one- and two-qubit work (up to 16x16
// Choi/superoperator workspaces). Everything here is a pure function on
// values.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace qinstr {

using cplx = std::complex<double>;

inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kPsdFloor = 1e-10;

class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols);
  // Row-major entries.
  CMatrix(std::size_t rows, std::size_t cols, std::initializer_list<cplx> entries);

  static CMatrix identity(std::size_t n);
  static CMatrix diagonal(std::span<const cplx> diag);
  static CMatrix diagonal(std::span<const double> diag);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  cplx& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const cplx& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<cplx> data() { return data_; }
  std::span<const cplx> data() const { return data_; }

  CMatrix adjoint() const;
  CMatrix transpose() const;
  CMatrix conj() const;
  cplx trace() const;
  double max_abs() const;
  double frobenius_norm() const;

  CMatrix& operator+=(const CMatrix& o);
  CMatrix& operator-=(const CMatrix& o);
  CMatrix& operator*=(cplx s);

  friend CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
  friend CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
  friend CMatrix operator*(CMatrix a, cplx s) { return a *= s; }
  friend CMatrix operator*(cplx s, CMatrix a) { return a *= s; }
  friend CMatrix operator*(const CMatrix& a, const CMatrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

// Matrix-vector product.
std::vector<cplx> apply(const CMatrix& m, std::span<const cplx> v);

// (a (x) b)[(i*rb + k), (j*cb + l)] = a[i,j] * b[k,l].
CMatrix kron(const CMatrix& a, const CMatrix& b);

enum class Subsystem { kFirst = 0, kSecond = 1 };

// Reduced matrix of the `keep` factor of a (dim_a*dim_b)-square operator.
CMatrix partial_trace(const CMatrix& m, Subsystem keep, std::size_t dim_a = 2,
                      std::size_t dim_b = 2);

struct HermEig {
  std::vector<double> values;  // ascending
  CMatrix vectors;             // columns are eigenvectors
};

bool is_hermitian(const CMatrix& m, double tol = kHermitianTol);

// Cyclic complex Jacobi. Throws ConfigError for non-Hermitian input; inputs
// within tolerance are symmetrized first.
HermEig herm_eig(const CMatrix& m);

// Rebuild V diag(f(lambda)) V^dagger.
CMatrix from_spectrum(const HermEig& eig, std::span<const cplx> fvals);

// exp(-i * scale * h) for Hermitian h.
CMatrix expm_herm(const CMatrix& h, double scale);

// Principal square root of a PSD matrix; eigenvalues in [-kPsdFloor, 0) are
// clipped, anything lower throws NumericalError.
CMatrix sqrtm_psd(const CMatrix& m);

// Sum of singular values (sum |lambda_i| for Hermitian input).
double trace_norm(const CMatrix& m);

std::vector<double> singular_values(const CMatrix& m);

double max_abs_diff(const CMatrix& a, const CMatrix& b);

// min over phi of || U - e^{i phi} V ||_F.
double phase_insensitive_distance(const CMatrix& u, const CMatrix& v);

// Frobenius inner product Tr(a^dagger b).
cplx hs_inner(const CMatrix& a, const CMatrix& b);

// Pauli matrices and friends.
namespace pauli {
CMatrix I();
CMatrix X();
CMatrix Y();
CMatrix Z();
// index 0..3 -> I, X, Y, Z
CMatrix by_index(int idx);
// n-qubit Pauli string from base-4 digits, most significant qubit first.
CMatrix string(std::span<const int> digits);
}  // namespace pauli

CMatrix swap_matrix();

}  // namespace qinstr
