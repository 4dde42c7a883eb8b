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

#include "qinstr/tomography.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qinstr/errors.hpp"
#include "qinstr/gates.hpp"
#include "qinstr/optimize.hpp"
#include "qinstr/rng.hpp"

namespace qinstr {
namespace {

int qubits_for_dim(std::size_t dim) {
  int n = 0;
  while ((std::size_t{1} << n) < dim) ++n;
  if ((std::size_t{1} << n) != dim) throw ConfigError("dimension is not a power of two");
  return n;
}

CMatrix hermitize(const CMatrix& m) {
  CMatrix h = m + m.adjoint();
  h *= 0.5;
  return h;
}

CMatrix setting_unitary(const Setting& s) {
  CMatrix r = CMatrix::identity(1);
  for (Prerot p : s) r = kron(r, prerot_matrix(p));
  return r;
}

// Z-type Pauli string for index j (bit per qubit, qubit 0 most significant).
CMatrix z_string(int j, int n) {
  std::vector<int> digits(n);
  for (int q = 0; q < n; ++q) digits[q] = ((j >> (n - 1 - q)) & 1) ? 3 : 0;
  return pauli::string(digits);
}

CMatrix pauli_from_index(int m, int n) {
  std::vector<int> digits(n);
  for (int q = n - 1; q >= 0; --q) {
    digits[q] = m % 4;
    m /= 4;
  }
  return pauli::string(digits);
}

// Columns are column-stacked Pauli operators.
CMatrix pauli_vec_basis(std::size_t d) {
  const int n = qubits_for_dim(d);
  CMatrix b(d * d, d * d);
  for (std::size_t m = 0; m < d * d; ++m) {
    const CMatrix p = pauli_from_index(static_cast<int>(m), n);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t r = 0; r < d; ++r) b(i * d + r, m) = p(r, i);
  }
  return b;
}

CMatrix psd_clip(const CMatrix& m) {
  const HermEig e = herm_eig(hermitize(m));
  std::vector<cplx> f(e.values.size());
  for (std::size_t k = 0; k < f.size(); ++k) f[k] = std::max(e.values[k], 0.0);
  return from_spectrum(e, f);
}

CMatrix tp_project(const CMatrix& j, std::size_t d) {
  CMatrix defect = partial_trace(j, Subsystem::kFirst, d, d) - CMatrix::identity(d);
  defect *= 1.0 / static_cast<double>(d);
  return j - kron(defect, CMatrix::identity(d));
}

// Lower-triangular T with T T^dagger = rho; zero pivots zero their column.
CMatrix robust_cholesky(const CMatrix& rho) {
  const std::size_t d = rho.rows();
  CMatrix t(d, d);
  for (std::size_t j = 0; j < d; ++j) {
    double diag = rho(j, j).real();
    for (std::size_t k = 0; k < j; ++k) diag -= std::norm(t(j, k));
    if (diag <= 1e-14) continue;
    t(j, j) = std::sqrt(diag);
    for (std::size_t i = j + 1; i < d; ++i) {
      cplx s = rho(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= t(i, k) * std::conj(t(j, k));
      t(i, j) = s / t(j, j).real();
    }
  }
  return t;
}

std::vector<double> pack_lower(const CMatrix& t) {
  const std::size_t d = t.rows();
  std::vector<double> x;
  for (std::size_t i = 0; i < d; ++i) x.push_back(t(i, i).real());
  for (std::size_t i = 1; i < d; ++i)
    for (std::size_t j = 0; j < i; ++j) {
      x.push_back(t(i, j).real());
      x.push_back(t(i, j).imag());
    }
  return x;
}

CMatrix unpack_rho(const std::vector<double>& x, std::size_t d) {
  CMatrix t(d, d);
  std::size_t k = 0;
  for (std::size_t i = 0; i < d; ++i) t(i, i) = x[k++];
  for (std::size_t i = 1; i < d; ++i)
    for (std::size_t j = 0; j < i; ++j) {
      t(i, j) = cplx{x[k], x[k + 1]};
      k += 2;
    }
  CMatrix rho = t * t.adjoint();
  const double tr = rho.trace().real();
  if (tr <= 0.0) return CMatrix::identity(d) * cplx{1.0 / static_cast<double>(d), 0.0};
  rho *= 1.0 / tr;
  return rho;
}

void check_complete(const std::vector<SettingData>& data, int n) {
  for (const auto& s : all_settings(n)) {
    const bool found = std::any_of(data.begin(), data.end(),
                                   [&](const SettingData& d) { return d.setting == s; });
    if (!found) {
      std::string name;
      for (Prerot p : s) name += std::string(prerot_name(p)) + " ";
      throw ConfigError("state_tomography: missing setting " + name);
    }
  }
  for (const auto& d : data) {
    if (static_cast<int>(d.setting.size()) != n || d.weights.size() != (std::size_t{1} << n)) {
      throw ConfigError("state_tomography: setting data has the wrong shape");
    }
  }
}

}  // namespace

ReadoutModel ReadoutModel::ideal(int n_qubits) {
  return {std::vector<Assignment>(n_qubits, Assignment{{{1.0, 0.0}, {0.0, 1.0}}})};
}

ReadoutModel ReadoutModel::symmetric_flip(int n_qubits, double eps) {
  ReadoutModel rm{std::vector<Assignment>(n_qubits, Assignment{{{1.0 - eps, eps}, {eps, 1.0 - eps}}})};
  validate(rm);
  return rm;
}

void validate(const ReadoutModel& rm) {
  if (rm.qubits.empty()) throw ConfigError("ReadoutModel: no qubits");
  for (const auto& a : rm.qubits) {
    for (int c = 0; c < 2; ++c) {
      for (int r = 0; r < 2; ++r)
        if (!(a[r][c] >= 0.0 && a[r][c] <= 1.0))
          throw ConfigError("ReadoutModel: probability outside [0,1]");
      if (std::abs(a[0][c] + a[1][c] - 1.0) > 1e-12)
        throw ConfigError("ReadoutModel: assignment columns must sum to 1");
    }
  }
}

CMatrix beta_from_readout(const ReadoutModel& rm) {
  validate(rm);
  CMatrix beta = CMatrix::identity(1);
  const CMatrix ideal(2, 2, {0.5, 0.5, 0.5, -0.5});
  for (const auto& a : rm.qubits) {
    const CMatrix m(2, 2, {a[0][0], a[0][1], a[1][0], a[1][1]});
    beta = kron(beta, m * ideal);
  }
  return beta;
}

std::string_view prerot_name(Prerot r) {
  switch (r) {
    case Prerot::kI: return "I";
    case Prerot::kRyMinus90: return "Ry-90";
    case Prerot::kRx90: return "Rx90";
  }
  return "?";
}

Prerot prerot_from_name(std::string_view name) {
  if (name == "I") return Prerot::kI;
  if (name == "Ry-90") return Prerot::kRyMinus90;
  if (name == "Rx90") return Prerot::kRx90;
  throw ConfigError("unknown pre-rotation '" + std::string(name) + "'");
}

CMatrix prerot_matrix(Prerot r) {
  switch (r) {
    case Prerot::kI: return CMatrix::identity(2);
    case Prerot::kRyMinus90: return ry(-M_PI / 2);
    case Prerot::kRx90: return rx(M_PI / 2);
  }
  return CMatrix::identity(2);
}

std::vector<Setting> all_settings(int n_qubits) {
  static constexpr Prerot kAll[3] = {Prerot::kI, Prerot::kRyMinus90, Prerot::kRx90};
  std::vector<Setting> out{{}};
  for (int q = 0; q < n_qubits; ++q) {
    std::vector<Setting> next;
    for (const auto& s : out)
      for (Prerot p : kAll) {
        Setting t = s;
        t.push_back(p);
        next.push_back(std::move(t));
      }
    out = std::move(next);
  }
  return out;
}

std::vector<double> outcome_probabilities(const CMatrix& rho, const Setting& s,
                                          const ReadoutModel& rm) {
  const int n = qubits_for_dim(rho.rows());
  if (static_cast<int>(s.size()) != n || rm.n_qubits() != n) {
    throw ConfigError("outcome_probabilities: qubit count mismatch");
  }
  const CMatrix r = setting_unitary(s);
  const CMatrix rotated = r * rho * r.adjoint();
  const std::size_t d = rho.rows();
  std::vector<double> p(d, 0.0);
  for (std::size_t read = 0; read < d; ++read) {
    for (std::size_t truth = 0; truth < d; ++truth) {
      double w = 1.0;
      for (int q = 0; q < n; ++q) {
        const int br = (read >> (n - 1 - q)) & 1, bt = (truth >> (n - 1 - q)) & 1;
        w *= rm.qubits[q][br][bt];
      }
      p[read] += w * std::max(rotated(truth, truth).real(), 0.0);
    }
  }
  return p;
}

Counts measure_shots(const DensityMatrix& m, const Setting& s, std::uint64_t shots,
                     const ReadoutModel& rm, std::uint64_t seed) {
  if (shots == 0) throw ConfigError("measure_shots: shots must be positive");
  const auto p = outcome_probabilities(m.mat(), s, rm);
  std::vector<double> cdf(p.size());
  double acc = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) cdf[k] = (acc += p[k]);
  auto rng = make_rng(seed, 0);
  Counts c{s, std::vector<std::uint64_t>(p.size(), 0), shots, seed};
  for (std::uint64_t i = 0; i < shots; ++i) {
    const double u = uniform01(rng) * acc;
    std::size_t k = static_cast<std::size_t>(std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
    c.counts[std::min(k, p.size() - 1)]++;
  }
  return c;
}

SettingData from_counts(const Counts& c) {
  SettingData d{c.setting, {}};
  for (auto v : c.counts) d.weights.push_back(static_cast<double>(v));
  return d;
}

CMatrix povm_element(const CMatrix& beta, const Setting& s, int outcome) {
  const int n = static_cast<int>(s.size());
  const std::size_t d = std::size_t{1} << n;
  if (beta.rows() != d) throw ConfigError("povm_element: beta dimension mismatch");
  CMatrix e(d, d);
  for (std::size_t j = 0; j < d; ++j) e += z_string(static_cast<int>(j), n) * beta(outcome, j);
  const CMatrix r = setting_unitary(s);
  return r.adjoint() * e * r;
}

CMatrix linear_inversion(const std::vector<SettingData>& data, const CMatrix& beta) {
  const std::size_t d = beta.rows();
  const int n = qubits_for_dim(d);
  const std::size_t np = d * d;
  std::vector<CMatrix> paulis;
  for (std::size_t m = 0; m < np; ++m) paulis.push_back(pauli_from_index(static_cast<int>(m), n));

  std::vector<std::vector<double>> ata(np, std::vector<double>(np, 0.0));
  std::vector<double> atb(np, 0.0);
  for (const auto& sd : data) {
    double total = 0.0;
    for (double w : sd.weights) total += w;
    if (total <= 0.0) continue;
    for (std::size_t k = 0; k < d; ++k) {
      const CMatrix e = povm_element(beta, sd.setting, static_cast<int>(k));
      std::vector<double> row(np);
      for (std::size_t m = 0; m < np; ++m)
        row[m] = hs_inner(e, paulis[m]).real() / static_cast<double>(d);
      const double f = sd.weights[k] / total;
      for (std::size_t a = 0; a < np; ++a) {
        atb[a] += row[a] * f;
        for (std::size_t b = 0; b < np; ++b) ata[a][b] += row[a] * row[b];
      }
    }
  }
  std::vector<double> c;
  if (!solve_spd(ata, atb, c)) {
    CMatrix mixed = CMatrix::identity(d);
    mixed *= 1.0 / static_cast<double>(d);
    return mixed;
  }
  CMatrix rho(d, d);
  for (std::size_t m = 0; m < np; ++m) rho += paulis[m] * (c[m] / static_cast<double>(d));
  return rho;
}

TomographyResult state_tomography(const std::vector<SettingData>& data, const CMatrix& beta,
                                  const MleOptions& opt) {
  const std::size_t d = beta.rows();
  const int n = qubits_for_dim(d);
  check_complete(data, n);

  struct Term {
    std::vector<cplx> e;  // row-major POVM element
    double w;
  };
  std::vector<Term> terms;
  double total = 0.0;
  for (const auto& sd : data) {
    for (std::size_t k = 0; k < d; ++k) {
      if (sd.weights[k] < 0.0) throw ConfigError("state_tomography: negative weight");
      if (sd.weights[k] == 0.0) continue;
      const CMatrix e = povm_element(beta, sd.setting, static_cast<int>(k));
      terms.push_back({std::vector<cplx>(e.data().begin(), e.data().end()), sd.weights[k]});
      total += sd.weights[k];
    }
  }
  if (total <= 0.0) throw NumericalError("state_tomography: all counts are zero");

  // Seed: PSD-clipped least squares, then its Cholesky factor.
  CMatrix lin = psd_clip(linear_inversion(data, beta));
  double tr = lin.trace().real();
  if (tr <= 1e-12) {
    lin = CMatrix::identity(d);
    tr = static_cast<double>(d);
  }
  lin *= 1.0 / tr;

  auto nll = [&](const std::vector<double>& x) {
    const CMatrix rho = unpack_rho(x, d);
    double s = 0.0;
    for (const auto& t : terms) {
      double p = 0.0;
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) p += (t.e[i * d + j] * rho(j, i)).real();
      s -= t.w * std::log(std::max(p, 1e-12));
    }
    return s / total;
  };

  NelderMeadOptions nm;
  nm.max_evals = opt.max_evals;
  nm.initial_step = 0.05;
  nm.f_tol = 1e-13;
  nm.x_tol = 1e-9;
  const MinimizeResult r = nelder_mead_restarts(nll, pack_lower(robust_cholesky(lin)), opt.restarts, nm);

  TomographyResult out{DensityMatrix::trusted(unpack_rho(r.x, d)),
                       DensityMatrix::trusted(lin), r.history, r.f};
  return out;
}

TomographyResult tomograph(const DensityMatrix& m, std::uint64_t shots, const ReadoutModel& rm,
                           std::uint64_t seed, bool correct_readout, const MleOptions& opt) {
  const int n = qubits_for_dim(m.dim());
  std::vector<SettingData> data;
  const auto settings = all_settings(n);
  for (std::size_t i = 0; i < settings.size(); ++i) {
    if (shots == 0) {
      data.push_back({settings[i], outcome_probabilities(m.mat(), settings[i], rm)});
    } else {
      data.push_back(from_counts(measure_shots(m, settings[i], shots, rm, derive_seed(seed, i))));
    }
  }
  const CMatrix beta =
      correct_readout ? beta_from_readout(rm) : beta_from_readout(ReadoutModel::ideal(n));
  return state_tomography(data, beta, opt);
}

const std::vector<std::string>& process_input_names() {
  static const std::vector<std::string> names = {"0", "1", "+", "+i"};
  return names;
}

ProcessMap process_tomography(const std::vector<CMatrix>& outputs) {
  if (outputs.size() != 4) throw ConfigError("process_tomography: need outputs for 4 inputs");
  for (const auto& o : outputs)
    if (o.rows() != 2 || o.cols() != 2) throw ConfigError("process_tomography: outputs must be 2x2");
  const cplx i{0.0, 1.0};
  const CMatrix& e0 = outputs[0];
  const CMatrix& e1 = outputs[1];
  const CMatrix diag_sum = e0 + e1;
  // E(|0><1|) and E(|1><0|) from the |+> and |+i> images.
  const CMatrix e01 = outputs[2] + outputs[3] * i - diag_sum * ((1.0 + i) / 2.0);
  const CMatrix e10 = outputs[2] - outputs[3] * i - diag_sum * ((1.0 - i) / 2.0);
  const CMatrix* blocks[2][2] = {{&e0, &e01}, {&e10, &e1}};
  CMatrix j(4, 4);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int r = 0; r < 2; ++r)
        for (int s = 0; s < 2; ++s) j(a * 2 + r, b * 2 + s) = (*blocks[a][b])(r, s);
  return {chi_from_choi(j), false, 0};
}

CMatrix chi_from_choi(const CMatrix& choi) {
  const std::size_t d2 = choi.rows();
  const std::size_t d = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(d2))));
  if (d * d != d2) throw ConfigError("chi_from_choi: Choi dimension is not a square");
  const CMatrix b = pauli_vec_basis(d);
  CMatrix chi = b.adjoint() * choi * b;
  chi *= 1.0 / static_cast<double>(d2);
  return chi;
}

CMatrix choi_from_chi(const CMatrix& chi) {
  const std::size_t d2 = chi.rows();
  const std::size_t d = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(d2))));
  if (d * d != d2) throw ConfigError("choi_from_chi: chi dimension is not a square");
  const CMatrix b = pauli_vec_basis(d);
  return b * chi * b.adjoint();
}

ProcessMap chi_of_channel(const KrausChannel& c) { return {chi_from_choi(choi(c)), false, 0}; }

ProcessMap chi_of_superoperator(const CMatrix& s, std::size_t dim) {
  if (s.rows() != dim * dim) throw ConfigError("chi_of_superoperator: dimension mismatch");
  CMatrix j(dim * dim, dim * dim);
  for (std::size_t a = 0; a < dim; ++a)
    for (std::size_t b = 0; b < dim; ++b) {
      CMatrix e(dim, dim);
      e(a, b) = 1.0;
      const CMatrix img = apply_superoperator(s, e);
      for (std::size_t r = 0; r < dim; ++r)
        for (std::size_t t = 0; t < dim; ++t) j(a * dim + r, b * dim + t) = img(r, t);
    }
  return {chi_from_choi(j), false, 0};
}

ProcessMap cptp_project(const ProcessMap& p, const CptpProjectOptions& opt) {
  const CMatrix j0 = hermitize(choi_from_chi(p.chi));
  const std::size_t d2 = j0.rows();
  const std::size_t d = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(d2))));
  CMatrix x = tp_project(j0, d);
  CMatrix pc(d2, d2), qc(d2, d2);
  int it = 0;
  double change = INFINITY;
  for (; it < opt.max_iter; ++it) {
    const CMatrix y = psd_clip(x + pc);
    pc = x + pc - y;
    const CMatrix xn = tp_project(y + qc, d);
    qc = y + qc - xn;
    change = std::max(max_abs_diff(xn, x), max_abs_diff(xn, y));
    x = xn;
    if (change < opt.tol) break;
  }
  if (change >= opt.tol) {
    throw NumericalError("cptp_project: no convergence after " + std::to_string(opt.max_iter) +
                         " iterations (residual " + std::to_string(change) + ")");
  }
  // x is exactly TP; remove the residual negativity by mixing in the
  // completely depolarizing Choi (I/d), which is also TP.
  x = hermitize(x);
  const double lmin = herm_eig(x).values.front();
  if (lmin < 0.0) {
    const double inv_d = 1.0 / static_cast<double>(d);
    const double t = -lmin / (inv_d - lmin);
    x = x * cplx{1.0 - t, 0.0} + CMatrix::identity(d2) * cplx{t * inv_d, 0.0};
  }
  return {chi_from_choi(x), true, it + 1};
}

CptpReport chi_cptp_report(const ProcessMap& p) {
  const CMatrix j = hermitize(choi_from_chi(p.chi));
  const std::size_t d = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(j.rows()))));
  CptpReport r;
  r.tp_residual = max_abs_diff(partial_trace(j, Subsystem::kFirst, d, d), CMatrix::identity(d));
  r.min_choi_eigenvalue = herm_eig(j).values.front();
  return r;
}

double process_fidelity(const ProcessMap& a, const ProcessMap& b) {
  if (a.chi.rows() != b.chi.rows()) throw ConfigError("process_fidelity: dimension mismatch");
  return std::clamp(uhlmann_fidelity(a.chi, b.chi), 0.0, 1.0);
}

double gate_fidelity(double fp, int dim) {
  if (dim < 1) throw ConfigError("gate_fidelity: dim must be positive");
  return (dim * fp + 1.0) / (dim + 1.0);
}

double gate_fidelity(const ProcessMap& a, const ProcessMap& b) {
  const int d = static_cast<int>(std::llround(std::sqrt(static_cast<double>(a.chi.rows()))));
  return gate_fidelity(process_fidelity(a, b), d);
}

}  // namespace qinstr
