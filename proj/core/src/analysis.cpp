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

#include "qinstr/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "qinstr/errors.hpp"
#include "qinstr/optimize.hpp"
#include "qinstr/parallel.hpp"
#include "qinstr/rng.hpp"

namespace qinstr {
namespace {

double mean_of(const std::vector<double>& v) {
  return v.empty() ? 0.0 : std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double sample_sigma(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double m = mean_of(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(v.size() - 1));
}

BootstrapResult summarize(std::vector<double> samples) {
  BootstrapResult r;
  r.mean = mean_of(samples);
  r.sigma = sample_sigma(samples);
  r.samples = std::move(samples);
  return r;
}

// Weighted linear least squares on the given basis columns. Returns the
// weighted residual sum of squares; `coef` receives the solution.
double linear_lsq(const std::vector<std::vector<double>>& basis, const std::vector<double>& y,
                  const std::vector<double>& w, std::vector<double>& coef) {
  const std::size_t k = basis.size(), n = y.size();
  std::vector<std::vector<double>> ata(k, std::vector<double>(k, 0.0));
  std::vector<double> atb(k, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t a = 0; a < k; ++a) {
      atb[a] += w[i] * basis[a][i] * y[i];
      for (std::size_t b = 0; b < k; ++b) ata[a][b] += w[i] * basis[a][i] * basis[b][i];
    }
  }
  if (!solve_spd(ata, atb, coef)) return INFINITY;
  double rss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double f = 0.0;
    for (std::size_t a = 0; a < k; ++a) f += coef[a] * basis[a][i];
    rss += w[i] * (y[i] - f) * (y[i] - f);
  }
  return rss;
}

// Minimizes f over a sorted grid, then refines between the neighbours of
// the best grid point.
double grid_then_golden(const std::function<double(double)>& f, const std::vector<double>& grid) {
  std::size_t best = 0;
  double fbest = INFINITY;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double v = f(grid[i]);
    if (v < fbest) {
      fbest = v;
      best = i;
    }
  }
  const double lo = grid[best == 0 ? 0 : best - 1];
  const double hi = grid[std::min(best + 1, grid.size() - 1)];
  if (hi <= lo) return grid[best];
  const double x = golden_section(f, lo, hi, 1e-14 * std::max(1.0, std::abs(hi)));
  return f(x) <= fbest ? x : grid[best];
}

bool is_flat(const std::vector<double>& y) {
  const auto [mn, mx] = std::minmax_element(y.begin(), y.end());
  return *mx - *mn < 1e-9;
}

}  // namespace

void validate(const BootstrapConfig& cfg) {
  if (cfg.n_samp < 1 || cfg.N_samp < 1) throw ConfigError("BootstrapConfig: counts must be >= 1");
}

BootstrapResult bootstrap_state(const std::vector<DensityMatrix>& dms, const BootstrapConfig& cfg,
                                const DensityMatrix& reference) {
  validate(cfg);
  if (dms.empty()) throw ConfigError("bootstrap_state: no density matrices");
  const std::size_t dim = dms.front().dim();
  for (const auto& d : dms)
    if (d.dim() != dim) throw ConfigError("bootstrap_state: mixed dimensions");
  std::vector<double> samples(cfg.N_samp);
  parallel_for(cfg.N_samp, [&](std::size_t rep) {
    auto rng = make_rng(cfg.seed, rep);
    CMatrix sum(dim, dim);
    for (int s = 0; s < cfg.n_samp; ++s) sum += dms[uniform_index(rng, dms.size())].mat();
    sum *= 1.0 / cfg.n_samp;
    const CMatrix target = dim == 4 ? partial_trace(sum, Subsystem::kFirst) : sum;
    samples[rep] = state_fidelity(DensityMatrix::trusted(target), reference);
  });
  return summarize(std::move(samples));
}

BootstrapResult bootstrap_process(const std::vector<std::vector<CMatrix>>& outputs,
                                  const BootstrapConfig& cfg, const ProcessMap& reference) {
  validate(cfg);
  if (outputs.size() != 4) throw ConfigError("bootstrap_process: need four input-state groups");
  for (const auto& g : outputs)
    if (g.empty()) throw ConfigError("bootstrap_process: empty input-state group");
  std::vector<double> samples(cfg.N_samp);
  parallel_for(cfg.N_samp, [&](std::size_t rep) {
    auto rng = make_rng(cfg.seed, rep);
    std::vector<CMatrix> mappings;
    for (const auto& group : outputs) {
      CMatrix sum(2, 2);
      for (int s = 0; s < cfg.n_samp; ++s) sum += group[uniform_index(rng, group.size())];
      sum *= 1.0 / cfg.n_samp;
      mappings.push_back(std::move(sum));
    }
    samples[rep] = process_fidelity(cptp_project(process_tomography(mappings)), reference);
  });
  return summarize(std::move(samples));
}

RbFit rb_fit(const std::vector<double>& m, const std::vector<double>& survival,
             const std::vector<double>& weights) {
  const std::size_t n = m.size();
  if (n < 3) throw ConfigError("rb_fit: need at least 3 sequence lengths");
  if (survival.size() != n || (!weights.empty() && weights.size() != n)) {
    throw ConfigError("rb_fit: input lengths differ");
  }
  const std::vector<double> w = weights.empty() ? std::vector<double>(n, 1.0) : weights;
  const std::vector<double> ones(n, 1.0);

  auto profile = [&](double p, std::vector<double>& coef) {
    std::vector<double> pm(n);
    for (std::size_t i = 0; i < n; ++i) pm[i] = std::pow(p, m[i]);
    double rss = linear_lsq({pm, ones}, survival, w, coef);
    if (!std::isfinite(rss)) {
      // p^m constant over the data: only the sum A + B is identifiable.
      std::vector<double> c1;
      rss = linear_lsq({ones}, survival, w, c1);
      coef = {0.0, c1.empty() ? 0.0 : c1[0]};
    }
    return rss;
  };
  auto objective = [&](double p) {
    std::vector<double> c;
    return profile(p, c);
  };

  std::vector<double> grid;
  for (int i = 1; i < 1000; ++i) grid.push_back(i / 1000.0);
  for (double u = -3.0; u >= -9.0; u -= 0.05) grid.push_back(1.0 - std::pow(10.0, u));
  grid.push_back(1.0);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  const double p = grid_then_golden(objective, grid);
  if (!(p > 0.0 && p <= 1.0)) throw NumericalError("rb_fit: decay parameter outside (0,1]");
  std::vector<double> coef;
  const double rss = profile(p, coef);
  if (!std::isfinite(rss)) throw NumericalError("rb_fit: least squares failed");

  RbFit fit;
  fit.A = coef[0];
  fit.B = coef[1];
  fit.p = p;
  fit.chi2 = rss;

  // Covariance (J^T W J)^{-1} scaled by the reduced chi-square.
  std::vector<std::vector<double>> jtj(3, std::vector<double>(3, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    const double row[3] = {std::pow(p, m[i]), fit.A * m[i] * std::pow(p, m[i] - 1.0), 1.0};
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) jtj[a][b] += w[i] * row[a] * row[b];
  }
  const double scale = n > 3 ? rss / static_cast<double>(n - 3) : 0.0;
  double sig[3] = {0.0, 0.0, 0.0};
  for (int a = 0; a < 3; ++a) {
    std::vector<double> e(3, 0.0), col;
    e[a] = 1.0;
    if (solve_spd(jtj, e, col)) sig[a] = std::sqrt(std::max(col[a] * scale, 0.0));
  }
  fit.sigma_A = sig[0];
  fit.sigma_p = sig[1];
  fit.sigma_B = sig[2];
  return fit;
}

CliffordErrors clifford_errors(double p_ref, std::optional<double> p_gate, CliffordMode mode) {
  if (!(p_ref > 0.0 && p_ref <= 1.0)) throw ConfigError("clifford_errors: p_ref outside (0,1]");
  const bool two = mode == CliffordMode::k2q || mode == CliffordMode::kInterleaved2q;
  const bool interleaved =
      mode == CliffordMode::kInterleaved1q || mode == CliffordMode::kInterleaved2q;
  const double factor = two ? 0.75 : 0.5;
  double ratio = p_ref;
  if (interleaved) {
    if (!p_gate) throw ConfigError("clifford_errors: interleaved mode needs p_gate");
    if (!(*p_gate > 0.0 && *p_gate <= 1.0)) throw ConfigError("clifford_errors: p_gate outside (0,1]");
    ratio = *p_gate / p_ref;
  }
  CliffordErrors e;
  e.error = factor * (1.0 - ratio);
  e.fidelity = 1.0 - e.error;
  return e;
}

double decay_from_error(double error, int n_qubits) {
  const double d = std::ldexp(1.0, n_qubits);
  return 1.0 - error * d / (d - 1.0);
}

const std::vector<CMatrix>& clifford_group_1q() {
  static const std::vector<CMatrix> group = [] {
    const CMatrix gens[2] = {hadamard(), CMatrix(2, 2, {1, 0, 0, cplx{0, 1}})};
    std::vector<CMatrix> found{CMatrix::identity(2)};
    for (std::size_t head = 0; head < found.size(); ++head) {
      for (const auto& g : gens) {
        CMatrix c = g * found[head];
        const bool seen = std::any_of(found.begin(), found.end(), [&](const CMatrix& f) {
          return phase_insensitive_distance(f, c) < 1e-9;
        });
        if (!seen) found.push_back(std::move(c));
      }
    }
    return found;
  }();
  return group;
}

RbCurve simulate_rb_1q(const RbNoise& noise, const std::vector<int>& lengths, int k,
                       std::uint64_t seed) {
  if (k < 1) throw ConfigError("simulate_rb_1q: k must be >= 1");
  for (int m : lengths)
    if (m < 0) throw ConfigError("simulate_rb_1q: negative sequence length");
  const auto& group = clifford_group_1q();
  const std::size_t g = group.size();

  std::vector<std::vector<std::size_t>> table(g, std::vector<std::size_t>(g));
  for (std::size_t a = 0; a < g; ++a)
    for (std::size_t b = 0; b < g; ++b) {
      const CMatrix prod = group[a] * group[b];
      for (std::size_t c = 0; c < g; ++c)
        if (phase_insensitive_distance(prod, group[c]) < 1e-9) table[a][b] = c;
    }
  std::vector<std::size_t> inverse(g);
  for (std::size_t a = 0; a < g; ++a)
    for (std::size_t b = 0; b < g; ++b)
      if (table[b][a] == 0) inverse[a] = b;

  // Noisy superoperator of each Clifford.
  std::vector<CMatrix> sup(g);
  for (std::size_t c = 0; c < g; ++c) {
    CMatrix s = unitary_superoperator(group[c]);
    if (noise.params) {
      Moment mom;
      auto [px, vz] = merge_unitary(group[c], 0);
      mom.ops = {vz, px};
      s = moment_superoperator(mom, 1, *noise.params);
    }
    if (noise.depolarizing) {
      const double lam = *noise.depolarizing;
      if (!(lam >= 0.0 && lam <= 1.0)) throw ConfigError("simulate_rb_1q: lambda outside [0,1]");
      // rho -> lam rho + (1 - lam) Tr(rho) I/2
      CMatrix dep = CMatrix::identity(4) * cplx{lam, 0.0};
      const double half = 0.5 * (1.0 - lam);
      for (int out : {0, 3})
        for (int in : {0, 3}) dep(out, in) += half;
      s = dep * s;
    }
    sup[c] = std::move(s);
  }

  RbCurve curve;
  curve.lengths = lengths;
  std::vector<double> values(lengths.size() * k);
  parallel_for(values.size(), [&](std::size_t job) {
    const std::size_t li = job / k;
    auto rng = make_rng(seed, job);
    std::vector<cplx> v = {1.0, 0.0, 0.0, 0.0};
    std::size_t total = 0;
    for (int i = 0; i < lengths[li]; ++i) {
      const std::size_t c = uniform_index(rng, g);
      v = qinstr::apply(sup[c], v);
      total = table[c][total];
    }
    v = qinstr::apply(sup[inverse[total]], v);
    values[job] = v[0].real();
  });
  for (std::size_t li = 0; li < lengths.size(); ++li) {
    std::vector<double> vals(values.begin() + li * k, values.begin() + (li + 1) * k);
    curve.mean.push_back(mean_of(vals));
    curve.sigma.push_back(sample_sigma(vals));
  }
  return curve;
}

ExpFit fit_exponential(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 3) throw ConfigError("fit_exponential: need >= 3 points");
  ExpFit fit;
  const std::vector<double> w(x.size(), 1.0), ones(x.size(), 1.0);
  if (is_flat(y)) {
    fit.offset = mean_of(y);
    return fit;
  }
  const auto [xmin, xmax] = std::minmax_element(x.begin(), x.end());
  const double span = std::max(*xmax - *xmin, 1e-12);
  auto rss_at = [&](double log_tau, std::vector<double>& coef) {
    const double tau = std::exp(log_tau);
    std::vector<double> e(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) e[i] = std::exp(-(x[i] - *xmin) / tau);
    return linear_lsq({e, ones}, y, w, coef);
  };
  auto objective = [&](double lt) {
    std::vector<double> c;
    return rss_at(lt, c);
  };
  std::vector<double> grid;
  const double lo = std::log(span * 1e-3), hi = std::log(span * 1e4);
  for (int i = 0; i <= 700; ++i) grid.push_back(lo + (hi - lo) * i / 700.0);
  const double lt = grid_then_golden(objective, grid);
  std::vector<double> coef;
  rss_at(lt, coef);
  fit.tau = std::exp(lt);
  // Shift the amplitude back to x = 0.
  fit.amplitude = coef[0] * std::exp(*xmin / fit.tau);
  fit.offset = coef[1];
  fit.decay_detected = lt < hi - 1e-6 && std::abs(coef[0]) > 1e-9;
  return fit;
}

double DampedSineFit::period() const { return omega > 0.0 ? 2.0 * M_PI / omega : INFINITY; }

DampedSineFit fit_damped_sine(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 5) throw ConfigError("fit_damped_sine: need >= 5 points");
  const std::size_t n = x.size();
  const std::vector<double> w(n, 1.0), ones(n, 1.0);
  auto solve = [&](double gamma, double omega, std::vector<double>& coef) {
    std::vector<double> c(n), s(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double env = std::exp(-gamma * x[i]);
      c[i] = env * std::cos(omega * x[i]);
      s[i] = env * std::sin(omega * x[i]);
    }
    return linear_lsq({ones, c, s}, y, w, coef);
  };

  const auto [xmin, xmax] = std::minmax_element(x.begin(), x.end());
  const double span = std::max(*xmax - *xmin, 1e-12);
  double dx = span;
  for (std::size_t i = 1; i < n; ++i) dx = std::min(dx, std::abs(x[i] - x[i - 1]) > 0 ? std::abs(x[i] - x[i - 1]) : dx);
  const double omega_max = M_PI / dx;

  double best = INFINITY, bg = 0.0, bw = 0.0;
  std::vector<double> coef;
  std::vector<double> gammas = {0.0};
  for (int i = 0; i <= 24; ++i) gammas.push_back(std::pow(10.0, -4.0 + 4.0 * i / 24.0) * 10.0 / span);
  const int n_omega = 600;
  for (double g : gammas) {
    for (int j = 1; j <= n_omega; ++j) {
      const double om = omega_max * j / n_omega;
      const double r = solve(g, om, coef);
      if (r < best) {
        best = r;
        bg = g;
        bw = om;
      }
    }
  }
  auto objective = [&](const std::vector<double>& p) -> double {
    if (p[0] < 0.0 || p[1] <= 0.0 || p[1] > omega_max) return INFINITY;
    std::vector<double> c;
    return solve(p[0], p[1], c);
  };
  NelderMeadOptions opt;
  opt.initial_step = 0.01;
  opt.f_tol = 1e-16;
  opt.x_tol = 1e-12;
  const MinimizeResult r = nelder_mead_restarts(objective, {bg, bw}, 3, opt);
  DampedSineFit fit;
  fit.gamma = r.f < best ? r.x[0] : bg;
  fit.omega = r.f < best ? r.x[1] : bw;
  fit.rss = solve(fit.gamma, fit.omega, coef);
  fit.offset = coef[0];
  fit.cos_amp = coef[1];
  fit.sin_amp = coef[2];
  return fit;
}

AmplificationSeries cz_phase_error_amplification(const PhaseErrors& err, int n_max,
                                                 const NoiseParams& np) {
  if (n_max < 1) throw ConfigError("cz_phase_error_amplification: n_max must be >= 1");
  Moment cz;
  cz.tag = "CZ";
  cz.ops.push_back(GateOp::cz_general(0, 1, err.phi01, err.phi10, M_PI + err.phi11));
  Moment pad;
  pad.tag = "pad";
  pad.ops = {GateOp::phased_x(0, 0.0, 0.0), GateOp::phased_x(1, 0.0, 0.0)};
  const CMatrix block = moment_superoperator(pad, 2, np) * moment_superoperator(cz, 2, np);
  const CMatrix cz_ideal = unitary_of(GateOp::cz(0, 1));

  AmplificationSeries out;
  CMatrix s = CMatrix::identity(16);
  CMatrix ideal = CMatrix::identity(4);
  for (int k = 1; k <= 2 * n_max; ++k) {
    s = block * s;
    ideal = cz_ideal * ideal;
    const ProcessMap actual = chi_of_superoperator(s, 4);
    const ProcessMap reference = chi_of_channel(unitary_channel(ideal));
    const double fp = process_fidelity(actual, reference);
    out.cz_count.push_back(k);
    out.process_fidelity.push_back(fp);
    out.gate_fidelity.push_back(gate_fidelity(fp, 4));
  }
  if (out.cz_count.size() >= 5 && !is_flat(out.gate_fidelity)) {
    std::vector<double> x(out.cz_count.begin(), out.cz_count.end());
    out.fit = fit_damped_sine(x, out.gate_fidelity);
  }
  return out;
}

EffectiveCoherence effective_coherence(const std::vector<double>& gate_counts,
                                       const std::vector<double>& signal, CoherenceKind kind,
                                       double window_ns) {
  if (gate_counts.size() != signal.size() || gate_counts.size() < 5) {
    throw ConfigError("effective_coherence: need >= 5 points");
  }
  if (!(window_ns > 0.0)) throw ConfigError("effective_coherence: window must be positive");
  EffectiveCoherence out;
  if (is_flat(signal)) return out;
  if (kind == CoherenceKind::kT1Like) {
    const ExpFit f = fit_exponential(gate_counts, signal);
    out.decay_detected = f.decay_detected;
    out.n_char = f.tau;
  } else {
    const DampedSineFit f = fit_damped_sine(gate_counts, signal);
    out.decay_detected = f.gamma > 1e-12 && std::hypot(f.cos_amp, f.sin_amp) > 1e-9;
    out.n_char = out.decay_detected ? 1.0 / f.gamma : INFINITY;
  }
  if (!out.decay_detected) {
    out.n_char = 0.0;
    return out;
  }
  out.t_us = out.n_char * window_ns * 1e-3;
  return out;
}

std::vector<ConvergencePoint> qme_convergence(const std::vector<DensityMatrix>& joints,
                                              const std::vector<int>& r_grid,
                                              const DensityMatrix& reference) {
  std::vector<int> grid = r_grid;
  std::sort(grid.begin(), grid.end());
  for (int r : grid) {
    if (r < 1 || static_cast<std::size_t>(r) > joints.size()) {
      throw ConfigError("qme_convergence: r=" + std::to_string(r) + " outside [1, " +
                        std::to_string(joints.size()) + "]");
    }
  }
  std::vector<ConvergencePoint> out;
  CMatrix sum(4, 4);
  int used = 0;
  for (int r : grid) {
    for (; used < r; ++used) {
      if (joints[used].dim() != 4) throw ConfigError("qme_convergence: joint states must be 4x4");
      sum += joints[used].mat();
    }
    CMatrix avg = sum;
    avg *= 1.0 / r;
    const DensityMatrix omega = DensityMatrix::trusted(avg);
    ConvergencePoint p;
    p.r = r;
    p.fidelity = state_fidelity(reduce(omega, Subsystem::kFirst), reference);
    p.concurrence = concurrence(omega);
    p.mutual_information = mutual_information(omega);
    out.push_back(p);
  }
  return out;
}

}  // namespace qinstr
