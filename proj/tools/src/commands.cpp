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

#include "qinstr_cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qinstr/analysis.hpp"
#include "qinstr/circuit.hpp"
#include "qinstr/dme.hpp"
#include "qinstr/errors.hpp"
#include "qinstr/noise.hpp"
#include "qinstr/parallel.hpp"
#include "qinstr/rng.hpp"
#include "qinstr/tomography.hpp"

namespace qinstr::cli {
namespace {

// Seed streams used by the commands; distinct so no two consumers share draws.
enum SeedStream : std::uint64_t {
  kMaskStream = 1,
  kBootstrapStream = 2,
  kTomographyStream = 3,
  kRbStream = 4,
};

std::uint64_t stream_seed(std::uint64_t base, SeedStream s, std::uint64_t point) {
  return derive_seed(derive_seed(base, s), point);
}

ReadoutModel readout_for(const CommonOptions& c, int n_qubits) {
  return c.readout_flip > 0.0 ? ReadoutModel::symmetric_flip(n_qubits, c.readout_flip)
                              : ReadoutModel::ideal(n_qubits);
}

json series_column(const std::vector<double>& v) { return json(v); }

void push_bloch(json& series, const std::string& prefix, const DensityMatrix& m) {
  const BlochVector b = bloch(m);
  series[prefix + "_x"].push_back(b.x);
  series[prefix + "_y"].push_back(b.y);
  series[prefix + "_z"].push_back(b.z);
}

DmeConfig make_config(const std::string& rho, const std::string& sigma, int steps, double theta) {
  DmeConfig cfg;
  cfg.rho_in = pure_state(rho);
  cfg.sigma_in = pure_state(sigma);
  cfg.steps = steps;
  cfg.theta = theta;
  validate(cfg);
  return cfg;
}

// Joint output of one mask, noisy when the model has finite lifetimes.
DensityMatrix mask_output(const DmeConfig& cfg, const QmeMask& mask, const NoiseParams& np) {
  if (np.is_noiseless()) return dme2_single(cfg, mask).joint.back();
  return simulate_noisy(build_dme2_circuit(cfg, mask), tensor(cfg.sigma_in, cfg.rho_in), np);
}

DensityMatrix averaged_output(const DmeConfig& cfg, const NoiseParams& np) {
  return np.is_noiseless() ? dme2_average(cfg).joint.back() : noisy_dme2_average(cfg, np);
}

ProcessMap map_from_outputs(const std::vector<CMatrix>& outs) {
  return cptp_project(process_tomography(outs));
}

ProcessMap ideal_process(const DensityMatrix& rho, double theta) {
  return chi_of_channel(unitary_channel(expm_herm(rho.mat(), theta)));
}

std::vector<std::string> resolve_instructions(const std::vector<std::string>& given) {
  if (given.empty()) return cardinal_names();
  for (const auto& s : given) pure_state(s);  // validates the name
  return given;
}

}  // namespace

json cmd_trajectory(const CommonOptions& c, const TrajectoryOptions& o) {
  if (o.steps < 0) throw ConfigError("trajectory: steps must be >= 0");
  const DensityMatrix rho = pure_state(o.rho_in);
  const DensityMatrix sigma = pure_state(o.sigma_in);
  const NoiseParams np = resolve_noise(c.noise);
  json series = json::object();
  json payload = json::object();

  if (o.steps == 0) {
    series["n"] = json::array({0});
    push_bloch(series, "sigma", sigma);
    push_bloch(series, "rho", rho);
    series["fidelity_ideal"] = json::array({1.0});
    payload["series"] = std::move(series);
    payload["final"] = json{{"sigma", to_json(sigma)}, {"rho", to_json(rho)}};
    return payload;
  }

  DmeConfig cfg = make_config(o.rho_in, o.sigma_in, o.steps, o.theta);
  std::vector<DensityMatrix> sig, rh, joint;
  bool mixed = false;
  if (o.mode == "refresh") {
    sig = dme_refresh(cfg);
    for (const auto& s : sig) {
      rh.push_back(rho);
      joint.push_back(tensor(s, rho));
    }
  } else {
    Dme2Trajectory t;
    if (o.mode == "enumerate") {
      t = dme2_enumerate(cfg);
    } else if (o.mode == "average") {
      t = dme2_average(cfg);
    } else if (o.mode == "sample") {
      if (o.r <= 0) throw ConfigError("trajectory: sample mode needs --r > 0");
      t = dme2_sample(cfg, o.r, stream_seed(c.seed, kMaskStream, 0), o.unique).average;
    } else {
      throw ConfigError("trajectory: unknown mode '" + o.mode + "'");
    }
    sig = std::move(t.sigma);
    rh = std::move(t.rho);
    joint = std::move(t.joint);
    mixed = t.instruction_mixed;
  }

  for (int n = 0; n <= o.steps; ++n) {
    series["n"].push_back(n);
    push_bloch(series, "sigma", sig[n]);
    push_bloch(series, "rho", rh[n]);
    series["fidelity_ideal"].push_back(
        state_fidelity(sig[n], ideal_target(rho, sigma, n * cfg.delta())));
  }

  std::vector<DensityMatrix> measured_joint = joint;
  if (!np.is_noiseless()) {
    measured_joint = noisy_dme2_trajectory(cfg, np);
    for (int n = 0; n <= o.steps; ++n) {
      const DensityMatrix s = reduce(measured_joint[n], Subsystem::kFirst);
      push_bloch(series, "noisy_sigma", s);
      push_bloch(series, "noisy_rho", reduce(measured_joint[n], Subsystem::kSecond));
      series["noisy_fidelity_ideal"].push_back(
          state_fidelity(s, ideal_target(rho, sigma, n * cfg.delta())));
    }
  }

  if (c.shots > 0) {
    const ReadoutModel rm = readout_for(c, 2);
    std::vector<DensityMatrix> tomo(o.steps + 1);
    parallel_for(tomo.size(), [&](std::size_t n) {
      tomo[n] = tomograph(measured_joint[n], c.shots, rm, stream_seed(c.seed, kTomographyStream, n))
                    .rho;
    });
    for (int n = 0; n <= o.steps; ++n) {
      const DensityMatrix s = reduce(tomo[n], Subsystem::kFirst);
      push_bloch(series, "tomo_sigma", s);
      push_bloch(series, "tomo_rho", reduce(tomo[n], Subsystem::kSecond));
      series["tomo_fidelity_ideal"].push_back(
          state_fidelity(s, ideal_target(rho, sigma, n * cfg.delta())));
    }
  }

  payload["series"] = std::move(series);
  payload["instruction_mixed"] = mixed;
  payload["final"] = json{{"sigma", to_json(sig.back())},
                          {"rho", to_json(rh.back())},
                          {"joint", to_json(joint.back())}};
  return payload;
}

json cmd_sweep_n(const CommonOptions& c, const SweepOptions& o) {
  if (o.n_min < 1 || o.n_max < o.n_min) throw ConfigError("sweep-n: need 1 <= n_min <= n_max");
  if (o.r < 0) throw ConfigError("sweep-n: r must be >= 0");
  const NoiseParams np = resolve_noise(c.noise);
  const DensityMatrix rho = pure_state(o.rho_in);
  const DensityMatrix sigma = pure_state(o.sigma_in);
  const DensityMatrix ideal = ideal_target(rho, sigma, o.theta);
  const ReadoutModel rm = readout_for(c, 2);

  struct Point {
    int n = 0;
    std::size_t depth = 0;
    double f_refresh = 0, f_dme2 = 0, f_noisy = 0, f_noisy_vs_dme2 = 0;
    double boot_mean = NAN, boot_sigma = NAN, f_tomo = NAN;
  };
  const int count = o.n_max - o.n_min + 1;
  std::vector<Point> pts(count);

  parallel_for(count, [&](std::size_t i) {
    Point& p = pts[i];
    p.n = o.n_min + static_cast<int>(i);
    const DmeConfig cfg = make_config(o.rho_in, o.sigma_in, p.n, o.theta);
    p.depth = depth(build_dme2_circuit(cfg, QmeMask(p.n, false)));
    const DensityMatrix clean = dme2_average(cfg).sigma.back();
    const DensityMatrix noisy_joint = averaged_output(cfg, np);
    const DensityMatrix noisy = reduce(noisy_joint, Subsystem::kFirst);
    p.f_refresh = state_fidelity(dme_refresh(cfg).back(), ideal);
    p.f_dme2 = state_fidelity(clean, ideal);
    p.f_noisy = state_fidelity(noisy, ideal);
    p.f_noisy_vs_dme2 = state_fidelity(noisy, clean);
    if (o.r > 0) {
      std::vector<DensityMatrix> joints;
      joints.reserve(o.r);
      const std::uint64_t ms = stream_seed(c.seed, kMaskStream, p.n);
      for (int k = 0; k < o.r; ++k) joints.push_back(mask_output(cfg, sample_mask(p.n, ms, k), np));
      const BootstrapResult b = bootstrap_state(
          joints, {o.n_samp, o.N_samp, stream_seed(c.seed, kBootstrapStream, p.n)}, ideal);
      p.boot_mean = b.mean;
      p.boot_sigma = b.sigma;
    }
    if (c.shots > 0) {
      const TomographyResult t =
          tomograph(noisy_joint, c.shots, rm, stream_seed(c.seed, kTomographyStream, p.n));
      p.f_tomo = state_fidelity(reduce(t.rho, Subsystem::kFirst), ideal);
    }
  });

  json series = json::object();
  int argmax = pts.front().n;
  double best = -1.0;
  for (const auto& p : pts) {
    series["n"].push_back(p.n);
    series["depth"].push_back(p.depth);
    series["fidelity_refresh"].push_back(p.f_refresh);
    series["fidelity_dme2"].push_back(p.f_dme2);
    series["fidelity_noisy"].push_back(p.f_noisy);
    series["fidelity_noisy_vs_dme2"].push_back(p.f_noisy_vs_dme2);
    if (o.r > 0) {
      series["bootstrap_mean"].push_back(p.boot_mean);
      series["bootstrap_sigma"].push_back(p.boot_sigma);
    }
    if (c.shots > 0) series["fidelity_tomography"].push_back(p.f_tomo);
    if (p.f_noisy > best + 1e-12) {
      best = p.f_noisy;
      argmax = p.n;
    }
  }
  return json{{"series", std::move(series)},
              {"argmax_n", argmax},
              {"max_fidelity", best},
              {"ideal", to_json(ideal)}};
}

json cmd_process(const CommonOptions& c, const ProcessOptions& o) {
  if (o.n_max < 1) throw ConfigError("process: n_max must be >= 1");
  if (o.r < 0) throw ConfigError("process: r must be >= 0");
  const NoiseParams np = resolve_noise(c.noise);
  const std::vector<std::string> instr = resolve_instructions(o.instructions);
  const auto& inputs = process_input_names();
  const ReadoutModel rm = readout_for(c, 1);

  // fp[i][n-1]: projected map at N = n versus the ideal rotation.
  std::vector<std::vector<double>> fp(instr.size(), std::vector<double>(o.n_max));
  parallel_for(instr.size() * o.n_max, [&](std::size_t job) {
    const std::size_t i = job / o.n_max;
    const int n = static_cast<int>(job % o.n_max) + 1;
    const ProcessMap ideal = ideal_process(pure_state(instr[i]), o.theta);
    std::vector<CMatrix> outs;
    for (std::size_t k = 0; k < inputs.size(); ++k) {
      const DmeConfig cfg = make_config(instr[i], inputs[k], n, o.theta);
      DensityMatrix out = reduce(averaged_output(cfg, np), Subsystem::kFirst);
      if (c.shots > 0) {
        const std::uint64_t s =
            stream_seed(c.seed, kTomographyStream, (job * inputs.size() + k));
        out = tomograph(out, c.shots, rm, s).rho;
      }
      outs.push_back(out.mat());
    }
    fp[i][n - 1] = process_fidelity(map_from_outputs(outs), ideal);
  });

  json per = json::array();
  double n_opt_sum = 0.0;
  for (std::size_t i = 0; i < instr.size(); ++i) {
    const auto it = std::max_element(fp[i].begin(), fp[i].end());
    const int n_opt = static_cast<int>(it - fp[i].begin()) + 1;
    n_opt_sum += n_opt;
    const DensityMatrix rho = pure_state(instr[i]);
    const ProcessMap ideal = ideal_process(rho, o.theta);

    std::vector<CMatrix> measured, dme, dme2;
    std::vector<std::vector<CMatrix>> per_mask(inputs.size());
    for (std::size_t k = 0; k < inputs.size(); ++k) {
      const DmeConfig cfg = make_config(instr[i], inputs[k], n_opt, o.theta);
      measured.push_back(reduce(averaged_output(cfg, np), Subsystem::kFirst).mat());
      dme.push_back(dme_refresh(cfg).back().mat());
      dme2.push_back(dme2_average(cfg).sigma.back().mat());
      const std::uint64_t ms = stream_seed(c.seed, kMaskStream, i * 8 + k);
      for (int m = 0; m < o.r; ++m) {
        per_mask[k].push_back(
            reduce(mask_output(cfg, sample_mask(n_opt, ms, m), np), Subsystem::kFirst).mat());
      }
    }
    const ProcessMap chi = map_from_outputs(measured);
    json rec{{"rho_in", instr[i]},
             {"n_opt", n_opt},
             {"n_opt_is_sentinel", n_opt == o.n_max},
             {"fp_ideal", process_fidelity(chi, ideal)},
             {"fp_dme", process_fidelity(chi, map_from_outputs(dme))},
             {"fp_dme2", process_fidelity(chi, map_from_outputs(dme2))},
             {"fp_curve", fp[i]},
             {"chi", to_json(chi)},
             {"chi_ideal", to_json(ideal)}};
    if (o.r > 0) {
      const BootstrapResult b = bootstrap_process(
          per_mask, {o.n_samp, o.N_samp, stream_seed(c.seed, kBootstrapStream, i)}, ideal);
      rec["bootstrap_mean"] = b.mean;
      rec["bootstrap_sigma"] = b.sigma;
    }
    per.push_back(std::move(rec));
  }

  json series = json::object();
  for (int n = 1; n <= o.n_max; ++n) series["n"].push_back(n);
  for (std::size_t i = 0; i < instr.size(); ++i) series["fp_" + instr[i]] = series_column(fp[i]);
  const double mean_n_opt = n_opt_sum / static_cast<double>(instr.size());
  return json{{"series", std::move(series)},
              {"instructions", std::move(per)},
              {"mean_n_opt", mean_n_opt},
              {"mean_n_opt_rounded", std::lround(mean_n_opt)}};
}

json cmd_compile(const CommonOptions& c, const CompileOptions& o) {
  json payload = json::object();
  Circuit circ;
  if (o.steps > 0) {
    const DmeConfig cfg = make_config(o.rho_in, "0", o.steps, o.theta);
    QmeMask mask;
    if (o.mask.empty()) {
      mask = sample_mask(o.steps, stream_seed(c.seed, kMaskStream, 0), 0);
    } else {
      if (static_cast<int>(o.mask.size()) != o.steps) {
        throw ConfigError("compile: mask length must equal steps");
      }
      for (char ch : o.mask) {
        if (ch != '0' && ch != '1') throw ConfigError("compile: mask must contain only 0/1");
        mask.push_back(ch == '1');
      }
    }
    circ = build_dme2_circuit(cfg, mask);
    const Circuit ref = build_dme2_circuit_unmerged(cfg, mask);
    std::string bits;
    for (bool b : mask) bits.push_back(b ? '1' : '0');
    payload["mask"] = bits;
    payload["delta"] = cfg.delta();
    payload["unmerged_depth"] = depth(ref);
    payload["merge_distance"] = phase_insensitive_distance(circuit_unitary(circ), circuit_unitary(ref));
  } else {
    if (!o.delta) throw ConfigError("compile: give --delta or --steps");
    circ = decompose_dswap(*o.delta);
    payload["delta"] = *o.delta;
    payload["target_distance"] =
        phase_insensitive_distance(circuit_unitary(circ), swap_pow_matrix(*o.delta));
  }
  payload["depth"] = depth(circ);
  payload["cz_count"] = count_kind(circ, GateKind::kCZ);
  payload["circuit"] = to_json(circ);
  return payload;
}

json cmd_rb(const CommonOptions& c, const RbOptions& o) {
  CliffordMode mode;
  if (o.mode == "1q") {
    mode = o.p_gate ? CliffordMode::kInterleaved1q : CliffordMode::k1q;
  } else if (o.mode == "2q") {
    mode = o.p_gate ? CliffordMode::kInterleaved2q : CliffordMode::k2q;
  } else {
    throw ConfigError("rb: mode must be 1q or 2q");
  }
  if (o.p_ref) {
    const CliffordErrors e = clifford_errors(*o.p_ref, o.p_gate, mode);
    json p{{"metric", "clifford_error"}, {"p_ref", *o.p_ref}, {"error", e.error},
           {"fidelity", e.fidelity}};
    if (o.p_gate) p["p_gate"] = *o.p_gate;
    return p;
  }
  if (o.mode != "1q") throw ConfigError("rb: simulation is single-qubit only");

  RbNoise noise;
  noise.depolarizing = o.depolarizing;
  const NoiseParams np = resolve_noise(c.noise);
  if (!np.is_noiseless()) noise.params = np;
  const RbCurve curve = simulate_rb_1q(noise, o.lengths, o.k, stream_seed(c.seed, kRbStream, 0));

  std::vector<double> m(curve.lengths.begin(), curve.lengths.end()), w;
  for (double s : curve.sigma) w.push_back(s > 1e-12 ? 1.0 / (s * s) : 0.0);
  if (std::all_of(w.begin(), w.end(), [](double x) { return x == 0.0; })) w.clear();
  // Zero-variance points carry no usable weight; give them the largest one seen.
  if (!w.empty()) {
    const double wmax = *std::max_element(w.begin(), w.end());
    for (double& x : w) if (x == 0.0) x = wmax;
  }
  const RbFit fit = rb_fit(m, curve.mean, w);
  const CliffordErrors e = clifford_errors(fit.p, std::nullopt, CliffordMode::k1q);

  json series{{"m", curve.lengths}, {"mean", curve.mean}, {"sigma", curve.sigma}};
  return json{{"metric", "rb_survival"},
              {"x", curve.lengths},
              {"mean", curve.mean},
              {"sigma", curve.sigma},
              {"fit",
               {{"A", fit.A}, {"p", fit.p}, {"B", fit.B}, {"sigma_p", fit.sigma_p}, {"chi2", fit.chi2}}},
              {"error_per_clifford", e.error},
              {"fidelity", e.fidelity},
              {"seed", c.seed},
              {"series", std::move(series)}};
}

json cmd_cz_amplify(const CommonOptions& c, const AmplifyOptions& o) {
  const NoiseParams np = resolve_noise(c.noise);
  const AmplificationSeries s =
      cz_phase_error_amplification({o.phi01_err, o.phi10_err, o.phi11_err}, o.n_max, np);
  json fit = nullptr;
  if (s.fit) {
    fit = json{{"offset", s.fit->offset},   {"cos_amp", s.fit->cos_amp},
               {"sin_amp", s.fit->sin_amp}, {"gamma", s.fit->gamma},
               {"omega", s.fit->omega},     {"period", s.fit->period()},
               {"rss", s.fit->rss}};
  }
  json series{{"cz_count", s.cz_count},
              {"process_fidelity", s.process_fidelity},
              {"gate_fidelity", s.gate_fidelity}};
  return json{{"metric", "cz_gate_fidelity"},
              {"x", s.cz_count},
              {"mean", s.gate_fidelity},
              {"sigma", std::vector<double>(s.cz_count.size(), 0.0)},
              {"fit", std::move(fit)},
              {"seed", c.seed},
              {"series", std::move(series)}};
}

json cmd_noise_report(const CommonOptions& c, const NoiseReportOptions& o) {
  if (o.max_gates < 10) throw ConfigError("noise-report: max_gates must be >= 10");
  const NoiseParams np = resolve_noise(c.noise);
  json qubits = json::array();
  for (int q = 0; q < 2; ++q) {
    const QubitCoherence& qc = np.q[q];
    const Rates idle = rates_from(qc.t1_us, qc.t2r_us);
    const Rates eff = rates_from(qc.t1_eff_us, qc.t2r_eff_us);
    qubits.push_back(json{
        {"gamma1_per_s", idle.gamma1},
        {"gamma_phi_per_s", idle.gamma_phi},
        {"gamma1_eff_per_s", eff.gamma1},
        {"gamma_phi_eff_per_s", eff.gamma_phi},
        {"survival_per_1q_gate", std::exp(-idle.gamma1 * np.t_1qb_ns * 1e-9)},
        {"survival_per_cz", std::exp(-eff.gamma1 * np.cz_window_ns() * 1e-9)}});
  }

  std::vector<int> counts;
  const int step = std::max(1, o.max_gates / 60);
  for (int n = 0; n <= o.max_gates; n += step) counts.push_back(n);
  const std::vector<double> x(counts.begin(), counts.end());
  const std::vector<double> t1 = simulate_t1_like(np, counts);
  const std::vector<double> ramsey = simulate_ramsey_like(np, counts, o.ramsey_phase);
  const EffectiveCoherence e1 =
      effective_coherence(x, t1, CoherenceKind::kT1Like, np.cz_window_ns());
  const EffectiveCoherence e2 =
      effective_coherence(x, ramsey, CoherenceKind::kRamseyLike, np.cz_window_ns());
  auto coherence = [](const EffectiveCoherence& e) {
    return json{{"decay_detected", e.decay_detected}, {"n_char", e.n_char}, {"t_us", e.t_us}};
  };
  return json{{"noise", to_json(np)},
              {"qubits", std::move(qubits)},
              {"t1_like", coherence(e1)},
              {"ramsey_like", coherence(e2)},
              {"seed", c.seed},
              {"series", {{"cz_count", counts}, {"t1_like", t1}, {"ramsey_like", ramsey}}}};
}

}  // namespace qinstr::cli
