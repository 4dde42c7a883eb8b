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

#include "qinstr_cli/app.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <memory>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "qinstr/errors.hpp"
#include "qinstr_cli/angle.hpp"
#include "qinstr_cli/commands.hpp"

#ifndef QINSTR_VERSION
#define QINSTR_VERSION "unknown"
#endif

namespace qinstr::cli {
namespace {

// Flat JSON objects map keys to options ("rho_in" -> --rho-in) of the parsed
// subcommand; nested objects address subcommands by name.
class JsonConfig : public CLI::Config {
 public:
  explicit JsonConfig(const CLI::App* root) : root_(root) {}

  std::string to_config(const CLI::App*, bool, bool, std::string) const override { return "{}"; }

  std::vector<CLI::ConfigItem> from_config(std::istream& in) const override {
    json j;
    try {
      j = json::parse(in);
    } catch (const json::parse_error& e) {
      throw CLI::ConversionError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw CLI::ConversionError("config must be a JSON object");
    std::vector<CLI::ConfigItem> items;
    flatten(j, {}, items);
    // CLI11 reads config files on the root only; scope top-level keys to the
    // subcommand that was selected on the command line.
    const auto subs = root_->get_subcommands();
    if (!subs.empty()) {
      for (auto& item : items) {
        if (item.parents.empty()) item.parents.push_back(subs.front()->get_name());
      }
    }
    return items;
  }

 private:
  const CLI::App* root_;

  static std::string scalar(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    return v.dump();
  }

  static void flatten(const json& obj, const std::vector<std::string>& parents,
                      std::vector<CLI::ConfigItem>& items) {
    for (const auto& [key, value] : obj.items()) {
      std::string name = key;
      std::replace(name.begin(), name.end(), '_', '-');
      if (value.is_object()) {
        auto p = parents;
        p.push_back(key);
        flatten(value, p, items);
        continue;
      }
      CLI::ConfigItem item;
      item.parents = parents;
      item.name = name;
      if (value.is_array()) {
        for (const auto& v : value) item.inputs.push_back(scalar(v));
      } else {
        item.inputs.push_back(scalar(value));
      }
      items.push_back(std::move(item));
    }
  }
};

std::uint64_t parse_shots(const std::string& s) {
  if (s == "exact") return 0;
  try {
    std::size_t pos = 0;
    const long long v = std::stoll(s, &pos);
    if (pos == s.size() && v > 0) return static_cast<std::uint64_t>(v);
  } catch (const std::exception&) {
  }
  throw ConfigError("--shots must be 'exact' or a positive count, got '" + s + "'");
}

std::string cell(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

const char* const kEchoSkip[] = {"--help", "--config", "--out", "--format"};

// Every option of the subcommand with its effective value (as typed or default).
json echo_config(const CLI::App& sub) {
  json cfg = json::object();
  for (const CLI::Option* opt : sub.get_options()) {
    if (opt == sub.get_help_ptr() || opt == sub.get_config_ptr()) continue;
    const std::string name = opt->get_name(false, true);
    if (name.empty() || std::find(std::begin(kEchoSkip), std::end(kEchoSkip), name) != std::end(kEchoSkip)) {
      continue;
    }
    std::string key = name.substr(2);
    std::replace(key.begin(), key.end(), '-', '_');
    if (opt->count() > 0) {
      const auto& res = opt->results();
      if (res.size() == 1 && opt->get_expected_max() <= 1) {
        cfg[key] = res.front();
      } else {
        cfg[key] = res;
      }
    } else {
      cfg[key] = opt->get_default_str();
    }
  }
  return cfg;
}

class Cli {
 public:
  Cli() : app_("Quantum instruction (DME/DME2) simulation experiments", "qinstr") {
    app_.require_subcommand(1);
    app_.option_defaults()->always_capture_default();
    app_.set_version_flag("--version", QINSTR_VERSION);
    app_.config_formatter(std::make_shared<JsonConfig>(&app_));
    app_.set_config("--config", "", "JSON file with option values");

    auto* traj = add_sub("trajectory", "Bloch trajectories sigma(n), rho(n) of one protocol run");
    traj->add_option("--rho-in", traj_.rho_in, "Instruction state (0,1,+,-,+i,-i)");
    traj->add_option("--sigma-in", traj_.sigma_in, "Data state");
    traj->add_option("--steps", traj_.steps, "Number of steps N (0 echoes the inputs)");
    traj->add_option("--theta", traj_theta_, "Target angle (pi, pi/2, radians)");
    traj->add_option("--mode", traj_.mode, "refresh | enumerate | average | sample")
        ->check(CLI::IsMember({"refresh", "enumerate", "average", "sample"}));
    traj->add_option("--r", traj_.r, "Randomizations in sample mode");
    traj->add_flag("--unique", traj_.unique, "Sample distinct masks");

    auto* sweep = add_sub("sweep-n", "State fidelity versus total step count N");
    sweep->add_option("--rho-in", sweep_.rho_in, "Instruction state");
    sweep->add_option("--sigma-in", sweep_.sigma_in, "Data state");
    sweep->add_option("--theta", sweep_theta_, "Target angle");
    sweep->add_option("--n-min", sweep_.n_min, "Smallest N");
    sweep->add_option("--n-max", sweep_.n_max, "Largest N");
    sweep->add_option("--r", sweep_.r, "Randomizations per point for the bootstrap (0: off)");
    sweep->add_option("--n-samp", sweep_.n_samp, "Resamples per bootstrap matrix");
    sweep->add_option("--boot-reps", sweep_.N_samp, "Bootstrap repetitions");

    auto* proc = add_sub("process", "Process maps and N_opt per instruction state");
    proc->add_option("--instructions", proc_.instructions, "Instruction states (default: all six)");
    proc->add_option("--theta", proc_theta_, "Target angle");
    proc->add_option("--n-max", proc_.n_max, "Largest N in the sweep");
    proc->add_option("--r", proc_.r, "Randomizations per input for the bootstrap (0: off)");
    proc->add_option("--n-samp", proc_.n_samp, "Resamples per bootstrap mapping");
    proc->add_option("--boot-reps", proc_.N_samp, "Bootstrap repetitions");

    auto* comp = add_sub("compile", "Compile a partial SWAP or a full DME2 circuit");
    comp->add_option("--delta", comp_delta_, "Partial-swap angle of exp(-i delta SWAP)");
    comp->add_option("--steps", comp_.steps, "Compile N full steps instead");
    comp->add_option("--theta", comp_theta_, "Target angle for --steps");
    comp->add_option("--rho-in", comp_.rho_in, "Instruction state (sets the QME axis)");
    comp->add_option("--mask", comp_.mask, "QME coins as a 0/1 string (default: drawn)");

    auto* rb = add_sub("rb", "Single-qubit randomized benchmarking and error arithmetic");
    rb->add_option("--depolarizing", rb_.depolarizing, "Depolarizing lambda per Clifford")
        ->check(CLI::Range(0.0, 1.0));
    rb->add_option("--lengths", rb_.lengths, "Sequence lengths");
    rb->add_option("--k", rb_.k, "Randomizations per length");
    rb->add_option("--p-ref", rb_.p_ref, "Arithmetic only: reference decay");
    rb->add_option("--p-gate", rb_.p_gate, "Arithmetic only: interleaved decay");
    rb->add_option("--mode", rb_.mode, "1q | 2q")->check(CLI::IsMember({"1q", "2q"}));

    auto* amp = add_sub("cz-amplify", "Coherent CZ phase-error amplification over CZ strings");
    amp->add_option("--phi01-err", amp_phi01_, "Phase error on |01>");
    amp->add_option("--phi10-err", amp_phi10_, "Phase error on |10>");
    amp->add_option("--phi11-err", amp_phi11_, "Phase error on |11> relative to pi");
    amp->add_option("--n-max", amp_.n_max, "Series runs to 2 n_max CZ gates");

    auto* nr = add_sub("noise-report", "Noise parameters, rates and effective coherence fits");
    nr->add_option("--max-gates", nr_.max_gates, "Longest CZ string");
    nr->add_option("--ramsey-phase", nr_ramsey_, "Virtual phase error per CZ in the Ramsey run");
  }

  void parse(std::vector<std::string> args) {
    std::reverse(args.begin(), args.end());
    app_.parse(args);
  }

  void parse(int argc, const char* const* argv) { app_.parse(argc, argv); }

  CLI::App& app() { return app_; }

  Invocation execute() {
    CLI::App* sub = app_.get_subcommands().front();
    const std::string name = sub->get_name();
    common_.shots = parse_shots(shots_);

    const auto t0 = std::chrono::steady_clock::now();
    json payload;
    if (name == "trajectory") {
      traj_.theta = parse_angle(traj_theta_);
      payload = cmd_trajectory(common_, traj_);
    } else if (name == "sweep-n") {
      sweep_.theta = parse_angle(sweep_theta_);
      payload = cmd_sweep_n(common_, sweep_);
    } else if (name == "process") {
      proc_.theta = parse_angle(proc_theta_);
      payload = cmd_process(common_, proc_);
    } else if (name == "compile") {
      if (!comp_delta_.empty()) comp_.delta = parse_angle(comp_delta_);
      comp_.theta = parse_angle(comp_theta_);
      payload = cmd_compile(common_, comp_);
    } else if (name == "rb") {
      payload = cmd_rb(common_, rb_);
    } else if (name == "cz-amplify") {
      amp_.phi01_err = parse_angle(amp_phi01_);
      amp_.phi10_err = parse_angle(amp_phi10_);
      amp_.phi11_err = parse_angle(amp_phi11_);
      payload = cmd_cz_amplify(common_, amp_);
    } else {
      nr_.ramsey_phase = parse_angle(nr_ramsey_);
      payload = cmd_noise_report(common_, nr_);
    }
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    Invocation inv;
    inv.format = format_;
    inv.out_path = out_;
    inv.record = json{{"command", name},
                      {"config", echo_config(*sub)},
                      {"version", QINSTR_VERSION},
                      {"seed", common_.seed},
                      {"payload", std::move(payload)},
                      {"meta", {{"wall_time_s", wall}}}};
    return inv;
  }

 private:
  CLI::App* add_sub(const std::string& name, const std::string& desc) {
    CLI::App* s = app_.add_subcommand(name, desc);
    s->add_option("--seed", common_.seed, "Base seed");
    s->add_option("--noise", common_.noise, "none | sim | device | file:<path>");
    s->add_option("--shots", shots_, "exact | shots per tomography setting");
    s->add_option("--readout-flip", common_.readout_flip, "Symmetric readout flip probability")
        ->check(CLI::Range(0.0, 0.5));
    s->add_option("--out", out_, "Write the result here instead of stdout");
    s->add_option("--format", format_, "json | csv")->check(CLI::IsMember({"json", "csv"}));
    s->fallthrough();  // --config lives on the root
    return s;
  }

  CLI::App app_;
  CommonOptions common_;
  std::string shots_ = "exact";
  std::string format_ = "json";
  std::string out_;

  TrajectoryOptions traj_;
  std::string traj_theta_ = "pi/2";
  SweepOptions sweep_;
  std::string sweep_theta_ = "pi";
  ProcessOptions proc_;
  std::string proc_theta_ = "pi/2";
  CompileOptions comp_;
  std::string comp_delta_;
  std::string comp_theta_ = "pi";
  RbOptions rb_;
  AmplifyOptions amp_;
  std::string amp_phi01_ = "0", amp_phi10_ = "0", amp_phi11_ = "0";
  NoiseReportOptions nr_;
  std::string nr_ramsey_ = "0.05";
};

}  // namespace

Invocation invoke(const std::vector<std::string>& args) {
  Cli cli;
  cli.parse(args);
  return cli.execute();
}

std::string render(const json& record, const std::string& format) {
  if (format == "json") return record.dump(2) + "\n";
  if (format != "csv") throw ConfigError("unknown format '" + format + "'");

  const json& payload = record.at("payload");
  std::ostringstream os;
  if (!payload.contains("series")) {
    os << "key,value\n";
    for (const auto& [k, v] : payload.items()) {
      if (v.is_primitive()) os << k << ',' << cell(v) << '\n';
    }
    return os.str();
  }
  const json& series = payload.at("series");
  std::size_t rows = 0;
  bool first = true;
  for (const auto& [k, v] : series.items()) {
    os << (first ? "" : ",") << k;
    first = false;
    rows = std::max(rows, v.size());
  }
  os << '\n';
  for (std::size_t r = 0; r < rows; ++r) {
    first = true;
    for (const auto& [k, v] : series.items()) {
      os << (first ? "" : ",");
      if (r < v.size()) os << cell(v[r]);
      first = false;
    }
    os << '\n';
  }
  return os.str();
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Cli cli;
  try {
    cli.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = cli.app().exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }
  try {
    const Invocation inv = cli.execute();
    const std::string text = render(inv.record, inv.format);
    if (inv.out_path.empty()) {
      out << text;
    } else {
      std::ofstream f(inv.out_path, std::ios::binary);
      if (!f) throw ConfigError("cannot write '" + inv.out_path + "'");
      f << text;
    }
    return kExitOk;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const GuardError& e) {
    err << "guard violation: " << e.what() << '\n';
    return kExitGuard;
  }
}

}  // namespace qinstr::cli
