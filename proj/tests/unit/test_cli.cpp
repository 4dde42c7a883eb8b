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
#include <filesystem>
#include <fstream>
#include <sstream>

#include "qinstr/errors.hpp"
#include "qinstr_cli/angle.hpp"
#include "qinstr_cli/app.hpp"

namespace qinstr::cli {
namespace {

namespace fs = std::filesystem;

struct RunResult {
  int code;
  std::string out, err;
};

RunResult run_args(std::vector<std::string> args) {
  args.insert(args.begin(), "qinstr");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path temp_file(const std::string& name, const std::string& content) {
  const fs::path p = fs::temp_directory_path() / ("qinstr_test_" + std::to_string(::getpid()) + "_" + name);
  std::ofstream(p) << content;
  return p;
}

TEST(Angle, SymbolicAndDecimal) {
  EXPECT_DOUBLE_EQ(parse_angle("pi"), M_PI);
  EXPECT_DOUBLE_EQ(parse_angle("pi/2"), M_PI / 2);
  EXPECT_DOUBLE_EQ(parse_angle("pi/8"), M_PI / 8);
  EXPECT_DOUBLE_EQ(parse_angle("-pi/2"), -M_PI / 2);
  EXPECT_DOUBLE_EQ(parse_angle("3pi/4"), 3 * M_PI / 4);
  EXPECT_DOUBLE_EQ(parse_angle("0.08pi"), 0.08 * M_PI);
  EXPECT_DOUBLE_EQ(parse_angle("2*pi"), 2 * M_PI);
  EXPECT_DOUBLE_EQ(parse_angle("1.25"), 1.25);
  EXPECT_DOUBLE_EQ(parse_angle("-0.5"), -0.5);
}

TEST(Angle, RejectsGarbage) {
  for (const char* s : {"", "tau", "pi/0", "1.2.3", "pi/x", "2pi3"}) EXPECT_THROW(parse_angle(s), ConfigError) << s;
}

TEST(Compile, DeltaCircuit) {
  const Invocation inv = invoke({"compile", "--delta", "pi/8"});
  const json& p = inv.record.at("payload");
  EXPECT_EQ(p.at("depth").get<int>(), 7);
  EXPECT_EQ(p.at("cz_count").get<int>(), 3);
  EXPECT_LT(p.at("target_distance").get<double>(), 1e-9);
  EXPECT_EQ(p.at("circuit").at("moments").size(), 7u);
  EXPECT_EQ(inv.record.at("command"), "compile");
}

TEST(Compile, StepDepths) {
  for (auto [n, d] : std::vector<std::pair<int, int>>{{4, 25}, {8, 49}, {12, 73}}) {
    const json p = invoke({"compile", "--steps", std::to_string(n), "--theta", "pi"}).record.at("payload");
    EXPECT_EQ(p.at("depth").get<int>(), d);
    EXPECT_LT(p.at("merge_distance").get<double>(), 1e-9);
  }
  const json p = invoke({"compile", "--steps", "3", "--mask", "101"}).record.at("payload");
  EXPECT_EQ(p.at("mask"), "101");
}

TEST(Trajectory, ZeroStepsEchoesInputs) {
  const json p = invoke({"trajectory", "--steps", "0", "--rho-in", "0", "--sigma-in", "+"}).record.at("payload");
  EXPECT_EQ(p.at("series").at("n").size(), 1u);
  EXPECT_NEAR(p.at("series").at("sigma_x")[0].get<double>(), 1.0, 1e-15);
  EXPECT_NEAR(p.at("series").at("rho_z")[0].get<double>(), 1.0, 1e-15);
}

TEST(Trajectory, PaperConfigurationsRun) {
  const json a = invoke({"trajectory", "--rho-in", "+", "--sigma-in", "+i", "--steps", "4", "--theta", "pi/2"})
                     .record.at("payload");
  EXPECT_EQ(a.at("series").at("n").size(), 5u);
  const json b = invoke({"trajectory", "--rho-in", "0", "--sigma-in", "+", "--steps", "8", "--theta", "pi"})
                     .record.at("payload");
  EXPECT_EQ(b.at("series").at("n").size(), 9u);
  for (const auto& x : b.at("series").at("rho_x")) EXPECT_NEAR(x.get<double>(), 0.0, 1e-12);
}

TEST(Trajectory, EnumerateEqualsExhaustiveSample) {
  const json e = invoke({"trajectory", "--steps", "5", "--mode", "enumerate"}).record.at("payload");
  const json s =
      invoke({"trajectory", "--steps", "5", "--mode", "sample", "--r", "32", "--unique"}).record.at("payload");
  for (const char* k : {"sigma_x", "sigma_y", "sigma_z", "rho_x", "rho_y", "rho_z"}) {
    for (std::size_t i = 0; i < 6; ++i)
      EXPECT_NEAR(e.at("series").at(k)[i].get<double>(), s.at("series").at(k)[i].get<double>(), 1e-12);
  }
}

TEST(Trajectory, NoisyAndTomographyColumns) {
  const json p = invoke({"trajectory", "--steps", "3", "--noise", "sim", "--shots", "500"}).record.at("payload");
  EXPECT_TRUE(p.at("series").contains("noisy_sigma_x"));
  EXPECT_TRUE(p.at("series").contains("tomo_fidelity_ideal"));
}

TEST(SweepN, DepthAndMonotoneRefresh) {
  const json p = invoke({"sweep-n", "--theta", "pi/2", "--n-max", "12", "--r", "0"}).record.at("payload");
  const json& s = p.at("series");
  EXPECT_EQ(s.at("depth")[3].get<int>(), 25);
  EXPECT_EQ(s.at("depth")[7].get<int>(), 49);
  EXPECT_EQ(s.at("depth")[11].get<int>(), 73);
  for (std::size_t i = 1; i < s.at("fidelity_refresh").size(); ++i)
    EXPECT_GT(s.at("fidelity_refresh")[i].get<double>(), s.at("fidelity_refresh")[i - 1].get<double>());
}

TEST(SweepN, BadRange) {
  EXPECT_THROW(invoke({"sweep-n", "--n-min", "5", "--n-max", "3"}), ConfigError);
}

TEST(Process, NoiselessSentinelAndIdealMap) {
  const json p = invoke({"process", "--instructions", "0", "--theta", "pi", "--n-max", "6", "--r", "0"})
                     .record.at("payload");
  const json& rec = p.at("instructions")[0];
  EXPECT_TRUE(rec.at("n_opt_is_sentinel").get<bool>());
  EXPECT_EQ(rec.at("n_opt").get<int>(), 6);
  // R_z(pi) has a single unit chi element at (Z, Z).
  const json& chi = rec.at("chi_ideal");
  EXPECT_NEAR(chi.at("re")[3][3].get<double>(), 1.0, 1e-9);
  EXPECT_NEAR(chi.at("re")[0][0].get<double>(), 0.0, 1e-9);
  EXPECT_EQ(chi.at("basis"), "IXYZ");
}

TEST(Process, SimNoiseOptimalStepCount) {
  // Band comparison is on the rounded mean; exact device noise is not modeled.
  const json half = invoke({"process", "--noise", "sim", "--theta", "pi/2", "--n-max", "12"}).record.at("payload");
  const long r_half = half.at("mean_n_opt_rounded").get<long>();
  EXPECT_GE(r_half, 3);
  EXPECT_LE(r_half, 5);
  const json full = invoke({"process", "--noise", "sim", "--theta", "pi", "--n-max", "16"}).record.at("payload");
  const long r_full = full.at("mean_n_opt_rounded").get<long>();
  EXPECT_GE(r_full, 6);
  EXPECT_LE(r_full, 10);
  for (const auto& rec : full.at("instructions")) EXPECT_FALSE(rec.at("n_opt_is_sentinel").get<bool>());
}

TEST(Process, BadInstruction) {
  EXPECT_THROW(invoke({"process", "--instructions", "2", "--n-max", "3", "--r", "0"}), ConfigError);
}

TEST(Rb, DepolarizingRecovered) {
  const json p = invoke({"rb", "--depolarizing", "0.99"}).record.at("payload");
  EXPECT_NEAR(p.at("fit").at("p").get<double>(), 0.99, 0.02);
  EXPECT_EQ(p.at("metric"), "rb_survival");
}

TEST(Rb, Arithmetic) {
  const json p = invoke({"rb", "--p-ref", "0.9974"}).record.at("payload");
  EXPECT_NEAR(p.at("fidelity").get<double>(), 0.9987, 1e-12);
}

TEST(CzAmplify, Period) {
  const json p = invoke({"cz-amplify", "--phi11-err", "0.08pi"}).record.at("payload");
  EXPECT_NEAR(p.at("fit").at("period").get<double>(), 25.0, 2.0);
}

TEST(NoiseReport, SimSurvival) {
  const json p = invoke({"noise-report", "--noise", "sim", "--max-gates", "300"}).record.at("payload");
  EXPECT_NEAR(p.at("qubits")[0].at("survival_per_cz").get<double>(), std::exp(-65e-9 / 10e-6), 1e-12);
  EXPECT_TRUE(p.at("t1_like").at("decay_detected").get<bool>());
}

TEST(NoiseFile, LoadedAndValidated) {
  const fs::path f = temp_file("noise.json", R"({"q1": {"t1_us": 20, "t2r_us": 10, "t1_eff_us": 10, "t2r_eff_us": 5},
    "q2": {"t1_us": 20, "t2r_us": 10}, "t_1qb_ns": 30, "t_cz_ns": 60})");
  const NoiseParams np = resolve_noise("file:" + f.string());
  EXPECT_DOUBLE_EQ(np.q[0].t1_eff_us, 10.0);
  EXPECT_TRUE(std::isinf(np.q[1].t1_eff_us));
  const fs::path bad = temp_file("bad_noise.json", R"({"q1": {"t1_us": 10, "t2r_us": 50}})");
  EXPECT_THROW(resolve_noise("file:" + bad.string()), ConfigError);
  EXPECT_THROW(resolve_noise("file:/nonexistent/qinstr.json"), ConfigError);
  EXPECT_THROW(resolve_noise("loud"), ConfigError);
  fs::remove(f);
  fs::remove(bad);
}

TEST(Config, JsonFileSetsOptions) {
  const fs::path f = temp_file("cfg.json", R"({"steps": 3, "rho_in": "-", "theta": "pi/4", "seed": 9})");
  const Invocation inv = invoke({"trajectory", "--config", f.string()});
  EXPECT_EQ(inv.record.at("payload").at("series").at("n").size(), 4u);
  EXPECT_EQ(inv.record.at("seed").get<std::uint64_t>(), 9u);
  EXPECT_EQ(inv.record.at("config").at("rho_in"), "-");
  // The command line wins over the file.
  const Invocation over = invoke({"trajectory", "--steps", "1", "--config", f.string()});
  EXPECT_EQ(over.record.at("payload").at("series").at("n").size(), 2u);
  fs::remove(f);
}

TEST(Config, MalformedFileRejected) {
  const fs::path f = temp_file("broken.json", "{\"steps\": ");
  EXPECT_EQ(run_args({"trajectory", "--config", f.string()}).code, kExitConfig);
  EXPECT_EQ(run_args({"trajectory", "--config", "/nonexistent/qinstr.json"}).code, kExitConfig);
  fs::remove(f);
}

TEST(Render, CsvMirrorsSeries) {
  const Invocation inv = invoke({"trajectory", "--steps", "2"});
  const std::string csv = render(inv.record, "csv");
  std::istringstream is(csv);
  std::string header;
  std::getline(is, header);
  EXPECT_EQ(header.rfind("n,sigma_x", 0), 0u);
  int rows = 0;
  for (std::string line; std::getline(is, line);) ++rows;
  EXPECT_EQ(rows, 3);
  const std::string kv = render(invoke({"rb", "--p-ref", "0.99"}).record, "csv");
  EXPECT_EQ(kv.rfind("key,value\n", 0), 0u);
}

TEST(Exit, Codes) {
  EXPECT_EQ(run_args({"compile", "--delta", "pi/8"}).code, kExitOk);
  EXPECT_EQ(run_args({"trajectory", "--steps", "21", "--mode", "enumerate", "--theta", "pi"}).code, kExitGuard);
  EXPECT_EQ(run_args({"trajectory", "--rho-in", "q"}).code, kExitConfig);
  EXPECT_EQ(run_args({"trajectory", "--bogus"}).code, kExitConfig);
  EXPECT_EQ(run_args({}).code, kExitConfig);
  EXPECT_EQ(run_args({"--help"}).code, kExitOk);
  const RunResult g = run_args({"trajectory", "--steps", "21", "--mode", "enumerate", "--theta", "pi"});
  EXPECT_NE(g.err.find("guard"), std::string::npos);
}

TEST(Exit, OutFile) {
  const fs::path f = fs::temp_directory_path() / ("qinstr_test_out_" + std::to_string(::getpid()) + ".json");
  const RunResult r = run_args({"compile", "--delta", "pi/4", "--out", f.string()});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_TRUE(r.out.empty());
  const json j = read_json_file(f.string());
  EXPECT_EQ(j.at("payload").at("depth").get<int>(), 7);
  fs::remove(f);
}

TEST(Determinism, PayloadsRepeat) {
  const std::vector<std::vector<std::string>> cmds{
      {"trajectory", "--steps", "4", "--mode", "sample", "--r", "20", "--shots", "300", "--seed", "5"},
      {"sweep-n", "--n-max", "3", "--r", "20", "--noise", "sim", "--shots", "200", "--seed", "5"},
      {"compile", "--steps", "3"},
      {"rb", "--depolarizing", "0.98", "--k", "10", "--seed", "5"},
  };
  for (const auto& c : cmds) {
    EXPECT_EQ(invoke(c).record.at("payload").dump(), invoke(c).record.at("payload").dump()) << c[0];
  }
  const json a = invoke({"compile", "--steps", "6", "--seed", "1"}).record.at("payload");
  const json b = invoke({"compile", "--steps", "6", "--seed", "2"}).record.at("payload");
  EXPECT_NE(a.at("mask"), b.at("mask"));
}

TEST(Record, Envelope) {
  const json r = invoke({"compile", "--delta", "pi/8", "--seed", "3"}).record;
  for (const char* k : {"command", "config", "version", "seed", "payload", "meta"}) EXPECT_TRUE(r.contains(k)) << k;
  EXPECT_TRUE(r.at("meta").contains("wall_time_s"));
  EXPECT_EQ(r.at("config").at("delta"), "pi/8");
  EXPECT_FALSE(r.at("version").get<std::string>().empty());
}

}  // namespace
}  // namespace qinstr::cli
