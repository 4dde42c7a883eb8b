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

#include <benchmark/benchmark.h>

#include <cmath>

#include "qinstr/circuit.hpp"
#include "qinstr/dme.hpp"
#include "qinstr/linalg.hpp"
#include "qinstr/noise.hpp"

namespace qinstr {
namespace {

DmeConfig landmark_config(int steps) {
  DmeConfig c;
  c.rho_in = pure_state("+i");
  c.sigma_in = pure_state("0");
  c.steps = steps;
  c.theta = M_PI;
  c.mode = DmeMode::kQmeEnumerate;
  return c;
}

void BM_HermEig4(benchmark::State& state) {
  const CMatrix h = kron(pauli::X(), pauli::Y()) + kron(pauli::Z(), pauli::I()) * 0.3 + swap_matrix() * 0.7;
  for (auto _ : state) benchmark::DoNotOptimize(herm_eig(h));
}
BENCHMARK(BM_HermEig4);

void BM_DswapStep(benchmark::State& state) {
  const DensityMatrix joint = tensor(pure_state("0"), pure_state("+"));
  for (auto _ : state) benchmark::DoNotOptimize(dswap_step(joint, 0.1));
}
BENCHMARK(BM_DswapStep);

void BM_DmeRefresh(benchmark::State& state) {
  const DmeConfig c = landmark_config(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(dme_refresh(c));
}
BENCHMARK(BM_DmeRefresh)->Arg(8)->Arg(32)->Arg(256);

void BM_Dme2Enumerate(benchmark::State& state) {
  const DmeConfig c = landmark_config(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(dme2_enumerate(c));
  state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << state.range(0)));
}
BENCHMARK(BM_Dme2Enumerate)->Arg(4)->Arg(8)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_Dme2Average(benchmark::State& state) {
  const DmeConfig c = landmark_config(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(dme2_average(c));
}
BENCHMARK(BM_Dme2Average)->Arg(12)->Arg(32);

void BM_CompileMerged(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const DmeConfig c = landmark_config(n);
  const QmeMask mask = sample_mask(n, 3, 0);
  for (auto _ : state) benchmark::DoNotOptimize(build_dme2_circuit(c, mask));
}
BENCHMARK(BM_CompileMerged)->Arg(4)->Arg(12);

void BM_NoisyDme2Average(benchmark::State& state) {
  const DmeConfig c = landmark_config(static_cast<int>(state.range(0)));
  const NoiseParams np = noise_preset("sim");
  for (auto _ : state) benchmark::DoNotOptimize(noisy_dme2_average(c, np));
}
BENCHMARK(BM_NoisyDme2Average)->Arg(4)->Arg(12)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace qinstr

BENCHMARK_MAIN();
