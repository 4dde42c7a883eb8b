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

#include "qinstr/analysis.hpp"
#include "qinstr/gates.hpp"
#include "qinstr/tomography.hpp"

namespace qinstr {
namespace {

void BM_StateTomography(benchmark::State& state) {
  const int qubits = static_cast<int>(state.range(0));
  const auto shots = static_cast<std::uint64_t>(state.range(1));
  const DensityMatrix m = qubits == 1 ? pure_state("+i") : tensor(pure_state("+"), pure_state("-i"));
  const ReadoutModel rm = ReadoutModel::symmetric_flip(qubits, 0.05);
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(tomograph(m, shots, rm, ++seed));
}
BENCHMARK(BM_StateTomography)
    ->Args({1, 0})
    ->Args({1, 500})
    ->Args({2, 0})
    ->Args({2, 2000})
    ->Unit(benchmark::kMillisecond);

void BM_ProcessTomographyProjected(benchmark::State& state) {
  const KrausChannel c = compose(amplitude_damping(0.2), unitary_channel(ry(M_PI / 3)));
  std::vector<CMatrix> outs;
  for (const auto& n : process_input_names()) outs.push_back(apply(c, pure_state(n)).mat());
  for (auto _ : state) benchmark::DoNotOptimize(cptp_project(process_tomography(outs)));
}
BENCHMARK(BM_ProcessTomographyProjected);

void BM_SimulateRb(benchmark::State& state) {
  RbNoise noise;
  noise.depolarizing = 0.99;
  const std::vector<int> lengths{1, 4, 16, 64, 256};
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(simulate_rb_1q(noise, lengths, 20, ++seed));
}
BENCHMARK(BM_SimulateRb)->Unit(benchmark::kMillisecond);

void BM_CzAmplification(benchmark::State& state) {
  const NoiseParams np = noise_preset("device");
  for (auto _ : state) benchmark::DoNotOptimize(cz_phase_error_amplification({0, 0, 0.08 * M_PI}, 40, np));
}
BENCHMARK(BM_CzAmplification)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace qinstr

BENCHMARK_MAIN();
