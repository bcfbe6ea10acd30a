// Copyright 2026 The qrv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "qrv/random.hpp"
#include "qrv/sdp.hpp"

namespace {

void BM_Fidelity(benchmark::State& state) {
  qrv::Rng rng(1);
  const auto n = static_cast<qrv::Index>(state.range(0));
  const qrv::DensityMatrix a = qrv::random_density(n, rng);
  const qrv::DensityMatrix b = qrv::random_density(n, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(qrv::fidelity(a, b));
  }
}
BENCHMARK(BM_Fidelity)->RangeMultiplier(2)->Range(2, 64);

void BM_ApplyChannel(benchmark::State& state) {
  qrv::Rng rng(2);
  const auto n = static_cast<qrv::Index>(state.range(0));
  const qrv::KrausChannel ch = qrv::random_channel(n, 4, rng);
  const qrv::DensityMatrix rho = qrv::random_density(n, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(qrv::apply(ch, rho));
  }
}
BENCHMARK(BM_ApplyChannel)->RangeMultiplier(2)->Range(2, 64);

// Fidelity SDP, whose optimum is -sqrt F.
void BM_FidelitySdp(benchmark::State& state) {
  qrv::Rng rng(3);
  const auto n = static_cast<qrv::Index>(state.range(0));
  const qrv::DensityMatrix rho = qrv::random_density(n, rng);
  const qrv::DensityMatrix sigma = qrv::random_density(n, rng);
  const qrv::SdpProblem problem = qrv::fidelity_pair_sdp(rho, sigma);
  int iterations = 0;
  for (auto _ : state) {
    const qrv::SdpSolution sol = qrv::solve(problem);
    iterations = sol.iterations;
    benchmark::DoNotOptimize(sol.objective_value);
  }
  state.counters["ipm_iterations"] = iterations;
}
BENCHMARK(BM_FidelitySdp)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

}  // namespace
