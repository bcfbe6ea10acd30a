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

#include "qrv/generators.hpp"
#include "qrv/random.hpp"
#include "qrv/verifier.hpp"

namespace {

void BM_OptimalBound(benchmark::State& state) {
  qrv::Rng rng(4);
  const auto n = static_cast<qrv::Index>(state.range(0));
  const qrv::Classifier c = qrv::random_classifier(n, 2, rng);
  qrv::DensityMatrix rho = qrv::random_density(n, rng);
  while (qrv::classify(c, rho).tie) {
    rho = qrv::random_density(n, rng);
  }
  const std::size_t l = qrv::classify(c, rho).label;
  for (auto _ : state) {
    benchmark::DoNotOptimize(qrv::compute_optimal_bound(c, rho, l).delta);
  }
}
BENCHMARK(BM_OptimalBound)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_PureBound(benchmark::State& state) {
  const qrv::QubitCaseStudy s = qrv::make_qubit_case_study();
  const auto& e = s.train.entries.front();
  const auto& psi = std::get<qrv::PureState>(e.state);
  for (auto _ : state) {
    benchmark::DoNotOptimize(qrv::pure_state_optimal_bound(s.classifier, psi, e.label).delta);
  }
}
BENCHMARK(BM_PureBound)->Unit(benchmark::kMicrosecond);

// Case-study training set, one worker count per run.
void BM_VerifyCaseStudy(benchmark::State& state) {
  const qrv::QubitCaseStudy s = qrv::make_qubit_case_study();
  qrv::VerifyOptions options;
  options.workers = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    const qrv::VerificationReport r = qrv::verify_dataset(s.classifier, s.train, 0.004, options);
    benchmark::DoNotOptimize(r.robust_accuracy);
  }
}
BENCHMARK(BM_VerifyCaseStudy)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_UnderRobustAccuracy(benchmark::State& state) {
  const qrv::QubitCaseStudy s = qrv::make_qubit_case_study();
  for (auto _ : state) {
    benchmark::DoNotOptimize(qrv::under_robust_accuracy(s.classifier, s.train, 0.004));
  }
}
BENCHMARK(BM_UnderRobustAccuracy)->Unit(benchmark::kMicrosecond);

}  // namespace
