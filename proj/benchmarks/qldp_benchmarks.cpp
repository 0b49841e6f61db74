// Copyright 2026 The qldp Authors
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


#include <numbers>

#include <benchmark/benchmark.h>

#include "qldp/ldp.hpp"
#include "qldp/mgf.hpp"
#include "qldp/models.hpp"
#include "qldp/rng.hpp"
#include "qldp/tilted.hpp"
#include "qldp/trajectory.hpp"

namespace {

using namespace qldp;

KrausFamily bench_model(int d, int k) {
  Rng rng(1234);
  return random_kraus(d, k, rng);
}

void BM_ScgfDense(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const TiltedSpectrum spectrum(bench_model(3, 2), m);
  RVector t = RVector::LinSpaced(spectrum.tilt_size(), -0.5, 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(spectrum.evaluate(t));
}
BENCHMARK(BM_ScgfDense)->DenseRange(1, 4);

void BM_PerronPower(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const auto fam = bench_model(3, 2);
  const auto q = support_projections(boundary_operator(fam, m));
  const TiltVector t(m, 2, RVector::LinSpaced(1 << m, -0.5, 0.5));
  const RestrictedTiltedMap map(fam, t, q);
  for (auto _ : state) benchmark::DoNotOptimize(restricted_perron(map, PerronMethod::Power));
}
BENCHMARK(BM_PerronPower)->DenseRange(2, 6, 2);

void BM_FiniteMgfLemma(benchmark::State& state) {
  const auto fam = bench_model(2, 2);
  const TiltVector t(2, 2, RVector::LinSpaced(4, -0.5, 0.5));
  const auto psi = PureState::basis(2, 0);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(finite_mgf_lemma(fam, psi, t, n));
}
BENCHMARK(BM_FiniteMgfLemma)->Arg(16)->Arg(256)->Arg(4096);

void BM_FiniteMgfBruteForce(benchmark::State& state) {
  const auto fam = bench_model(2, 2);
  const TiltVector t(2, 2, RVector::LinSpaced(4, -0.5, 0.5));
  const auto psi = PureState::basis(2, 0);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(finite_mgf_bruteforce(fam, psi, t, n));
}
BENCHMARK(BM_FiniteMgfBruteForce)->Arg(8)->Arg(14);

void BM_TrajectorySteps(benchmark::State& state) {
  const auto fam = example2(std::numbers::pi / 3);
  TrajectorySampler sampler(fam);
  sampler.reset(PureState::basis(2, 0).amplitudes());
  Rng rng(7);
  for (auto _ : state) benchmark::DoNotOptimize(sampler.step(rng));
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_TrajectorySteps);

void BM_RateFunction(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const TiltedSpectrum spectrum(example2(std::numbers::pi / 3), m);
  const RVector x = spectrum.gradient(RVector::LinSpaced(spectrum.tilt_size(), -0.4, 0.4));
  for (auto _ : state) benchmark::DoNotOptimize(rate_function(spectrum, x));
}
BENCHMARK(BM_RateFunction)->Arg(1)->Arg(2);

}  // namespace

BENCHMARK_MAIN();
