// Copyright 2026 The smoothpd Authors
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

#include <memory>
#include <vector>

#include "generators.h"
#include "smoothpd/costlib.h"
#include "smoothpd/covering.h"
#include "smoothpd/greedy.h"
#include "smoothpd/multilinear.h"
#include "smoothpd/smoothness.h"

namespace smoothpd {
namespace {

std::vector<double> Midpoint(int n) {
  std::vector<double> x(n);
  for (int e = 0; e < n; ++e) x[e] = (e + 1.0) / (n + 2.0);
  return x;
}

void BM_GradientTable(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto f = std::make_shared<PolynomialLoadCost>(std::vector<double>{0, 1, 1});
  const Multilinear ml(f, n, MultilinearPath::kTable);
  const FractionalPoint x(Midpoint(n));
  for (auto _ : state) benchmark::DoNotOptimize(ml.Gradient(x));
}
BENCHMARK(BM_GradientTable)->DenseRange(4, 16, 4);

void BM_GradientLoadDp(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto f = std::make_shared<PolynomialLoadCost>(std::vector<double>{0, 1, 1},
                                                std::vector<double>(n, 3.0));
  const Multilinear ml(f, n, MultilinearPath::kLoadDp);
  const FractionalPoint x(Midpoint(n));
  for (auto _ : state) benchmark::DoNotOptimize(ml.Gradient(x));
}
BENCHMARK(BM_GradientLoadDp)->RangeMultiplier(2)->Range(8, 128);

void BM_GreedyRun(benchmark::State& state) {
  tools::GeneralGenSpec spec;
  spec.requests = static_cast<int>(state.range(0));
  spec.resources = 8;
  spec.strategies = 4;
  spec.seed = 7;
  const GeneralInstance inst = tools::GenerateGeneral(spec);
  const SmoothnessParams p = ComputePolyParams(spec.degree, PolyVariant::kStandard);
  for (auto _ : state) benchmark::DoNotOptimize(RunOnline(inst, p));
}
BENCHMARK(BM_GreedyRun)->RangeMultiplier(4)->Range(16, 1024);

void BM_CoveringSolve(benchmark::State& state) {
  tools::CoveringGenSpec spec;
  spec.n = static_cast<int>(state.range(0));
  spec.rows = 6;
  spec.d = 3;
  spec.seed = 11;
  const CoveringInstance inst = tools::GenerateCovering(spec);
  const CoveringParams p = ParamsFor(*inst.cost, inst.n, inst.d);
  CoveringOptions opt;
  opt.dtau = 1e-3;
  for (auto _ : state) benchmark::DoNotOptimize(SolveCovering(inst, p, opt));
}
BENCHMARK(BM_CoveringSolve)->DenseRange(3, 6, 1)->Unit(benchmark::kMillisecond);

void BM_VerifySmoothness(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const PolynomialLoadCost f(std::vector<double>{0, 0, 1});
  const auto ground = UnitGround(n);
  const SmoothnessParams p = ComputePolyParams(2, PolyVariant::kStandard);
  for (auto _ : state) benchmark::DoNotOptimize(VerifySmoothness(f, ground, p));
}
BENCHMARK(BM_VerifySmoothness)->DenseRange(4, 8, 2)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace smoothpd

BENCHMARK_MAIN();
