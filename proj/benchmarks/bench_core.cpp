// Copyright 2026 The imdecide Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "imdecide/choquet.hpp"
#include "imdecide/contour.hpp"
#include "imdecide/decision.hpp"
#include "imdecide/fiducial.hpp"
#include "imdecide/oracle.hpp"

using namespace imdecide;

static void BM_LevelSetT3(benchmark::State& state) {
  const auto law = Distribution::student_t(3.0);
  double alpha = 0.001;
  for (auto _ : state) {
    // fresh instance so the level cache never hits
    AuxiliaryContour aux(law);
    benchmark::DoNotOptimize(aux.level_set(alpha));
    alpha = alpha < 0.99 ? alpha + 0.0137 : 0.001;
  }
}
BENCHMARK(BM_LevelSetT3);

static void BM_LevelSetSkewNormal(benchmark::State& state) {
  const auto law = Distribution::skew_normal(3.0);
  double alpha = 0.001;
  for (auto _ : state) {
    AuxiliaryContour aux(law);
    benchmark::DoNotOptimize(aux.level_set(alpha));
    alpha = alpha < 0.99 ? alpha + 0.0137 : 0.001;
  }
}
BENCHMARK(BM_LevelSetSkewNormal);

static void BM_ChoquetT3Squared(benchmark::State& state) {
  const auto c = location_contour(Distribution::student_t(3.0), 0.0);
  const auto l = make_loss("squared");
  double a = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(choquet_upper(c, l, a, 1e-6));
    a += 1e-3;
  }
}
BENCHMARK(BM_ChoquetT3Squared);

static void BM_ChoquetBinomialWeighted(benchmark::State& state) {
  const auto c = binomial_contour(18, 7);
  const auto l = make_loss("weighted-squared");
  double a = 0.3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(choquet_upper(c, l, a, 1e-6));
    a = a < 0.5 ? a + 1e-3 : 0.3;
  }
}
BENCHMARK(BM_ChoquetBinomialWeighted);

static void BM_ExpectedLossT3(benchmark::State& state) {
  const auto q = location_fiducial(Distribution::student_t(3.0), 0.0);
  const auto l = make_loss("squared");
  double a = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(expected_loss(q, l, a));
    a += 1e-3;
  }
}
BENCHMARK(BM_ExpectedLossT3);

static void BM_ExpectedLossBeta(benchmark::State& state) {
  const auto q = binomial_fiducial(50, 15);
  const auto l = make_loss("weighted-squared");
  double a = 0.2;
  for (auto _ : state) {
    benchmark::DoNotOptimize(expected_loss(q, l, a));
    a = a < 0.4 ? a + 1e-3 : 0.2;
  }
}
BENCHMARK(BM_ExpectedLossBeta);

static void BM_MinRatio(benchmark::State& state) {
  const auto c = location_contour(Distribution::student_t(3.0), 0.7);
  const auto l = make_loss("squared");
  const auto spec = default_ratio_spec(c, RatioVariant::Modified, static_cast<int>(state.range(0)));
  double theta = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(min_ratio(c, l, spec, theta));
    theta += 1e-3;
  }
}
BENCHMARK(BM_MinRatio)->Arg(21)->Arg(101);

static void BM_MinimizeUpperT3(benchmark::State& state) {
  const auto c = location_contour(Distribution::student_t(3.0), 1.3);
  const auto l = make_loss("squared");
  const auto spec = default_search_spec(c);
  for (auto _ : state) benchmark::DoNotOptimize(minimize_upper_loss(c, l, spec));
}
BENCHMARK(BM_MinimizeUpperT3)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
