// Copyright 2026 The dp-pricer Authors
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

#include <random>
#include <vector>

#include "benchmark/benchmark.h"
#include "dppricer/environment.h"
#include "dppricer/pricing_policy.h"
#include "dppricer/private_cov.h"
#include "dppricer/private_mle.h"

namespace dppricer {
namespace {

void BM_ChoosePrice(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const MarketConfig market = MarketConfig::Section8(d);
  const FeatureMap fmap = market.feature_map();
  PolicyConfig config;
  PolicyState s = PolicyState::Initial(d, 10.0);
  s.theta_p = market.theta_star;
  Rng rng(1);
  const Eigen::VectorXd x = SampleCustomer(market, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ChoosePrice(x, s, config, market.glm, fmap));
  }
}
BENCHMARK(BM_ChoosePrice)->Arg(2)->Arg(3)->Arg(10);

void BM_CovIngest(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const long T = 1L << 20;
  PrivateCovReleaser cov(d, T, 1.0);
  Rng rng(2);
  const Eigen::VectorXd phi = Eigen::VectorXd::Constant(d, 1.0 / std::sqrt(d));
  for (auto _ : state) {
    if (cov.exhausted()) {
      state.PauseTiming();
      cov = PrivateCovReleaser(d, T, 1.0);
      state.ResumeTiming();
    }
    benchmark::DoNotOptimize(cov.Ingest(phi, rng).data());
  }
}
BENCHMARK(BM_CovIngest)->Arg(2)->Arg(10);

void BM_PrivateMleFit(benchmark::State& state) {
  const long n = state.range(0);
  const MarketConfig market = MarketConfig::Section8(2);
  const FeatureMap fmap = market.feature_map();
  Rng rng(3);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Eigen::MatrixXd features(2, n);
  std::vector<double> demands(n);
  for (long t = 0; t < n; ++t) {
    features.col(t) = fmap(SampleCustomer(market, rng), unit(rng));
    demands[t] = SampleDemand(market.glm, features.col(t), market.theta_star, rng);
  }
  const PrivacyBudget budget = MleSplit(0.5, 1e-10, 34);
  const MleRequest request{MleData{features, demands}, market.glm,
                           EffectiveRho(10.0, market.glm, budget.eps), budget, 2.0, true};
  for (auto _ : state) {
    benchmark::DoNotOptimize(FitPrivateMle(request, rng).theta.data());
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_PrivateMleFit)->Arg(1000)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_OraclePrice(benchmark::State& state) {
  const MarketConfig market = MarketConfig::Section8(2);
  Rng rng(4);
  const Eigen::VectorXd x = SampleCustomer(market, rng);
  for (auto _ : state) benchmark::DoNotOptimize(OraclePrice(market, x).revenue);
}
BENCHMARK(BM_OraclePrice);

}  // namespace
}  // namespace dppricer

BENCHMARK_MAIN();
