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

#include <span>
#include <type_traits>
#include <vector>

#include "dppricer/environment.h"
#include "dppricer/pricing_policy.h"
#include "gtest/gtest.h"

namespace dppricer {
namespace {

template <typename T>
concept ExposesHistory = requires(const T& t) { t.history(); } ||
                         requires(const T& t) { t.features(); } ||
                         requires(const T& t) { t.demands(); } ||
                         requires(const T& t) { t.data(); };

template <typename T>
concept OptimizerTakesRawData =
    requires(T& t, const Eigen::MatrixXd& m, std::span<const double> y) { t.Fit(m, y); } ||
    requires(T& t, const Eigen::VectorXd& phi, double y) { t.Observe(phi, y); };

static_assert(!ExposesHistory<PricingPolicy>);
static_assert(!ExposesHistory<PriceOptimizer>);
static_assert(!OptimizerTakesRawData<PriceOptimizer>);
// The optimizer is built from configuration only.
static_assert(std::is_constructible_v<PriceOptimizer, const PolicyConfig&, const GlmSpec&,
                                      const FeatureMap&>);

struct Episode {
  std::vector<Eigen::VectorXd> contexts;
  std::vector<double> prices;
  PricingPolicy::ReleaseLog log;
  PolicyStats stats;
};

Episode Drive(const PolicyConfig& config, long T, int seed, bool flip_demands) {
  const MarketConfig market = MarketConfig::Section8(2);
  const FeatureMap fmap = market.feature_map();
  PricingPolicy policy(config, market.glm, fmap, T, Rng(seed), Rng(seed + 1), Rng(seed + 2));
  Episode run;
  policy.set_release_log(&run.log);
  Rng env(seed + 3);
  for (long n = 1; n <= T; ++n) {
    const Eigen::VectorXd x = SampleCustomer(market, env);
    const double p = policy.Step(x);
    double y = SampleDemand(market.glm, fmap(x, p), market.theta_star, env);
    if (flip_demands) y = 1.0 - y;
    policy.Observe(x, p, y);
    run.contexts.push_back(x);
    run.prices.push_back(p);
  }
  run.stats = policy.stats();
  return run;
}

// Post-exploration prices are recomputed from contexts and releases alone.
TEST(AnticipatingStructureTest, PricesReplayFromReleases) {
  const PolicyConfig config = Section8Params(2, 3000, {0.5, 1e-7}, {0.5, 1e-7});
  const Episode run = Drive(config, 3000, 50, false);
  ASSERT_GT(run.log.mle_releases.size(), 0u);

  const MarketConfig market = MarketConfig::Section8(2);
  PriceOptimizer replay(config, market.glm, market.feature_map());
  size_t cov_k = 0, mle_k = 0;
  for (long n = 1; n <= 3000; ++n) {
    if (n > config.t0) {
      if (replay.ConsiderCovariance(run.log.cov_releases.at(cov_k++))) {
        ASSERT_LT(mle_k, run.log.mle_releases.size());
        ASSERT_EQ(run.log.mle_periods[mle_k], n);
        replay.AcceptMle(run.log.mle_releases[mle_k++]);
      }
      ASSERT_EQ(replay.Price(run.contexts[n - 1]), run.prices[n - 1]) << n;
    }
    replay.Advance();
  }
  EXPECT_EQ(mle_k, run.log.mle_releases.size());
  EXPECT_EQ(cov_k, run.log.cov_releases.size());
}

TEST(AnticipatingStructureTest, OptimizerNeverReadsHistory) {
  const PolicyConfig config = Section8Params(2, 3000, {0.5, 1e-7}, {0.5, 1e-7});
  const Episode run = Drive(config, 3000, 60, false);
  EXPECT_GT(run.stats.mle_calls, 0);
  EXPECT_EQ(run.stats.optimizer_history_reads, 0u);
}

TEST(AnticipatingStructureTest, HistoryChangesReachPricesOnlyThroughReleases) {
  PolicyConfig config = Section8Params(2, 2000, {0.5, 1e-7}, {0.5, 1e-7});
  config.noise_free = true;
  const Episode a = Drive(config, 2000, 70, false);
  const Episode b = Drive(config, 2000, 70, true);
  // Flipped demands move the MLE, and the prices follow the releases.
  ASSERT_FALSE(a.log.mle_releases.empty());
  EXPECT_NE(a.log.mle_releases.front(), b.log.mle_releases.front());
  const long first_refresh = a.log.mle_periods.front();
  for (long n = 1; n < first_refresh; ++n) EXPECT_EQ(a.prices[n - 1], b.prices[n - 1]);
}

}  // namespace
}  // namespace dppricer
