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

#include "dppricer/harness.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <random>
#include <string>
#include <thread>

#include "dppricer/errors.h"

namespace dppricer {

void ExperimentConfig::Validate() const {
  if (T < 1) throw InvalidArgument("ExperimentConfig: T must be >= 1");
  if (trials < 1) throw InvalidArgument("ExperimentConfig: trials must be >= 1");
  if (d < 2) throw InvalidArgument("ExperimentConfig: d must be >= 2");
  if (jobs < 1) throw InvalidArgument("ExperimentConfig: jobs must be >= 1");
  if (checkpoints < 1) throw InvalidArgument("ExperimentConfig: checkpoints must be >= 1");
  if (variant == Variant::kInputPerturb && !(input_eps > 0.0)) {
    throw InvalidArgument("ExperimentConfig: input_eps must be positive");
  }
  if (variant != Variant::kRandomPrice && T < 2) {
    throw InvalidArgument("ExperimentConfig: learning variants need T >= 2");
  }
}

MarketConfig ExperimentConfig::Market() const {
  MarketConfig market = MarketConfig::Section8(d, calibration);
  market.oracle_grid = oracle_grid;
  return market;
}

PolicyConfig ExperimentConfig::ResolvePolicy() const {
  const GlmSpec glm = Market().glm;
  PolicyConfig policy;
  switch (preset) {
    case Preset::kSection8:
      policy = Section8Params(d, T, cov_budget, mle_budget);
      break;
    case Preset::kTheorem1:
      policy = Theorem1Params(d, T, cov_budget, mle_budget, glm);
      break;
    case Preset::kTheorem2:
      policy = Theorem2Params(d, T, cov_budget, mle_budget, glm);
      break;
  }
  if (t0) policy.t0 = *t0;
  if (d_inf) policy.d_inf = *d_inf;
  if (rho) policy.rho = *rho;
  if (gamma) policy.gamma = *gamma;
  policy.price_grid = price_grid;
  policy.bonus = bonus;
  policy.noise_free = variant == Variant::kNonPrivate || variant == Variant::kInputPerturb;
  return policy;
}

ExperimentConfig ExperimentConfig::Section8(long T, int d, double eps) {
  ExperimentConfig config;
  config.T = T;
  config.d = d;
  const double delta = 1.0 / (static_cast<double>(T) * static_cast<double>(T));
  config.cov_budget = {eps, delta};
  config.mle_budget = {eps, delta};
  return config;
}

std::vector<long> CheckpointPeriods(long T, int count) {
  std::vector<long> periods;
  for (int i = 1; i <= count; ++i) {
    const long p = static_cast<long>(std::ceil(static_cast<double>(T) * i / count));
    if (p >= 1 && (periods.empty() || p > periods.back())) periods.push_back(p);
  }
  return periods;
}

SampleStats Summarize(const std::vector<double>& values) {
  SampleStats stats;
  if (values.empty()) return stats;
  const double n = static_cast<double>(values.size());
  stats.mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  std::vector<double> sorted = values;
  std::sort(sorted.begin(), sorted.end());
  const size_t mid = sorted.size() / 2;
  stats.median = sorted.size() % 2 == 1 ? sorted[mid] : 0.5 * (sorted[mid - 1] + sorted[mid]);
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - stats.mean) * (v - stats.mean);
    stats.stddev = std::sqrt(ss / (n - 1.0));
  }
  return stats;
}

TrialResult RunTrial(const ExperimentConfig& config, int trial_index, bool keep_trace) {
  config.Validate();
  const MarketConfig market = config.Market();
  market.Validate();
  const FeatureMap fmap = market.feature_map();
  const std::uint64_t seed = config.base_seed + static_cast<std::uint64_t>(trial_index);

  Rng env_rng = MakeStream(seed, Stream::kEnvironment);
  Rng perturb_rng = MakeStream(seed, Stream::kInputPerturb);
  Rng baseline_rng = MakeStream(seed, Stream::kBaselinePrice);

  std::optional<PricingPolicy> policy;
  PolicyConfig policy_config;
  if (config.variant != Variant::kRandomPrice) {
    policy_config = config.ResolvePolicy();
    policy.emplace(policy_config, market.glm, fmap, config.T,
                   MakeStream(seed, Stream::kExploration), MakeStream(seed, Stream::kCovNoise),
                   MakeStream(seed, Stream::kMleNoise));
  }

  const std::vector<long> checkpoints = CheckpointPeriods(config.T, config.checkpoints);
  size_t next_checkpoint = 0;

  TrialResult result;
  TrialSummary& summary = result.summary;
  summary.trial_index = trial_index;
  summary.seed = seed;
  double cum_regret = 0.0;
  double cum_surplus = 0.0;
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  for (long n = 1; n <= config.T; ++n) {
    const Eigen::VectorXd x = SampleCustomer(market, env_rng);
    Eigen::VectorXd seen = config.variant == Variant::kInputPerturb
                               ? InputPerturb(x, config.input_eps, perturb_rng)
                               : x;
    const double price = policy ? policy->Step(seen) : unit(baseline_rng);

    double demand;
    double surplus;
    if (market.glm.kind == GlmKind::kLogistic) {
      // The customer buys iff the utility is positive.
      const double utility = SampleUtility(market, x, price, env_rng);
      demand = utility > 0.0 ? 1.0 : 0.0;
      surplus = std::max(0.0, utility);
    } else {
      demand = SampleDemand(market.glm, fmap(x, price), market.theta_star, env_rng);
      surplus = ConsumerSurplusStep(market, x, price, env_rng);
    }
    const double regret = InstantRegret(market, x, price);
    if (policy) policy->Observe(seen, price, demand);

    cum_regret += regret;
    cum_surplus += surplus;
    if (keep_trace) result.trace.Add(n, x, price, demand, regret, surplus);
    if (next_checkpoint < checkpoints.size() && checkpoints[next_checkpoint] == n) {
      summary.checkpoint_cum_regret.push_back(cum_regret);
      ++next_checkpoint;
    }
  }

  summary.cum_regret = cum_regret;
  summary.avg_regret = cum_regret / static_cast<double>(config.T);
  summary.avg_surplus = cum_surplus / static_cast<double>(config.T);
  if (policy) {
    summary.mle_calls = policy->stats().mle_calls;
    summary.inner_rho_binds = policy->stats().inner_rho_binds;
    summary.optimizer_history_reads = policy->stats().optimizer_history_reads;
    if (!policy_config.noise_free && summary.mle_calls > 0) {
      const PrivacyBudget& per_call = policy->mle_call_budget();
      summary.mle_realized = AdvancedTotal(per_call.eps, per_call.delta, summary.mle_calls,
                                           0.5 * config.mle_budget.delta);
    }
  }
  return result;
}

ExperimentReport RunExperiment(const ExperimentConfig& config) {
  config.Validate();
  ExperimentReport report;
  report.config = config;
  if (config.variant != Variant::kRandomPrice) {
    report.policy = config.ResolvePolicy();
    if (!report.policy.noise_free) {
      report.cov_per_node = CovInnerSplit(config.cov_budget.eps, config.cov_budget.delta, config.T);
      report.cov_sigma = GaussianSigma(report.cov_per_node.eps, report.cov_per_node.delta);
      report.mle_per_call =
          MleSplit(config.mle_budget.eps, config.mle_budget.delta, report.policy.d_inf);
      report.mle_nu = ObjectiveNu(GradientBound(config.Market().glm), report.mle_per_call.eps,
                                  report.mle_per_call.delta);
    }
  }
  report.total_budget = TotalBudget(config.cov_budget, config.mle_budget);
  report.checkpoint_periods = CheckpointPeriods(config.T, config.checkpoints);

  std::vector<TrialResult> results(config.trials);
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&]() {
    for (int i = next++; i < config.trials; i = next++) {
      try {
        results[i] = RunTrial(config, i, config.keep_trace && i == 0);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const int threads = std::min(config.jobs, config.trials);
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<double> regrets, surpluses;
  report.mean_checkpoint_avg_regret.assign(report.checkpoint_periods.size(), 0.0);
  for (auto& r : results) {
    regrets.push_back(r.summary.avg_regret);
    surpluses.push_back(r.summary.avg_surplus);
    for (size_t k = 0; k < report.checkpoint_periods.size(); ++k) {
      report.mean_checkpoint_avg_regret[k] += r.summary.checkpoint_cum_regret[k] /
                                        static_cast<double>(report.checkpoint_periods[k]);
    }
    report.trials.push_back(std::move(r.summary));
  }
  for (double& v : report.mean_checkpoint_avg_regret) v /= config.trials;
  report.avg_regret = Summarize(regrets);
  report.avg_surplus = Summarize(surpluses);
  if (config.keep_trace) report.trace = std::move(results[0].trace);
  return report;
}

}  // namespace dppricer
