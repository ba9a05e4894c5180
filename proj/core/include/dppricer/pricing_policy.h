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

#ifndef DPPRICER_PRICING_POLICY_H_
#define DPPRICER_PRICING_POLICY_H_

#include <vector>

#include <Eigen/Core>

#include "dppricer/dp_accounting.h"
#include "dppricer/feature_map.h"
#include "dppricer/glm.h"
#include "dppricer/history.h"
#include "dppricer/private_cov.h"
#include "dppricer/private_mle.h"
#include "dppricer/rng.h"

namespace dppricer {

// Where the confidence bonus enters the revenue bound.
enum class BonusForm {
  // min{1, p f(u) + gamma sqrt(phi' A^-1 phi)}
  kCapped,
  // p min{1, p f(u) + gamma sqrt(phi' A^-1 phi)}
  kPriceScaled,
};

struct PolicyConfig {
  PrivacyBudget cov_budget{0.5, 1e-10};
  PrivacyBudget mle_budget{0.5, 1e-10};
  long t0 = 10;
  long d_inf = 1;
  double rho = 10.0;
  double gamma = 1.0;
  int price_grid = 1001;
  BonusForm bonus = BonusForm::kCapped;
  // Drops every noise calibration step: sigma = nu = 0 and no rho inflation
  // inside the MLE.
  bool noise_free = false;

  void Validate() const;
};

// The optimizer's private copy of released quantities.
struct PolicyState {
  Eigen::MatrixXd lambda_p;
  Eigen::MatrixXd lambda_p_inv;
  double logdet_p = 0.0;
  Eigen::VectorXd theta_p;
  long d_mle = 0;
  long period = 1;

  // Lambda = rho I, theta = 0.
  static PolicyState Initial(int dim, double rho);
};

// log det of a symmetric matrix, or -inf if it is not positive definite.
double LogDetOrNegInf(const Eigen::MatrixXd& m);

// True iff logdet_n > ln 2 + logdet_p and the MLE cap is not reached.
bool ShouldRefresh(double logdet_n, const PolicyState& state, long d_inf);

// Upper confidence bound on the revenue of price p for context x.
double UcbValue(double price, const Eigen::Ref<const Eigen::VectorXd>& x,
                const PolicyState& state, const GlmSpec& glm, double gamma,
                const FeatureMap& feature_map, BonusForm bonus = BonusForm::kCapped);

// Argmax of UcbValue over {0, 1/(G-1), ..., 1}; ties go to the largest price.
// Deterministic in (x, state).
double ChoosePrice(const Eigen::Ref<const Eigen::VectorXd>& x, const PolicyState& state,
                   const PolicyConfig& config, const GlmSpec& glm, const FeatureMap& feature_map);

// Experimental settings: T0 = 10, rho = 10, D = ceil(d log2 T), gamma = 1.
PolicyConfig Section8Params(int dim, long horizon_T, const PrivacyBudget& cov_budget,
                            const PrivacyBudget& mle_budget);
// Adversarial-context settings: T0 = 0, D = ceil(d log_1.5 T), theory rho and gamma.
PolicyConfig Theorem1Params(int dim, long horizon_T, const PrivacyBudget& cov_budget,
                            const PrivacyBudget& mle_budget, const GlmSpec& glm);
// Stochastic-context settings: forced exploration T0 and gamma = 4 s K^2 sqrt(d ln T).
PolicyConfig Theorem2Params(int dim, long horizon_T, const PrivacyBudget& cov_budget,
                            const PrivacyBudget& mle_budget, const GlmSpec& glm);

// ceil(d log_base T).
long MleCallCap(int dim, long horizon_T, double log_base);

// The price optimizer. It never sees the sensitive database: its inputs are
// the incoming context and the outputs of the two private releasers.
class PriceOptimizer {
 public:
  PriceOptimizer(const PolicyConfig& config, const GlmSpec& glm, const FeatureMap& feature_map);

  // Forms Lambda_n = cov_release + rho I and returns whether a fresh MLE
  // release should be requested. A positive answer stays pending until
  // AcceptMle.
  bool ConsiderCovariance(const Eigen::MatrixXd& cov_release);
  // Commits the pending Lambda_n together with the released estimate.
  void AcceptMle(const Eigen::VectorXd& theta);

  double Price(const Eigen::Ref<const Eigen::VectorXd>& x) const;
  void Advance() { ++state_.period; }

  const PolicyState& state() const { return state_; }
  const PolicyConfig& config() const { return config_; }

 private:
  PolicyConfig config_;
  GlmSpec glm_;
  FeatureMap feature_map_;
  PolicyState state_;
  Eigen::MatrixXd pending_lambda_;
  double pending_logdet_ = 0.0;
};

struct PolicyStats {
  long mle_calls = 0;
  // Refreshes where max{rho, 2 K G / eps'} replaced the outer rho.
  long inner_rho_binds = 0;
  std::vector<long> refresh_periods;
  long newton_iterations = 0;
  // History reads observed while the optimizer was choosing a price.
  std::uint64_t optimizer_history_reads = 0;
};

// Full pricing loop: exploration, private covariance query, determinant
// triggered MLE refresh and UCB price. Call Step for the period's price, then
// Observe with the realized demand before the next Step.
class PricingPolicy {
 public:
  PricingPolicy(const PolicyConfig& config, const GlmSpec& glm, const FeatureMap& feature_map,
                long horizon_T, Rng exploration_rng, Rng cov_rng, Rng mle_rng);

  double Step(const Eigen::Ref<const Eigen::VectorXd>& x);
  void Observe(const Eigen::Ref<const Eigen::VectorXd>& x, double price, double demand);

  const PolicyState& state() const { return optimizer_.state(); }
  const PolicyStats& stats() const { return stats_; }
  const PolicyConfig& config() const { return optimizer_.config(); }
  // Per-call MLE budget (eps2', delta2').
  const PrivacyBudget& mle_call_budget() const { return mle_call_budget_; }
  double cov_sigma() const { return cov_.sigma(); }
  std::uint64_t history_read_count() const { return history_.read_count(); }

  // Hook for instrumentation: called with every covariance release consumed
  // and every MLE estimate accepted.
  struct ReleaseLog {
    std::vector<Eigen::MatrixXd> cov_releases;
    std::vector<long> mle_periods;
    std::vector<Eigen::VectorXd> mle_releases;
  };
  void set_release_log(ReleaseLog* log) { release_log_ = log; }

 private:
  Eigen::VectorXd RequestMle();

  GlmSpec glm_;
  FeatureMap feature_map_;
  long horizon_T_;
  PrivacyBudget mle_call_budget_;
  PriceOptimizer optimizer_;
  Rng exploration_rng_;
  Rng cov_rng_;
  Rng mle_rng_;
  // Private releasers and the data they guard.
  PrivateCovReleaser cov_;
  DemandHistory history_;
  PolicyStats stats_;
  ReleaseLog* release_log_ = nullptr;
};

}  // namespace dppricer

#endif  // DPPRICER_PRICING_POLICY_H_
