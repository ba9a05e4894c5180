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

#include "dppricer/pricing_policy.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include <Eigen/Cholesky>

#include "dppricer/errors.h"

namespace dppricer {
namespace {

double Sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

double Bound(double price, double demand, double bonus, BonusForm form) {
  const double clamped = std::min(1.0, price * demand + bonus);
  return form == BonusForm::kCapped ? clamped : price * clamped;
}

}  // namespace

void PolicyConfig::Validate() const {
  if (!noise_free) {
    cov_budget.Validate();
    mle_budget.Validate();
  }
  if (t0 < 0) throw InvalidArgument("PolicyConfig: t0 must be >= 0");
  if (d_inf < 1) throw InvalidArgument("PolicyConfig: d_inf must be >= 1");
  if (!(rho >= 1.0)) throw InvalidArgument("PolicyConfig: rho must be >= 1");
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) {
    throw InvalidArgument("PolicyConfig: gamma must be nonnegative");
  }
  if (price_grid < 2) throw InvalidArgument("PolicyConfig: price_grid must be >= 2");
}

PolicyState PolicyState::Initial(int dim, double rho) {
  PolicyState state;
  state.lambda_p = rho * Eigen::MatrixXd::Identity(dim, dim);
  state.lambda_p_inv = Eigen::MatrixXd::Identity(dim, dim) / rho;
  state.logdet_p = dim * std::log(rho);
  state.theta_p = Eigen::VectorXd::Zero(dim);
  return state;
}

double LogDetOrNegInf(const Eigen::MatrixXd& m) {
  Eigen::LLT<Eigen::MatrixXd> llt(m);
  if (llt.info() != Eigen::Success) return -std::numeric_limits<double>::infinity();
  const Eigen::VectorXd diag = llt.matrixLLT().diagonal();
  double logdet = 0.0;
  for (Eigen::Index i = 0; i < diag.size(); ++i) {
    if (!(diag(i) > 0.0)) return -std::numeric_limits<double>::infinity();
    logdet += 2.0 * std::log(diag(i));
  }
  return logdet;
}

bool ShouldRefresh(double logdet_n, const PolicyState& state, long d_inf) {
  return logdet_n > std::log(2.0) + state.logdet_p && state.d_mle < d_inf;
}

double UcbValue(double price, const Eigen::Ref<const Eigen::VectorXd>& x,
                const PolicyState& state, const GlmSpec& glm, double gamma,
                const FeatureMap& feature_map, BonusForm bonus) {
  const Eigen::VectorXd phi = feature_map(x, price);
  const double demand = MeanDemand(glm, phi, state.theta_p);
  const double width = std::sqrt(std::max(0.0, phi.dot(state.lambda_p_inv * phi)));
  return Bound(price, demand, gamma * width, bonus);
}

double ChoosePrice(const Eigen::Ref<const Eigen::VectorXd>& x, const PolicyState& state,
                   const PolicyConfig& config, const GlmSpec& glm, const FeatureMap& feature_map) {
  // phi(p) = o + p v, so the index and the quadratic form are polynomials in p.
  const Eigen::VectorXd offset = feature_map.Offset(x);
  const Eigen::VectorXd& slope = feature_map.Slope();
  const double u0 = glm.index_scale * offset.dot(state.theta_p);
  const double u1 = glm.index_scale * slope.dot(state.theta_p);
  const Eigen::VectorXd a_offset = state.lambda_p_inv * offset;
  const double q0 = offset.dot(a_offset);
  const double q1 = 2.0 * slope.dot(a_offset);
  const double q2 = slope.dot(state.lambda_p_inv * slope);
  const bool logistic = glm.kind == GlmKind::kLogistic;

  const int grid = config.price_grid;
  const double step = 1.0 / (grid - 1);
  double best_price = 0.0;
  double best_value = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < grid; ++k) {
    const double p = k == grid - 1 ? 1.0 : k * step;
    const double u = u0 + u1 * p;
    const double demand = logistic ? Sigmoid(u) : u;
    const double width = std::sqrt(std::max(0.0, q0 + p * (q1 + p * q2)));
    const double value = Bound(p, demand, config.gamma * width, config.bonus);
    if (value >= best_value) {
      best_value = value;
      best_price = p;
    }
  }
  return best_price;
}

long MleCallCap(int dim, long horizon_T, double log_base) {
  if (horizon_T < 2) throw InvalidArgument("MleCallCap: T must be >= 2");
  const double raw = dim * std::log(static_cast<double>(horizon_T)) / std::log(log_base);
  // Guard exact integers (e.g. d log2 1024) against rounding upward.
  const double nearest = std::round(raw);
  if (std::abs(raw - nearest) <= 1e-9 * std::max(1.0, raw)) return static_cast<long>(nearest);
  return static_cast<long>(std::ceil(raw));
}

PolicyConfig Section8Params(int dim, long horizon_T, const PrivacyBudget& cov_budget,
                            const PrivacyBudget& mle_budget) {
  PolicyConfig config;
  config.cov_budget = cov_budget;
  config.mle_budget = mle_budget;
  config.t0 = 10;
  config.rho = 10.0;
  config.d_inf = MleCallCap(dim, horizon_T, 2.0);
  config.gamma = 1.0;
  return config;
}

namespace {

struct TheoryTerms {
  long d_inf;
  double nu;
  double log_t;
};

TheoryTerms TheoryCommon(int dim, long horizon_T, const PrivacyBudget& mle_budget,
                         const GlmSpec& glm) {
  TheoryTerms terms;
  terms.d_inf = MleCallCap(dim, horizon_T, 1.5);
  const PrivacyBudget per_call = MleSplit(mle_budget.eps, mle_budget.delta, terms.d_inf);
  terms.nu = ObjectiveNu(GradientBound(glm), per_call.eps, per_call.delta);
  terms.log_t = std::log(static_cast<double>(horizon_T));
  return terms;
}

double TheoryRho(int dim, const TheoryTerms& terms, const PrivacyBudget& cov_budget,
                 double curvature_term) {
  const double d = dim;
  const double lt = terms.log_t;
  return std::max({std::pow(d, 1.5) * std::pow(lt, 5.0) / cov_budget.eps,
                   5.0 * terms.nu * std::sqrt(5.0 * d * lt), 2.0 + curvature_term * d * lt});
}

}  // namespace

PolicyConfig Theorem1Params(int dim, long horizon_T, const PrivacyBudget& cov_budget,
                            const PrivacyBudget& mle_budget, const GlmSpec& glm) {
  cov_budget.Validate();
  const TheoryTerms terms = TheoryCommon(dim, horizon_T, mle_budget, glm);
  const double s = glm.s_const, g = glm.g_const, k = glm.k_const;
  PolicyConfig config;
  config.cov_budget = cov_budget;
  config.mle_budget = mle_budget;
  config.t0 = 0;
  config.d_inf = terms.d_inf;
  config.rho = TheoryRho(dim, terms, cov_budget, 48.0 * s * s * g * g * k);
  config.gamma = k * ((std::sqrt(3.0) * s * k + std::sqrt(5.0) * g * terms.nu) *
                          std::sqrt(dim * terms.log_t) +
                      (2.0 * g + 3.0) * std::sqrt(config.rho));
  return config;
}

PolicyConfig Theorem2Params(int dim, long horizon_T, const PrivacyBudget& cov_budget,
                            const PrivacyBudget& mle_budget, const GlmSpec& glm) {
  cov_budget.Validate();
  const TheoryTerms terms = TheoryCommon(dim, horizon_T, mle_budget, glm);
  const double s = glm.s_const, g = glm.g_const, k = glm.k_const;
  PolicyConfig config;
  config.cov_budget = cov_budget;
  config.mle_budget = mle_budget;
  config.d_inf = terms.d_inf;
  config.rho = TheoryRho(dim, terms, cov_budget, 48.0 * s * s * g * k);
  const double inner =
      (2.0 * g + 3.0) * config.rho / std::sqrt(5.0 * dim * terms.log_t) + terms.nu * g;
  const double log_dt = std::log(static_cast<double>(dim) * static_cast<double>(horizon_T));
  const double t0 = 32.0 * inner * inner * log_dt * log_dt;
  config.t0 = t0 >= static_cast<double>(horizon_T) ? horizon_T : static_cast<long>(std::ceil(t0));
  config.gamma = 4.0 * s * k * k * std::sqrt(dim * terms.log_t);
  return config;
}

PriceOptimizer::PriceOptimizer(const PolicyConfig& config, const GlmSpec& glm,
                               const FeatureMap& feature_map)
    : config_(config),
      glm_(glm),
      feature_map_(feature_map),
      state_(PolicyState::Initial(feature_map.dim(), config.rho)) {
  config_.Validate();
  glm_.Validate();
}

bool PriceOptimizer::ConsiderCovariance(const Eigen::MatrixXd& cov_release) {
  const int d = feature_map_.dim();
  pending_lambda_ = cov_release + config_.rho * Eigen::MatrixXd::Identity(d, d);
  pending_logdet_ = LogDetOrNegInf(pending_lambda_);
  return ShouldRefresh(pending_logdet_, state_, config_.d_inf);
}

void PriceOptimizer::AcceptMle(const Eigen::VectorXd& theta) {
  if (pending_lambda_.size() == 0) {
    throw InvalidArgument("PriceOptimizer::AcceptMle: no pending covariance");
  }
  state_.theta_p = theta;
  state_.lambda_p = pending_lambda_;
  state_.lambda_p_inv = pending_lambda_.llt().solve(
      Eigen::MatrixXd::Identity(pending_lambda_.rows(), pending_lambda_.cols()));
  state_.logdet_p = pending_logdet_;
  ++state_.d_mle;
}

double PriceOptimizer::Price(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  return ChoosePrice(x, state_, config_, glm_, feature_map_);
}

PricingPolicy::PricingPolicy(const PolicyConfig& config, const GlmSpec& glm,
                             const FeatureMap& feature_map, long horizon_T, Rng exploration_rng,
                             Rng cov_rng, Rng mle_rng)
    : glm_(glm),
      feature_map_(feature_map),
      horizon_T_(horizon_T),
      optimizer_(config, glm, feature_map),
      exploration_rng_(std::move(exploration_rng)),
      cov_rng_(std::move(cov_rng)),
      mle_rng_(std::move(mle_rng)),
      cov_(config.noise_free
               ? PrivateCovReleaser(feature_map.dim(), horizon_T, 0.0)
               : PrivateCovReleaser::FromBudget(feature_map.dim(), horizon_T, config.cov_budget)),
      history_(feature_map.dim(), horizon_T) {
  if (!config.noise_free) {
    mle_call_budget_ = MleSplit(config.mle_budget.eps, config.mle_budget.delta, config.d_inf);
  }
}

Eigen::VectorXd PricingPolicy::RequestMle() {
  const PolicyConfig& config = optimizer_.config();
  double rho = config.rho;
  if (!config.noise_free) {
    rho = EffectiveRho(config.rho, glm_, mle_call_budget_.eps);
    if (rho > config.rho) ++stats_.inner_rho_binds;
  }
  MleRequest request{MleData{history_.features(), history_.demands()}, glm_, rho,
                     mle_call_budget_, 2.0, !config.noise_free};
  MleResult result = FitPrivateMle(request, mle_rng_);
  stats_.newton_iterations += result.newton_iterations;
  return std::move(result.theta);
}

double PricingPolicy::Step(const Eigen::Ref<const Eigen::VectorXd>& x) {
  const long n = optimizer_.state().period;
  double price;
  if (n <= optimizer_.config().t0) {
    price = std::uniform_real_distribution<double>(0.0, 1.0)(exploration_rng_);
  } else {
    const Eigen::MatrixXd& release = cov_.Query();
    if (release_log_ != nullptr) release_log_->cov_releases.push_back(release);
    if (optimizer_.ConsiderCovariance(release)) {
      Eigen::VectorXd theta = RequestMle();
      if (release_log_ != nullptr) {
        release_log_->mle_periods.push_back(n);
        release_log_->mle_releases.push_back(theta);
      }
      optimizer_.AcceptMle(theta);
      ++stats_.mle_calls;
      stats_.refresh_periods.push_back(n);
    }
    const std::uint64_t reads_before = history_.read_count();
    price = optimizer_.Price(x);
    stats_.optimizer_history_reads += history_.read_count() - reads_before;
  }
  optimizer_.Advance();
  return price;
}

void PricingPolicy::Observe(const Eigen::Ref<const Eigen::VectorXd>& x, double price,
                            double demand) {
  const Eigen::VectorXd phi = feature_map_(x, price);
  history_.Append(phi, demand);
  if (!cov_.exhausted()) cov_.Ingest(phi, cov_rng_);
}

}  // namespace dppricer
