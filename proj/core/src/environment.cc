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

#include "dppricer/environment.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "dppricer/errors.h"

namespace dppricer {
namespace {

double GridPrice(int k, int grid) { return k == grid - 1 ? 1.0 : static_cast<double>(k) / (grid - 1); }

}  // namespace

void MarketConfig::Validate() const {
  if (d < 2) throw InvalidArgument("MarketConfig: d must be >= 2");
  if (theta_star.size() != d) throw InvalidArgument("MarketConfig: theta_star has wrong dimension");
  if (theta_star.norm() > 1.0 + 1e-12) throw InvalidArgument("MarketConfig: ||theta*|| must be <= 1");
  if (oracle_grid < 2) throw InvalidArgument("MarketConfig: oracle_grid must be >= 2");
  glm.Validate();
}

MarketConfig MarketConfig::Section8(int d, BoundCalibration calibration) {
  if (d < 2 || d > 10) throw InvalidArgument("MarketConfig::Section8: d must lie in [2, 10]");
  MarketConfig market;
  market.d = d;
  market.theta_star = Eigen::VectorXd::Constant(d, -std::sqrt(0.1));
  market.theta_star(d - 1) = std::sqrt(1.0 - 0.1 * (d - 1));
  market.glm = GlmSpec::ScaledLogistic(4.0, calibration);
  return market;
}

double ExpectedRevenue(const MarketConfig& market, const Eigen::Ref<const Eigen::VectorXd>& x,
                       double price) {
  const FeatureMap phi(market.d);
  return price * MeanDemand(market.glm, phi(x, price), market.theta_star);
}

Eigen::VectorXd SampleCustomer(const MarketConfig& market, Rng& rng) {
  std::uniform_real_distribution<double> coord(-1.0, 1.0);
  Eigen::VectorXd x(market.d - 1);
  for (int i = 0; i < market.d - 1; ++i) x(i) = coord(rng);
  return x;
}

OracleQuote OraclePriceFullScan(const MarketConfig& market,
                                const Eigen::Ref<const Eigen::VectorXd>& x) {
  const FeatureMap fmap(market.d);
  const double u0 = market.glm.index_scale * fmap.Offset(x).dot(market.theta_star);
  const double u1 = market.glm.index_scale * fmap.Slope().dot(market.theta_star);
  OracleQuote best{0.0, -std::numeric_limits<double>::infinity()};
  for (int k = 0; k < market.oracle_grid; ++k) {
    const double p = GridPrice(k, market.oracle_grid);
    const double r = p * LinkMean(market.glm, u0 + u1 * p);
    if (r >= best.revenue) best = {p, r};
  }
  return best;
}

OracleQuote OraclePrice(const MarketConfig& market, const Eigen::Ref<const Eigen::VectorXd>& x) {
  const FeatureMap fmap(market.d);
  const double u0 = market.glm.index_scale * fmap.Offset(x).dot(market.theta_star);
  const double u1 = market.glm.index_scale * fmap.Slope().dot(market.theta_star);
  if (market.glm.kind != GlmKind::kLogistic || !(u1 < 0.0)) return OraclePriceFullScan(market, x);

  // p sigmoid(u0 + u1 p) is strictly log-concave on (0, 1] for u1 < 0, hence
  // unimodal on the grid.
  const int grid = market.oracle_grid;
  auto revenue = [&](int k) {
    const double p = GridPrice(k, grid);
    return p * LinkMean(market.glm, u0 + u1 * p);
  };
  int lo = 0, hi = grid - 1;
  while (hi - lo > 8) {
    const int m1 = lo + (hi - lo) / 3;
    const int m2 = hi - (hi - lo) / 3;
    if (revenue(m1) < revenue(m2)) {
      lo = m1 + 1;
    } else {
      hi = m2;
    }
  }
  const int from = std::max(0, lo - 2);
  const int to = std::min(grid - 1, hi + 2);
  OracleQuote best{0.0, -std::numeric_limits<double>::infinity()};
  for (int k = from; k <= to; ++k) {
    const double r = revenue(k);
    if (r >= best.revenue) best = {GridPrice(k, grid), r};
  }
  return best;
}

double InstantRegret(const MarketConfig& market, const OracleQuote& oracle,
                     const Eigen::Ref<const Eigen::VectorXd>& x, double price) {
  return std::max(0.0, oracle.revenue - ExpectedRevenue(market, x, price));
}

double InstantRegret(const MarketConfig& market, const Eigen::Ref<const Eigen::VectorXd>& x,
                     double price) {
  return InstantRegret(market, OraclePrice(market, x), x, price);
}

double SampleUtility(const MarketConfig& market, const Eigen::Ref<const Eigen::VectorXd>& x,
                     double price, Rng& rng) {
  const FeatureMap fmap(market.d);
  const double index = EffectiveIndex(market.glm, fmap(x, price), market.theta_star);
  // Standard logistic by inversion; the open interval keeps the log finite.
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  double v = unif(rng);
  while (v <= 0.0) v = unif(rng);
  return index + std::log(v / (1.0 - v));
}

double ConsumerSurplusStep(const MarketConfig& market, const Eigen::Ref<const Eigen::VectorXd>& x,
                           double price, Rng& rng) {
  return std::max(0.0, SampleUtility(market, x, price, rng));
}

Eigen::VectorXd InputPerturb(const Eigen::Ref<const Eigen::VectorXd>& x, double eps, Rng& rng) {
  if (!(eps > 0.0)) throw InvalidArgument("InputPerturb: eps must be positive");
  const double scale = 1.0 / eps;
  std::uniform_real_distribution<double> unif(-0.5, 0.5);
  Eigen::VectorXd out = x;
  for (Eigen::Index i = 0; i < out.size(); ++i) {
    double u = unif(rng);
    while (u == -0.5) u = unif(rng);
    // Laplace inverse CDF.
    out(i) -= scale * (u < 0 ? -1.0 : 1.0) * std::log(1.0 - 2.0 * std::abs(u));
  }
  return out;
}

void RegretTrace::Add(long period, Eigen::VectorXd x, double price, double demand,
                      double instant_regret, double surplus) {
  cum_regret_ += instant_regret;
  cum_surplus_ += surplus;
  records_.push_back({period, std::move(x), price, demand, instant_regret, cum_regret_, surplus});
}

}  // namespace dppricer
