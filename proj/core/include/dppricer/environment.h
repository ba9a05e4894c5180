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

#ifndef DPPRICER_ENVIRONMENT_H_
#define DPPRICER_ENVIRONMENT_H_

#include <vector>

#include <Eigen/Core>

#include "dppricer/feature_map.h"
#include "dppricer/glm.h"
#include "dppricer/rng.h"

namespace dppricer {

// A synthetic market: contexts uniform on [-1, 1]^(d-1), a known feature map
// and a true model theta*.
struct MarketConfig {
  int d = 2;
  Eigen::VectorXd theta_star;
  GlmSpec glm;
  int oracle_grid = 10001;

  void Validate() const;
  FeatureMap feature_map() const { return FeatureMap(d); }

  // theta* = [-sqrt(0.1); ...; -sqrt(0.1); sqrt(1 - 0.1 (d - 1))] with the
  // logistic purchase model sigmoid(4 phi'theta*).
  static MarketConfig Section8(int d, BoundCalibration calibration = BoundCalibration::kNominal);
};

struct OracleQuote {
  double price = 0.0;
  double revenue = 0.0;
};

// Expected revenue p * E[y | phi(x, p), theta*].
double ExpectedRevenue(const MarketConfig& market, const Eigen::Ref<const Eigen::VectorXd>& x,
                       double price);

Eigen::VectorXd SampleCustomer(const MarketConfig& market, Rng& rng);

// Maximizer of ExpectedRevenue over the oracle grid; ties go to the largest
// price. When demand is logistic and strictly decreasing in price, revenue is
// strictly log-concave and the grid maximizer is located by a ternary search
// plus a local scan; otherwise every grid point is evaluated.
OracleQuote OraclePrice(const MarketConfig& market, const Eigen::Ref<const Eigen::VectorXd>& x);
// Same maximizer by exhaustive scan.
OracleQuote OraclePriceFullScan(const MarketConfig& market,
                                const Eigen::Ref<const Eigen::VectorXd>& x);

// r*(x) - p f(phi(x, p)'theta*), floored at zero.
double InstantRegret(const MarketConfig& market, const Eigen::Ref<const Eigen::VectorXd>& x,
                     double price);
double InstantRegret(const MarketConfig& market, const OracleQuote& oracle,
                     const Eigen::Ref<const Eigen::VectorXd>& x, double price);

// Utility u = index(phi(x, p), theta*) + standard logistic noise.
double SampleUtility(const MarketConfig& market, const Eigen::Ref<const Eigen::VectorXd>& x,
                     double price, Rng& rng);
// Surplus max(u, 0) of one fresh utility draw.
double ConsumerSurplusStep(const MarketConfig& market, const Eigen::Ref<const Eigen::VectorXd>& x,
                           double price, Rng& rng);

// x + i.i.d. Laplace(0, 1/eps) per coordinate.
Eigen::VectorXd InputPerturb(const Eigen::Ref<const Eigen::VectorXd>& x, double eps, Rng& rng);

struct PeriodRecord {
  long period = 0;
  Eigen::VectorXd x;
  double price = 0.0;
  double demand = 0.0;
  double instant_regret = 0.0;
  double cum_regret = 0.0;
  double surplus = 0.0;
};

// Per-period records of one trial with running sums.
class RegretTrace {
 public:
  void Add(long period, Eigen::VectorXd x, double price, double demand, double instant_regret,
           double surplus);

  const std::vector<PeriodRecord>& records() const { return records_; }
  double cum_regret() const { return cum_regret_; }
  double cum_surplus() const { return cum_surplus_; }
  bool empty() const { return records_.empty(); }

 private:
  std::vector<PeriodRecord> records_;
  double cum_regret_ = 0.0;
  double cum_surplus_ = 0.0;
};

}  // namespace dppricer

#endif  // DPPRICER_ENVIRONMENT_H_
