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

#include "dppricer/dp_accounting.h"

#include <cmath>
#include <random>
#include <string>

#include "dppricer/errors.h"

namespace dppricer {
namespace {

void RequireBudget(double eps, double delta, const char* what) {
  if (!(eps > 0.0) || !std::isfinite(eps)) {
    throw InvalidArgument(std::string(what) + ": eps must be positive");
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    throw InvalidArgument(std::string(what) + ": delta must lie in (0, 1)");
  }
}

}  // namespace

void PrivacyBudget::Validate() const { RequireBudget(eps, delta, "PrivacyBudget"); }

int CeilLog2(long value) {
  if (value < 1) throw InvalidArgument("CeilLog2: value must be >= 1");
  int bits = 0;
  while ((1L << bits) < value) ++bits;
  return bits;
}

double GaussianSigma(double eps, double delta) {
  RequireBudget(eps, delta, "GaussianSigma");
  return std::sqrt(2.0 * std::log(1.25 / delta)) / eps;
}

PrivacyBudget CovInnerSplit(double eps, double delta, long horizon_T) {
  if (horizon_T < 2) throw InvalidArgument("CovInnerSplit: T must be >= 2");
  RequireBudget(eps, delta, "CovInnerSplit");
  const double m = CeilLog2(horizon_T);
  const double delta_prime = delta / (2.0 * m);
  return {eps / (2.0 * m * std::log(1.0 / delta_prime)), delta_prime};
}

PrivacyBudget MleSplit(double eps, double delta, long d_inf) {
  if (d_inf < 1) throw InvalidArgument("MleSplit: d_inf must be >= 1");
  RequireBudget(eps, delta, "MleSplit");
  const double k = static_cast<double>(d_inf);
  double delta_prime = delta / (2.0 * k);
  // Round down so that d_inf copies plus delta / 2 never exceed delta.
  while (k * delta_prime + 0.5 * delta > delta) delta_prime = std::nextafter(delta_prime, 0.0);
  return {eps / (2.0 * std::sqrt(2.0 * k * std::log(1.0 / delta_prime))), delta_prime};
}

PrivacyBudget AdvancedTotal(double eps_per, double delta_per, long k, double delta_tilde) {
  if (k < 1) throw InvalidArgument("AdvancedTotal: k must be >= 1");
  if (!(delta_tilde > 0.0)) throw InvalidArgument("AdvancedTotal: delta_tilde must be positive");
  const double kk = static_cast<double>(k);
  return {std::sqrt(2.0 * kk * std::log(1.0 / delta_tilde)) * eps_per +
              kk * eps_per * std::expm1(eps_per),
          kk * delta_per + delta_tilde};
}

PrivacyBudget TotalBudget(const PrivacyBudget& b1, const PrivacyBudget& b2) {
  return {b1.eps + b2.eps, b1.delta + b2.delta};
}

double ObjectiveNu(double b1_bound, double eps, double delta) {
  if (!(b1_bound > 0.0)) throw InvalidArgument("ObjectiveNu: B1 must be positive");
  RequireBudget(eps, delta, "ObjectiveNu");
  return b1_bound * std::sqrt(8.0 * std::log(2.0 / delta) + 4.0 * eps) / eps;
}

Eigen::MatrixXd SampleSymmetricGaussian(int d, double sigma, Rng& rng) {
  if (d < 1) throw InvalidArgument("SampleSymmetricGaussian: d must be >= 1");
  if (!(sigma >= 0.0)) throw InvalidArgument("SampleSymmetricGaussian: sigma must be >= 0");
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(d, d);
  if (sigma == 0.0) return w;
  std::normal_distribution<double> normal(0.0, sigma);
  for (int i = 0; i < d; ++i) {
    for (int j = i; j < d; ++j) {
      w(i, j) = normal(rng);
      w(j, i) = w(i, j);
    }
  }
  return w;
}

}  // namespace dppricer
