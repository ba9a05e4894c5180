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

#ifndef DPPRICER_DP_ACCOUNTING_H_
#define DPPRICER_DP_ACCOUNTING_H_

#include <Eigen/Core>

#include "dppricer/rng.h"

namespace dppricer {

// An (eps, delta) pair. Mechanisms require eps > 0 and 0 < delta < 1 (see
// Validate); accounting results may carry zero components.
struct PrivacyBudget {
  double eps = 0.0;
  double delta = 0.0;

  void Validate() const;
  friend bool operator==(const PrivacyBudget&, const PrivacyBudget&) = default;
};

// Gaussian-mechanism scale for unit L2 sensitivity:
// sigma = sqrt(2 ln(1.25 / delta)) / eps.
double GaussianSigma(double eps, double delta);

// Per-node budget of the tree-aggregated covariance releaser over horizon T,
// with m = ceil(log2 T) levels:
//   delta' = delta / (2m),  eps' = eps / (2 m ln(1 / delta')).
PrivacyBudget CovInnerSplit(double eps, double delta, long horizon_T);

// Per-call budget of the MLE releaser when it may run up to d_inf times:
//   delta' = delta / (2 d_inf),  eps' = eps / (2 sqrt(2 d_inf ln(1 / delta'))).
PrivacyBudget MleSplit(double eps, double delta, long d_inf);

// Advanced composition of k mechanisms, each (eps, delta):
//   (sqrt(2k ln(1/delta_tilde)) eps + k eps (e^eps - 1), k delta + delta_tilde).
PrivacyBudget AdvancedTotal(double eps_per, double delta_per, long k, double delta_tilde);

// Basic composition.
PrivacyBudget TotalBudget(const PrivacyBudget& b1, const PrivacyBudget& b2);

// Objective-perturbation noise scale
// nu = B1 * sqrt(8 ln(2 / delta) + 4 eps) / eps.
double ObjectiveNu(double b1_bound, double eps, double delta);

// Symmetric d x d matrix whose upper triangle (diagonal included) is i.i.d.
// N(0, sigma^2), mirrored below. Entries are drawn row-major over the upper
// triangle.
Eigen::MatrixXd SampleSymmetricGaussian(int d, double sigma, Rng& rng);

// ceil(log2 T) for T >= 1, computed exactly on integers.
int CeilLog2(long value);

}  // namespace dppricer

#endif  // DPPRICER_DP_ACCOUNTING_H_
