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

#ifndef DPPRICER_FEATURE_MAP_H_
#define DPPRICER_FEATURE_MAP_H_

#include <Eigen/Core>

namespace dppricer {

// phi(x, p) = (1 / sqrt(d)) [x; -p] for x in [-1, 1]^(d-1), p in [0, 1], so
// ||phi|| <= 1. The map is affine in the price:
// phi(x, p) = Offset(x) + p * Slope().
class FeatureMap {
 public:
  explicit FeatureMap(int dim);

  int dim() const { return dim_; }
  int context_dim() const { return dim_ - 1; }

  Eigen::VectorXd operator()(const Eigen::Ref<const Eigen::VectorXd>& x, double price) const;
  Eigen::VectorXd Offset(const Eigen::Ref<const Eigen::VectorXd>& x) const;
  const Eigen::VectorXd& Slope() const { return slope_; }

 private:
  int dim_;
  double scale_;
  Eigen::VectorXd slope_;
};

}  // namespace dppricer

#endif  // DPPRICER_FEATURE_MAP_H_
