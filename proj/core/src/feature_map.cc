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

#include "dppricer/feature_map.h"

#include <cmath>
#include <string>

#include "dppricer/errors.h"

namespace dppricer {

FeatureMap::FeatureMap(int dim) : dim_(dim) {
  if (dim < 2) throw InvalidArgument("FeatureMap: dimension must be >= 2");
  scale_ = 1.0 / std::sqrt(static_cast<double>(dim));
  slope_ = Eigen::VectorXd::Zero(dim);
  slope_(dim - 1) = -scale_;
}

Eigen::VectorXd FeatureMap::Offset(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  if (x.size() != dim_ - 1) {
    throw InvalidArgument("FeatureMap: expected context of dimension " +
                          std::to_string(dim_ - 1) + ", got " + std::to_string(x.size()));
  }
  Eigen::VectorXd phi(dim_);
  phi.head(dim_ - 1) = scale_ * x;
  phi(dim_ - 1) = 0.0;
  return phi;
}

Eigen::VectorXd FeatureMap::operator()(const Eigen::Ref<const Eigen::VectorXd>& x,
                                       double price) const {
  Eigen::VectorXd phi = Offset(x);
  phi(dim_ - 1) = -scale_ * price;
  return phi;
}

}  // namespace dppricer
