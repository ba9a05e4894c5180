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

#include "dppricer/history.h"

#include <string>

#include "dppricer/errors.h"

namespace dppricer {

DemandHistory::DemandHistory(int dim, long capacity_hint) : dim_(dim) {
  if (dim < 1) throw InvalidArgument("DemandHistory: dim must be >= 1");
  if (capacity_hint > 0) {
    phis_.reserve(static_cast<size_t>(capacity_hint) * dim);
    ys_.reserve(static_cast<size_t>(capacity_hint));
  }
}

void DemandHistory::Append(const Eigen::Ref<const Eigen::VectorXd>& phi, double y) {
  if (phi.size() != dim_) {
    throw InvalidArgument("DemandHistory::Append: expected dimension " + std::to_string(dim_) +
                          ", got " + std::to_string(phi.size()));
  }
  for (int i = 0; i < dim_; ++i) phis_.push_back(phi(i));
  ys_.push_back(y);
  ++size_;
}

Eigen::Map<const Eigen::MatrixXd> DemandHistory::features() const {
  ++reads_;
  return {phis_.data(), dim_, size_};
}

std::span<const double> DemandHistory::demands() const {
  ++reads_;
  return {ys_.data(), ys_.size()};
}

}  // namespace dppricer
