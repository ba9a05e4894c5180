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

#ifndef DPPRICER_HISTORY_H_
#define DPPRICER_HISTORY_H_

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace dppricer {

// The sensitive database: the (phi_t, y_t) pairs of every past period, in
// arrival order. Only the private releasers hold one. Every accessor that
// exposes recorded data bumps read_count(), which lets tests prove that a
// given code path never touched the raw records.
class DemandHistory {
 public:
  explicit DemandHistory(int dim, long capacity_hint = 0);

  void Append(const Eigen::Ref<const Eigen::VectorXd>& phi, double y);

  int dim() const { return dim_; }
  long size() const { return size_; }
  bool empty() const { return size_ == 0; }

  // d x size() block of features, one column per period.
  Eigen::Map<const Eigen::MatrixXd> features() const;
  std::span<const double> demands() const;

  std::uint64_t read_count() const { return reads_; }

 private:
  int dim_;
  long size_ = 0;
  std::vector<double> phis_;
  std::vector<double> ys_;
  mutable std::uint64_t reads_ = 0;
};

}  // namespace dppricer

#endif  // DPPRICER_HISTORY_H_
