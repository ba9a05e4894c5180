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

#include "dppricer/private_cov.h"

#include <string>

#include "dppricer/errors.h"

namespace dppricer {

int LeastSignificantBit(long n) {
  if (n < 1) throw InvalidArgument("LeastSignificantBit: n must be positive");
  int bit = 0;
  while (((n >> bit) & 1L) == 0) ++bit;
  return bit;
}

PrivateCovReleaser::PrivateCovReleaser(int dim, long horizon_T, double sigma)
    : dim_(dim), horizon_T_(horizon_T), sigma_(sigma) {
  if (dim < 1) throw InvalidArgument("PrivateCovReleaser: dim must be >= 1");
  if (horizon_T < 2) throw InvalidArgument("PrivateCovReleaser: T must be >= 2");
  if (!(sigma >= 0.0)) throw InvalidArgument("PrivateCovReleaser: sigma must be >= 0");
  levels_ = CeilLog2(horizon_T);
  clean_.assign(levels_, Eigen::MatrixXd::Zero(dim, dim));
  noisy_.assign(levels_, Eigen::MatrixXd::Zero(dim, dim));
  node_noise_id_.assign(levels_, 0);
  last_release_ = Eigen::MatrixXd::Zero(dim, dim);
}

PrivateCovReleaser PrivateCovReleaser::FromBudget(int dim, long horizon_T,
                                                  const PrivacyBudget& budget) {
  const PrivacyBudget inner = CovInnerSplit(budget.eps, budget.delta, horizon_T);
  return PrivateCovReleaser(dim, horizon_T, GaussianSigma(inner.eps, inner.delta));
}

const Eigen::MatrixXd& PrivateCovReleaser::Ingest(const Eigen::Ref<const Eigen::VectorXd>& phi,
                                                  Rng& rng) {
  if (phi.size() != dim_) {
    throw InvalidArgument("PrivateCovReleaser::Ingest: expected dimension " +
                          std::to_string(dim_) + ", got " + std::to_string(phi.size()));
  }
  if (exhausted()) {
    throw ProtocolExhausted("PrivateCovReleaser: horizon of " + std::to_string(horizon_T_) +
                            " periods allows only " + std::to_string(horizon_T_ - 1) +
                            " releases");
  }
  const long n = ++n_seen_;
  const int level = LeastSignificantBit(n);

  Eigen::MatrixXd& node = clean_[level];
  node = phi * phi.transpose();
  for (int l = 0; l < level; ++l) {
    node += clean_[l];
    clean_[l].setZero();
    noisy_[l].setZero();
    node_noise_id_[l] = 0;
  }
  noisy_[level] = node;
  node_noise_id_[level] = 0;
  if (sigma_ > 0.0) {
    noisy_[level] += SampleSymmetricGaussian(dim_, sigma_, rng);
    node_noise_id_[level] = ++injections_;
  }

  last_release_.setZero();
  release_noise_ids_.clear();
  for (int l = 0; l < levels_; ++l) {
    if ((n >> l) & 1L) {
      last_release_ += noisy_[l];
      if (node_noise_id_[l] != 0) release_noise_ids_.push_back(node_noise_id_[l]);
    }
  }
  return last_release_;
}

}  // namespace dppricer
