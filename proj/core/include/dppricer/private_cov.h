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

#ifndef DPPRICER_PRIVATE_COV_H_
#define DPPRICER_PRIVATE_COV_H_

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "dppricer/dp_accounting.h"
#include "dppricer/rng.h"

namespace dppricer {

// Index of the least significant set bit of n. Throws on n = 0.
int LeastSignificantBit(long n);

// Continual release of the prefix sums sum_{t<=n} phi_t phi_t' through
// binary-tree aggregation. Level l holds the partial sum of a dyadic block of
// 2^l consecutive features, plus one fresh symmetric Gaussian noise matrix
// drawn when the node is written. The release after n ingests sums the noisy
// nodes selected by the binary digits of n, so it carries at most
// m = ceil(log2 T) noise matrices.
//
// Up to T - 1 features may be ingested. Before the first ingest the release is
// the zero matrix.
class PrivateCovReleaser {
 public:
  // Explicit per-node noise scale.
  PrivateCovReleaser(int dim, long horizon_T, double sigma);

  // Calibrates sigma from an (eps, delta) budget for the whole release stream.
  static PrivateCovReleaser FromBudget(int dim, long horizon_T, const PrivacyBudget& budget);

  // Folds phi into the tree, re-noises the node at level lsb(n) and returns
  // the new release. Throws ProtocolExhausted past T - 1 ingests.
  const Eigen::MatrixXd& Ingest(const Eigen::Ref<const Eigen::VectorXd>& phi, Rng& rng);

  // Most recent release. Never draws noise.
  const Eigen::MatrixXd& Query() const { return last_release_; }

  int dim() const { return dim_; }
  long horizon() const { return horizon_T_; }
  int levels() const { return levels_; }
  double sigma() const { return sigma_; }
  long n_seen() const { return n_seen_; }
  bool exhausted() const { return n_seen_ >= horizon_T_ - 1; }

  // Instrumentation: distinct noise matrices in the current release, and the
  // ids of the injections they came from (ids count up from 1).
  int release_noise_count() const { return static_cast<int>(release_noise_ids_.size()); }
  const std::vector<std::uint64_t>& release_noise_ids() const { return release_noise_ids_; }

  const std::vector<Eigen::MatrixXd>& clean_nodes() const { return clean_; }
  const std::vector<Eigen::MatrixXd>& noisy_nodes() const { return noisy_; }

 private:
  int dim_;
  long horizon_T_;
  int levels_;
  double sigma_;
  long n_seen_ = 0;
  std::uint64_t injections_ = 0;
  std::vector<Eigen::MatrixXd> clean_;
  std::vector<Eigen::MatrixXd> noisy_;
  std::vector<std::uint64_t> node_noise_id_;
  std::vector<std::uint64_t> release_noise_ids_;
  Eigen::MatrixXd last_release_;
};

}  // namespace dppricer

#endif  // DPPRICER_PRIVATE_COV_H_
