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
#include <vector>

#include "dppricer/errors.h"
#include "gtest/gtest.h"

namespace dppricer {
namespace {

TEST(GaussianSigmaTest, Formula) {
  const double s = GaussianSigma(1.0, 0.05);
  EXPECT_NEAR(s * s, 2 * std::log(25.0), 1e-12);
  EXPECT_NEAR(s * s, 6.4378, 1e-4);
  EXPECT_NEAR(GaussianSigma(2.0, 0.05), s / 2, 1e-14);
  const double t = GaussianSigma(0.1, 1e-10);
  EXPECT_NEAR(t * t, 200 * std::log(1.25e10), 1e-9);
  EXPECT_NEAR(t * t, 4650.2, 0.5);
}

TEST(GaussianSigmaTest, RejectsBadBudgets) {
  EXPECT_THROW(GaussianSigma(0.0, 0.1), InvalidArgument);
  EXPECT_THROW(GaussianSigma(-1.0, 0.1), InvalidArgument);
  EXPECT_THROW(GaussianSigma(1.0, 1.0), InvalidArgument);
  EXPECT_THROW(GaussianSigma(1.0, 0.0), InvalidArgument);
  EXPECT_THROW(GaussianSigma(std::nan(""), 0.1), InvalidArgument);
}

TEST(CovInnerSplitTest, Formula) {
  const PrivacyBudget b = CovInnerSplit(1.0, 0.01, 1024);
  EXPECT_NEAR(b.delta, 5e-4, 1e-18);
  EXPECT_NEAR(b.eps, 1.0 / (20 * std::log(2000.0)), 1e-15);
  EXPECT_NEAR(b.eps, 0.006578, 1e-6);
  // Smallest tree.
  EXPECT_NEAR(CovInnerSplit(1.0, 0.01, 2).delta, 0.005, 1e-18);
  // Linear in eps with delta unchanged.
  const PrivacyBudget doubled = CovInnerSplit(2.0, 0.01, 1024);
  EXPECT_NEAR(doubled.eps, 2 * b.eps, 1e-15);
  EXPECT_EQ(doubled.delta, b.delta);
  // Non power of two horizons round the level count up.
  EXPECT_NEAR(CovInnerSplit(1.0, 0.01, 1025).delta, 0.01 / 22, 1e-18);
  EXPECT_THROW(CovInnerSplit(1.0, 0.01, 1), InvalidArgument);
}

TEST(MleSplitTest, Formula) {
  const PrivacyBudget b = MleSplit(1.0, 0.01, 10);
  EXPECT_NEAR(b.delta, 5e-4, 1e-18);
  EXPECT_NEAR(b.eps, 1.0 / (2 * std::sqrt(20 * std::log(2000.0))), 1e-15);
  EXPECT_NEAR(b.eps, 0.04056, 1e-5);
  EXPECT_NEAR(MleSplit(1.0, 0.01, 1).delta, 0.005, 1e-18);
  EXPECT_NEAR(MleSplit(3.0, 0.01, 10).eps, 3 * b.eps, 1e-15);
  EXPECT_THROW(MleSplit(1.0, 0.01, 0), InvalidArgument);
}

TEST(AdvancedTotalTest, Examples) {
  const PrivacyBudget zero = AdvancedTotal(0.0, 0.0, 17, 1e-6);
  EXPECT_EQ(zero.eps, 0.0);
  EXPECT_EQ(zero.delta, 1e-6);
  const PrivacyBudget one = AdvancedTotal(0.1, 1e-5, 1, 1e-5);
  EXPECT_NEAR(one.eps, std::sqrt(2 * std::log(1e5)) * 0.1 + 0.1 * std::expm1(0.1), 1e-15);
  EXPECT_NEAR(one.eps, 0.4900, 1e-3);
  EXPECT_NEAR(one.delta, 2e-5, 1e-20);
}

TEST(AdvancedTotalTest, SplitComposesWithinBudget) {
  for (double eps2 : {0.01, 1.0, 5.0}) {
    for (double delta2 : {1e-2, 1e-6, 1e-10, 1.0 / (1e5 * 1e5), 3e-7}) {
      for (long k = 1; k <= 64; ++k) {
        const PrivacyBudget per = MleSplit(eps2, delta2, k);
        const PrivacyBudget total = AdvancedTotal(per.eps, per.delta, k, delta2 / 2);
        ASSERT_LE(total.eps, eps2) << k;
        ASSERT_LE(total.delta, delta2) << delta2 << " " << k;
      }
    }
  }
}

TEST(TotalBudgetTest, Sum) {
  const PrivacyBudget a = TotalBudget({0.1, 1e-5}, {0.1, 1e-5});
  EXPECT_NEAR(a.eps, 0.2, 1e-16);
  EXPECT_NEAR(a.delta, 2e-5, 1e-20);
  const PrivacyBudget b = TotalBudget({0.0, 0.3}, {0.7, 0.0});
  EXPECT_EQ(b.eps, 0.7);
  EXPECT_EQ(b.delta, 0.3);
  const PrivacyBudget c = TotalBudget({0.02, 1e-10}, {0.05, 1e-12});
  EXPECT_NEAR(c.eps, 0.07, 1e-16);
  EXPECT_NEAR(c.delta, 1.01e-10, 1e-24);
}

TEST(ObjectiveNuTest, Formula) {
  const double nu = ObjectiveNu(2.0, 1.0, 0.1);
  EXPECT_NEAR(nu * nu, 4 * (8 * std::log(20.0) + 4), 1e-10);
  EXPECT_NEAR(nu * nu, 111.86, 0.01);
  EXPECT_NEAR(ObjectiveNu(4.0, 1.0, 0.1), 2 * nu, 1e-12);
  double previous = INFINITY;
  for (double eps = 0.01; eps < 1000; eps *= 1.5) {
    const double v = ObjectiveNu(2.0, eps, 0.1);
    ASSERT_LT(v, previous);
    previous = v;
  }
  EXPECT_THROW(ObjectiveNu(0.0, 1.0, 0.1), InvalidArgument);
}

TEST(MonotonicityProperty, MoreNoiseForStrongerPrivacy) {
  const std::vector<double> eps_grid = {0.02, 0.05, 0.1, 0.5, 1.0, 5.0};
  const std::vector<double> delta_grid = {1e-12, 1e-8, 1e-4, 1e-2, 0.2};
  for (size_t i = 0; i + 1 < eps_grid.size(); ++i) {
    for (double delta : delta_grid) {
      const double lo = eps_grid[i], hi = eps_grid[i + 1];
      EXPECT_GT(GaussianSigma(lo, delta), GaussianSigma(hi, delta));
      EXPECT_GT(ObjectiveNu(2.0, lo, delta), ObjectiveNu(2.0, hi, delta));
      EXPECT_LT(CovInnerSplit(lo, delta, 1000).eps, CovInnerSplit(hi, delta, 1000).eps);
      EXPECT_LT(MleSplit(lo, delta, 20).eps, MleSplit(hi, delta, 20).eps);
    }
  }
  for (size_t j = 0; j + 1 < delta_grid.size(); ++j) {
    for (double eps : eps_grid) {
      const double lo = delta_grid[j], hi = delta_grid[j + 1];
      EXPECT_GT(GaussianSigma(eps, lo), GaussianSigma(eps, hi));
      EXPECT_GT(ObjectiveNu(2.0, eps, lo), ObjectiveNu(2.0, eps, hi));
      EXPECT_LT(CovInnerSplit(eps, lo, 1000).eps, CovInnerSplit(eps, hi, 1000).eps);
      EXPECT_LT(CovInnerSplit(eps, lo, 1000).delta, CovInnerSplit(eps, hi, 1000).delta);
      EXPECT_LT(MleSplit(eps, lo, 20).eps, MleSplit(eps, hi, 20).eps);
      EXPECT_LT(MleSplit(eps, lo, 20).delta, MleSplit(eps, hi, 20).delta);
    }
  }
}

TEST(SymmetricGaussianTest, ZeroScale) {
  Rng rng(1);
  EXPECT_TRUE(SampleSymmetricGaussian(3, 0.0, rng).isZero(0.0));
}

TEST(SymmetricGaussianTest, SymmetricWithTargetVariance) {
  Rng rng(9);
  const int d = 3;
  const double sigma = 2.5;
  Eigen::MatrixXd sum_sq = Eigen::MatrixXd::Zero(d, d);
  const int n = 10000;
  for (int i = 0; i < n; ++i) {
    const Eigen::MatrixXd w = SampleSymmetricGaussian(d, sigma, rng);
    ASSERT_TRUE(w == w.transpose());
    sum_sq += w.cwiseProduct(w);
  }
  const Eigen::MatrixXd var = sum_sq / n;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) EXPECT_NEAR(var(i, j), sigma * sigma, 0.05 * sigma * sigma);
  }
}

TEST(SymmetricGaussianTest, ReproducibleFromSeed) {
  Rng a(77), b(77);
  EXPECT_TRUE(SampleSymmetricGaussian(4, 1.3, a) == SampleSymmetricGaussian(4, 1.3, b));
}

TEST(CeilLog2Test, ExactPowers) {
  EXPECT_EQ(CeilLog2(2), 1);
  EXPECT_EQ(CeilLog2(3), 2);
  EXPECT_EQ(CeilLog2(1024), 10);
  EXPECT_EQ(CeilLog2(1025), 11);
  EXPECT_EQ(CeilLog2(100000), 17);
}

}  // namespace
}  // namespace dppricer
