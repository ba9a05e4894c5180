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

#include "dppricer/glm.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "dppricer/errors.h"

namespace dppricer {
namespace {

void RequireFinite(double z, const char* what) {
  if (!std::isfinite(z)) {
    throw InvalidArgument(std::string(what) + ": argument must be finite");
  }
}

void RequireSameSize(const Eigen::Ref<const Eigen::VectorXd>& a,
                     const Eigen::Ref<const Eigen::VectorXd>& b, const char* what) {
  if (a.size() != b.size()) {
    throw InvalidArgument(std::string(what) + ": dimension mismatch (" +
                          std::to_string(a.size()) + " vs " +
                          std::to_string(b.size()) + ")");
  }
}

double Sigmoid(double z) {
  if (z >= 0) {
    return 1.0 / (1.0 + std::exp(-z));
  }
  const double e = std::exp(z);
  return e / (1.0 + e);
}

}  // namespace

void GlmSpec::Validate() const {
  auto fail = [](const std::string& msg) { throw InvalidArgument("GlmSpec: " + msg); };
  if (!(k_const >= 1.0) || !std::isfinite(k_const)) fail("k_const must be >= 1");
  if (!(g_const >= 1.0) || !std::isfinite(g_const)) fail("g_const must be >= 1");
  if (!(zeta >= 1.0 / g_const && zeta <= g_const)) fail("zeta must lie in [1/G, G]");
  if (!(index_scale > 0.0) || !std::isfinite(index_scale)) fail("index_scale must be positive");
  if (!(b_y > 0.0) || !std::isfinite(b_y)) fail("b_y must be positive and finite");
  if (!(s_const >= 0.0) || !std::isfinite(s_const)) fail("s_const must be nonnegative");
  if (kind == GlmKind::kLogistic && b_y != 1.0) fail("logistic demand requires b_y = 1");
}

GlmSpec GlmSpec::Logistic() {
  const double e2 = std::exp(2.0);
  GlmSpec glm;
  glm.kind = GlmKind::kLogistic;
  glm.zeta = 1.0;
  glm.index_scale = 1.0;
  glm.b_y = 1.0;
  glm.k_const = (1.0 + e2) * (1.0 + e2) / e2;
  glm.g_const = 1.0;
  // Textbook logistic constants; Bernoulli noise is in fact 1/2-sub-Gaussian.
  glm.s_const = 1.0;
  return glm;
}

GlmSpec GlmSpec::ScaledLogistic(double index_scale, BoundCalibration calibration) {
  GlmSpec glm = Logistic();
  glm.index_scale = index_scale;
  if (calibration == BoundCalibration::kCovering) glm.g_const = std::max(1.0, index_scale);
  return glm;
}

GlmSpec GlmSpec::Gaussian(double s, long horizon_T) {
  if (horizon_T < 2) throw InvalidArgument("GlmSpec::Gaussian: horizon must be >= 2");
  GlmSpec glm;
  glm.kind = GlmKind::kGaussian;
  glm.zeta = 1.0;
  glm.index_scale = 1.0;
  // The noise-free mean lies in [-1, 1], so B_Y never drops below 1.
  glm.b_y = std::max(1.0, s * std::sqrt(2.0 * std::log(static_cast<double>(horizon_T))));
  glm.k_const = 1.0;
  glm.g_const = 1.0;
  glm.s_const = s;
  return glm;
}

double GradientBound(const GlmSpec& glm) { return (glm.b_y + 1.0) * glm.g_const; }

double CurvatureBound(const GlmSpec& glm) { return glm.k_const * glm.g_const; }

double LinkMean(const GlmSpec& glm, double z) {
  RequireFinite(z, "LinkMean");
  return glm.kind == GlmKind::kLogistic ? Sigmoid(z) : z;
}

double LinkDeriv(const GlmSpec& glm, double z) {
  RequireFinite(z, "LinkDeriv");
  if (glm.kind == GlmKind::kGaussian) return 1.0;
  const double s = Sigmoid(z);
  return s * (1.0 - s);
}

double LogPartition(const GlmSpec& glm, double z) {
  RequireFinite(z, "LogPartition");
  if (glm.kind == GlmKind::kGaussian) return 0.5 * z * z;
  // ln(1 + e^z) without overflow.
  return z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
}

double EffectiveIndex(const GlmSpec& glm, const Eigen::Ref<const Eigen::VectorXd>& phi,
                      const Eigen::Ref<const Eigen::VectorXd>& theta) {
  RequireSameSize(phi, theta, "EffectiveIndex");
  return glm.index_scale * phi.dot(theta);
}

double MeanDemand(const GlmSpec& glm, const Eigen::Ref<const Eigen::VectorXd>& phi,
                  const Eigen::Ref<const Eigen::VectorXd>& theta) {
  return LinkMean(glm, EffectiveIndex(glm, phi, theta));
}

double Nll(const GlmSpec& glm, const Eigen::Ref<const Eigen::VectorXd>& phi, double y,
           const Eigen::Ref<const Eigen::VectorXd>& theta) {
  const double u = EffectiveIndex(glm, phi, theta);
  return glm.zeta * (LogPartition(glm, u) - y * u);
}

Eigen::VectorXd NllGrad(const GlmSpec& glm, const Eigen::Ref<const Eigen::VectorXd>& phi,
                        double y, const Eigen::Ref<const Eigen::VectorXd>& theta) {
  const double u = EffectiveIndex(glm, phi, theta);
  return (glm.zeta * glm.index_scale * (LinkMean(glm, u) - y)) * phi;
}

double SampleDemand(const GlmSpec& glm, const Eigen::Ref<const Eigen::VectorXd>& phi,
                    const Eigen::Ref<const Eigen::VectorXd>& theta_star, Rng& rng) {
  const double mean = MeanDemand(glm, phi, theta_star);
  if (glm.kind == GlmKind::kLogistic) {
    std::bernoulli_distribution purchase(mean);
    return purchase(rng) ? 1.0 : 0.0;
  }
  if (glm.s_const == 0.0) return std::clamp(mean, -glm.b_y, glm.b_y);
  std::normal_distribution<double> noise(0.0, glm.s_const);
  return std::clamp(mean + noise(rng), -glm.b_y, glm.b_y);
}

}  // namespace dppricer
