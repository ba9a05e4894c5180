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

#include "oracles.h"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

namespace dppricer::testing {
namespace {

double RefMean(const GlmSpec& glm, double u) {
  if (glm.kind == GlmKind::kGaussian) return u;
  return 1.0 / (1.0 + std::exp(-u));
}

double RefPartition(const GlmSpec& glm, double u) {
  if (glm.kind == GlmKind::kGaussian) return 0.5 * u * u;
  return u > 0 ? u + std::log1p(std::exp(-u)) : std::log1p(std::exp(u));
}

double Objective(const Eigen::MatrixXd& features, const std::vector<double>& demands,
                 const GlmSpec& glm, double rho, const Eigen::VectorXd& w,
                 const Eigen::VectorXd& theta) {
  double total = 0.5 * rho * theta.squaredNorm() + w.dot(theta);
  for (Eigen::Index t = 0; t < features.cols(); ++t) {
    total += RefNll(glm, features.col(t), demands[t], theta);
  }
  return total;
}

Eigen::VectorXd Gradient(const Eigen::MatrixXd& features, const std::vector<double>& demands,
                         const GlmSpec& glm, double rho, const Eigen::VectorXd& w,
                         const Eigen::VectorXd& theta) {
  Eigen::VectorXd g = rho * theta + w;
  for (Eigen::Index t = 0; t < features.cols(); ++t) {
    g += RefNllGrad(glm, features.col(t), demands[t], theta);
  }
  return g;
}

Eigen::VectorXd Project(const Eigen::VectorXd& theta, double radius) {
  const double norm = theta.norm();
  return norm > radius ? Eigen::VectorXd(theta * (radius / norm)) : theta;
}

}  // namespace

double RefNll(const GlmSpec& glm, const Eigen::VectorXd& phi, double y,
              const Eigen::VectorXd& theta) {
  const double u = glm.index_scale * phi.dot(theta);
  return glm.zeta * (RefPartition(glm, u) - y * u);
}

Eigen::VectorXd RefNllGrad(const GlmSpec& glm, const Eigen::VectorXd& phi, double y,
                           const Eigen::VectorXd& theta) {
  const double u = glm.index_scale * phi.dot(theta);
  return glm.zeta * glm.index_scale * (RefMean(glm, u) - y) * phi;
}

Eigen::VectorXd RidgeGaussianOracle(const Eigen::MatrixXd& features,
                                    const std::vector<double>& demands, double rho,
                                    const Eigen::VectorXd& w, double zeta) {
  const Eigen::Index d = w.size();
  Eigen::MatrixXd a = rho * Eigen::MatrixXd::Identity(d, d);
  Eigen::VectorXd b = -w / zeta;
  for (Eigen::Index t = 0; t < features.cols(); ++t) {
    a += features.col(t) * features.col(t).transpose();
    b += demands[t] * features.col(t);
  }
  return a.ldlt().solve(b);
}

PgdResult PgdOracle(const Eigen::MatrixXd& features, const std::vector<double>& demands,
                    const GlmSpec& glm, double rho, const Eigen::VectorXd& w, double radius,
                    double tol, long max_iterations) {
  PgdResult result;
  Eigen::VectorXd theta = Eigen::VectorXd::Zero(w.size());
  double f = Objective(features, demands, glm, rho, w, theta);
  double step = 1.0;
  for (long it = 0; it < max_iterations; ++it) {
    const Eigen::VectorXd g = Gradient(features, demands, glm, rho, w, theta);
    // Try a slightly longer step than last time before backtracking.
    step = std::min(1.0, step * 2.0);
    Eigen::VectorXd next;
    double f_next;
    while (true) {
      next = Project(theta - step * g, radius);
      f_next = Objective(features, demands, glm, rho, w, next);
      const Eigen::VectorXd move = next - theta;
      if (f_next <= f + 1e-4 * g.dot(move) || step < 1e-300) break;
      step *= 0.5;
    }
    const double move_norm = (next - theta).norm();
    theta = next;
    f = f_next;
    result.iterations = it + 1;
    if (move_norm <= tol) {
      result.converged = true;
      break;
    }
  }
  result.theta = theta;
  return result;
}

std::vector<Eigen::MatrixXd> BruteForcePrefixCov(const std::vector<Eigen::VectorXd>& phis) {
  std::vector<Eigen::MatrixXd> out;
  if (phis.empty()) return out;
  const Eigen::Index d = phis.front().size();
  for (size_t n = 1; n <= phis.size(); ++n) {
    Eigen::MatrixXd s = Eigen::MatrixXd::Zero(d, d);
    for (size_t t = 0; t < n; ++t) s += phis[t] * phis[t].transpose();
    out.push_back(s);
  }
  return out;
}

double DenseGridArgmax(const std::function<double(double)>& f, double step) {
  const long count = std::lround(1.0 / step);
  double best_p = 0.0;
  double best_v = -INFINITY;
  for (long k = 0; k <= count; ++k) {
    const double p = static_cast<double>(k) / static_cast<double>(count);
    const double v = f(p);
    if (v >= best_v) {
      best_v = v;
      best_p = p;
    }
  }
  return best_p;
}

Eigen::VectorXd FiniteDifferenceGradient(const std::function<double(const Eigen::VectorXd&)>& f,
                                         const Eigen::VectorXd& at, double step) {
  Eigen::VectorXd g(at.size());
  for (Eigen::Index i = 0; i < at.size(); ++i) {
    Eigen::VectorXd hi = at, lo = at;
    hi(i) += step;
    lo(i) -= step;
    g(i) = (f(hi) - f(lo)) / (2.0 * step);
  }
  return g;
}

}  // namespace dppricer::testing
