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

#include "dppricer/private_mle.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include <Eigen/Cholesky>

#include "dppricer/errors.h"

namespace dppricer {
namespace {

// Sum of per-sample negative log-likelihoods and its derivatives, with the
// ridge term (rho + shift) / 2 ||theta||^2 and the linear perturbation.
class PerturbedLoss {
 public:
  PerturbedLoss(const MleData& data, const GlmSpec& glm, double rho,
                const Eigen::Ref<const Eigen::VectorXd>& noise)
      : x_(data.features),
        y_(data.demands.data(), data.size()),
        glm_(glm),
        rho_(rho),
        noise_(noise) {
    if (noise.size() != x_.rows()) throw InvalidArgument("PerturbedLoss: noise dimension mismatch");
  }

  long n() const { return static_cast<long>(y_.size()); }
  int dim() const { return static_cast<int>(x_.rows()); }

  double Value(const Eigen::VectorXd& theta, double shift) const {
    double loss = 0.0;
    if (n() > 0) {
      const Eigen::ArrayXd u = glm_.index_scale * (x_.transpose() * theta).array();
      if (glm_.kind == GlmKind::kLogistic) {
        const Eigen::ArrayXd m = u.max(0.0) + (-u.abs()).exp().log1p();
        loss = glm_.zeta * (m - y_.array() * u).sum();
      } else {
        loss = glm_.zeta * (0.5 * u.square() - y_.array() * u).sum();
      }
    }
    return loss + 0.5 * (rho_ + shift) * theta.squaredNorm() + noise_.dot(theta);
  }

  Eigen::VectorXd Gradient(const Eigen::VectorXd& theta, double shift) const {
    Eigen::VectorXd grad = (rho_ + shift) * theta + noise_;
    if (n() > 0) {
      const Eigen::ArrayXd u = glm_.index_scale * (x_.transpose() * theta).array();
      const Eigen::VectorXd resid = (Mean(u) - y_.array()).matrix();
      grad.noalias() += (glm_.zeta * glm_.index_scale) * (x_ * resid);
    }
    return grad;
  }

  void GradientHessian(const Eigen::VectorXd& theta, double shift, Eigen::VectorXd& grad,
                       Eigen::MatrixXd& hess) const {
    grad = (rho_ + shift) * theta + noise_;
    hess = (rho_ + shift) * Eigen::MatrixXd::Identity(dim(), dim());
    if (n() == 0) return;
    const Eigen::ArrayXd u = glm_.index_scale * (x_.transpose() * theta).array();
    const Eigen::ArrayXd mean = Mean(u);
    const Eigen::VectorXd resid = (mean - y_.array()).matrix();
    grad.noalias() += (glm_.zeta * glm_.index_scale) * (x_ * resid);
    const double a2 = glm_.zeta * glm_.index_scale * glm_.index_scale;
    if (glm_.kind == GlmKind::kLogistic) {
      const Eigen::VectorXd weight = (a2 * mean * (1.0 - mean)).matrix();
      hess.noalias() += x_ * weight.asDiagonal() * x_.transpose();
    } else {
      hess.noalias() += a2 * (x_ * x_.transpose());
    }
  }

 private:
  Eigen::ArrayXd Mean(const Eigen::ArrayXd& u) const {
    if (glm_.kind == GlmKind::kGaussian) return u;
    return 1.0 / (1.0 + (-u).exp());
  }

  Eigen::Ref<const Eigen::MatrixXd> x_;
  Eigen::Map<const Eigen::VectorXd> y_;
  const GlmSpec& glm_;
  double rho_;
  Eigen::VectorXd noise_;
};

struct NewtonOutcome {
  Eigen::VectorXd theta;
  Eigen::MatrixXd hess;
  double grad_norm = 0.0;
  int iterations = 0;
};

// Damped Newton on the strongly convex shifted loss.
NewtonOutcome MinimizeShifted(const PerturbedLoss& loss, double shift, Eigen::VectorXd theta,
                              const SolverOptions& options) {
  const double scale = 1.0 + static_cast<double>(loss.n());
  Eigen::VectorXd grad;
  Eigen::MatrixXd hess;
  for (int it = 0; it < options.max_newton_iterations; ++it) {
    loss.GradientHessian(theta, shift, grad, hess);
    const double grad_norm = grad.norm();
    if (grad_norm <= options.grad_tol * scale) return {theta, hess, grad_norm, it};

    const Eigen::VectorXd step = -hess.llt().solve(grad);
    const double slope = grad.dot(step);
    const double f0 = loss.Value(theta, shift);
    // Inside the quadratic-convergence region the predicted decrease can fall
    // below the resolution of f; take the full step there.
    if (-slope <= 64 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(f0))) {
      theta += step;
      continue;
    }
    double t = 1.0;
    bool accepted = false;
    for (int halving = 0; halving < 60; ++halving) {
      if (loss.Value(theta + t * step, shift) <= f0 + options.armijo * t * slope) {
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) {
      if (grad_norm <= options.stall_tol * scale) return {theta, hess, grad_norm, it};
      throw SolverFailure("PrivateMLE: line search stalled with gradient norm " +
                              std::to_string(grad_norm),
                          theta, grad_norm);
    }
    theta += t * step;
  }
  loss.GradientHessian(theta, shift, grad, hess);
  const double grad_norm = grad.norm();
  if (grad_norm <= options.stall_tol * scale) {
    return {theta, hess, grad_norm, options.max_newton_iterations};
  }
  throw SolverFailure("PrivateMLE: Newton iteration cap reached with gradient norm " +
                          std::to_string(grad_norm),
                      theta, grad_norm);
}

}  // namespace

double EffectiveRho(double rho_in, const GlmSpec& glm, double eps) {
  if (!(eps > 0.0)) throw InvalidArgument("EffectiveRho: eps must be positive");
  return std::max(rho_in, 2.0 * CurvatureBound(glm) / eps);
}

double PerturbedObjective(const MleData& data, const GlmSpec& glm, double rho,
                          const Eigen::Ref<const Eigen::VectorXd>& noise,
                          const Eigen::Ref<const Eigen::VectorXd>& theta) {
  return PerturbedLoss(data, glm, rho, noise).Value(theta, 0.0);
}

Eigen::VectorXd PerturbedGradient(const MleData& data, const GlmSpec& glm, double rho,
                                  const Eigen::Ref<const Eigen::VectorXd>& noise,
                                  const Eigen::Ref<const Eigen::VectorXd>& theta) {
  return PerturbedLoss(data, glm, rho, noise).Gradient(theta, 0.0);
}

MleResult SolvePerturbedMle(const MleData& data, const GlmSpec& glm, double rho,
                            const Eigen::Ref<const Eigen::VectorXd>& noise, double radius,
                            const SolverOptions& options) {
  if (data.features.cols() != data.size()) {
    throw InvalidArgument("SolvePerturbedMle: features and demands differ in length");
  }
  if (!(rho > 0.0)) throw InvalidArgument("SolvePerturbedMle: rho must be positive");
  if (!(radius > 0.0)) throw InvalidArgument("SolvePerturbedMle: radius must be positive");
  const PerturbedLoss loss(data, glm, rho, noise);
  const int d = loss.dim();

  MleResult result;
  result.noise = noise;
  result.rho = rho;

  NewtonOutcome inner = MinimizeShifted(loss, 0.0, Eigen::VectorXd::Zero(d), options);
  result.newton_iterations = inner.iterations;
  double norm = inner.theta.norm();
  if (norm <= radius) {
    result.theta = std::move(inner.theta);
    result.kkt_residual = inner.grad_norm;
    return result;
  }

  // Boundary case: find lambda > 0 with ||theta(lambda)|| = radius.
  double lambda = 0.0;
  double lo = 0.0;
  double hi = std::numeric_limits<double>::infinity();
  bool converged = false;
  for (int it = 0; it < options.max_multiplier_iterations; ++it) {
    if (std::abs(norm - radius) <= options.radius_tol * radius) {
      converged = true;
      break;
    }
    if (norm > radius) {
      lo = lambda;
    } else {
      hi = lambda;
    }
    // Newton step on psi(lambda) = 1/||theta|| - 1/radius, using
    // d theta / d lambda = -(H + lambda I)^-1 theta.
    const Eigen::VectorXd q = inner.hess.llt().solve(inner.theta);
    const double psi = 1.0 / norm - 1.0 / radius;
    const double dpsi = inner.theta.dot(q) / (norm * norm * norm);
    double next = lambda - psi / dpsi;
    if (!(next > lo && next < hi) || !std::isfinite(next)) {
      next = std::isfinite(hi) ? 0.5 * (lo + hi) : std::max(2.0 * lo, lo + rho);
    }
    if (std::isfinite(hi) && hi - lo <= 1e-15 * hi) {
      converged = true;
      break;
    }
    lambda = next;
    inner = MinimizeShifted(loss, lambda, inner.theta, options);
    result.newton_iterations += inner.iterations;
    norm = inner.theta.norm();
  }
  if (!converged && std::abs(norm - radius) > options.radius_tol * radius) {
    throw SolverFailure("PrivateMLE: multiplier search did not converge (||theta|| = " +
                            std::to_string(norm) + ")",
                        inner.theta, inner.grad_norm);
  }
  result.theta = inner.theta;
  if (norm > radius) result.theta *= radius / norm;
  result.multiplier = lambda;
  result.on_boundary = true;
  result.kkt_residual = (loss.Gradient(result.theta, 0.0) + lambda * result.theta).norm();
  return result;
}

MleResult FitPrivateMle(const MleRequest& request, Rng& rng, const SolverOptions& options) {
  const int d = request.data.dim();
  Eigen::VectorXd noise = Eigen::VectorXd::Zero(d);
  if (request.perturb) {
    request.budget.Validate();
    const double nu =
        ObjectiveNu(GradientBound(request.glm), request.budget.eps, request.budget.delta);
    std::normal_distribution<double> normal(0.0, nu);
    for (int i = 0; i < d; ++i) noise(i) = normal(rng);
  }
  return SolvePerturbedMle(request.data, request.glm, request.rho, noise, request.radius,
                           options);
}

}  // namespace dppricer
