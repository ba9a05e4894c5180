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

#ifndef DPPRICER_PRIVATE_MLE_H_
#define DPPRICER_PRIVATE_MLE_H_

#include <span>

#include <Eigen/Core>

#include "dppricer/dp_accounting.h"
#include "dppricer/glm.h"
#include "dppricer/rng.h"

namespace dppricer {

// Non-owning view of a dataset: d x n feature columns and n demands.
struct MleData {
  Eigen::Ref<const Eigen::MatrixXd> features;
  std::span<const double> demands;

  long size() const { return static_cast<long>(demands.size()); }
  int dim() const { return static_cast<int>(features.rows()); }
};

struct MleRequest {
  MleData data;
  GlmSpec glm;
  // Regularization after EffectiveRho.
  double rho = 1.0;
  // Per-call budget.
  PrivacyBudget budget;
  double radius = 2.0;
  // False runs the same estimator with w = 0.
  bool perturb = true;
};

struct SolverOptions {
  // Inner Newton stops once ||grad|| <= grad_tol * (1 + n).
  double grad_tol = 1e-10;
  // Accepted when the line search stalls at floating-point resolution.
  double stall_tol = 1e-7;
  double armijo = 1e-4;
  int max_newton_iterations = 200;
  int max_multiplier_iterations = 200;
  // Relative tolerance on ||theta|| = radius for boundary solutions.
  double radius_tol = 1e-12;
};

struct MleResult {
  Eigen::VectorXd theta;
  Eigen::VectorXd noise;
  double rho = 0.0;
  // Multiplier of the ball constraint; zero for interior solutions.
  double multiplier = 0.0;
  bool on_boundary = false;
  // Norm of the perturbed objective's gradient plus multiplier * theta.
  double kkt_residual = 0.0;
  int newton_iterations = 0;
};

// max(rho_in, 2 K G / eps).
double EffectiveRho(double rho_in, const GlmSpec& glm, double eps);

// F(theta) = sum_t Nll(phi_t, y_t, theta) + rho/2 ||theta||^2 + w'theta.
double PerturbedObjective(const MleData& data, const GlmSpec& glm, double rho,
                          const Eigen::Ref<const Eigen::VectorXd>& noise,
                          const Eigen::Ref<const Eigen::VectorXd>& theta);
Eigen::VectorXd PerturbedGradient(const MleData& data, const GlmSpec& glm, double rho,
                                  const Eigen::Ref<const Eigen::VectorXd>& noise,
                                  const Eigen::Ref<const Eigen::VectorXd>& theta);

// argmin_{||theta|| <= radius} F(theta) for a fixed perturbation vector.
//
// Interior case: damped Newton from 0. If the unconstrained minimizer lies
// outside the ball, the solution sits on the sphere where
// grad F(theta) + lambda theta = 0; lambda is found by a safeguarded Newton
// iteration on 1/||theta(lambda)|| - 1/radius, each theta(lambda) solving the
// lambda-shifted problem warm-started from the previous one. Throws
// SolverFailure when an iteration cap is hit.
MleResult SolvePerturbedMle(const MleData& data, const GlmSpec& glm, double rho,
                            const Eigen::Ref<const Eigen::VectorXd>& noise, double radius,
                            const SolverOptions& options = {});

// Draws w ~ N(0, nu^2 I) once, nu = ObjectiveNu(GradientBound(glm), eps,
// delta), and returns the constrained minimizer.
MleResult FitPrivateMle(const MleRequest& request, Rng& rng, const SolverOptions& options = {});

}  // namespace dppricer

#endif  // DPPRICER_PRIVATE_MLE_H_
