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

#ifndef DPPRICER_ERRORS_H_
#define DPPRICER_ERRORS_H_

#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace dppricer {

// Malformed inputs: non-finite values, dimension mismatches, out-of-range
// privacy parameters.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The continual-release protocol was asked for more releases than its
// horizon allows.
class ProtocolExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The constrained MLE solver hit its iteration cap. Carries the last iterate
// so callers can inspect how far it got.
class SolverFailure : public std::runtime_error {
 public:
  SolverFailure(const std::string& what, Eigen::VectorXd last_iterate,
                double gradient_norm)
      : std::runtime_error(what),
        last_iterate_(std::move(last_iterate)),
        gradient_norm_(gradient_norm) {}

  const Eigen::VectorXd& last_iterate() const { return last_iterate_; }
  double gradient_norm() const { return gradient_norm_; }

 private:
  Eigen::VectorXd last_iterate_;
  double gradient_norm_;
};

// File output failures, always carrying the offending path.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dppricer

#endif  // DPPRICER_ERRORS_H_
