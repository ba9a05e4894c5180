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

#ifndef DPPRICER_HARNESS_H_
#define DPPRICER_HARNESS_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dppricer/dp_accounting.h"
#include "dppricer/environment.h"
#include "dppricer/pricing_policy.h"

namespace dppricer {

enum class Variant { kDp, kNonPrivate, kInputPerturb, kRandomPrice };
enum class Preset { kSection8, kTheorem1, kTheorem2 };

struct ExperimentConfig {
  long T = 100000;
  int d = 2;
  int trials = 20;
  std::uint64_t base_seed = 7;
  Preset preset = Preset::kSection8;
  PrivacyBudget cov_budget{0.5, 1e-10};
  PrivacyBudget mle_budget{0.5, 1e-10};
  // Explicit values replace the preset's.
  std::optional<long> t0;
  std::optional<long> d_inf;
  std::optional<double> rho;
  std::optional<double> gamma;
  int price_grid = 1001;
  BonusForm bonus = BonusForm::kCapped;
  // Privacy constants of the market model.
  BoundCalibration calibration = BoundCalibration::kNominal;
  Variant variant = Variant::kDp;
  // Laplace scale 1/input_eps for the input-perturbation baseline.
  double input_eps = 0.5;
  int oracle_grid = 10001;
  int jobs = 1;
  // Evenly spaced periods at which cumulative regret is sampled.
  int checkpoints = 100;
  // Keep trial 0's full per-period trace in the report.
  bool keep_trace = false;
  std::string out_csv;
  std::string out_summary;
  std::string out_svg;

  void Validate() const;
  MarketConfig Market() const;
  // Preset parameters with overrides and the variant's noise switch applied.
  PolicyConfig ResolvePolicy() const;
  // Both defaults to 1/T^2.
  static ExperimentConfig Section8(long T, int d, double eps);
};

struct TrialSummary {
  int trial_index = 0;
  std::uint64_t seed = 0;
  double cum_regret = 0.0;
  double avg_regret = 0.0;
  double avg_surplus = 0.0;
  long mle_calls = 0;
  long inner_rho_binds = 0;
  std::uint64_t optimizer_history_reads = 0;
  // Advanced-composition bound on the MLE calls actually made, with
  // delta_tilde = delta2 / 2. Zero when no call happened.
  PrivacyBudget mle_realized;
  std::vector<double> checkpoint_cum_regret;
};

struct TrialResult {
  TrialSummary summary;
  RegretTrace trace;
};

struct SampleStats {
  double mean = 0.0;
  double median = 0.0;
  double stddev = 0.0;
};
SampleStats Summarize(const std::vector<double>& values);

struct ExperimentReport {
  ExperimentConfig config;
  PolicyConfig policy;
  std::vector<TrialSummary> trials;
  SampleStats avg_regret;
  SampleStats avg_surplus;
  // Guarantee of the whole price sequence: (eps1 + eps2, delta1 + delta2).
  PrivacyBudget total_budget;
  PrivacyBudget cov_per_node;
  PrivacyBudget mle_per_call;
  double cov_sigma = 0.0;
  double mle_nu = 0.0;
  std::vector<long> checkpoint_periods;
  // Mean over trials of cum_regret / t at each checkpoint.
  std::vector<double> mean_checkpoint_avg_regret;
  std::optional<RegretTrace> trace;
};

std::vector<long> CheckpointPeriods(long T, int count);

// Deterministic in (base_seed, trial_index). All draws come from named
// sub-streams of seed base_seed + trial_index.
TrialResult RunTrial(const ExperimentConfig& config, int trial_index, bool keep_trace = false);

// Runs trials on up to config.jobs threads and aggregates in trial order.
ExperimentReport RunExperiment(const ExperimentConfig& config);

// Columns: period,x1..x{d-1},price,demand,instant_regret,cum_regret,surplus.
void WriteTraceCsv(const RegretTrace& trace, int context_dim, std::ostream& out);
void EmitCsv(const RegretTrace& trace, int context_dim, const std::string& path);

std::string SummaryJson(const ExperimentReport& report);
void EmitSummary(const ExperimentReport& report, const std::string& path);

struct SvgSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};
std::string SvgLineChart(const std::string& title, const std::string& x_label,
                         const std::string& y_label, const std::vector<SvgSeries>& series);
void EmitSvg(const std::string& svg, const std::string& path);

// Applies a JSON object with ExperimentConfig field names on top of base.
ExperimentConfig ParseExperimentConfig(const std::string& json_text, ExperimentConfig base);
std::string ExperimentConfigJson(const ExperimentConfig& config);

const char* VariantName(Variant variant);
Variant ParseVariant(const std::string& name);
const char* CalibrationName(BoundCalibration calibration);
BoundCalibration ParseCalibration(const std::string& name);
const char* PresetName(Preset preset);
Preset ParsePreset(const std::string& name);

}  // namespace dppricer

#endif  // DPPRICER_HARNESS_H_
