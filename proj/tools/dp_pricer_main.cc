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

// Command-line driver for the pricing simulator.

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "dppricer/drivers.h"
#include "dppricer/errors.h"
#include "dppricer/harness.h"

namespace {

using dppricer::ExperimentConfig;

struct RunFlags {
  std::string config_path;
  std::optional<std::string> preset;
  std::optional<long> T;
  std::optional<int> d;
  std::optional<double> eps1, eps2, delta1, delta2;
  std::optional<std::string> variant;
  std::optional<std::string> calibration;
  std::optional<double> input_eps;
  std::optional<int> trials;
  std::optional<std::uint64_t> seed;
  std::optional<int> grid;
  std::optional<int> jobs;
  std::optional<long> t0, d_inf;
  std::optional<double> rho, gamma;
  std::optional<std::string> out_csv, out_summary, out_svg;
  bool print_summary = false;
};

std::string ReadFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw dppricer::IoError("cannot read config '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::optional<std::uint64_t> SeedFromEnv() {
  const char* raw = std::getenv("DP_PRICER_SEED");
  if (raw == nullptr || *raw == '\0') return std::nullopt;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(raw, &end, 10);
  if (*end != '\0') throw dppricer::InvalidArgument("DP_PRICER_SEED is not an integer");
  return v;
}

ExperimentConfig BuildConfig(const RunFlags& f) {
  ExperimentConfig c;
  // Unset deltas default to 1/T^2 once T is known.
  c.cov_budget.delta = c.mle_budget.delta = std::numeric_limits<double>::quiet_NaN();
  if (!f.config_path.empty()) c = dppricer::ParseExperimentConfig(ReadFile(f.config_path), c);
  if (f.preset) c.preset = dppricer::ParsePreset(*f.preset);
  if (f.T) c.T = *f.T;
  if (f.d) c.d = *f.d;
  if (f.eps1) c.cov_budget.eps = *f.eps1;
  if (f.eps2) c.mle_budget.eps = *f.eps2;
  if (f.delta1) c.cov_budget.delta = *f.delta1;
  if (f.delta2) c.mle_budget.delta = *f.delta2;
  if (f.variant) c.variant = dppricer::ParseVariant(*f.variant);
  if (f.calibration) c.calibration = dppricer::ParseCalibration(*f.calibration);
  if (f.input_eps) c.input_eps = *f.input_eps;
  if (f.trials) c.trials = *f.trials;
  if (f.seed) c.base_seed = *f.seed;
  if (f.grid) c.price_grid = *f.grid;
  if (f.jobs) c.jobs = *f.jobs;
  if (f.t0) c.t0 = *f.t0;
  if (f.d_inf) c.d_inf = *f.d_inf;
  if (f.rho) c.rho = *f.rho;
  if (f.gamma) c.gamma = *f.gamma;
  if (f.out_csv) c.out_csv = *f.out_csv;
  if (f.out_summary) c.out_summary = *f.out_summary;
  if (f.out_svg) c.out_svg = *f.out_svg;
  const double default_delta = 1.0 / (static_cast<double>(c.T) * static_cast<double>(c.T));
  if (std::isnan(c.cov_budget.delta)) c.cov_budget.delta = default_delta;
  if (std::isnan(c.mle_budget.delta)) c.mle_budget.delta = default_delta;
  if (auto env = SeedFromEnv()) c.base_seed = *env;
  c.keep_trace = !c.out_csv.empty();
  c.Validate();
  return c;
}

int Run(const RunFlags& flags) {
  const ExperimentConfig config = BuildConfig(flags);
  const dppricer::ExperimentReport report = dppricer::RunExperiment(config);
  if (!config.out_csv.empty()) {
    dppricer::EmitCsv(*report.trace, config.d - 1, config.out_csv);
  }
  if (!config.out_summary.empty()) dppricer::EmitSummary(report, config.out_summary);
  if (!config.out_svg.empty()) {
    dppricer::SvgSeries s{"mean average regret", {}, report.mean_checkpoint_avg_regret};
    for (long t : report.checkpoint_periods) s.x.push_back(static_cast<double>(t));
    dppricer::EmitSvg(dppricer::SvgLineChart("average regret", "period", "regret", {s}),
                      config.out_svg);
  }
  if (flags.print_summary) {
    std::cout << dppricer::SummaryJson(report) << '\n';
  } else {
    std::cout << "variant=" << dppricer::VariantName(config.variant) << " T=" << config.T
              << " d=" << config.d << " trials=" << config.trials
              << " mean_avg_regret=" << report.avg_regret.mean
              << " sd=" << report.avg_regret.stddev
              << " mean_avg_surplus=" << report.avg_surplus.mean << '\n';
  }
  return 0;
}

void WriteText(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw dppricer::IoError("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw dppricer::IoError("write failed for '" + path + "'");
}

struct DriverFlags {
  dppricer::DriverOptions options;
  std::string out_csv;
  std::string out_svg;
  std::string out_json;
};

int RunDriverCommand(dppricer::Driver driver, DriverFlags flags) {
  if (auto env = SeedFromEnv()) flags.options.base_seed = *env;
  const auto results = dppricer::RunDriver(driver, flags.options);
  const std::string csv = dppricer::DriverCsv(results);
  std::cout << csv;
  if (!flags.out_csv.empty()) WriteText(flags.out_csv, csv);
  if (!flags.out_svg.empty()) WriteText(flags.out_svg, dppricer::DriverSvg(driver, results));
  if (!flags.out_json.empty()) {
    std::ostringstream j;
    j << "[\n";
    for (std::size_t i = 0; i < results.size(); ++i) {
      const auto& r = results[i];
      j << "  {\"row\": \"" << r.cell.row << "\", \"column\": \"" << r.cell.column
        << "\", \"config\": " << dppricer::ExperimentConfigJson(r.cell.config)
        << ", \"mean_avg_regret\": " << r.avg_regret.mean
        << ", \"mean_avg_surplus\": " << r.avg_surplus.mean << "}"
        << (i + 1 < results.size() ? "," : "") << "\n";
    }
    j << "]\n";
    WriteText(flags.out_json, j.str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulator for differentially private personalized pricing"};
  app.require_subcommand(1);

  RunFlags run_flags;
  CLI::App* run = app.add_subcommand("run", "Run one experiment configuration");
  run->add_option("--config", run_flags.config_path, "JSON file mirroring ExperimentConfig")
      ->check(CLI::ExistingFile);
  run->add_option("--preset", run_flags.preset, "section8 | theorem1 | theorem2");
  run->add_option("--T", run_flags.T, "Horizon");
  run->add_option("--d", run_flags.d, "Feature dimension");
  run->add_option("--eps1", run_flags.eps1, "Covariance release epsilon");
  run->add_option("--eps2", run_flags.eps2, "MLE epsilon");
  run->add_option("--delta1", run_flags.delta1, "Covariance release delta (default 1/T^2)");
  run->add_option("--delta2", run_flags.delta2, "MLE delta (default 1/T^2)");
  run->add_option("--variant", run_flags.variant, "dp | nonprivate | input_perturb | random_price");
  run->add_option("--calibration", run_flags.calibration, "nominal | covering privacy constants");
  run->add_option("--input-eps", run_flags.input_eps, "Laplace epsilon for input_perturb");
  run->add_option("--trials", run_flags.trials, "Number of trials");
  run->add_option("--seed", run_flags.seed, "Base seed (DP_PRICER_SEED overrides)");
  run->add_option("--grid", run_flags.grid, "Price grid size");
  run->add_option("--jobs", run_flags.jobs, "Parallel trials");
  run->add_option("--t0", run_flags.t0, "Override exploration length");
  run->add_option("--d-inf", run_flags.d_inf, "Override MLE call cap");
  run->add_option("--rho", run_flags.rho, "Override ridge parameter");
  run->add_option("--gamma", run_flags.gamma, "Override bonus scale");
  run->add_option("--out-csv", run_flags.out_csv, "Per-period trace of trial 0");
  run->add_option("--out-summary", run_flags.out_summary, "Summary JSON");
  run->add_option("--out-svg", run_flags.out_svg, "Average-regret SVG");
  run->add_flag("--print-summary", run_flags.print_summary, "Print summary JSON to stdout");

  DriverFlags driver_flags;
  std::string driver_name;
  for (const char* name : {"table1", "table2", "table3", "surplus"}) {
    CLI::App* sub = app.add_subcommand(name, std::string("Regenerate the ") + name + " grid");
    sub->add_option("--T", driver_flags.options.horizons, "Horizons (repeatable)");
    sub->add_option("--d", driver_flags.options.dims, "Dimensions (repeatable)");
    sub->add_option("--trials", driver_flags.options.trials, "Trials per cell");
    sub->add_option("--seed", driver_flags.options.base_seed, "Base seed");
    sub->add_option("--grid", driver_flags.options.price_grid, "Price grid size");
    sub->add_option("--jobs", driver_flags.options.jobs, "Parallel trials");
    sub->add_option("--out-csv", driver_flags.out_csv, "Grid CSV");
    sub->add_option("--out-svg", driver_flags.out_svg, "Grid SVG");
    sub->add_option("--out-json", driver_flags.out_json, "Grid JSON");
    sub->callback([&driver_name, name] { driver_name = name; });
  }

  CLI11_PARSE(app, argc, argv);
  try {
    if (run->parsed()) return Run(run_flags);
    return RunDriverCommand(dppricer::ParseDriver(driver_name), driver_flags);
  } catch (const dppricer::InvalidArgument& e) {
    std::cerr << "invalid argument: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
