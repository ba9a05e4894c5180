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

#ifndef DPPRICER_DRIVERS_H_
#define DPPRICER_DRIVERS_H_

#include <string>
#include <vector>

#include "dppricer/harness.h"

namespace dppricer {

// Experiment grids: regret tables and the surplus sweep.
enum class Driver { kTable1, kTable2, kTable3, kSurplus };

Driver ParseDriver(const std::string& name);
const char* DriverName(Driver driver);

struct DriverOptions {
  // Horizons and dimensions of the rows; empty means the driver's defaults.
  std::vector<long> horizons;
  std::vector<int> dims;
  int trials = 20;
  std::uint64_t base_seed = 7;
  int jobs = 1;
  int price_grid = 1001;
};

// One cell of a driver grid.
struct DriverCell {
  std::string row;
  std::string column;
  ExperimentConfig config;
};

struct DriverResult {
  DriverCell cell;
  SampleStats avg_regret;
  SampleStats avg_surplus;
  std::vector<long> checkpoint_periods;
  std::vector<double> mean_checkpoint_avg_regret;
};

std::vector<DriverCell> BuildDriverGrid(Driver driver, const DriverOptions& options);
std::vector<DriverResult> RunDriver(Driver driver, const DriverOptions& options);

// Columns: row,column,variant,T,d,eps1,eps2,delta,trials,mean_avg_regret,
// median_avg_regret,sd_avg_regret,mean_avg_surplus,sd_avg_surplus.
std::string DriverCsv(const std::vector<DriverResult>& results);
// Average regret (or surplus for the surplus driver) against the column's
// epsilon, one series per row.
std::string DriverSvg(Driver driver, const std::vector<DriverResult>& results);

}  // namespace dppricer

#endif  // DPPRICER_DRIVERS_H_
