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

#include "dppricer/drivers.h"

#include <charconv>
#include <map>
#include <sstream>

#include "dppricer/errors.h"

namespace dppricer {
namespace {

std::string Num(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string RowLabel(long T, int d) { return "T=" + std::to_string(T) + " d=" + std::to_string(d); }

ExperimentConfig Base(const DriverOptions& o, long T, int d, double eps1, double eps2) {
  ExperimentConfig c = ExperimentConfig::Section8(T, d, eps1);
  c.mle_budget.eps = eps2;
  c.trials = o.trials;
  c.base_seed = o.base_seed;
  c.jobs = o.jobs;
  c.price_grid = o.price_grid;
  return c;
}

template <typename T>
std::vector<T> OrDefault(const std::vector<T>& given, std::vector<T> fallback) {
  return given.empty() ? fallback : given;
}

}  // namespace

Driver ParseDriver(const std::string& name) {
  if (name == "table1") return Driver::kTable1;
  if (name == "table2") return Driver::kTable2;
  if (name == "table3") return Driver::kTable3;
  if (name == "surplus") return Driver::kSurplus;
  throw InvalidArgument("unknown driver '" + name + "'");
}

const char* DriverName(Driver driver) {
  switch (driver) {
    case Driver::kTable1:
      return "table1";
    case Driver::kTable2:
      return "table2";
    case Driver::kTable3:
      return "table3";
    case Driver::kSurplus:
      return "surplus";
  }
  return "table1";
}

std::vector<DriverCell> BuildDriverGrid(Driver driver, const DriverOptions& o) {
  std::vector<DriverCell> cells;
  switch (driver) {
    case Driver::kTable1: {
      for (long T : OrDefault(o.horizons, {100000L, 1000000L})) {
        for (int d : OrDefault(o.dims, {2, 3})) {
          for (double eps : {0.1, 0.2, 0.5, 1.0, 5.0}) {
            cells.push_back({RowLabel(T, d), "eps=" + Num(eps), Base(o, T, d, eps, eps)});
          }
          ExperimentConfig c = Base(o, T, d, 1.0, 1.0);
          c.variant = Variant::kNonPrivate;
          cells.push_back({RowLabel(T, d), "nonprivate", c});
        }
      }
      break;
    }
    case Driver::kTable2: {
      for (long T : OrDefault(o.horizons, {100000L})) {
        for (int d : OrDefault(o.dims, {2, 3})) {
          for (double eps : {0.02, 0.05, 0.1, 0.2, 0.5}) {
            cells.push_back({RowLabel(T, d) + " fix eps1=0.1", "eps=" + Num(eps),
                             Base(o, T, d, 0.1, eps)});
          }
          for (double eps : {0.02, 0.05, 0.1, 0.2, 0.5}) {
            cells.push_back({RowLabel(T, d) + " fix eps2=0.1", "eps=" + Num(eps),
                             Base(o, T, d, eps, 0.1)});
          }
        }
      }
      break;
    }
    case Driver::kTable3: {
      for (long T : OrDefault(o.horizons, {100000L, 500000L, 1000000L})) {
        for (int d : OrDefault(o.dims, {2})) {
          for (double eps : {0.2, 0.5, 1.0}) {
            cells.push_back({RowLabel(T, d) + " dp", "eps=" + Num(eps), Base(o, T, d, eps, eps)});
          }
          for (double eps : {0.2, 0.5, 1.0}) {
            ExperimentConfig c = Base(o, T, d, eps, eps);
            c.variant = Variant::kInputPerturb;
            c.input_eps = eps;
            cells.push_back({RowLabel(T, d) + " input_perturb", "eps=" + Num(eps), c});
          }
        }
      }
      break;
    }
    case Driver::kSurplus: {
      for (long T : OrDefault(o.horizons, {100000L})) {
        for (int d : OrDefault(o.dims, {2, 3})) {
          for (double eps : {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0}) {
            cells.push_back({RowLabel(T, d), "eps=" + Num(eps), Base(o, T, d, eps, eps)});
          }
          ExperimentConfig c = Base(o, T, d, 1.0, 1.0);
          c.variant = Variant::kNonPrivate;
          cells.push_back({RowLabel(T, d), "nonprivate", c});
        }
      }
      break;
    }
  }
  return cells;
}

std::vector<DriverResult> RunDriver(Driver driver, const DriverOptions& options) {
  std::vector<DriverResult> results;
  for (DriverCell& cell : BuildDriverGrid(driver, options)) {
    ExperimentReport report = RunExperiment(cell.config);
    results.push_back({std::move(cell), report.avg_regret, report.avg_surplus,
                       std::move(report.checkpoint_periods),
                       std::move(report.mean_checkpoint_avg_regret)});
  }
  return results;
}

std::string DriverCsv(const std::vector<DriverResult>& results) {
  std::ostringstream o;
  o << "row,column,variant,T,d,eps1,eps2,delta,trials,mean_avg_regret,median_avg_regret,"
       "sd_avg_regret,mean_avg_surplus,sd_avg_surplus\n";
  for (const DriverResult& r : results) {
    const ExperimentConfig& c = r.cell.config;
    o << '"' << r.cell.row << "\"," << r.cell.column << ',' << VariantName(c.variant) << ','
      << c.T << ',' << c.d << ',' << Num(c.cov_budget.eps) << ',' << Num(c.mle_budget.eps) << ','
      << Num(c.cov_budget.delta) << ',' << c.trials << ',' << Num(r.avg_regret.mean) << ','
      << Num(r.avg_regret.median) << ',' << Num(r.avg_regret.stddev) << ','
      << Num(r.avg_surplus.mean) << ',' << Num(r.avg_surplus.stddev) << '\n';
  }
  return o.str();
}

std::string DriverSvg(Driver driver, const std::vector<DriverResult>& results) {
  const bool surplus = driver == Driver::kSurplus;
  std::map<std::string, SvgSeries> by_row;
  std::vector<std::string> order;
  for (const DriverResult& r : results) {
    if (r.cell.config.variant == Variant::kNonPrivate) continue;
    auto [it, inserted] = by_row.try_emplace(r.cell.row);
    if (inserted) {
      it->second.label = r.cell.row;
      order.push_back(r.cell.row);
    }
    const ExperimentConfig& c = r.cell.config;
    const bool fix_eps2 = r.cell.row.find("fix eps2") != std::string::npos;
    it->second.x.push_back(fix_eps2 ? c.cov_budget.eps : c.mle_budget.eps);
    it->second.y.push_back(surplus ? r.avg_surplus.mean : r.avg_regret.mean);
  }
  std::vector<SvgSeries> series;
  for (const auto& key : order) series.push_back(by_row[key]);
  return SvgLineChart(DriverName(driver), "epsilon",
                      surplus ? "average consumer surplus" : "average regret", series);
}

}  // namespace dppricer
