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

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "dppricer/errors.h"
#include "dppricer/harness.h"

namespace dppricer {
namespace {

using Json = nlohmann::ordered_json;

// Shortest round-trip representation.
std::string Num(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::ofstream OpenForWrite(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  return out;
}

void FinishWrite(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw IoError("write to '" + path + "' failed");
}

Json BudgetJson(const PrivacyBudget& b) { return Json{{"eps", b.eps}, {"delta", b.delta}}; }

Json StatsJson(const SampleStats& s) {
  return Json{{"mean", s.mean}, {"median", s.median}, {"stddev", s.stddev}};
}

const char* BonusName(BonusForm b) { return b == BonusForm::kCapped ? "capped" : "price_scaled"; }

}  // namespace

const char* VariantName(Variant variant) {
  switch (variant) {
    case Variant::kDp:
      return "dp";
    case Variant::kNonPrivate:
      return "nonprivate";
    case Variant::kInputPerturb:
      return "input_perturb";
    case Variant::kRandomPrice:
      return "random_price";
  }
  return "dp";
}

const char* CalibrationName(BoundCalibration calibration) {
  return calibration == BoundCalibration::kCovering ? "covering" : "nominal";
}

BoundCalibration ParseCalibration(const std::string& name) {
  if (name == "nominal") return BoundCalibration::kNominal;
  if (name == "covering") return BoundCalibration::kCovering;
  throw InvalidArgument("unknown bound calibration '" + name + "'");
}

Variant ParseVariant(const std::string& name) {
  if (name == "dp") return Variant::kDp;
  if (name == "nonprivate") return Variant::kNonPrivate;
  if (name == "input_perturb") return Variant::kInputPerturb;
  if (name == "random_price") return Variant::kRandomPrice;
  throw InvalidArgument("unknown variant '" + name + "'");
}

const char* PresetName(Preset preset) {
  switch (preset) {
    case Preset::kSection8:
      return "section8";
    case Preset::kTheorem1:
      return "theorem1";
    case Preset::kTheorem2:
      return "theorem2";
  }
  return "section8";
}

Preset ParsePreset(const std::string& name) {
  if (name == "section8") return Preset::kSection8;
  if (name == "theorem1") return Preset::kTheorem1;
  if (name == "theorem2") return Preset::kTheorem2;
  throw InvalidArgument("unknown preset '" + name + "'");
}

void WriteTraceCsv(const RegretTrace& trace, int context_dim, std::ostream& out) {
  out << "period";
  for (int i = 1; i <= context_dim; ++i) out << ",x" << i;
  out << ",price,demand,instant_regret,cum_regret,surplus\n";
  for (const PeriodRecord& r : trace.records()) {
    out << r.period;
    for (Eigen::Index i = 0; i < r.x.size(); ++i) out << ',' << Num(r.x(i));
    out << ',' << Num(r.price) << ',' << Num(r.demand) << ',' << Num(r.instant_regret) << ','
        << Num(r.cum_regret) << ',' << Num(r.surplus) << '\n';
  }
}

void EmitCsv(const RegretTrace& trace, int context_dim, const std::string& path) {
  std::ofstream out = OpenForWrite(path);
  WriteTraceCsv(trace, context_dim, out);
  FinishWrite(out, path);
}

std::string ExperimentConfigJson(const ExperimentConfig& c) {
  Json j;
  j["T"] = c.T;
  j["d"] = c.d;
  j["trials"] = c.trials;
  j["base_seed"] = c.base_seed;
  j["preset"] = PresetName(c.preset);
  j["eps1"] = c.cov_budget.eps;
  j["delta1"] = c.cov_budget.delta;
  j["eps2"] = c.mle_budget.eps;
  j["delta2"] = c.mle_budget.delta;
  if (c.t0) j["t0"] = *c.t0;
  if (c.d_inf) j["d_inf"] = *c.d_inf;
  if (c.rho) j["rho"] = *c.rho;
  if (c.gamma) j["gamma"] = *c.gamma;
  j["grid"] = c.price_grid;
  j["bonus"] = BonusName(c.bonus);
  j["calibration"] = CalibrationName(c.calibration);
  j["variant"] = VariantName(c.variant);
  j["input_eps"] = c.input_eps;
  j["oracle_grid"] = c.oracle_grid;
  j["jobs"] = c.jobs;
  j["checkpoints"] = c.checkpoints;
  if (!c.out_csv.empty()) j["out_csv"] = c.out_csv;
  if (!c.out_summary.empty()) j["out_summary"] = c.out_summary;
  if (!c.out_svg.empty()) j["out_svg"] = c.out_svg;
  return j.dump(2);
}

ExperimentConfig ParseExperimentConfig(const std::string& json_text, ExperimentConfig c) {
  Json j;
  try {
    j = Json::parse(json_text);
  } catch (const Json::parse_error& e) {
    throw InvalidArgument(std::string("config: malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw InvalidArgument("config: top level must be an object");
  try {
    for (auto it = j.begin(); it != j.end(); ++it) {
      const std::string& key = it.key();
      const Json& v = it.value();
      if (key == "T") c.T = v.get<long>();
      else if (key == "d") c.d = v.get<int>();
      else if (key == "trials") c.trials = v.get<int>();
      else if (key == "base_seed" || key == "seed") c.base_seed = v.get<std::uint64_t>();
      else if (key == "preset") c.preset = ParsePreset(v.get<std::string>());
      else if (key == "eps1") c.cov_budget.eps = v.get<double>();
      else if (key == "delta1") c.cov_budget.delta = v.get<double>();
      else if (key == "eps2") c.mle_budget.eps = v.get<double>();
      else if (key == "delta2") c.mle_budget.delta = v.get<double>();
      else if (key == "t0") c.t0 = v.get<long>();
      else if (key == "d_inf") c.d_inf = v.get<long>();
      else if (key == "rho") c.rho = v.get<double>();
      else if (key == "gamma") c.gamma = v.get<double>();
      else if (key == "grid" || key == "price_grid") c.price_grid = v.get<int>();
      else if (key == "bonus") {
        const std::string b = v.get<std::string>();
        if (b == "capped") c.bonus = BonusForm::kCapped;
        else if (b == "price_scaled") c.bonus = BonusForm::kPriceScaled;
        else throw InvalidArgument("config: unknown bonus form '" + b + "'");
      } else if (key == "calibration") {
        c.calibration = ParseCalibration(v.get<std::string>());
      } else if (key == "variant") c.variant = ParseVariant(v.get<std::string>());
      else if (key == "input_eps") c.input_eps = v.get<double>();
      else if (key == "oracle_grid") c.oracle_grid = v.get<int>();
      else if (key == "jobs") c.jobs = v.get<int>();
      else if (key == "checkpoints") c.checkpoints = v.get<int>();
      else if (key == "out_csv") c.out_csv = v.get<std::string>();
      else if (key == "out_summary") c.out_summary = v.get<std::string>();
      else if (key == "out_svg") c.out_svg = v.get<std::string>();
      else throw InvalidArgument("config: unknown key '" + key + "'");
    }
  } catch (const Json::type_error& e) {
    throw InvalidArgument(std::string("config: wrong value type: ") + e.what());
  }
  return c;
}

std::string SummaryJson(const ExperimentReport& report) {
  Json j;
  j["config"] = Json::parse(ExperimentConfigJson(report.config));
  if (report.config.variant != Variant::kRandomPrice) {
    const PolicyConfig& p = report.policy;
    j["policy"] = Json{{"t0", p.t0},       {"d_inf", p.d_inf},
                       {"rho", p.rho},     {"gamma", p.gamma},
                       {"price_grid", p.price_grid}, {"bonus", BonusName(p.bonus)},
                       {"noise_free", p.noise_free}};
  }
  Json privacy;
  privacy["cov"] = BudgetJson(report.config.cov_budget);
  privacy["mle"] = BudgetJson(report.config.mle_budget);
  privacy["total"] = BudgetJson(report.total_budget);
  privacy["noise_calibrated"] = report.config.variant == Variant::kDp;
  privacy["bound_calibration"] = CalibrationName(report.config.calibration);
  if (report.config.variant == Variant::kDp) {
    privacy["cov_per_node"] = BudgetJson(report.cov_per_node);
    privacy["cov_sigma"] = report.cov_sigma;
    privacy["mle_per_call"] = BudgetJson(report.mle_per_call);
    privacy["mle_nu"] = report.mle_nu;
  }
  j["privacy"] = privacy;

  Json trials = Json::array();
  for (const TrialSummary& t : report.trials) {
    trials.push_back(Json{{"trial", t.trial_index},
                          {"seed", t.seed},
                          {"cum_regret", t.cum_regret},
                          {"avg_regret", t.avg_regret},
                          {"avg_surplus", t.avg_surplus},
                          {"mle_calls", t.mle_calls},
                          {"inner_rho_binds", t.inner_rho_binds},
                          {"mle_realized", BudgetJson(t.mle_realized)}});
  }
  j["trials"] = trials;
  j["aggregate"] = Json{{"avg_regret", StatsJson(report.avg_regret)},
                        {"avg_surplus", StatsJson(report.avg_surplus)}};
  j["curve"] = Json{{"period", report.checkpoint_periods},
                    {"mean_avg_regret", report.mean_checkpoint_avg_regret}};
  return j.dump(2) + "\n";
}

void EmitSummary(const ExperimentReport& report, const std::string& path) {
  std::ofstream out = OpenForWrite(path);
  out << SummaryJson(report);
  FinishWrite(out, path);
}

std::string SvgLineChart(const std::string& title, const std::string& x_label,
                         const std::string& y_label, const std::vector<SvgSeries>& series) {
  constexpr double kWidth = 640, kHeight = 400, kLeft = 70, kRight = 150, kTop = 40,
                   kBottom = 50;
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  for (const auto& s : series) {
    for (size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      xmin = std::min(xmin, s.x[i]);
      xmax = std::max(xmax, s.x[i]);
      ymin = std::min(ymin, s.y[i]);
      ymax = std::max(ymax, s.y[i]);
    }
  }
  if (!std::isfinite(xmin)) xmin = 0, xmax = 1, ymin = 0, ymax = 1;
  if (xmax == xmin) xmax = xmin + 1;
  ymin = std::min(ymin, 0.0);
  if (ymax == ymin) ymax = ymin + 1;
  const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
  auto sx = [&](double v) { return kLeft + (v - xmin) / (xmax - xmin) * pw; };
  auto sy = [&](double v) { return kTop + ph - (v - ymin) / (ymax - ymin) * ph; };
  static const char* kColors[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                  "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
    << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o << "<text x=\"" << kWidth / 2 << "\" y=\"20\" text-anchor=\"middle\">" << title << "</text>\n";
  o << "<line x1=\"" << kLeft << "\" y1=\"" << kTop + ph << "\" x2=\"" << kLeft + pw
    << "\" y2=\"" << kTop + ph << "\" stroke=\"black\"/>\n";
  o << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\""
    << kTop + ph << "\" stroke=\"black\"/>\n";
  for (int t = 0; t <= 4; ++t) {
    const double xv = xmin + (xmax - xmin) * t / 4, yv = ymin + (ymax - ymin) * t / 4;
    o << "<text x=\"" << sx(xv) << "\" y=\"" << kTop + ph + 16 << "\" text-anchor=\"middle\">"
      << Num(std::round(xv * 1e4) / 1e4) << "</text>\n";
    o << "<text x=\"" << kLeft - 6 << "\" y=\"" << sy(yv) + 4 << "\" text-anchor=\"end\">"
      << Num(std::round(yv * 1e5) / 1e5) << "</text>\n";
  }
  o << "<text x=\"" << kLeft + pw / 2 << "\" y=\"" << kHeight - 10
    << "\" text-anchor=\"middle\">" << x_label << "</text>\n";
  o << "<text x=\"15\" y=\"" << kTop + ph / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 15 "
    << kTop + ph / 2 << ")\">" << y_label << "</text>\n";
  for (size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    const char* color = kColors[k % 8];
    o << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      o << sx(s.x[i]) << ',' << sy(s.y[i]) << ' ';
    }
    o << "\"/>\n";
    const double ly = kTop + 14 + 18.0 * k;
    o << "<line x1=\"" << kLeft + pw + 10 << "\" y1=\"" << ly << "\" x2=\"" << kLeft + pw + 30
      << "\" y2=\"" << ly << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    o << "<text x=\"" << kLeft + pw + 35 << "\" y=\"" << ly + 4 << "\">" << s.label << "</text>\n";
  }
  o << "</svg>\n";
  return o.str();
}

void EmitSvg(const std::string& svg, const std::string& path) {
  std::ofstream out = OpenForWrite(path);
  out << svg;
  FinishWrite(out, path);
}

}  // namespace dppricer
