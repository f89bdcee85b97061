// Copyright 2026 The treeperc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "treeperc/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace treeperc {
namespace {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.17g", x);
  return buffer;
}

std::string format_optional(const std::optional<double>& x) {
  return x ? format_double(*x) : std::string();
}

// Leading columns shared by every summary and trial record.
constexpr const char* kParameterHeader =
    "experiment,family,n,beta,d,h,alpha,c,k,j,p,trials,seed";

std::string parameter_fields(const Report& report) {
  const ExperimentConfig& cfg = report.config;
  std::ostringstream out;
  out << experiment_name(cfg.experiment) << ',' << family_name(cfg.family.family) << ','
      << report.n << ',' << format_double(cfg.family.beta) << ',' << cfg.family.d << ','
      << cfg.family.h << ',' << format_double(cfg.family.alpha) << ','
      << format_double(cfg.c) << ',' << cfg.k << ',' << cfg.j << ','
      << format_double(report.p) << ',' << cfg.trials << ',' << cfg.master_seed;
  return out.str();
}

nlohmann::ordered_json optional_json(const std::optional<double>& x) {
  if (!x || !std::isfinite(*x)) return nullptr;
  return *x;
}

nlohmann::ordered_json number_json(double x) {
  if (!std::isfinite(x)) return nullptr;
  return x;
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << contents;
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace

std::string summary_csv(const Report& report) {
  std::ostringstream out;
  out << kParameterHeader
      << ",test,estimate,std_error,theory,statistic,p_value,n_samples\n";
  const std::string params = parameter_fields(report);
  for (const SummaryStats& s : report.summaries) {
    out << params << ',' << s.test_name << ',' << format_double(s.estimate) << ','
        << format_double(s.std_error) << ',' << format_optional(s.theory) << ','
        << format_optional(s.statistic) << ',' << format_optional(s.p_value) << ','
        << s.n_samples << '\n';
  }
  return out.str();
}

std::string trials_csv(const Report& report) {
  std::ostringstream out;
  out << kParameterHeader << ",trial";
  for (const auto& column : report.trials.columns) out << ',' << column;
  out << '\n';
  const std::string params = parameter_fields(report);
  const SampleTable& table = report.trials;
  for (std::size_t r = 0; r < table.rows(); ++r) {
    out << params << ',' << r;
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
      out << ',' << format_double(table.at(r, c));
    }
    out << '\n';
  }
  return out.str();
}

std::string report_json(const Report& report) {
  using nlohmann::ordered_json;
  const ExperimentConfig& cfg = report.config;
  ordered_json doc;
  doc["config"] = {
      {"experiment", experiment_name(cfg.experiment)},
      {"family", family_name(cfg.family.family)},
      {"n", report.n},
      {"beta", cfg.family.beta},
      {"d", cfg.family.d},
      {"h", cfg.family.h},
      {"alpha", cfg.family.alpha},
      {"c", cfg.c},
      {"k", cfg.k},
      {"j", cfg.j},
      {"p", report.p},
      {"scale", report.scale_length},
      {"trials", cfg.trials},
      {"seed", cfg.master_seed},
  };
  ordered_json summary = ordered_json::array();
  for (const SummaryStats& s : report.summaries) {
    summary.push_back({
        {"test", s.test_name},
        {"estimate", number_json(s.estimate)},
        {"std_error", number_json(s.std_error)},
        {"theory", optional_json(s.theory)},
        {"statistic", optional_json(s.statistic)},
        {"p_value", optional_json(s.p_value)},
        {"n_samples", s.n_samples},
    });
  }
  doc["summary"] = std::move(summary);
  ordered_json rows = ordered_json::array();
  const SampleTable& table = report.trials;
  for (std::size_t r = 0; r < table.rows(); ++r) {
    ordered_json values = ordered_json::array();
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
      values.push_back(number_json(table.at(r, c)));
    }
    rows.push_back(std::move(values));
  }
  doc["trials"] = {{"columns", table.columns}, {"rows", std::move(rows)}};
  return doc.dump(2) + "\n";
}

std::filesystem::path trials_path(const std::filesystem::path& summary_path) {
  std::filesystem::path out = summary_path;
  const std::string extension = summary_path.has_extension()
                                    ? summary_path.extension().string()
                                    : std::string(".csv");
  out.replace_filename(summary_path.stem().string() + ".trials" + extension);
  return out;
}

void write_report(const Report& report, const std::filesystem::path& path) {
  if (report.config.format == OutputFormat::kJson) {
    write_file(path, report_json(report));
    return;
  }
  write_file(path, summary_csv(report));
  write_file(trials_path(path), trials_csv(report));
}

}  // namespace treeperc
