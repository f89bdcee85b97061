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

#ifndef TREEPERC_REPORT_HPP_
#define TREEPERC_REPORT_HPP_

#include <filesystem>
#include <string>

#include "treeperc/experiment.hpp"

namespace treeperc {

/// One record per summary; every record repeats the parameters needed to
/// re-run the experiment. Floats use 17 significant digits, absent values
/// are empty fields.
std::string summary_csv(const Report& report);

/// One record per trial, same leading parameter columns as summary_csv.
std::string trials_csv(const Report& report);

/// {"config": ..., "summary": [...], "trials": {"columns": [...], "rows": [[...]]}}
std::string report_json(const Report& report);

/// Path of the per-trial CSV written next to a CSV summary:
/// out/summary.csv -> out/summary.trials.csv.
std::filesystem::path trials_path(const std::filesystem::path& summary_path);

/// CSV: the summary goes to `path` and the trial table to trials_path(path).
/// JSON: everything goes to `path`. Throws std::runtime_error on I/O failure.
void write_report(const Report& report, const std::filesystem::path& path);

}  // namespace treeperc

#endif  // TREEPERC_REPORT_HPP_
