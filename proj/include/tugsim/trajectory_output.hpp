/*
 Copyright 2026 The tugsim Authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/

#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "tugsim/scenario_runner.hpp"

namespace tugsim {

/// Column names in output order (94 columns, documented in README.md).
std::vector<std::string> csv_header();

void write_csv(const TrajectoryLog& log, std::ostream& out);

/// Throws IoError.
void write_csv(const TrajectoryLog& log, const std::filesystem::path& path);

/// Static SVG figures, one per figure family (8 files). Returns the paths
/// written. Throws IoError; std::invalid_argument on an empty log.
std::vector<std::filesystem::path> write_plots(const TrajectoryLog& log,
                                               const SatelliteTruth<double>& truth,
                                               const std::filesystem::path& dir);

}  // namespace tugsim
