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

// Scenario files: a YAML key tree whose leaf names carry their units.
// Every key is optional and defaults to the bundled scenario; unknown keys
// are rejected. See README.md for the schema.

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "tugsim/scenario.hpp"

namespace tugsim {

/// Parses and validates; overrides are "dotted.key=value" with a YAML value.
/// Throws ValidationError (with line info where available) or IoError.
Scenario load_scenario(const std::filesystem::path& path,
                       const std::vector<std::string>& overrides = {});

Scenario parse_scenario(const std::string& text,
                        const std::vector<std::string>& overrides = {},
                        const std::string& source = "<string>");

/// Canonical text form; parse_scenario(write_scenario(s)) == s exactly.
std::string write_scenario(const Scenario& scn);

void save_scenario(const Scenario& scn, const std::filesystem::path& path);

/// All accepted dotted keys, in file order.
std::vector<std::string> scenario_keys();

}  // namespace tugsim
