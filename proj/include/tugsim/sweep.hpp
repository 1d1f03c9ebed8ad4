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
#include <string>
#include <vector>

namespace tugsim {

struct SweepCase {
  std::string value;
  std::filesystem::path dir;
  bool ok = false;
  std::string error;
  double omega1_final = 0.0;
  double omega2_final = 0.0;
  double v_final = 0.0;
  double lyapunov_initial = 0.0;
  double lyapunov_final = 0.0;
};

/// "key=a,b,c" -> (key, {a, b, c}); commas inside [...] do not split.
std::pair<std::string, std::vector<std::string>> parse_vary(const std::string& spec);

/// Loads and validates every case first (ValidationError / IoError), then
/// runs the cases concurrently. Each case writes <out>/case_NN/<csv_file>;
/// <out>/sweep_summary.csv lists all cases. Numerical aborts are recorded
/// per case, not thrown.
std::vector<SweepCase> run_sweep(const std::filesystem::path& scenario,
                                 const std::vector<std::string>& overrides,
                                 const std::string& vary, const std::filesystem::path& out);

}  // namespace tugsim
