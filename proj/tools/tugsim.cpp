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

// tugsim: run the detumbling scenario, property diagnostics, parameter sweeps.
//
// Exit codes: 0 success, 1 a diagnostic failed, 2 invalid input,
// 3 numerical abort, 4 I/O error.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "tugsim/errors.hpp"
#include "tugsim/scenario_io.hpp"
#include "tugsim/scenario_runner.hpp"
#include "tugsim/sweep.hpp"
#include "tugsim/trajectory_output.hpp"

namespace fs = std::filesystem;

namespace {

enum Exit : int { kOk = 0, kDiagnosticFailed = 1, kInvalid = 2, kNumerical = 3, kIo = 4 };

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw tugsim::IoError("cannot create " + dir.string() + ": " + ec.message());
}

int cmd_run(const fs::path& scenario, const fs::path& out,
            const std::vector<std::string>& overrides, bool plots) {
  const tugsim::Scenario scn = tugsim::load_scenario(scenario, overrides);
  ensure_dir(out);
  const tugsim::TrajectoryLog log = tugsim::run(scn);
  tugsim::write_csv(log, out / scn.csv_file);
  tugsim::save_scenario(scn, out / "scenario.resolved.yaml");
  if (plots) tugsim::write_plots(log, scn.truth, out / "plots");

  const tugsim::TrajectoryRecord& last = log.records.back();
  const tugsim::DescentSummary d = tugsim::descent_summary(log);
  std::printf("steps        %zu\n", log.size() - 1);
  std::printf("|w_L1(T)|    %.6g rad/s\n", last.state.omega_l1.norm());
  std::printf("|w_L2(T)|    %.6g rad/s\n", last.state.omega_l2.norm());
  std::printf("|v(T)|       %.6g m/s\n", last.state.v.norm());
  std::printf("V(0) -> V(T) %.6g -> %.6g\n", d.v0, d.v_final);
  std::printf("wrote        %s\n", (out / scn.csv_file).string().c_str());
  return kOk;
}

int cmd_diagnostics(const fs::path& scenario, int samples,
                    const std::vector<std::string>& overrides) {
  const tugsim::Scenario scn = tugsim::load_scenario(scenario, overrides);
  const tugsim::DiagnosticReport report = tugsim::diagnostics(scn, samples);
  for (const tugsim::DiagnosticEntry& e : report.entries) {
    std::printf("%-4s %-26s worst %-12.4g limit %-10.3g %s\n", e.passed ? "PASS" : "FAIL",
                e.name.c_str(), e.worst, e.threshold, e.detail.c_str());
  }
  return report.all_passed() ? kOk : kDiagnosticFailed;
}

int cmd_sweep(const fs::path& scenario, const std::string& vary, const fs::path& out,
              const std::vector<std::string>& overrides) {
  ensure_dir(out);
  const std::vector<tugsim::SweepCase> cases = tugsim::run_sweep(scenario, overrides, vary, out);
  bool aborted = false;
  for (const tugsim::SweepCase& c : cases) {
    if (c.ok) {
      std::printf("%s %-16s |w1| %.4g |w2| %.4g |v| %.4g V %.4g -> %.4g\n",
                  c.dir.filename().string().c_str(), c.value.c_str(), c.omega1_final,
                  c.omega2_final, c.v_final, c.lyapunov_initial, c.lyapunov_final);
    } else {
      aborted = true;
      std::printf("%s %-16s aborted: %s\n", c.dir.filename().string().c_str(),
                  c.value.c_str(), c.error.c_str());
    }
  }
  return aborted ? kNumerical : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adaptive two-tug detumbling simulator"};
  app.require_subcommand(1);

  fs::path scenario;
  fs::path out;
  std::vector<std::string> overrides;
  bool plots = false;
  int samples = 1000;
  std::string vary;

  CLI::App* run = app.add_subcommand("run", "Simulate one scenario and write the trajectory CSV");
  run->add_option("--scenario", scenario, "Scenario file")->required();
  run->add_option("--out", out, "Output directory")->required();
  run->add_option("--set", overrides, "Override a scenario key: dotted.key=value");
  run->add_flag("--plots", plots, "Also write SVG figures to <out>/plots");

  CLI::App* diag = app.add_subcommand("diagnostics", "Property checks on random states and a full run");
  diag->add_option("--scenario", scenario, "Scenario file")->required();
  diag->add_option("--samples", samples, "Random states per sweep")->check(CLI::PositiveNumber);
  diag->add_option("--set", overrides, "Override a scenario key: dotted.key=value");

  CLI::App* sweep = app.add_subcommand("sweep", "Run one scenario for several values of a key");
  sweep->add_option("--scenario", scenario, "Scenario file")->required();
  sweep->add_option("--vary", vary, "key=a,b,c")->required();
  sweep->add_option("--out", out, "Output directory")->required();
  sweep->add_option("--set", overrides, "Override a scenario key: dotted.key=value");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInvalid;
  }

  try {
    if (*run) return cmd_run(scenario, out, overrides, plots);
    if (*diag) return cmd_diagnostics(scenario, samples, overrides);
    return cmd_sweep(scenario, vary, out, overrides);
  } catch (const tugsim::ValidationError& e) {
    std::fprintf(stderr, "tugsim: invalid input: %s\n", e.what());
    return kInvalid;
  } catch (const tugsim::NumericalError& e) {
    std::fprintf(stderr, "tugsim: numerical abort: %s\n", e.what());
    return kNumerical;
  } catch (const tugsim::IoError& e) {
    std::fprintf(stderr, "tugsim: I/O error: %s\n", e.what());
    return kIo;
  } catch (const fs::filesystem_error& e) {
    std::fprintf(stderr, "tugsim: I/O error: %s\n", e.what());
    return kIo;
  }
}
