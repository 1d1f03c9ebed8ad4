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

#include "tugsim/sweep.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <future>
#include <thread>

#include "tugsim/errors.hpp"
#include "tugsim/number_format.hpp"
#include "tugsim/scenario_io.hpp"
#include "tugsim/scenario_runner.hpp"
#include "tugsim/trajectory_output.hpp"

namespace tugsim {

std::pair<std::string, std::vector<std::string>> parse_vary(const std::string& spec) {
  const std::size_t eq = spec.find('=');
  if (eq == std::string::npos || eq == 0 || eq + 1 == spec.size()) {
    throw ValidationError("--vary " + spec + ": key=a,b,c expected");
  }
  std::vector<std::string> values;
  std::string cur;
  int depth = 0;
  for (char c : spec.substr(eq + 1)) {
    if (c == '[') ++depth;
    if (c == ']') --depth;
    if (c == ',' && depth == 0) {
      values.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  values.push_back(cur);
  for (const std::string& v : values) {
    if (v.empty()) throw ValidationError("--vary " + spec + ": empty value");
  }
  return {spec.substr(0, eq), values};
}

namespace {

void finish(SweepCase& c, const Scenario& scn) {
  try {
    const TrajectoryLog log = run(scn);
    write_csv(log, c.dir / scn.csv_file);
    const TrajectoryRecord& last = log.records.back();
    c.omega1_final = last.state.omega_l1.norm();
    c.omega2_final = last.state.omega_l2.norm();
    c.v_final = last.state.v.norm();
    c.lyapunov_initial = log.records.front().lyapunov;
    c.lyapunov_final = last.lyapunov;
    c.ok = true;
  } catch (const NumericalError& e) {
    c.error = e.what();
  }
}

std::string csv_field(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::vector<SweepCase> run_sweep(const std::filesystem::path& scenario,
                                 const std::vector<std::string>& overrides,
                                 const std::string& vary, const std::filesystem::path& out) {
  const auto [key, values] = parse_vary(vary);
  std::vector<Scenario> scenarios;
  std::vector<SweepCase> cases;
  for (std::size_t i = 0; i < values.size(); ++i) {
    std::vector<std::string> ov = overrides;
    ov.push_back(key + "=" + values[i]);
    scenarios.push_back(load_scenario(scenario, ov));
    char name[32];
    std::snprintf(name, sizeof name, "case_%02zu", i);
    SweepCase c;
    c.value = values[i];
    c.dir = out / name;
    cases.push_back(std::move(c));
  }
  for (const SweepCase& c : cases) {
    std::error_code ec;
    std::filesystem::create_directories(c.dir, ec);
    if (ec) throw IoError("cannot create " + c.dir.string() + ": " + ec.message());
  }

  // scenarios share nothing mutable; run them in batches of the core count
  const std::size_t width = std::max(1u, std::thread::hardware_concurrency());
  for (std::size_t start = 0; start < cases.size(); start += width) {
    std::vector<std::future<void>> jobs;
    const std::size_t stop = std::min(cases.size(), start + width);
    for (std::size_t i = start; i < stop; ++i) {
      jobs.push_back(std::async(std::launch::async,
                                [&, i] { finish(cases[i], scenarios[i]); }));
    }
    for (auto& j : jobs) j.get();
  }

  const std::filesystem::path summary = out / "sweep_summary.csv";
  std::ofstream os(summary, std::ios::binary);
  if (!os) throw IoError("cannot write " + summary.string());
  os << "case,key,value,status,w1_final,w2_final,v_final,V_initial,V_final\n";
  for (const SweepCase& c : cases) {
    std::string line = c.dir.filename().string() + "," + key + "," + csv_field(c.value) + ",";
    line += c.ok ? "ok" : "numerical_abort";
    for (double x : {c.omega1_final, c.omega2_final, c.v_final, c.lyapunov_initial,
                     c.lyapunov_final}) {
      line += ',';
      append_double(line, x);
    }
    os << line << '\n';
  }
  if (!os) throw IoError("error writing " + summary.string());
  return cases;
}

}  // namespace tugsim
