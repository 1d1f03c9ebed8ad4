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

#include <fstream>

#include "tugsim/errors.hpp"
#include "tugsim/number_format.hpp"
#include "tugsim/trajectory_output.hpp"

namespace tugsim {

namespace {

void add3(std::vector<std::string>& h, const std::string& stem) {
  for (const char* axis : {"x", "y", "z"}) h.push_back(stem + "_" + axis);
}

void add_wrench(std::vector<std::string>& h, const std::string& stem) {
  for (const char* c : {"fx", "fy", "fz", "tx", "ty", "tz"}) h.push_back(stem + "_" + c);
}

void put(std::string& line, double x) {
  line += ',';
  append_double(line, x);
}

template <typename Vec>
void put(std::string& line, const Vec& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) put(line, static_cast<double>(v(i)));
}

}  // namespace

std::vector<std::string> csv_header() {
  std::vector<std::string> h{"t"};
  add3(h, "p");
  add3(h, "rv_alpha");
  add3(h, "rv_beta");
  add3(h, "v");
  add3(h, "w1");
  add3(h, "w2");
  add3(h, "theta_star");
  add_wrench(h, "tug1");
  add_wrench(h, "tug2");
  add3(h, "eps");
  add3(h, "o1");
  add3(h, "o2");
  h.push_back("V");
  for (const char* tug : {"phi1", "phi2"}) {
    for (int i = 0; i < kNumParams; ++i) {
      h.push_back(std::string(tug) + "_" + (i < 10 ? "0" : "") + std::to_string(i));
    }
  }
  add3(h, "d1");
  add3(h, "d2");
  return h;
}

void write_csv(const TrajectoryLog& log, std::ostream& out) {
  std::string line;
  const std::vector<std::string> header = csv_header();
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) line += ',';
    line += header[i];
  }
  line += '\n';
  out << line;
  for (const TrajectoryRecord& r : log.records) {
    line.clear();
    append_double(line, r.t);
    put(line, r.state.p);
    put(line, rot_to_angle_vector(r.state.r_alpha));
    put(line, rot_to_angle_vector(r.state.r_beta));
    put(line, r.state.v);
    put(line, r.state.omega_l1);
    put(line, r.state.omega_l2);
    put(line, r.hinge.theta_star);
    put(line, r.tug1.stacked());
    put(line, r.tug2.stacked());
    put(line, r.s1.epsilon);
    put(line, r.s1.o);
    put(line, r.s2.o);
    put(line, r.lyapunov);
    put(line, r.estimate1.phi);
    put(line, r.estimate2.phi);
    put(line, r.estimate1.d);
    put(line, r.estimate2.d);
    line += '\n';
    out << line;
  }
}

void write_csv(const TrajectoryLog& log, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  write_csv(log, out);
  out.flush();
  if (!out) throw IoError("error writing " + path.string());
}

}  // namespace tugsim
