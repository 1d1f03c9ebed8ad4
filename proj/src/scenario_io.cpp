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

#include "tugsim/scenario_io.hpp"

#include <yaml-cpp/yaml.h>

#include <charconv>
#include <cstdint>
#include <fstream>
#include <set>
#include <sstream>
#include <string_view>
#include <variant>

#include "tugsim/errors.hpp"
#include "tugsim/number_format.hpp"

namespace tugsim {

namespace {

using FieldRef = std::variant<double*, std::uint64_t*, bool*, std::string*, Vec3<double>*,
                              Mat3<double>*, Mat6<double>*, ParamVec<double>*,
                              ParamMat<double>*>;

struct Field {
  std::string key;
  FieldRef ref;
};

// The schema, in file order. Keys of one section must be contiguous.
std::vector<Field> fields(Scenario& s) {
  SatelliteTruth<double>& t = s.truth;
  return {
      {"truth.link1.mass_kg", &t.link1.mass},
      {"truth.link1.inertia_cm_kgm2", &t.link1.inertia_cm},
      {"truth.link1.offset_m", &t.link1.offset},
      {"truth.link2.mass_kg", &t.link2.mass},
      {"truth.link2.inertia_cm_kgm2", &t.link2.inertia_cm},
      {"truth.link2.offset_m", &t.link2.offset},
      {"truth.rotor_inertia_kgm2", &t.rotor_inertia},
      {"truth.hinge.stiffness_nm_per_rad", &t.hinge.stiffness},
      {"truth.hinge.damping_nms_per_rad", &t.hinge.damping},
      {"truth.hinge.friction_torque_nm", &t.hinge.friction_torque},
      {"truth.grasp1_m", &t.grasp1},
      {"truth.grasp2_m", &t.grasp2},
      {"gains.k_pd", &s.gains.k_pd},
      {"gains.gamma_phi", &s.gains.gamma_phi},
      {"gains.gamma_d", &s.gains.gamma_d},
      {"gains.gamma", &s.gains.gamma},
      {"initial.position_m", &s.initial.position},
      {"initial.velocity_mps", &s.initial.velocity},
      {"initial.attitude1_rotvec_rad", &s.initial.attitude_link1},
      {"initial.attitude2_rotvec_rad", &s.initial.attitude_link2},
      {"initial.omega1_radps", &s.initial.omega_link1},
      {"initial.omega2_radps", &s.initial.omega_link2},
      {"estimate.tug1.phi", &s.estimate1.phi},
      {"estimate.tug1.grasp_m", &s.estimate1.d},
      {"estimate.tug2.phi", &s.estimate2.phi},
      {"estimate.tug2.grasp_m", &s.estimate2.d},
      {"simulation.duration_s", &s.duration},
      {"simulation.dt_s", &s.dt},
      {"simulation.seed", &s.seed},
      {"simulation.tugs_enabled", &s.tugs_enabled},
      {"simulation.adaptation_enabled", &s.adaptation_enabled},
      {"noise.enabled", &s.noise.enabled},
      {"noise.position_std_m", &s.noise.position_std},
      {"noise.attitude_std_rad", &s.noise.attitude_std},
      {"noise.velocity_std_mps", &s.noise.velocity_std},
      {"noise.omega_std_radps", &s.noise.omega_std},
      {"output.csv_file", &s.csv_file},
  };
}

std::vector<std::string> split_key(std::string_view key) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t dot = key.find('.', start);
    parts.emplace_back(key.substr(start, dot - start));
    if (dot == std::string_view::npos) break;
    start = dot + 1;
  }
  return parts;
}

class Reader {
 public:
  explicit Reader(std::string source) : source_(std::move(source)) {}

  [[noreturn]] void fail(const YAML::Node& node, const std::string& key,
                         const std::string& what) const {
    std::ostringstream os;
    os << source_;
    if (node.IsDefined() && node.Mark().line >= 0) os << ":" << node.Mark().line + 1;
    os << ": " << key << ": " << what;
    throw ValidationError(os.str());
  }

  double scalar(const YAML::Node& n, const std::string& key) const {
    if (!n.IsScalar()) fail(n, key, "number expected");
    const std::string& text = n.Scalar();
    double x = 0.0;
    const char* first = text.data();
    const char* last = first + text.size();
    if (!text.empty() && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, x);
    if (ec != std::errc() || ptr != last) fail(n, key, "number expected, got '" + text + "'");
    return x;
  }

  std::vector<double> list(const YAML::Node& n, const std::string& key) const {
    if (!n.IsSequence()) fail(n, key, "list of numbers expected");
    std::vector<double> out;
    for (const auto& e : n) out.push_back(scalar(e, key));
    return out;
  }

  template <typename Vec>
  void vector(const YAML::Node& n, const std::string& key, Vec& v) const {
    const std::vector<double> xs = list(n, key);
    if (static_cast<Eigen::Index>(xs.size()) != v.size()) {
      fail(n, key, std::to_string(v.size()) + " numbers expected");
    }
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = xs[static_cast<std::size_t>(i)];
  }

  // n numbers: the diagonal; n*n numbers: the full matrix, row-major.
  template <typename Mat>
  void matrix(const YAML::Node& n, const std::string& key, Mat& m) const {
    const std::vector<double> xs = list(n, key);
    const auto dim = static_cast<std::size_t>(m.rows());
    if (xs.size() == dim) {
      m.setZero();
      for (std::size_t i = 0; i < dim; ++i) m(i, i) = xs[i];
    } else if (xs.size() == dim * dim) {
      for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) m(i, j) = xs[i * dim + j];
      }
    } else {
      fail(n, key, std::to_string(dim) + " (diagonal) or " + std::to_string(dim * dim) +
                       " (row-major) numbers expected");
    }
  }

  void read(const YAML::Node& n, const std::string& key, FieldRef ref) const {
    std::visit(
        [&](auto* p) {
          using T = std::remove_pointer_t<decltype(p)>;
          if constexpr (std::is_same_v<T, double>) {
            *p = scalar(n, key);
          } else if constexpr (std::is_same_v<T, std::uint64_t>) {
            if (!n.IsScalar()) fail(n, key, "non-negative integer expected");
            const std::string& text = n.Scalar();
            const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), *p);
            if (ec != std::errc() || ptr != text.data() + text.size()) {
              fail(n, key, "non-negative integer expected, got '" + text + "'");
            }
          } else if constexpr (std::is_same_v<T, bool>) {
            bool b = false;
            if (!n.IsScalar() || !YAML::convert<bool>::decode(n, b)) {
              fail(n, key, "true or false expected");
            }
            *p = b;
          } else if constexpr (std::is_same_v<T, std::string>) {
            if (!n.IsScalar()) fail(n, key, "string expected");
            *p = n.Scalar();
          } else if constexpr (std::is_same_v<T, Vec3<double>> ||
                               std::is_same_v<T, ParamVec<double>>) {
            vector(n, key, *p);
          } else {
            matrix(n, key, *p);
          }
        },
        ref);
  }

  // Rejects any key not in the schema, naming its line.
  void check_keys(const YAML::Node& node, const std::string& prefix,
                  const std::set<std::string>& leaves,
                  const std::set<std::string>& sections) const {
    if (node.IsNull()) return;
    if (!node.IsMap()) fail(node, prefix.empty() ? "<root>" : prefix, "mapping expected");
    for (const auto& kv : node) {
      const std::string name = kv.first.Scalar();
      const std::string key = prefix.empty() ? name : prefix + "." + name;
      if (leaves.count(key)) continue;
      if (sections.count(key)) {
        check_keys(kv.second, key, leaves, sections);
        continue;
      }
      fail(kv.first, key, "unknown key");
    }
  }

  const std::string& source() const { return source_; }

 private:
  std::string source_;
};

void schema_sets(std::set<std::string>& leaves, std::set<std::string>& sections) {
  Scenario dummy;
  for (const Field& f : fields(dummy)) {
    leaves.insert(f.key);
    const std::vector<std::string> parts = split_key(f.key);
    std::string prefix;
    for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
      prefix += (i ? "." : "") + parts[i];
      sections.insert(prefix);
    }
  }
}

void apply_override(YAML::Node& root, const std::string& assignment,
                    const std::set<std::string>& leaves) {
  const std::size_t eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw ValidationError("--set " + assignment + ": key=value expected");
  }
  const std::string key = assignment.substr(0, eq);
  if (!leaves.count(key)) throw ValidationError("--set " + key + ": unknown key");
  YAML::Node value;
  try {
    value = YAML::Load(assignment.substr(eq + 1));
  } catch (const YAML::Exception& e) {
    throw ValidationError("--set " + key + ": " + e.msg);
  }
  const std::vector<std::string> parts = split_key(key);
  YAML::Node cur = root;
  for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
    YAML::Node next = cur[parts[i]];
    if (next.IsDefined() && !next.IsNull() && !next.IsMap()) {
      throw ValidationError("--set " + key + ": '" + parts[i] + "' is not a section");
    }
    if (!next.IsDefined() || next.IsNull()) cur[parts[i]] = YAML::Node(YAML::NodeType::Map);
    cur.reset(cur[parts[i]]);
  }
  cur[parts.back()] = value;
}

YAML::Node lookup(const YAML::Node& root, const std::string& key) {
  YAML::Node cur = root;
  for (const std::string& part : split_key(key)) {
    if (!cur.IsMap()) return YAML::Node(YAML::NodeType::Undefined);
    const YAML::Node next = cur[part];
    if (!next.IsDefined()) return YAML::Node(YAML::NodeType::Undefined);
    cur.reset(next);
  }
  return cur;
}

// -- writing --------------------------------------------------------------

void write_list(std::string& out, const double* xs, std::size_t n) {
  out += '[';
  for (std::size_t i = 0; i < n; ++i) {
    if (i) out += ", ";
    append_double(out, xs[i]);
  }
  out += ']';
}

template <typename Mat>
void write_matrix(std::string& out, const Mat& m) {
  const Mat diag = Mat(m.diagonal().asDiagonal());
  std::vector<double> xs;
  if (m == diag) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) xs.push_back(m(i, i));
  } else {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      for (Eigen::Index j = 0; j < m.cols(); ++j) xs.push_back(m(i, j));
    }
  }
  write_list(out, xs.data(), xs.size());
}

std::string yaml_quoted(const std::string& s) {
  YAML::Emitter e;
  e << YAML::DoubleQuoted << s;
  return e.c_str();
}

void write_value(std::string& out, FieldRef ref) {
  std::visit(
      [&](auto* p) {
        using T = std::remove_pointer_t<decltype(p)>;
        if constexpr (std::is_same_v<T, double>) {
          append_double(out, *p);
        } else if constexpr (std::is_same_v<T, std::uint64_t>) {
          out += std::to_string(*p);
        } else if constexpr (std::is_same_v<T, bool>) {
          out += *p ? "true" : "false";
        } else if constexpr (std::is_same_v<T, std::string>) {
          out += yaml_quoted(*p);
        } else if constexpr (std::is_same_v<T, Vec3<double>> ||
                             std::is_same_v<T, ParamVec<double>>) {
          write_list(out, p->data(), static_cast<std::size_t>(p->size()));
        } else {
          write_matrix(out, *p);
        }
      },
      ref);
}

}  // namespace

std::vector<std::string> scenario_keys() {
  Scenario dummy;
  std::vector<std::string> keys;
  for (const Field& f : fields(dummy)) keys.push_back(f.key);
  return keys;
}

Scenario parse_scenario(const std::string& text, const std::vector<std::string>& overrides,
                        const std::string& source) {
  const Reader reader(source);
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    std::ostringstream os;
    os << source << ":" << e.mark.line + 1 << ":" << e.mark.column + 1 << ": " << e.msg;
    throw ValidationError(os.str());
  }
  if (root.IsNull() || !root.IsDefined()) root = YAML::Node(YAML::NodeType::Map);

  std::set<std::string> leaves, sections;
  schema_sets(leaves, sections);
  reader.check_keys(root, "", leaves, sections);
  for (const std::string& o : overrides) apply_override(root, o, leaves);

  Scenario scn = table1_scenario();
  for (const Field& f : fields(scn)) {
    const YAML::Node n = lookup(root, f.key);
    if (n.IsDefined() && !n.IsNull()) reader.read(n, f.key, f.ref);
  }
  try {
    validate(scn);
  } catch (const ValidationError& e) {
    throw ValidationError(source + ": " + e.what());
  }
  return scn;
}

Scenario load_scenario(const std::filesystem::path& path,
                       const std::vector<std::string>& overrides) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read scenario file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("error reading scenario file " + path.string());
  return parse_scenario(buf.str(), overrides, path.string());
}

std::string write_scenario(const Scenario& scn_in) {
  Scenario scn = scn_in;
  std::string out;
  std::vector<std::string> open;
  for (const Field& f : fields(scn)) {
    const std::vector<std::string> parts = split_key(f.key);
    std::size_t common = 0;
    while (common < open.size() && common + 1 < parts.size() && open[common] == parts[common]) {
      ++common;
    }
    if (common == 0 && !open.empty()) out += '\n';
    open.resize(common);
    for (std::size_t i = common; i + 1 < parts.size(); ++i) {
      out.append(2 * i, ' ');
      out += parts[i] + ":\n";
      open.push_back(parts[i]);
    }
    out.append(2 * (parts.size() - 1), ' ');
    out += parts.back() + ": ";
    write_value(out, f.ref);
    out += '\n';
  }
  return out;
}

void save_scenario(const Scenario& scn, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << write_scenario(scn);
  if (!out) throw IoError("error writing " + path.string());
}

}  // namespace tugsim
