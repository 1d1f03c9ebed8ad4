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

// Minimal SVG line plots; one file per figure family, panels stacked.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "tugsim/errors.hpp"
#include "tugsim/number_format.hpp"
#include "tugsim/trajectory_output.hpp"

namespace tugsim {

namespace {

struct Series {
  std::string name;
  std::vector<double> y;
};

struct Panel {
  std::string title;
  std::string ylabel;
  std::vector<Series> series;
};

constexpr double kWidth = 820.0;
constexpr double kPanelHeight = 250.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 130.0;
constexpr double kTop = 34.0;
constexpr double kBottom = 46.0;
constexpr std::size_t kMaxPoints = 1500;

const char* color(std::size_t i) {
  static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                  "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
  return palette[i % 10];
}

std::string num(double x) {
  // tick labels: 4 significant digits is plenty
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", x);
  return buf;
}

double nice_step(double span, int target) {
  const double raw = span / target;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double f = raw / mag;
  return (f < 1.5 ? 1.0 : f < 3.0 ? 2.0 : f < 7.0 ? 5.0 : 10.0) * mag;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

void draw_panel(std::string& svg, const Panel& p, const std::vector<double>& t, double y0) {
  const double w = kWidth - kLeft - kRight;
  const double h = kPanelHeight - kTop - kBottom;
  const double x_left = kLeft;
  const double y_top = y0 + kTop;

  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const Series& s : p.series) {
    for (double v : s.y) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  if (!std::isfinite(lo) || !std::isfinite(hi)) lo = hi = 0.0;
  if (hi - lo < 1e-12 * std::max(1.0, std::abs(hi))) {
    const double pad = std::max(1.0, std::abs(hi)) * 0.5;
    lo -= pad;
    hi += pad;
  }
  const double ystep = nice_step(hi - lo, 5);
  lo = std::floor(lo / ystep) * ystep;
  hi = std::ceil(hi / ystep) * ystep;
  const double t0 = t.front();
  const double t1 = t.back() > t0 ? t.back() : t0 + 1.0;
  const double tstep = nice_step(t1 - t0, 8);

  auto sx = [&](double x) { return x_left + (x - t0) / (t1 - t0) * w; };
  auto sy = [&](double y) { return y_top + (hi - y) / (hi - lo) * h; };

  svg += "<text x=\"" + num(x_left) + "\" y=\"" + num(y0 + 22) +
         "\" font-size=\"15\" font-weight=\"bold\">" + escape(p.title) + "</text>\n";
  svg += "<rect x=\"" + num(x_left) + "\" y=\"" + num(y_top) + "\" width=\"" + num(w) +
         "\" height=\"" + num(h) + "\" fill=\"none\" stroke=\"#333\"/>\n";
  for (double y = lo; y <= hi + 0.5 * ystep; y += ystep) {
    const double py = sy(y);
    svg += "<line x1=\"" + num(x_left) + "\" y1=\"" + num(py) + "\" x2=\"" + num(x_left + w) +
           "\" y2=\"" + num(py) + "\" stroke=\"#ddd\"/>\n";
    svg += "<text x=\"" + num(x_left - 6) + "\" y=\"" + num(py + 4) +
           "\" font-size=\"11\" text-anchor=\"end\">" + num(std::abs(y) < 1e-9 * ystep ? 0.0 : y) +
           "</text>\n";
  }
  for (double x = std::ceil(t0 / tstep) * tstep; x <= t1 + 1e-9 * tstep; x += tstep) {
    const double px = sx(x);
    svg += "<line x1=\"" + num(px) + "\" y1=\"" + num(y_top) + "\" x2=\"" + num(px) +
           "\" y2=\"" + num(y_top + h) + "\" stroke=\"#eee\"/>\n";
    svg += "<text x=\"" + num(px) + "\" y=\"" + num(y_top + h + 16) +
           "\" font-size=\"11\" text-anchor=\"middle\">" + num(x) + "</text>\n";
  }
  svg += "<text x=\"" + num(x_left + w / 2) + "\" y=\"" + num(y_top + h + 34) +
         "\" font-size=\"12\" text-anchor=\"middle\">t [s]</text>\n";
  svg += "<text transform=\"translate(" + num(18) + "," + num(y_top + h / 2) +
         ") rotate(-90)\" font-size=\"12\" text-anchor=\"middle\">" + escape(p.ylabel) +
         "</text>\n";

  const std::size_t n = t.size();
  const std::size_t stride = std::max<std::size_t>(1, n / kMaxPoints);
  for (std::size_t k = 0; k < p.series.size(); ++k) {
    const Series& s = p.series[k];
    svg += "<polyline fill=\"none\" stroke-width=\"1.3\" stroke=\"";
    svg += color(k);
    svg += "\" points=\"";
    for (std::size_t i = 0; i < n; i += stride) {
      svg += num(sx(t[i])) + "," + num(sy(s.y[i])) + " ";
    }
    if ((n - 1) % stride != 0) svg += num(sx(t[n - 1])) + "," + num(sy(s.y[n - 1]));
    svg += "\"/>\n";
  }

  const double lx = x_left + w + 12;
  if (p.series.size() <= 8) {
    for (std::size_t k = 0; k < p.series.size(); ++k) {
      const double ly = y_top + 10 + 18.0 * static_cast<double>(k);
      svg += "<line x1=\"" + num(lx) + "\" y1=\"" + num(ly) + "\" x2=\"" + num(lx + 18) +
             "\" y2=\"" + num(ly) + "\" stroke=\"" + color(k) + "\" stroke-width=\"2\"/>\n";
      svg += "<text x=\"" + num(lx + 24) + "\" y=\"" + num(ly + 4) + "\" font-size=\"12\">" +
             escape(p.series[k].name) + "</text>\n";
    }
  } else {
    svg += "<text x=\"" + num(lx) + "\" y=\"" + num(y_top + 14) + "\" font-size=\"12\">" +
           std::to_string(p.series.size()) + " components</text>\n";
  }
}

void write_figure(const std::filesystem::path& path, const std::vector<double>& t,
                  const std::vector<Panel>& panels) {
  const double height = kPanelHeight * static_cast<double>(panels.size());
  std::string svg = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) + "\" height=\"" +
         num(height) + "\" viewBox=\"0 0 " + num(kWidth) + " " + num(height) +
         "\" font-family=\"sans-serif\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (std::size_t i = 0; i < panels.size(); ++i) {
    draw_panel(svg, panels[i], t, kPanelHeight * static_cast<double>(i));
  }
  svg += "</svg>\n";
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << svg;
  if (!out) throw IoError("error writing " + path.string());
}

template <typename Get>
std::vector<Series> components(const TrajectoryLog& log, const std::vector<std::string>& names,
                               Get get) {
  std::vector<Series> out(names.size());
  for (std::size_t k = 0; k < names.size(); ++k) {
    out[k].name = names[k];
    out[k].y.reserve(log.size());
  }
  for (const TrajectoryRecord& r : log.records) {
    const auto v = get(r);
    for (std::size_t k = 0; k < names.size(); ++k) {
      out[k].y.push_back(v(static_cast<Eigen::Index>(k)));
    }
  }
  return out;
}

const std::vector<std::string> kXyz{"x", "y", "z"};

std::vector<std::string> indexed(const std::string& stem, int n) {
  std::vector<std::string> out;
  for (int i = 0; i < n; ++i) out.push_back(stem + std::to_string(i));
  return out;
}

}  // namespace

std::vector<std::filesystem::path> write_plots(const TrajectoryLog& log,
                                               const SatelliteTruth<double>& truth,
                                               const std::filesystem::path& dir) {
  if (log.empty()) throw std::invalid_argument("write_plots: non-empty log required");
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());

  std::vector<double> t;
  t.reserve(log.size());
  for (const TrajectoryRecord& r : log.records) t.push_back(r.t);

  std::vector<std::filesystem::path> written;
  auto emit = [&](const std::string& name, const std::vector<Panel>& panels) {
    const std::filesystem::path path = dir / name;
    write_figure(path, t, panels);
    written.push_back(path);
  };

  for (LinkId id : {LinkId::link1, LinkId::link2}) {
    const bool first = id == LinkId::link1;
    const std::string tug = first ? "tug-1" : "tug-2";
    auto wrench = [first](const TrajectoryRecord& r) { return first ? r.tug1 : r.tug2; };
    emit(std::string(first ? "tug1" : "tug2") + "_wrench.svg",
         {{"Force applied by " + tug, "force [N]",
           components(log, kXyz, [&](const auto& r) { return wrench(r).force; })},
          {"Torque applied by " + tug, "torque [N m]",
           components(log, kXyz, [&](const auto& r) { return wrench(r).torque; })}});
  }

  emit("link_angular_velocity.svg",
       {{"Angular velocity of Link-1", "omega [rad/s]",
         components(log, kXyz, [](const auto& r) { return r.state.omega_l1; })},
        {"Angular velocity of Link-2", "omega [rad/s]",
         components(log, kXyz, [](const auto& r) { return r.state.omega_l2; })}});

  emit("linear_velocity.svg",
       {{"Linear velocity at the measurement point", "v [m/s]",
         components(log, kXyz, [](const auto& r) { return r.state.v; })}});

  emit("lyapunov.svg",
       {{"Lyapunov function", "V",
         components(log, {"V"}, [](const auto& r) { return Eigen::Matrix<double, 1, 1>(r.lyapunov); })}});

  emit("phi_hat.svg",
       {{"Parameter estimates, tug-1", "phi_hat",
         components(log, indexed("phi", kNumParams), [](const auto& r) { return r.estimate1.phi; })},
        {"Parameter estimates, tug-2", "phi_hat",
         components(log, indexed("phi", kNumParams), [](const auto& r) { return r.estimate2.phi; })}});

  emit("d_hat.svg",
       {{"Grasp offset estimate, tug-1", "d_hat [m]",
         components(log, kXyz, [](const auto& r) { return r.estimate1.d; })},
        {"Grasp offset estimate, tug-2", "d_hat [m]",
         components(log, kXyz, [](const auto& r) { return r.estimate2.d; })}});

  // a tug rigidly holds its grasp point: its twist is the link's twist
  // transported from P to the grasp point
  auto grasp_velocity = [&truth](const TrajectoryRecord& r, LinkId id) {
    const SpatialState<double>& s = r.state;
    return Vec3<double>(s.v + s.omega(id).cross(s.rotation(id) * truth.grasp(id)));
  };
  emit("tug_twists.svg",
       {{"Linear velocity of tug-1", "v [m/s]",
         components(log, kXyz, [&](const auto& r) { return grasp_velocity(r, LinkId::link1); })},
        {"Angular velocity of tug-1", "omega [rad/s]",
         components(log, kXyz, [](const auto& r) { return r.state.omega_l1; })},
        {"Linear velocity of tug-2", "v [m/s]",
         components(log, kXyz, [&](const auto& r) { return grasp_velocity(r, LinkId::link2); })},
        {"Angular velocity of tug-2", "omega [rad/s]",
         components(log, kXyz, [](const auto& r) { return r.state.omega_l2; })}});
  return written;
}

}  // namespace tugsim
