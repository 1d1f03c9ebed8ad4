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

// Acceptance checks for the detumbling simulator. Prints one PASS/FAIL line
// per criterion and exits nonzero if any criterion fails.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "tugsim/scenario_runner.hpp"
#include "tugsim/trajectory_output.hpp"

namespace {

using namespace tugsim;
using V3 = Vec3<double>;
using State = SpatialState<double>;

constexpr double kRateTol = 0.05;
constexpr double kWrenchFraction = 0.05;

int failures = 0;

void report(int id, bool pass, const std::string& what, const std::string& detail) {
  std::printf("criterion %d %s: %s (%s)\n", id, pass ? "PASS" : "FAIL", what.c_str(),
              detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Vec6<double> abs_wrench(const Wrench<double>& w) { return w.stacked().cwiseAbs(); }

struct ConvergenceStats {
  double w1 = 0, w2 = 0, v = 0;
  double worst_wrench_ratio = 0;  // max over components of |final| / peak
  // Earliest time after which the rate and wrench thresholds hold to the end.
  double settle_time = INFINITY;
};

ConvergenceStats convergence(const TrajectoryLog& log) {
  ConvergenceStats c;
  Vec6<double> peak1 = Vec6<double>::Zero(), peak2 = Vec6<double>::Zero();
  for (const TrajectoryRecord& r : log.records) {
    peak1 = peak1.cwiseMax(abs_wrench(r.tug1));
    peak2 = peak2.cwiseMax(abs_wrench(r.tug2));
  }
  const TrajectoryRecord& f = log.records.back();
  c.w1 = f.state.omega_l1.norm();
  c.w2 = f.state.omega_l2.norm();
  c.v = f.state.v.norm();
  for (int k = 0; k < 6; ++k) {
    c.worst_wrench_ratio = std::max({c.worst_wrench_ratio, abs_wrench(f.tug1)(k) / peak1(k),
                                     abs_wrench(f.tug2)(k) / peak2(k)});
  }
  for (std::size_t i = log.size(); i-- > 0;) {
    const TrajectoryRecord& r = log.records[i];
    const bool ok = r.state.omega_l1.norm() < kRateTol && r.state.omega_l2.norm() < kRateTol &&
                    r.state.v.norm() < kRateTol &&
                    (abs_wrench(r.tug1).array() < kWrenchFraction * peak1.array()).all() &&
                    (abs_wrench(r.tug2).array() < kWrenchFraction * peak2.array()).all();
    if (!ok) break;
    c.settle_time = r.t;
  }
  return c;
}

bool converged(const ConvergenceStats& c) {
  return c.w1 < kRateTol && c.w2 < kRateTol && c.v < kRateTol &&
         c.worst_wrench_ratio < kWrenchFraction;
}

Scenario perfect_knowledge(Scenario s) {
  s.estimate1 = {true_parameters(s.truth, LinkId::link1), s.truth.grasp1};
  s.estimate2 = {true_parameters(s.truth, LinkId::link2), s.truth.grasp2};
  s.adaptation_enabled = false;
  return s;
}

DesiredMotion<double> random_desired(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  auto vec = [&] { return V3(n(rng), n(rng), n(rng)); };
  DesiredMotion<double> d;
  d.p_d = vec();
  d.r_d = exp_so3(V3(vec()));
  d.v_d = vec();
  d.omega_d = vec();
  d.accel_d = {vec(), vec()};
  return d;
}

double state_distance(const State& a, const State& b) {
  return std::sqrt((a.p - b.p).squaredNorm() + (a.r_alpha - b.r_alpha).squaredNorm() +
                   (a.r_beta - b.r_beta).squaredNorm() + (a.v - b.v).squaredNorm() +
                   (a.omega_l1 - b.omega_l1).squaredNorm() +
                   (a.omega_l2 - b.omega_l2).squaredNorm());
}

void criteria_1_2(const TrajectoryLog& log) {
  const ConvergenceStats c = convergence(log);
  report(1, converged(c), "detumbling convergence",
         fmt("|w1| = %.3g, |w2| = %.3g, |v| = %.3g rad/s, m/s (< 0.05); "
             "worst final/peak wrench component = %.3g (< 0.05)",
             c.w1, c.w2, c.v, c.worst_wrench_ratio));

  const DescentSummary d = descent_summary(log);
  const bool step_ok = d.max_increase <= 1e-4 * d.v0;
  const bool final_ok = d.v_final < 0.05 * d.v0;
  report(2, step_ok && final_ok, "Lyapunov descent",
         fmt("max per-step increase = %.3g V(0) (<= 1e-4); V(T)/V(0) = %.4g (< 0.05)",
             d.max_increase / d.v0, d.v_final / d.v0));
}

void criterion_7(const TrajectoryLog& log) {
  double worst = 0.0;
  std::string which;
  const TrajectoryRecord& f = log.records.back();
  auto check = [&](const char* name, double final_norm, auto get) {
    double peak = 0.0;
    for (const TrajectoryRecord& r : log.records) peak = std::max(peak, get(r));
    const double ratio = peak / final_norm;
    if (ratio > worst) {
      worst = ratio;
      which = name;
    }
  };
  check("phi1", f.estimate1.phi.norm(), [](const TrajectoryRecord& r) { return r.estimate1.phi.norm(); });
  check("phi2", f.estimate2.phi.norm(), [](const TrajectoryRecord& r) { return r.estimate2.phi.norm(); });
  check("d1", f.estimate1.d.norm(), [](const TrajectoryRecord& r) { return r.estimate1.d.norm(); });
  check("d2", f.estimate2.d.norm(), [](const TrajectoryRecord& r) { return r.estimate2.d.norm(); });
  report(7, worst < 10.0, "estimate boundedness",
         fmt("worst max/final norm = %.3g for %s (< 10)", worst, which.c_str()));
}

void criterion_3(const Scenario& scn) {
  std::mt19937_64 rng(3);
  const SatelliteTruth<double>& truth = scn.truth;
  double worst_phi = 0.0, worst_d = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const State s = random_state(rng);
    const HingeKinematics<double> hk = relative_rotation(s);
    const V3 tau = s.r_alpha * hinge_wrench(truth.hinge, hk).torque;
    for (LinkId id : {LinkId::link1, LinkId::link2}) {
      const LinkKinematics<double> k = link_kinematics(s, id);
      const ReferenceMotion<double> ref = reference_motion(k, random_desired(rng), scn.gains.gamma);
      const LinkParams<double> link = truth.link(id);
      Vec6<double> rhs = mass_matrix_link(link, k.r) * ref.accel.stacked() +
                         coriolis_link(link, k.r, k.omega, k.v) * ref.velocity.stacked();
      rhs.tail<3>() += hinge_side(id) * tau;
      const Vec6<double> fit = regressor_phi(k, hk, s.r_alpha, ref, id) * true_parameters(truth, id);
      worst_phi = std::max(worst_phi, (fit - rhs).norm());

      std::normal_distribution<double> n(0.0, 1.0);
      const Wrench<double> tug{V3(n(rng), n(rng), n(rng)) * 20.0, V3(n(rng), n(rng), n(rng))};
      const V3 d_hat(n(rng), n(rng), n(rng));
      const Vec6<double> mismatch =
          apply_grasp(GraspMap<double>{k.r, truth.grasp(id)}, tug).stacked() -
          apply_grasp(GraspMap<double>{k.r, d_hat}, tug).stacked();
      worst_d = std::max(worst_d, (regressor_d(tug, k.r) * (d_hat - truth.grasp(id)) - mismatch).norm());
    }
  }
  report(3, worst_phi < 1e-8 && worst_d < 1e-10, "regressor factorization",
         fmt("1000 states x 2 links: max |Y phi - rhs| = %.3g (< 1e-8), "
             "max grasp residual = %.3g (< 1e-10)",
             worst_phi, worst_d));
}

void criterion_4(const Scenario& scn) {
  std::mt19937_64 rng(4);
  double worst_asym = 0.0, min_eig = INFINITY;
  for (int i = 0; i < 1000; ++i) {
    const State s = random_state(rng);
    const Mat6<double> mats[] = {mass_matrix_link(scn.truth.link(LinkId::link1), s.r_alpha),
                                 mass_matrix_link(scn.truth.link(LinkId::link2), s.r_beta),
                                 composite_mass_matrix(scn.truth, s)};
    for (const Mat6<double>& m : mats) {
      worst_asym = std::max(worst_asym, (m - m.transpose()).norm() / m.norm());
      min_eig = std::min(min_eig, check_spd(m).min_eigenvalue);
    }
  }
  report(4, worst_asym < 1e-10 && min_eig > 0.0, "mass-matrix SPD sweep",
         fmt("1000 states: max relative asymmetry = %.3g (< 1e-10), min eigenvalue = %.4g (> 0)",
             worst_asym, min_eig));
}

void criterion_5(const Scenario& scn) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> n(0.0, 1.0);
  const double h = 1e-5;
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const State s = random_state(rng);
    auto shifted = [&](double dt) {
      State x = s;
      x.r_alpha = exp_so3(Vec3<double>(dt * s.omega_l1)) * s.r_alpha;
      x.r_beta = exp_so3(Vec3<double>(dt * s.omega_l2)) * s.r_beta;
      return x;
    };
    const Mat9<double> mdot = (system_mass_matrix(scn.truth, shifted(h)) -
                               system_mass_matrix(scn.truth, shifted(-h))) / (2 * h);
    const Mat9<double> nmat = mdot - 2.0 * system_coriolis(scn.truth, s);
    for (int j = 0; j < 10; ++j) {
      Vec9<double> x;
      for (int k = 0; k < 9; ++k) x(k) = n(rng);
      worst = std::max(worst, std::abs(x.dot(nmat * x)) / (x.squaredNorm() * mdot.norm()));
    }
  }
  report(5, worst < 1e-6, "skew symmetry of Mdot - 2C",
         fmt("100 states: max |x'(Mdot - 2C)x| / (|x|^2 |Mdot|) = %.3g (< 1e-6)", worst));
}

void criterion_6(const Scenario& table1) {
  Scenario s = table1;
  s.tugs_enabled = false;
  s.truth.hinge.damping.setZero();
  s.truth.hinge.friction_torque.setZero();
  s.duration = 10.0;
  s.dt = 1e-3;
  Simulation sim(s);
  const State s0 = sim.state();
  for (int i = 0; i < 10000; ++i) sim.step();
  const State& s1 = sim.state();
  const double dl = (linear_momentum(s.truth, s1) - linear_momentum(s.truth, s0)).norm() /
                    linear_momentum(s.truth, s0).norm();
  const double dh = (angular_momentum(s.truth, s1) - angular_momentum(s.truth, s0)).norm() /
                    angular_momentum(s.truth, s0).norm();
  const double de = std::abs(total_energy(s.truth, s1) - total_energy(s.truth, s0)) /
                    total_energy(s.truth, s0);

  auto integrate = [&](double dt) {
    State x = s0;
    const int n = static_cast<int>(std::lround(2.0 / dt));
    for (int i = 0; i < n; ++i) x = plant_step(s.truth, x, TugWrenches<double>{}, dt);
    return x;
  };
  const State a = integrate(0.04), b = integrate(0.02), c = integrate(0.01);
  const double ratio = state_distance(a, b) / state_distance(b, c);
  const bool pass = dl < 1e-6 && dh < 1e-6 && de < 1e-6 && ratio >= 12.0 && ratio <= 20.0;
  report(6, pass, "free-drift conservation and RK4 order",
         fmt("10 s drift: linear %.3g, angular %.3g, energy %.3g (< 1e-6); "
             "Richardson ratio %.2f (in [12, 20])",
             dl, dh, de, ratio));
}

void criterion_8(const Scenario& scn) {
  auto csv = [&] {
    std::ostringstream out;
    write_csv(run(scn), out);
    return out.str();
  };
  const std::string a = csv(), b = csv();
  report(8, !a.empty() && a == b, "determinism",
         fmt("two runs: %zu and %zu bytes, %s", a.size(), b.size(),
             a == b ? "byte-identical" : "different"));
}

void criterion_9(const Scenario& scn, const TrajectoryLog& adaptive) {
  const ConvergenceStats a = convergence(adaptive);
  const ConvergenceStats p = convergence(run(perfect_knowledge(scn)));
  const bool pass = converged(p) && p.settle_time <= a.settle_time;
  report(9, pass, "perfect-knowledge baseline",
         fmt("thresholds hold from t = %.3f s with perfect knowledge, t = %.3f s adaptive",
             p.settle_time, a.settle_time));
}

}  // namespace

int main() {
  const Scenario scn = table1_scenario();
  const TrajectoryLog log = run(scn);
  criteria_1_2(log);
  criterion_3(scn);
  criterion_4(scn);
  criterion_5(scn);
  criterion_6(scn);
  criterion_7(log);
  criterion_8(scn);
  criterion_9(scn, log);
  std::printf("%d of 9 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
