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

#include "tugsim/scenario_runner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <utility>

#include "tugsim/errors.hpp"

namespace tugsim {

namespace {

constexpr LinkId kLinks[] = {LinkId::link1, LinkId::link2};

struct Derivative {
  Vec3<double> p_dot;
  Mat3<double> r_alpha_dot;
  Mat3<double> r_beta_dot;
  Vec3<double> v_dot;
  Vec3<double> w1_dot;
  Vec3<double> w2_dot;
};

// Stage states carry non-orthonormal rotations; the vector field is evaluated
// at their polar projection, which leaves it unchanged on SO(3).
Derivative derivative(const SatelliteTruth<double>& truth, const SpatialState<double>& x,
                      const TugWrenches<double>& tugs) {
  SpatialState<double> s = x;
  s.r_alpha = orthonormalize(x.r_alpha);
  s.r_beta = orthonormalize(x.r_beta);
  const ForwardDynamicsResult<double> fd = forward_dynamics(truth, s, tugs);
  return {s.v, skew(s.omega_l1) * s.r_alpha, skew(s.omega_l2) * s.r_beta,
          fd.accel.v_dot, fd.accel.omega_dot_l1, fd.accel.omega_dot_l2};
}

SpatialState<double> advance(const SpatialState<double>& x, const Derivative& d, double h) {
  SpatialState<double> out = x;
  out.p += h * d.p_dot;
  out.r_alpha += h * d.r_alpha_dot;
  out.r_beta += h * d.r_beta_dot;
  out.v += h * d.v_dot;
  out.omega_l1 += h * d.w1_dot;
  out.omega_l2 += h * d.w2_dot;
  return out;
}

DesiredMotion<double> hold_initial(const SpatialState<double>& s0, LinkId id) {
  DesiredMotion<double> d;
  d.p_d = s0.p;
  d.r_d = s0.rotation(id);
  return d;
}

std::string at_time(double t) {
  std::ostringstream os;
  os.precision(6);
  os << " at t = " << t << " s";
  return os.str();
}

double total_lyapunov(const SatelliteTruth<double>& truth, const SpatialState<double>& s,
                      const TugController<double>& c1, const TugController<double>& c2) {
  double v = 0.0;
  for (const TugController<double>* c : {&c1, &c2}) {
    const LinkId id = c->link();
    const CompositeError<double> e =
        composite_error(link_kinematics(s, id), c->desired(), c->gains().gamma);
    v += lyapunov_value(e, mass_matrix_link(truth.link(id), s.rotation(id)), c->estimate(),
                        true_parameters(truth, id), truth.grasp(id), c->gains());
  }
  return v;
}

}  // namespace

SpatialState<double> plant_step(const SatelliteTruth<double>& truth,
                                const SpatialState<double>& state,
                                const TugWrenches<double>& tugs, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("plant_step: dt > 0 violated");
  const Derivative k1 = derivative(truth, state, tugs);
  const Derivative k2 = derivative(truth, advance(state, k1, 0.5 * dt), tugs);
  const Derivative k3 = derivative(truth, advance(state, k2, 0.5 * dt), tugs);
  const Derivative k4 = derivative(truth, advance(state, k3, dt), tugs);

  SpatialState<double> out = state;
  const double w = dt / 6.0;
  out.p += w * (k1.p_dot + 2.0 * k2.p_dot + 2.0 * k3.p_dot + k4.p_dot);
  out.r_alpha += w * (k1.r_alpha_dot + 2.0 * k2.r_alpha_dot + 2.0 * k3.r_alpha_dot +
                      k4.r_alpha_dot);
  out.r_beta +=
      w * (k1.r_beta_dot + 2.0 * k2.r_beta_dot + 2.0 * k3.r_beta_dot + k4.r_beta_dot);
  out.v += w * (k1.v_dot + 2.0 * k2.v_dot + 2.0 * k3.v_dot + k4.v_dot);
  out.omega_l1 += w * (k1.w1_dot + 2.0 * k2.w1_dot + 2.0 * k3.w1_dot + k4.w1_dot);
  out.omega_l2 += w * (k1.w2_dot + 2.0 * k2.w2_dot + 2.0 * k3.w2_dot + k4.w2_dot);
  out.r_alpha = orthonormalize(out.r_alpha);
  out.r_beta = orthonormalize(out.r_beta);
  return out;
}

// ---------------------------------------------------------------------------

Simulation::Simulation(const Scenario& scn)
    : scn_(scn),
      state_(scn.initial.to_state()),
      tug1_(LinkId::link1, scn.gains, hold_initial(state_, LinkId::link1), scn.estimate1),
      tug2_(LinkId::link2, scn.gains, hold_initial(state_, LinkId::link2), scn.estimate2),
      rng_(scn.seed) {
  validate(scn_);
}

SpatialState<double> Simulation::measure() {
  if (!scn_.noise.enabled) return state_;
  std::normal_distribution<double> n01(0.0, 1.0);
  auto noise = [&](double sd) { return Vec3<double>(sd * n01(rng_), sd * n01(rng_), sd * n01(rng_)); };
  SpatialState<double> m = state_;
  m.p += noise(scn_.noise.position_std);
  m.r_alpha = exp_so3(noise(scn_.noise.attitude_std)) * m.r_alpha;
  m.r_beta = exp_so3(noise(scn_.noise.attitude_std)) * m.r_beta;
  m.v += noise(scn_.noise.velocity_std);
  m.omega_l1 += noise(scn_.noise.omega_std);
  m.omega_l2 += noise(scn_.noise.omega_std);
  return m;
}

Simulation::Commands Simulation::command(const SpatialState<double>& measured) const {
  Commands c{tug1_.command(measured), tug2_.command(measured)};
  if (!scn_.tugs_enabled) {
    c.tug1.at_point = c.tug1.tug = Wrench<double>{};
    c.tug2.at_point = c.tug2.tug = Wrench<double>{};
    c.tug1.y_d.setZero();
    c.tug2.y_d.setZero();
  }
  return c;
}

TrajectoryRecord Simulation::make_record(const Commands& cmd) const {
  TrajectoryRecord r;
  r.t = t_;
  r.state = state_;
  r.hinge = relative_rotation(state_);
  r.tug1 = cmd.tug1.tug;
  r.tug2 = cmd.tug2.tug;
  r.s1 = composite_error(link_kinematics(state_, LinkId::link1), tug1_.desired(),
                         scn_.gains.gamma);
  r.s2 = composite_error(link_kinematics(state_, LinkId::link2), tug2_.desired(),
                         scn_.gains.gamma);
  r.lyapunov = lyapunov();
  r.estimate1 = tug1_.estimate();
  r.estimate2 = tug2_.estimate();
  return r;
}

double Simulation::lyapunov() const {
  return total_lyapunov(scn_.truth, state_, tug1_, tug2_);
}

TrajectoryRecord Simulation::snapshot() {
  return make_record(command(measure()));
}

TrajectoryRecord Simulation::step() {
  const Commands cmd = command(measure());
  TrajectoryRecord rec = make_record(cmd);
  try {
    state_ = plant_step(scn_.truth, state_, TugWrenches<double>{cmd.tug1.tug, cmd.tug2.tug},
                        scn_.dt);
  } catch (const NumericalError& e) {
    throw NumericalError(std::string(e.what()) + at_time(t_));
  }
  if (scn_.adaptation_enabled && scn_.tugs_enabled) {
    tug1_.adapt(cmd.tug1, scn_.dt);
    tug2_.adapt(cmd.tug2, scn_.dt);
  }
  ++steps_;
  t_ = static_cast<double>(steps_) * scn_.dt;
  if (!state_.all_finite() || !tug1_.estimate().phi.allFinite() ||
      !tug2_.estimate().phi.allFinite() || !tug1_.estimate().d.allFinite() ||
      !tug2_.estimate().d.allFinite()) {
    throw NumericalError("non-finite state" + at_time(t_));
  }
  return rec;
}

TrajectoryLog run(const Scenario& scn) {
  Simulation sim(scn);
  const auto n = static_cast<std::size_t>(std::llround(scn.duration / scn.dt));
  TrajectoryLog log;
  log.records.reserve(n + 1);
  for (std::size_t k = 0; k < n; ++k) log.records.push_back(sim.step());
  log.records.push_back(sim.snapshot());
  return log;
}

// ---------------------------------------------------------------------------
// Diagnostics

bool DiagnosticReport::all_passed() const {
  return std::all_of(entries.begin(), entries.end(),
                     [](const DiagnosticEntry& e) { return e.passed; });
}

namespace {

Vec3<double> random_unit(std::mt19937_64& rng) {
  std::normal_distribution<double> n01(0.0, 1.0);
  Vec3<double> u(n01(rng), n01(rng), n01(rng));
  return u / u.norm();
}

Mat3<double> random_rotation(std::mt19937_64& rng) {
  std::normal_distribution<double> n01(0.0, 1.0);
  Eigen::Quaterniond q(n01(rng), n01(rng), n01(rng), n01(rng));
  q.normalize();
  return q.toRotationMatrix();
}

Vec3<double> random_vec(std::mt19937_64& rng, double scale) {
  std::uniform_real_distribution<double> u(-scale, scale);
  return {u(rng), u(rng), u(rng)};
}

DesiredMotion<double> random_desired(std::mt19937_64& rng) {
  DesiredMotion<double> d;
  d.p_d = random_vec(rng, 1.0);
  d.r_d = random_rotation(rng);
  d.v_d = random_vec(rng, 1.0);
  d.omega_d = random_vec(rng, 1.0);
  d.accel_d.linear = random_vec(rng, 1.0);
  d.accel_d.angular = random_vec(rng, 1.0);
  return d;
}

double relative_asymmetry(const Eigen::Ref<const Eigen::MatrixXd>& m) {
  return (m - m.transpose()).norm() / m.norm();
}

DiagnosticEntry spd_sweep(const SatelliteTruth<double>& truth, int n, std::mt19937_64& rng) {
  DiagnosticEntry e{"mass_matrix_spd", true, 0.0, 1e-10, ""};
  double min_eig = std::numeric_limits<double>::infinity();
  double worst_asym = 0.0;
  for (int i = 0; i < n; ++i) {
    const SpatialState<double> s = random_state(rng);
    const Mat6<double> mb = mass_matrix_link(truth.link1, s.r_alpha);
    const Mat6<double> ms = mass_matrix_link(truth.link(LinkId::link2), s.r_beta);
    const Mat6<double> mnu = composite_mass_matrix(truth, s);
    const Mat9<double> m9 = system_mass_matrix(truth, s);
    for (const Eigen::MatrixXd& m :
         {Eigen::MatrixXd(mb), Eigen::MatrixXd(ms), Eigen::MatrixXd(mnu), Eigen::MatrixXd(m9)}) {
      worst_asym = std::max(worst_asym, relative_asymmetry(m));
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(0.5 * (m + m.transpose()),
                                                          Eigen::EigenvaluesOnly);
      min_eig = std::min(min_eig, eig.eigenvalues().minCoeff());
    }
  }
  e.worst = worst_asym;
  e.passed = worst_asym < e.threshold && min_eig > 0.0;
  std::ostringstream os;
  os.precision(6);
  os << "min eigenvalue " << min_eig;
  e.detail = os.str();
  return e;
}

// The regressor against the plant's own inverse dynamics evaluated along the
// reference motion: M(q) nu_r_dot + C(q, nu) nu_r + side * R_alpha * tau.
std::pair<DiagnosticEntry, DiagnosticEntry> factorization_sweep(
    const SatelliteTruth<double>& truth, double gamma, int n, std::mt19937_64& rng) {
  DiagnosticEntry phi{"regressor_factorization", true, 0.0, 1e-8, ""};
  DiagnosticEntry grasp{"grasp_regressor_identity", true, 0.0, 1e-10, ""};
  for (int i = 0; i < n; ++i) {
    const SpatialState<double> s = random_state(rng);
    const HingeKinematics<double> hk = relative_rotation(s);
    const Vec3<double> tau = s.r_alpha * hinge_wrench(truth.hinge, hk).torque;
    for (LinkId id : kLinks) {
      const DesiredMotion<double> des = random_desired(rng);
      const LinkKinematics<double> k = link_kinematics(s, id);
      const ReferenceMotion<double> ref = reference_motion(k, des, gamma);
      const LinkParams<double> link = truth.link(id);
      Vec6<double> rhs = mass_matrix_link(link, k.r) * ref.accel.stacked() +
                         coriolis_link(link, k.r, k.omega, k.v) * ref.velocity.stacked();
      rhs.tail<3>() += hinge_side(id) * tau;
      const Vec6<double> fit =
          regressor_phi(k, hk, s.r_alpha, ref, id) * true_parameters(truth, id);
      phi.worst = std::max(phi.worst, (fit - rhs).norm());

      const Wrench<double> w{random_vec(rng, 10.0), random_vec(rng, 10.0)};
      const Vec3<double> d_hat = truth.grasp(id) + random_vec(rng, 0.5);
      const Vec6<double> lhs = regressor_d(w, k.r) * (d_hat - truth.grasp(id));
      const Vec6<double> g_true =
          grasp_matrix(GraspMap<double>{k.r, truth.grasp(id)}) * w.stacked();
      const Vec6<double> g_hat = grasp_matrix(GraspMap<double>{k.r, d_hat}) * w.stacked();
      grasp.worst = std::max(grasp.worst, (lhs + (g_hat - g_true)).norm());
    }
  }
  phi.passed = phi.worst < phi.threshold;
  grasp.passed = grasp.worst < grasp.threshold;
  return {phi, grasp};
}

// x^T (M_dot - 2C) x with M_dot by central differences along the motion.
DiagnosticEntry skew_sweep(const SatelliteTruth<double>& truth, int n, std::mt19937_64& rng) {
  DiagnosticEntry e{"skew_symmetry", true, 0.0, 1e-6, ""};
  const double h = 1e-5;
  for (int i = 0; i < n; ++i) {
    const SpatialState<double> s = random_state(rng);
    SpatialState<double> fwd = s;
    SpatialState<double> bwd = s;
    fwd.r_alpha = exp_so3(Vec3<double>(h * s.omega_l1)) * s.r_alpha;
    fwd.r_beta = exp_so3(Vec3<double>(h * s.omega_l2)) * s.r_beta;
    bwd.r_alpha = exp_so3(Vec3<double>(-h * s.omega_l1)) * s.r_alpha;
    bwd.r_beta = exp_so3(Vec3<double>(-h * s.omega_l2)) * s.r_beta;
    const Mat9<double> mdot =
        (system_mass_matrix(truth, fwd) - system_mass_matrix(truth, bwd)) / (2.0 * h);
    const Mat9<double> n9 = mdot - 2.0 * system_coriolis(truth, s);
    Vec9<double> x;
    std::normal_distribution<double> n01(0.0, 1.0);
    for (int j = 0; j < 9; ++j) x(j) = n01(rng);
    const double scale = x.squaredNorm() * std::max(mdot.norm(), 1e-300);
    e.worst = std::max(e.worst, std::abs(x.dot(n9 * x)) / scale);
  }
  e.passed = e.worst < e.threshold;
  return e;
}

DiagnosticEntry conservation_check(const Scenario& scn) {
  DiagnosticEntry e{"free_drift_conservation", true, 0.0, 1e-6, ""};
  SatelliteTruth<double> truth = scn.truth;
  truth.hinge.damping.setZero();
  truth.hinge.friction_torque.setZero();
  SpatialState<double> s = scn.initial.to_state();
  const double dt = 1e-3;
  const int n = 10000;
  const double e0 = total_energy(truth, s);
  const Vec3<double> l0 = linear_momentum(truth, s);
  const Vec3<double> h0 = angular_momentum(truth, s);
  double de = 0.0, dl = 0.0, dh = 0.0;
  for (int k = 0; k < n; ++k) {
    s = plant_step(truth, s, TugWrenches<double>{}, dt);
    de = std::max(de, std::abs(total_energy(truth, s) - e0) / e0);
    dl = std::max(dl, (linear_momentum(truth, s) - l0).norm() / std::max(l0.norm(), 1e-300));
    dh = std::max(dh, (angular_momentum(truth, s) - h0).norm() / std::max(h0.norm(), 1e-300));
  }
  e.worst = std::max({de, dl, dh});
  e.passed = e.worst < e.threshold;
  std::ostringstream os;
  os.precision(3);
  os << "energy " << de << ", linear momentum " << dl << ", angular momentum " << dh;
  e.detail = os.str();
  return e;
}

}  // namespace

SpatialState<double> random_state(std::mt19937_64& rng, double max_deflection) {
  std::uniform_real_distribution<double> angle(0.0, max_deflection);
  SpatialState<double> s;
  s.p = random_vec(rng, 1.0);
  s.r_alpha = random_rotation(rng);
  s.r_beta = s.r_alpha * exp_so3(Vec3<double>(angle(rng) * random_unit(rng)));
  s.v = random_vec(rng, 1.0);
  s.omega_l1 = random_vec(rng, 1.0);
  s.omega_l2 = random_vec(rng, 1.0);
  return s;
}

DescentSummary descent_summary(const TrajectoryLog& log) {
  DescentSummary d;
  if (log.empty()) return d;
  d.v0 = log.records.front().lyapunov;
  d.v_final = log.records.back().lyapunov;
  for (std::size_t k = 1; k < log.size(); ++k) {
    d.max_increase =
        std::max(d.max_increase, log.records[k].lyapunov - log.records[k - 1].lyapunov);
  }
  return d;
}

DiagnosticReport diagnostics(const Scenario& scn, int n_samples) {
  if (n_samples < 1) throw ValidationError("samples: n >= 1 violated");
  validate(scn);
  std::mt19937_64 rng(scn.seed);
  DiagnosticReport report;
  report.entries.push_back(spd_sweep(scn.truth, n_samples, rng));
  auto [phi, grasp] = factorization_sweep(scn.truth, scn.gains.gamma, n_samples, rng);
  report.entries.push_back(phi);
  report.entries.push_back(grasp);
  report.entries.push_back(skew_sweep(scn.truth, n_samples, rng));
  report.entries.push_back(conservation_check(scn));

  DiagnosticEntry descent{"lyapunov_descent", true, 0.0, 1e-4, ""};
  try {
    const DescentSummary d = descent_summary(run(scn));
    descent.worst = d.v0 > 0.0 ? d.max_increase / d.v0 : 0.0;
    descent.passed = descent.worst < descent.threshold;
    std::ostringstream os;
    os.precision(6);
    os << "V(0) " << d.v0 << ", V(T) " << d.v_final;
    descent.detail = os.str();
  } catch (const NumericalError& err) {
    descent.passed = false;
    descent.detail = err.what();
  }
  report.entries.push_back(descent);
  return report;
}

}  // namespace tugsim
