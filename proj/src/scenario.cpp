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

#include "tugsim/scenario.hpp"

#include <cmath>
#include <string>

#include "tugsim/errors.hpp"

namespace tugsim {

SpatialState<double> InitialConditions::to_state() const {
  SpatialState<double> s;
  s.p = position;
  s.v = velocity;
  s.r_alpha = exp_so3(attitude_link1);
  s.r_beta = exp_so3(attitude_link2);
  s.omega_l1 = omega_link1;
  s.omega_l2 = omega_link2;
  return s;
}

namespace {

void require_finite(const Eigen::Ref<const Eigen::MatrixXd>& m, const std::string& key) {
  if (!m.allFinite()) throw ValidationError(key + ": finite values required");
}

void require_nonnegative(double x, const std::string& key) {
  if (!(x >= 0.0) || !std::isfinite(x)) throw ValidationError(key + ": >= 0 violated");
}

}  // namespace

void validate(const Scenario& scn) {
  validate(scn.truth);
  validate(scn.gains);
  if (!(scn.duration > 0.0) || !std::isfinite(scn.duration)) {
    throw ValidationError("simulation.duration_s: duration > 0 violated");
  }
  if (!(scn.dt > 0.0 && scn.dt <= 0.01)) {
    throw ValidationError("simulation.dt_s: 0 < dt <= 0.01 violated");
  }
  if (scn.dt > scn.duration) {
    throw ValidationError("simulation.dt_s: dt <= duration violated");
  }
  require_finite(scn.initial.position, "initial.position_m");
  require_finite(scn.initial.velocity, "initial.velocity_mps");
  require_finite(scn.initial.attitude_link1, "initial.attitude1_rotvec_rad");
  require_finite(scn.initial.attitude_link2, "initial.attitude2_rotvec_rad");
  require_finite(scn.initial.omega_link1, "initial.omega1_radps");
  require_finite(scn.initial.omega_link2, "initial.omega2_radps");
  require_finite(scn.estimate1.phi, "estimate.tug1.phi");
  require_finite(scn.estimate1.d, "estimate.tug1.grasp_m");
  require_finite(scn.estimate2.phi, "estimate.tug2.phi");
  require_finite(scn.estimate2.d, "estimate.tug2.grasp_m");
  require_nonnegative(scn.noise.position_std, "noise.position_std_m");
  require_nonnegative(scn.noise.attitude_std, "noise.attitude_std_rad");
  require_nonnegative(scn.noise.velocity_std, "noise.velocity_std_mps");
  require_nonnegative(scn.noise.omega_std, "noise.omega_std_radps");
  if (scn.csv_file.empty()) throw ValidationError("output.csv_file: non-empty name required");
}

ControllerGains<double> default_gains() {
  ControllerGains<double> g;
  Vec6<double> kpd;
  kpd << 60, 60, 60, 20, 20, 20;
  g.k_pd = kpd.asDiagonal();
  // per column group: rigid-body inertial parameters adapt fast, hinge
  // parameters slower, Coulomb friction slowest (its regressor is a sign)
  ParamVec<double> gp;
  gp.head<10>().setConstant(50.0);
  gp.segment<6>(param::kDamping).setConstant(5.0);
  gp.tail<6>().setConstant(0.1);
  g.gamma_phi = gp.asDiagonal();
  g.gamma_d = 0.5 * Mat3<double>::Identity();
  g.gamma = 0.5;
  return g;
}

Scenario table1_scenario() {
  Scenario scn;
  SatelliteTruth<double>& t = scn.truth;
  t.link1.mass = 40.0;
  t.link1.inertia_cm = Vec3<double>(2.5667, 2.5667, 1.6667).asDiagonal();
  t.link1.offset = Vec3<double>(-1.2, 0.2, -0.1);
  t.link2.mass = 10.0;
  t.link2.inertia_cm = Vec3<double>(1.8104, 3.4771, 3.6833).asDiagonal();
  t.link2.offset = Vec3<double>(0.74, 0.1, -0.2);
  t.rotor_inertia = Vec3<double>(6.0, 4.0, 4.0).asDiagonal();
  t.hinge.stiffness = Vec3<double>(0.5, 0.25, 5.0);
  t.hinge.damping = Vec3<double>(0.4, 0.2, 4.0);
  t.hinge.friction_torque = Vec3<double>(0.05, 0.05, 0.05);
  t.grasp1 = Vec3<double>(0.36, -0.13, -0.44);
  t.grasp2 = Vec3<double>(-1.0, -0.25, -0.3);

  scn.gains = default_gains();
  scn.initial.velocity = Vec3<double>(-1.0, 0.9, 0.8);
  scn.initial.omega_link1 = Vec3<double>(0.7, 0.8, -1.0);
  scn.initial.omega_link2 = Vec3<double>(1.0, 0.5, -1.7);
  return scn;
}

}  // namespace tugsim
