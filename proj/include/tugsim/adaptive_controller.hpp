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

// Decentralized adaptive feedback-linearizing PD law. Each tug runs one
// instance on the link it holds. The instance sees measured kinematics only;
// SatelliteTruth appears here solely for the simulation-side diagnostics
// (true parameter vector and Lyapunov value).

#pragma once

#include <utility>

#include "tugsim/errors.hpp"
#include "tugsim/grasp.hpp"
#include "tugsim/satellite_plant.hpp"
#include "tugsim/spatial_math.hpp"

namespace tugsim {

inline constexpr int kNumParams = 22;

template <typename Scalar> using ParamVec = Eigen::Matrix<Scalar, kNumParams, 1>;
template <typename Scalar> using ParamMat = Eigen::Matrix<Scalar, kNumParams, kNumParams>;
template <typename Scalar> using Regressor = Eigen::Matrix<Scalar, 6, kNumParams>;
template <typename Scalar> using GraspRegressor = Eigen::Matrix<Scalar, 6, 3>;

/// Column groups of the 6x22 regressor (widths 1,3,3,3,3,3,3,3).
namespace param {
inline constexpr int kMass = 0;
inline constexpr int kFirstMoment = 1;      // m * d, link frame
inline constexpr int kInertiaDiag = 4;      // Ixx Iyy Izz about P, link frame
inline constexpr int kInertiaCoupling = 7;  // Ixy Ixz Iyz
inline constexpr int kDamping = 10;
inline constexpr int kStiffness = 13;
inline constexpr int kFrictionTorque = 16;
inline constexpr int kFrictionForce = 19;
}  // namespace param

template <typename Scalar>
struct ControllerGains {
  Mat6<Scalar> k_pd = Mat6<Scalar>::Identity();
  ParamMat<Scalar> gamma_phi = ParamMat<Scalar>::Identity();
  Mat3<Scalar> gamma_d = Mat3<Scalar>::Identity();
  Scalar gamma = Scalar(0.5);
};

template <typename Scalar>
void validate(const ControllerGains<Scalar>& g) {
  auto spd = [](const auto& m) { return check_spd(m).spd; };
  if (!spd(g.k_pd)) throw ValidationError("gains.K_PD: symmetric positive definite required");
  if (!spd(g.gamma_phi)) throw ValidationError("gains.Gamma_phi: symmetric positive definite required");
  if (!spd(g.gamma_d)) throw ValidationError("gains.Gamma_d: symmetric positive definite required");
  if (!(g.gamma > Scalar(0) && g.gamma < Scalar(1))) {
    throw ValidationError("gains.gamma: 0 < gamma < 1 violated");
  }
}

/// One tug's estimate: its link's 22 parameters and its grasp offset.
template <typename Scalar>
struct TugEstimate {
  ParamVec<Scalar> phi = ParamVec<Scalar>::Zero();
  Vec3<Scalar> d = Vec3<Scalar>::Zero();
};

template <typename Scalar>
struct CompositeError {
  Vec3<Scalar> epsilon = Vec3<Scalar>::Zero();
  Vec3<Scalar> o = Vec3<Scalar>::Zero();

  Vec6<Scalar> stacked() const {
    Vec6<Scalar> out;
    out << epsilon, o;
    return out;
  }
};

template <typename Scalar>
struct DesiredMotion {
  Vec3<Scalar> p_d = Vec3<Scalar>::Zero();
  Mat3<Scalar> r_d = Mat3<Scalar>::Identity();
  Vec3<Scalar> v_d = Vec3<Scalar>::Zero();
  Vec3<Scalar> omega_d = Vec3<Scalar>::Zero();
  Accel6<Scalar> accel_d{};
};

/// What one tug measures about its own link at P.
template <typename Scalar>
struct LinkKinematics {
  Vec3<Scalar> p = Vec3<Scalar>::Zero();
  Vec3<Scalar> v = Vec3<Scalar>::Zero();
  Mat3<Scalar> r = Mat3<Scalar>::Identity();
  Vec3<Scalar> omega = Vec3<Scalar>::Zero();
};

template <typename Scalar>
LinkKinematics<Scalar> link_kinematics(const SpatialState<Scalar>& s, LinkId id) {
  return {s.p, s.v, s.rotation(id), s.omega(id)};
}

/// nu_r = nu - s and its time derivative.
template <typename Scalar>
struct ReferenceMotion {
  Twist6<Scalar> velocity;
  Accel6<Scalar> accel;
};

/// 1/2 gamma R_d vee(R_e - R_e^T), R_e = R_d^T R.
template <typename Scalar>
Vec3<Scalar> attitude_error_term(const Mat3<Scalar>& r, const Mat3<Scalar>& r_d,
                                 Scalar gamma) {
  const Mat3<Scalar> re = r_d.transpose() * r;
  return Scalar(0.5) * gamma * r_d * vee(Mat3<Scalar>(re - re.transpose()));
}

/// d/dt of attitude_error_term with R_dot = skew(omega) R and
/// R_d_dot = skew(omega_d) R_d.
template <typename Scalar>
Vec3<Scalar> attitude_error_rate(const Mat3<Scalar>& r, const Vec3<Scalar>& omega,
                                 const Mat3<Scalar>& r_d, const Vec3<Scalar>& omega_d,
                                 Scalar gamma) {
  const Mat3<Scalar> re = r_d.transpose() * r;
  const Vec3<Scalar> u = r_d.transpose() * (omega - omega_d);
  const Vec3<Scalar> dvee =
      (re.trace() * Mat3<Scalar>::Identity() - re) * u;
  return omega_d.cross(attitude_error_term(r, r_d, gamma)) +
         Scalar(0.5) * gamma * r_d * dvee;
}

/// s = [e_p_dot + gamma e_p; e_w + S_e] with errors taken as actual - desired.
template <typename Scalar>
CompositeError<Scalar> composite_error(const LinkKinematics<Scalar>& k,
                                       const DesiredMotion<Scalar>& des, Scalar gamma) {
  return {(k.v - des.v_d) + gamma * (k.p - des.p_d),
          (k.omega - des.omega_d) + attitude_error_term(k.r, des.r_d, gamma)};
}

template <typename Scalar>
ReferenceMotion<Scalar> reference_motion(const LinkKinematics<Scalar>& k,
                                         const DesiredMotion<Scalar>& des, Scalar gamma) {
  ReferenceMotion<Scalar> ref;
  ref.velocity.linear = des.v_d - gamma * (k.p - des.p_d);
  ref.velocity.angular = des.omega_d - attitude_error_term(k.r, des.r_d, gamma);
  ref.accel.linear = des.accel_d.linear - gamma * (k.v - des.v_d);
  ref.accel.angular = des.accel_d.angular -
                      attitude_error_rate(k.r, k.omega, des.r_d, des.omega_d, gamma);
  return ref;
}

namespace detail {
/// I y = diag(y) [Ixx Iyy Izz]^T + coupling_map(y) [Ixy Ixz Iyz]^T.
template <typename Scalar>
Mat3<Scalar> coupling_map(const Vec3<Scalar>& y) {
  Mat3<Scalar> l;
  l << y(1), y(2), Scalar(0),
       y(0), Scalar(0), y(2),
       Scalar(0), y(0), y(1);
  return l;
}
}  // namespace detail

/// True 22-vector for the tug holding link `id`.
template <typename Scalar>
ParamVec<Scalar> true_parameters(const SatelliteTruth<Scalar>& truth, LinkId id) {
  const LinkParams<Scalar> link = truth.link(id);
  const Mat3<Scalar> ip = inertia_about_point(link);
  ParamVec<Scalar> phi = ParamVec<Scalar>::Zero();
  phi(param::kMass) = link.mass;
  phi.template segment<3>(param::kFirstMoment) = link.mass * link.offset;
  phi.template segment<3>(param::kInertiaDiag) = ip.diagonal();
  phi.template segment<3>(param::kInertiaCoupling) << ip(0, 1), ip(0, 2), ip(1, 2);
  phi.template segment<3>(param::kDamping) = truth.hinge.damping;
  phi.template segment<3>(param::kStiffness) = truth.hinge.stiffness;
  phi.template segment<3>(param::kFrictionTorque) = truth.hinge.friction_torque;
  // a revolute hinge transmits no friction force; the slot stays zero
  return phi;
}

/// Y such that Y * phi = M nu_r_dot + C(nu) nu_r + side * R_alpha * tau_hinge.
template <typename Scalar>
Regressor<Scalar> regressor_phi(const LinkKinematics<Scalar>& k,
                                const HingeKinematics<Scalar>& hinge,
                                const Mat3<Scalar>& r_alpha,
                                const ReferenceMotion<Scalar>& ref, LinkId id) {
  const Mat3<Scalar>& r = k.r;
  const Vec3<Scalar>& a = ref.accel.linear;
  const Vec3<Scalar>& alpha = ref.accel.angular;
  const Vec3<Scalar>& vr = ref.velocity.linear;
  const Vec3<Scalar>& wr = ref.velocity.angular;
  const Mat3<Scalar> wx = skew(k.omega);
  const Vec3<Scalar> alpha_body = r.transpose() * alpha;
  const Vec3<Scalar> wr_body = r.transpose() * wr;
  const Scalar side = Scalar(hinge_side(id));

  Regressor<Scalar> y = Regressor<Scalar>::Zero();
  y.template block<3, 1>(0, param::kMass) = a;
  y.template block<3, 3>(0, param::kFirstMoment) = -(skew(alpha) + wx * skew(wr)) * r;
  y.template block<3, 3>(0, param::kFrictionForce).setIdentity();

  y.template block<3, 3>(3, param::kFirstMoment) =
      (skew(a) + wx * skew(vr) - skew(wr) * skew(k.v)) * r;
  y.template block<3, 3>(3, param::kInertiaDiag) =
      r * alpha_body.asDiagonal() + wx * r * wr_body.asDiagonal();
  y.template block<3, 3>(3, param::kInertiaCoupling) =
      r * detail::coupling_map(alpha_body) + wx * r * detail::coupling_map(wr_body);
  y.template block<3, 3>(3, param::kDamping) =
      side * r_alpha * hinge.omega_star.asDiagonal();
  y.template block<3, 3>(3, param::kStiffness) =
      side * r_alpha * left_jacobian_inverse(hinge.theta_star).transpose() *
      hinge.theta_star.asDiagonal();
  y.template block<3, 3>(3, param::kFrictionTorque) =
      side * r_alpha * signum(hinge.omega_star).asDiagonal();
  return y;
}

/// Y_d with Y_d (d_hat - d_true) = -(G_hat - G) * tug_wrench: only the tug
/// force's moment arm depends on the grasp offset.
template <typename Scalar>
GraspRegressor<Scalar> regressor_d(const Wrench<Scalar>& tug, const Mat3<Scalar>& r) {
  GraspRegressor<Scalar> y = GraspRegressor<Scalar>::Zero();
  y.template bottomRows<3>() = skew(tug.force) * r;
  return y;
}

/// T_hat = Y phi_hat - K_PD s, at the measurement point.
template <typename Scalar>
Wrench<Scalar> control_wrench(const Regressor<Scalar>& y, const TugEstimate<Scalar>& est,
                              const CompositeError<Scalar>& s,
                              const ControllerGains<Scalar>& gains) {
  return Wrench<Scalar>::from_stacked(y * est.phi - gains.k_pd * s.stacked());
}

/// Explicit Euler step of phi_hat_dot = -Gamma_phi Y^T s, d_hat_dot = -Gamma_d Y_d^T s.
template <typename Scalar>
TugEstimate<Scalar> adaptation_step(const Regressor<Scalar>& y,
                                    const GraspRegressor<Scalar>& y_d,
                                    const CompositeError<Scalar>& s,
                                    const ControllerGains<Scalar>& gains,
                                    const TugEstimate<Scalar>& est, Scalar dt) {
  if (!(dt > Scalar(0))) throw std::invalid_argument("adaptation_step: dt > 0 violated");
  const Vec6<Scalar> sv = s.stacked();
  TugEstimate<Scalar> out = est;
  out.phi -= dt * gains.gamma_phi * (y.transpose() * sv);
  out.d -= dt * gains.gamma_d * (y_d.transpose() * sv);
  return out;
}

/// One tug's share of V: 1/2 [s^T M s + phi~^T Gamma_phi^{-1} phi~ + d~^T Gamma_d^{-1} d~].
template <typename Scalar>
Scalar lyapunov_value(const CompositeError<Scalar>& s, const Mat6<Scalar>& link_mass_matrix,
                      const TugEstimate<Scalar>& est, const ParamVec<Scalar>& phi_true,
                      const Vec3<Scalar>& d_true, const ControllerGains<Scalar>& gains) {
  const Vec6<Scalar> sv = s.stacked();
  const ParamVec<Scalar> phi_err = est.phi - phi_true;
  const Vec3<Scalar> d_err = est.d - d_true;
  return Scalar(0.5) * (sv.dot(link_mass_matrix * sv) +
                        phi_err.dot(gains.gamma_phi.ldlt().solve(phi_err)) +
                        d_err.dot(gains.gamma_d.ldlt().solve(d_err)));
}

/// Everything one tug computes from a measurement.
template <typename Scalar>
struct TugCommand {
  CompositeError<Scalar> error;
  Regressor<Scalar> y_phi = Regressor<Scalar>::Zero();
  GraspRegressor<Scalar> y_d = GraspRegressor<Scalar>::Zero();
  Wrench<Scalar> at_point;  // commanded link wrench at P
  Wrench<Scalar> tug;       // what the tug applies at its grasp point
};

/// Controller state for one tug.
template <typename Scalar>
class TugController {
 public:
  TugController(LinkId id, ControllerGains<Scalar> gains, DesiredMotion<Scalar> desired,
                TugEstimate<Scalar> initial)
      : id_(id), gains_(std::move(gains)), desired_(std::move(desired)), estimate_(std::move(initial)) {}

  TugCommand<Scalar> command(const SpatialState<Scalar>& measured) const {
    const LinkKinematics<Scalar> k = link_kinematics(measured, id_);
    TugCommand<Scalar> cmd;
    cmd.error = composite_error(k, desired_, gains_.gamma);
    cmd.y_phi = regressor_phi(k, relative_rotation(measured), measured.r_alpha,
                              reference_motion(k, desired_, gains_.gamma), id_);
    cmd.at_point = control_wrench(cmd.y_phi, estimate_, cmd.error, gains_);
    cmd.tug = invert_grasp(GraspMap<Scalar>{k.r, estimate_.d}, cmd.at_point);
    cmd.y_d = regressor_d(cmd.tug, k.r);
    return cmd;
  }

  void adapt(const TugCommand<Scalar>& cmd, Scalar dt) {
    estimate_ = adaptation_step(cmd.y_phi, cmd.y_d, cmd.error, gains_, estimate_, dt);
  }

  LinkId link() const { return id_; }
  const ControllerGains<Scalar>& gains() const { return gains_; }
  const DesiredMotion<Scalar>& desired() const { return desired_; }
  const TugEstimate<Scalar>& estimate() const { return estimate_; }

 private:
  LinkId id_;
  ControllerGains<Scalar> gains_;
  DesiredMotion<Scalar> desired_;
  TugEstimate<Scalar> estimate_;
};

}  // namespace tugsim
