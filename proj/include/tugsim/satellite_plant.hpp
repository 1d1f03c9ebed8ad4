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

// Ground-truth dynamics of the two-link satellite. Both links share the
// measurement point P (the hinge); every matrix here is expressed at P in
// the world frame, acting on [v_P; omega_link].

#pragma once

#include <string>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "tugsim/errors.hpp"
#include "tugsim/grasp.hpp"
#include "tugsim/spatial_math.hpp"

namespace tugsim {

template <typename Scalar> using Vec9 = Eigen::Matrix<Scalar, 9, 1>;
template <typename Scalar> using Mat9 = Eigen::Matrix<Scalar, 9, 9>;

enum class LinkId { link1, link2 };

inline const char* to_string(LinkId id) {
  return id == LinkId::link1 ? "link1" : "link2";
}

template <typename Scalar>
struct LinkParams {
  Scalar mass = Scalar(1);
  /// About the center of mass, body frame.
  Mat3<Scalar> inertia_cm = Mat3<Scalar>::Identity();
  /// Measurement point relative to the center of mass, body frame.
  Vec3<Scalar> offset = Vec3<Scalar>::Zero();
};

/// Per-axis compliant hinge, coefficients act on the deflection expressed in
/// the Link-1 frame.
template <typename Scalar>
struct HingeParams {
  Vec3<Scalar> stiffness = Vec3<Scalar>::Zero();
  Vec3<Scalar> damping = Vec3<Scalar>::Zero();
  Vec3<Scalar> friction_torque = Vec3<Scalar>::Zero();
};

template <typename Scalar>
struct SatelliteTruth {
  LinkParams<Scalar> link1;
  LinkParams<Scalar> link2;
  /// Hinge rotor inertia, carried by Link-2.
  Mat3<Scalar> rotor_inertia = Mat3<Scalar>::Zero();
  HingeParams<Scalar> hinge;
  /// Grasp points relative to P, in frame alpha (tug 1) and beta (tug 2).
  Vec3<Scalar> grasp1 = Vec3<Scalar>::Zero();
  Vec3<Scalar> grasp2 = Vec3<Scalar>::Zero();

  /// Link parameters as seen by the dynamics (Link-2 includes the rotor).
  LinkParams<Scalar> link(LinkId id) const {
    if (id == LinkId::link1) return link1;
    LinkParams<Scalar> out = link2;
    out.inertia_cm += rotor_inertia;
    return out;
  }

  const Vec3<Scalar>& grasp(LinkId id) const {
    return id == LinkId::link1 ? grasp1 : grasp2;
  }
};

template <typename Scalar>
struct SpatialState {
  Vec3<Scalar> p = Vec3<Scalar>::Zero();
  Mat3<Scalar> r_alpha = Mat3<Scalar>::Identity();
  Mat3<Scalar> r_beta = Mat3<Scalar>::Identity();
  Vec3<Scalar> v = Vec3<Scalar>::Zero();
  /// World-frame angular velocities.
  Vec3<Scalar> omega_l1 = Vec3<Scalar>::Zero();
  Vec3<Scalar> omega_l2 = Vec3<Scalar>::Zero();

  const Mat3<Scalar>& rotation(LinkId id) const {
    return id == LinkId::link1 ? r_alpha : r_beta;
  }
  const Vec3<Scalar>& omega(LinkId id) const {
    return id == LinkId::link1 ? omega_l1 : omega_l2;
  }

  bool all_finite() const {
    return p.allFinite() && r_alpha.allFinite() && r_beta.allFinite() &&
           v.allFinite() && omega_l1.allFinite() && omega_l2.allFinite();
  }
};

/// Hinge deflection and its rate, both in frame alpha.
template <typename Scalar>
struct HingeKinematics {
  Vec3<Scalar> theta_star = Vec3<Scalar>::Zero();
  Vec3<Scalar> omega_star = Vec3<Scalar>::Zero();
};

template <typename Scalar>
struct SystemAccel {
  Vec3<Scalar> v_dot = Vec3<Scalar>::Zero();
  Vec3<Scalar> omega_dot_l1 = Vec3<Scalar>::Zero();
  Vec3<Scalar> omega_dot_l2 = Vec3<Scalar>::Zero();

  Accel6<Scalar> link(LinkId id) const {
    return {v_dot, id == LinkId::link1 ? omega_dot_l1 : omega_dot_l2};
  }
  Vec9<Scalar> stacked() const {
    Vec9<Scalar> out;
    out << v_dot, omega_dot_l1, omega_dot_l2;
    return out;
  }
};

template <typename Scalar>
struct ForwardDynamicsResult {
  SystemAccel<Scalar> accel;
  /// d/dt of omega_star, frame alpha.
  Vec3<Scalar> hinge_accel = Vec3<Scalar>::Zero();
};

template <typename Scalar>
struct TugWrenches {
  Wrench<Scalar> tug1;
  Wrench<Scalar> tug2;

  const Wrench<Scalar>& operator[](LinkId id) const {
    return id == LinkId::link1 ? tug1 : tug2;
  }
};

// ---------------------------------------------------------------------------
// Validation

template <typename Scalar>
void validate(const LinkParams<Scalar>& link, const std::string& name) {
  if (!(link.mass > Scalar(0))) throw ValidationError(name + ".mass_kg: m > 0 violated");
  if (!link.inertia_cm.allFinite() || !link.offset.allFinite()) {
    throw ValidationError(name + ": finite values required");
  }
  if ((link.inertia_cm - link.inertia_cm.transpose()).norm() >
      Scalar(1e-12) * (Scalar(1) + link.inertia_cm.norm())) {
    throw ValidationError(name + ".inertia_cm_kgm2: symmetric inertia required");
  }
  Eigen::SelfAdjointEigenSolver<Mat3<Scalar>> eig(link.inertia_cm);
  const Vec3<Scalar> l = eig.eigenvalues();
  if (!(l(0) > Scalar(0))) {
    throw ValidationError(name + ".inertia_cm_kgm2: positive definite inertia required");
  }
  // l is sorted ascending; the largest principal moment bounds the check
  const Scalar slack = Scalar(1e-9) * l(2);
  if (l(0) + l(1) + slack < l(2)) {
    throw ValidationError(name + ".inertia_cm_kgm2: triangle inequality on principal moments violated");
  }
}

template <typename Scalar>
void validate(const HingeParams<Scalar>& hinge, const std::string& name) {
  if (!(hinge.stiffness.minCoeff() >= Scalar(0))) {
    throw ValidationError(name + ".stiffness: k >= 0 violated");
  }
  if (!(hinge.damping.minCoeff() >= Scalar(0))) {
    throw ValidationError(name + ".damping: xi >= 0 violated");
  }
  if (!(hinge.friction_torque.minCoeff() >= Scalar(0))) {
    throw ValidationError(name + ".friction_torque: friction >= 0 violated");
  }
}

template <typename Scalar>
void validate(const SatelliteTruth<Scalar>& truth) {
  validate(truth.link1, "truth.link1");
  validate(truth.link2, "truth.link2");
  if ((truth.rotor_inertia - truth.rotor_inertia.transpose()).norm() > Scalar(1e-12) ||
      !(Eigen::SelfAdjointEigenSolver<Mat3<Scalar>>(truth.rotor_inertia)
            .eigenvalues()
            .minCoeff() >= Scalar(0))) {
    throw ValidationError("truth.link2.rotor_inertia_kgm2: symmetric positive semidefinite required");
  }
  validate(truth.hinge, "truth.hinge");
  if (!truth.grasp1.allFinite() || !truth.grasp2.allFinite()) {
    throw ValidationError("truth.grasp: finite offsets required");
  }
}

// ---------------------------------------------------------------------------
// Kinematics

template <typename Scalar>
HingeKinematics<Scalar> relative_rotation(const SpatialState<Scalar>& s) {
  return {rot_to_angle_vector(Mat3<Scalar>(s.r_alpha.transpose() * s.r_beta)),
          s.r_alpha.transpose() * (s.omega_l2 - s.omega_l1)};
}

/// Rates at or below this magnitude count as zero for Coulomb friction.
/// Without it, rounding noise at a resting hinge (|x| ~ 1e-17) switches the
/// full friction torque on and sets a resting satellite in motion.
inline constexpr double kSignDeadband = 1e-12;

/// sign with sign(0) == 0, componentwise.
template <typename Scalar>
Vec3<Scalar> signum(const Vec3<Scalar>& x) {
  return x.unaryExpr([](Scalar e) {
    const Scalar tol(kSignDeadband);
    return e > tol ? Scalar(1) : (e < -tol ? Scalar(-1) : Scalar(0));
  });
}

// ---------------------------------------------------------------------------
// Per-link matrices

/// Inertia about P in the body frame.
template <typename Scalar>
Mat3<Scalar> inertia_about_point(const LinkParams<Scalar>& link) {
  return parallel_axis(link.inertia_cm, link.mass, link.offset);
}

template <typename Scalar>
Mat6<Scalar> mass_matrix_link(const LinkParams<Scalar>& link, const Mat3<Scalar>& r) {
  const Vec3<Scalar> arm = r * link.offset;
  const Mat3<Scalar> mx = link.mass * skew(arm);
  Mat6<Scalar> m;
  m << link.mass * Mat3<Scalar>::Identity(), mx,
       -mx, r * inertia_about_point(link) * r.transpose();
  return m;
}

template <typename Scalar>
Mat6<Scalar> coriolis_link(const LinkParams<Scalar>& link, const Mat3<Scalar>& r,
                           const Vec3<Scalar>& omega, const Vec3<Scalar>& v) {
  const Vec3<Scalar> arm = r * link.offset;
  const Mat3<Scalar> wx = skew(omega);
  const Mat3<Scalar> wr = link.mass * wx * skew(arm);
  Mat6<Scalar> c;
  c << Mat3<Scalar>::Zero(), wr,
       -wr, wx * r * inertia_about_point(link) * r.transpose() -
                link.mass * skew(Vec3<Scalar>(arm.cross(v)));
  return c;
}

/// Resisting hinge torque in frame alpha. Link-2 receives -R_alpha*torque,
/// Link-1 receives +R_alpha*torque. The spring term is the gradient of
/// 1/2 theta^T diag(k) theta mapped through J_l^{-T}, so it is conservative.
template <typename Scalar>
Wrench<Scalar> hinge_wrench(const HingeParams<Scalar>& hinge,
                            const HingeKinematics<Scalar>& hk) {
  Wrench<Scalar> w;
  w.torque = left_jacobian_inverse(hk.theta_star).transpose() *
                 hinge.stiffness.cwiseProduct(hk.theta_star) +
             hinge.damping.cwiseProduct(hk.omega_star) +
             hinge.friction_torque.cwiseProduct(signum(hk.omega_star));
  return w;
}

/// +1 on Link-2, -1 on Link-1: sign with which the hinge torque enters the
/// link's inverse-dynamics balance.
inline double hinge_side(LinkId id) { return id == LinkId::link1 ? -1.0 : 1.0; }

/// Non-hinge wrench at P needed to produce accel on one link:
/// M a + C nu + side * R_alpha * tau_hinge. Includes the joint reaction force.
template <typename Scalar>
Wrench<Scalar> link_inverse_dynamics(const SatelliteTruth<Scalar>& truth,
                                     const SpatialState<Scalar>& s, LinkId id,
                                     const Accel6<Scalar>& accel) {
  const LinkParams<Scalar> link = truth.link(id);
  const Mat3<Scalar>& r = s.rotation(id);
  const Twist6<Scalar> nu{s.v, s.omega(id)};
  Vec6<Scalar> w = mass_matrix_link(link, r) * accel.stacked() +
                   coriolis_link(link, r, s.omega(id), s.v) * nu.stacked();
  const Vec3<Scalar> tau =
      s.r_alpha * hinge_wrench(truth.hinge, relative_rotation(s)).torque;
  w.template tail<3>() += Scalar(hinge_side(id)) * tau;
  return Wrench<Scalar>::from_stacked(w);
}

/// T_L1 + T_L2. Hinge torques are an action/reaction pair at P and cancel.
template <typename Scalar>
Wrench<Scalar> composite_dynamics(const SatelliteTruth<Scalar>& truth,
                                  const SpatialState<Scalar>& s,
                                  const SystemAccel<Scalar>& accel) {
  return link_inverse_dynamics(truth, s, LinkId::link1, accel.link(LinkId::link1)) +
         link_inverse_dynamics(truth, s, LinkId::link2, accel.link(LinkId::link2));
}

/// Rigidized form: both links share one angular acceleration.
template <typename Scalar>
Wrench<Scalar> composite_dynamics(const SatelliteTruth<Scalar>& truth,
                                  const SpatialState<Scalar>& s,
                                  const Accel6<Scalar>& accel) {
  return composite_dynamics(truth, s,
                            SystemAccel<Scalar>{accel.linear, accel.angular, accel.angular});
}

/// M_nu = M_b + M_s, the locked-hinge spatial inertia at P.
template <typename Scalar>
Mat6<Scalar> composite_mass_matrix(const SatelliteTruth<Scalar>& truth,
                                   const SpatialState<Scalar>& s) {
  return mass_matrix_link(truth.link(LinkId::link1), s.r_alpha) +
         mass_matrix_link(truth.link(LinkId::link2), s.r_beta);
}

namespace detail {
/// Selection E_i: [v; w1; w2] -> [v; w_i].
template <typename Scalar>
Eigen::Matrix<Scalar, 6, 9> link_selector(LinkId id) {
  Eigen::Matrix<Scalar, 6, 9> e = Eigen::Matrix<Scalar, 6, 9>::Zero();
  e.template block<3, 3>(0, 0).setIdentity();
  e.template block<3, 3>(3, id == LinkId::link1 ? 3 : 6).setIdentity();
  return e;
}
}  // namespace detail

/// 9x9 mass matrix of the jointed system on [v; omega_l1; omega_l2].
template <typename Scalar>
Mat9<Scalar> system_mass_matrix(const SatelliteTruth<Scalar>& truth,
                                const SpatialState<Scalar>& s) {
  Mat9<Scalar> m = Mat9<Scalar>::Zero();
  for (LinkId id : {LinkId::link1, LinkId::link2}) {
    const auto e = detail::link_selector<Scalar>(id);
    m += e.transpose() * mass_matrix_link(truth.link(id), s.rotation(id)) * e;
  }
  return m;
}

template <typename Scalar>
Mat9<Scalar> system_coriolis(const SatelliteTruth<Scalar>& truth,
                             const SpatialState<Scalar>& s) {
  Mat9<Scalar> c = Mat9<Scalar>::Zero();
  for (LinkId id : {LinkId::link1, LinkId::link2}) {
    const auto e = detail::link_selector<Scalar>(id);
    c += e.transpose() *
         coriolis_link(truth.link(id), s.rotation(id), s.omega(id), s.v) * e;
  }
  return c;
}

template <typename Scalar>
Vec9<Scalar> system_velocity(const SpatialState<Scalar>& s) {
  Vec9<Scalar> out;
  out << s.v, s.omega_l1, s.omega_l2;
  return out;
}

// ---------------------------------------------------------------------------
// Forward dynamics

namespace detail {
template <typename Scalar, int N>
Eigen::Matrix<Scalar, N, 1> solve_spd(const Eigen::Matrix<Scalar, N, N>& m,
                                      const Eigen::Matrix<Scalar, N, 1>& rhs) {
  Eigen::LLT<Eigen::Matrix<Scalar, N, N>> llt(m);
  if (llt.info() != Eigen::Success || !(llt.rcond() > Scalar(1e-12))) {
    throw NumericalError("mass matrix is ill-conditioned (condition number > 1e12)");
  }
  return llt.solve(rhs);
}
}  // namespace detail

/// Solves the jointed two-link system for the accelerations produced by the
/// tug wrenches (applied at the true grasp points) and the hinge torque.
/// The joint reaction force at P is eliminated by summing the force rows.
template <typename Scalar>
ForwardDynamicsResult<Scalar> forward_dynamics(const SatelliteTruth<Scalar>& truth,
                                               const SpatialState<Scalar>& s,
                                               const TugWrenches<Scalar>& tugs) {
  Vec9<Scalar> rhs = -system_coriolis(truth, s) * system_velocity(s);
  for (LinkId id : {LinkId::link1, LinkId::link2}) {
    const auto e = detail::link_selector<Scalar>(id);
    const Wrench<Scalar> at_p =
        apply_grasp(GraspMap<Scalar>{s.rotation(id), truth.grasp(id)}, tugs[id]);
    rhs += e.transpose() * at_p.stacked();
  }
  const Vec3<Scalar> tau =
      s.r_alpha * hinge_wrench(truth.hinge, relative_rotation(s)).torque;
  rhs.template segment<3>(3) += tau;
  rhs.template segment<3>(6) -= tau;

  const Vec9<Scalar> a = detail::solve_spd<Scalar, 9>(system_mass_matrix(truth, s), rhs);
  ForwardDynamicsResult<Scalar> out;
  out.accel.v_dot = a.template head<3>();
  out.accel.omega_dot_l1 = a.template segment<3>(3);
  out.accel.omega_dot_l2 = a.template tail<3>();
  out.hinge_accel =
      s.r_alpha.transpose() * (out.accel.omega_dot_l2 - out.accel.omega_dot_l1) -
      s.r_alpha.transpose() * s.omega_l1.cross(s.omega_l2 - s.omega_l1);
  return out;
}

/// Hinge locked: both links rotate with omega_l1. Returns [v_dot; omega_dot].
template <typename Scalar>
Accel6<Scalar> forward_dynamics_locked(const SatelliteTruth<Scalar>& truth,
                                       const SpatialState<Scalar>& s,
                                       const TugWrenches<Scalar>& tugs) {
  Vec6<Scalar> rhs = Vec6<Scalar>::Zero();
  const Twist6<Scalar> nu{s.v, s.omega_l1};
  for (LinkId id : {LinkId::link1, LinkId::link2}) {
    const LinkParams<Scalar> link = truth.link(id);
    const Mat3<Scalar>& r = s.rotation(id);
    rhs += apply_grasp(GraspMap<Scalar>{r, truth.grasp(id)}, tugs[id]).stacked() -
           coriolis_link(link, r, s.omega_l1, s.v) * nu.stacked();
  }
  return Accel6<Scalar>::from_stacked(
      detail::solve_spd<Scalar, 6>(composite_mass_matrix(truth, s), rhs));
}

// ---------------------------------------------------------------------------
// Checks and conserved quantities

template <typename Scalar>
struct SpdResult {
  bool spd = false;
  Scalar min_eigenvalue = Scalar(0);
};

/// Symmetric within 1e-8 relative and all eigenvalues positive.
template <typename Derived>
SpdResult<typename Derived::Scalar> check_spd(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  using Square = Eigen::Matrix<Scalar, Derived::RowsAtCompileTime, Derived::ColsAtCompileTime>;
  const Square a = m;
  const bool symmetric =
      (a - a.transpose()).norm() < Scalar(1e-8) * a.norm() || a.norm() == Scalar(0);
  Eigen::SelfAdjointEigenSolver<Square> eig(Square(Scalar(0.5) * (a + a.transpose())),
                                            Eigen::EigenvaluesOnly);
  const Scalar lmin = eig.eigenvalues().minCoeff();
  return {symmetric && lmin > Scalar(0), lmin};
}

template <typename Scalar>
Vec3<Scalar> link_com(const LinkParams<Scalar>& link, const Mat3<Scalar>& r,
                      const Vec3<Scalar>& p) {
  return p - r * link.offset;
}

template <typename Scalar>
Vec3<Scalar> linear_momentum(const SatelliteTruth<Scalar>& truth,
                             const SpatialState<Scalar>& s) {
  Vec3<Scalar> l = Vec3<Scalar>::Zero();
  for (LinkId id : {LinkId::link1, LinkId::link2}) {
    const LinkParams<Scalar> link = truth.link(id);
    const Vec3<Scalar> arm = s.rotation(id) * link.offset;
    l += link.mass * (s.v - s.omega(id).cross(arm));
  }
  return l;
}

/// About the world origin.
template <typename Scalar>
Vec3<Scalar> angular_momentum(const SatelliteTruth<Scalar>& truth,
                              const SpatialState<Scalar>& s) {
  Vec3<Scalar> h = Vec3<Scalar>::Zero();
  for (LinkId id : {LinkId::link1, LinkId::link2}) {
    const LinkParams<Scalar> link = truth.link(id);
    const Mat3<Scalar>& r = s.rotation(id);
    const Vec3<Scalar> arm = r * link.offset;
    const Vec3<Scalar> vc = s.v - s.omega(id).cross(arm);
    h += r * link.inertia_cm * r.transpose() * s.omega(id) +
         link_com(link, r, s.p).cross(link.mass * vc);
  }
  return h;
}

/// Kinetic energy plus hinge spring potential.
template <typename Scalar>
Scalar total_energy(const SatelliteTruth<Scalar>& truth, const SpatialState<Scalar>& s) {
  const Vec9<Scalar> nu = system_velocity(s);
  const Vec3<Scalar> th = relative_rotation(s).theta_star;
  return Scalar(0.5) * nu.dot(system_mass_matrix(truth, s) * nu) +
         Scalar(0.5) * th.dot(truth.hinge.stiffness.cwiseProduct(th));
}

}  // namespace tugsim
