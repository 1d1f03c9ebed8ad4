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

#pragma once

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>
#include <Eigen/Geometry>

namespace tugsim {

template <typename Scalar> using Vec3 = Eigen::Matrix<Scalar, 3, 1>;
template <typename Scalar> using Vec6 = Eigen::Matrix<Scalar, 6, 1>;
template <typename Scalar> using Mat3 = Eigen::Matrix<Scalar, 3, 3>;
template <typename Scalar> using Mat6 = Eigen::Matrix<Scalar, 6, 6>;

/// Force/torque pair acting at a point, stacked as [force; torque].
template <typename Scalar>
struct Wrench {
  Vec3<Scalar> force = Vec3<Scalar>::Zero();
  Vec3<Scalar> torque = Vec3<Scalar>::Zero();

  Vec6<Scalar> stacked() const {
    Vec6<Scalar> out;
    out << force, torque;
    return out;
  }

  static Wrench from_stacked(const Vec6<Scalar>& w) {
    return {w.template head<3>(), w.template tail<3>()};
  }

  Wrench& operator+=(const Wrench& other) {
    force += other.force;
    torque += other.torque;
    return *this;
  }
  friend Wrench operator+(Wrench a, const Wrench& b) { return a += b; }
  friend Wrench operator-(const Wrench& a, const Wrench& b) {
    return {a.force - b.force, a.torque - b.torque};
  }
};

struct TwistTag {};
struct AccelTag {};
struct PoseTag {};

/// Linear/angular pair. The tag keeps poses, rates and accelerations from
/// being mixed up at call sites.
template <typename Scalar, typename Tag>
struct SpatialPair {
  Vec3<Scalar> linear = Vec3<Scalar>::Zero();
  Vec3<Scalar> angular = Vec3<Scalar>::Zero();

  Vec6<Scalar> stacked() const {
    Vec6<Scalar> out;
    out << linear, angular;
    return out;
  }

  static SpatialPair from_stacked(const Vec6<Scalar>& x) {
    return {x.template head<3>(), x.template tail<3>()};
  }
};

template <typename Scalar> using Pose6 = SpatialPair<Scalar, PoseTag>;
template <typename Scalar> using Twist6 = SpatialPair<Scalar, TwistTag>;
template <typename Scalar> using Accel6 = SpatialPair<Scalar, AccelTag>;

/// Cross-product matrix: skew(v) * w == v.cross(w).
template <typename Derived>
Mat3<typename Derived::Scalar> skew(const Eigen::MatrixBase<Derived>& v) {
  using Scalar = typename Derived::Scalar;
  Mat3<Scalar> m;
  m << Scalar(0), -v(2), v(1),
       v(2), Scalar(0), -v(0),
       -v(1), v(0), Scalar(0);
  return m;
}

/// Inverse of skew. Throws if m is not antisymmetric within tol.
template <typename Derived>
Vec3<typename Derived::Scalar> vee(const Eigen::MatrixBase<Derived>& m,
                                   double tol = 1e-9) {
  using Scalar = typename Derived::Scalar;
  if (!((m + m.transpose()).norm() < Scalar(tol))) {
    throw std::invalid_argument("vee: matrix is not antisymmetric");
  }
  return Vec3<Scalar>(m(2, 1) - m(1, 2), m(0, 2) - m(2, 0), m(1, 0) - m(0, 1)) /
         Scalar(2);
}

/// Rodrigues formula, exp of the rotation vector theta.
template <typename Derived>
Mat3<typename Derived::Scalar> exp_so3(const Eigen::MatrixBase<Derived>& theta) {
  using Scalar = typename Derived::Scalar;
  using std::cos;
  using std::sin;
  const Scalar a2 = theta.squaredNorm();
  const Mat3<Scalar> k = skew(theta);
  Scalar s, c;
  if (a2 < Scalar(1e-12)) {
    s = Scalar(1) - a2 / Scalar(6);
    c = Scalar(0.5) - a2 / Scalar(24);
  } else {
    const Scalar a = std::sqrt(a2);
    s = sin(a) / a;
    c = (Scalar(1) - cos(a)) / a2;
  }
  return Mat3<Scalar>::Identity() + s * k + c * k * k;
}

/// Rotation -> unit quaternion with w >= 0 -> rotation vector with angle in
/// [0, pi]. Eigen's conversion picks the largest diagonal pivot, which keeps
/// the axis well defined at angle pi.
template <typename Derived>
Vec3<typename Derived::Scalar> rot_to_angle_vector(const Eigen::MatrixBase<Derived>& r) {
  using Scalar = typename Derived::Scalar;
  using std::atan2;
  Eigen::Quaternion<Scalar> q{Mat3<Scalar>(r)};
  q.normalize();
  if (q.w() < Scalar(0)) q.coeffs() = -q.coeffs();
  const Vec3<Scalar> xyz = q.vec();
  const Scalar sin_half = xyz.norm();
  if (sin_half < Scalar(1e-12)) {
    // angle ~ 2*sin_half, first-order in the vector part
    return Scalar(2) * xyz / q.w();
  }
  const Scalar angle = Scalar(2) * atan2(sin_half, q.w());
  return xyz * (angle / sin_half);
}

/// Left Jacobian of SO(3): d/dt exp(theta) = skew(J_l(theta) theta_dot) exp(theta).
template <typename Derived>
Mat3<typename Derived::Scalar> left_jacobian(const Eigen::MatrixBase<Derived>& theta) {
  using Scalar = typename Derived::Scalar;
  using std::cos;
  using std::sin;
  const Scalar a2 = theta.squaredNorm();
  const Mat3<Scalar> k = skew(theta);
  Scalar c1, c2;
  if (a2 < Scalar(1e-10)) {
    c1 = Scalar(0.5) - a2 / Scalar(24);
    c2 = Scalar(1) / Scalar(6) - a2 / Scalar(120);
  } else {
    const Scalar a = std::sqrt(a2);
    c1 = (Scalar(1) - cos(a)) / a2;
    c2 = (a - sin(a)) / (a2 * a);
  }
  return Mat3<Scalar>::Identity() + c1 * k + c2 * k * k;
}

/// Closed-form inverse of left_jacobian, valid for |theta| < 2 pi.
template <typename Derived>
Mat3<typename Derived::Scalar> left_jacobian_inverse(const Eigen::MatrixBase<Derived>& theta) {
  using Scalar = typename Derived::Scalar;
  using std::cos;
  using std::sin;
  const Scalar a2 = theta.squaredNorm();
  const Mat3<Scalar> k = skew(theta);
  Scalar c2;
  if (a2 < Scalar(1e-10)) {
    c2 = Scalar(1) / Scalar(12) + a2 / Scalar(720);
  } else {
    const Scalar a = std::sqrt(a2);
    c2 = Scalar(1) / a2 - (Scalar(1) + cos(a)) / (Scalar(2) * a * sin(a));
  }
  return Mat3<Scalar>::Identity() - Scalar(0.5) * k + c2 * k * k;
}

/// Inertia about a point offset by d from the center of mass.
template <typename Scalar>
Mat3<Scalar> parallel_axis(const Mat3<Scalar>& inertia_cm, Scalar mass,
                           const Vec3<Scalar>& d) {
  if (!(mass > Scalar(0))) {
    throw std::invalid_argument("parallel_axis: m > 0 violated");
  }
  return inertia_cm +
         mass * (d.dot(d) * Mat3<Scalar>::Identity() - d * d.transpose());
}

/// Closest rotation in the Frobenius sense (polar factor).
template <typename Scalar>
Mat3<Scalar> orthonormalize(const Mat3<Scalar>& r) {
  Eigen::JacobiSVD<Mat3<Scalar>> svd(r, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Mat3<Scalar> u = svd.matrixU();
  const Mat3<Scalar> v = svd.matrixV();
  if ((u * v.transpose()).determinant() < Scalar(0)) u.col(2) *= Scalar(-1);
  return u * v.transpose();
}

template <typename Scalar>
bool is_rotation(const Mat3<Scalar>& r, double tol = 1e-9) {
  using std::abs;
  return (r * r.transpose() - Mat3<Scalar>::Identity()).norm() < Scalar(tol) &&
         abs(r.determinant() - Scalar(1)) < Scalar(tol);
}

/// R * exp(omega * dt), omega in the body frame of R.
template <typename Scalar>
Mat3<Scalar> integrate_rotation(const Mat3<Scalar>& r, const Vec3<Scalar>& omega,
                                Scalar dt) {
  if (!(dt > Scalar(0))) {
    throw std::invalid_argument("integrate_rotation: dt > 0 violated");
  }
  return orthonormalize<Scalar>(r * exp_so3(Vec3<Scalar>(omega * dt)));
}

}  // namespace tugsim
