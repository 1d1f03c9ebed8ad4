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

// Independent reference computations for the tests. Nothing here calls into
// the library; each oracle is written from first principles.

#pragma once

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <random>
#include <vector>

namespace oracle {

using V3 = Eigen::Vector3d;
using M3 = Eigen::Matrix3d;

inline V3 cross(const V3& a, const V3& b) {
  return {a.y() * b.z() - a.z() * b.y(), a.z() * b.x() - a.x() * b.z(),
          a.x() * b.y() - a.y() * b.x()};
}

/// Rotation about a principal axis (0 = x, 1 = y, 2 = z).
inline M3 rot_axis(int axis, double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  M3 r = M3::Identity();
  const int i = (axis + 1) % 3, j = (axis + 2) % 3;
  r(i, i) = c;
  r(i, j) = -s;
  r(j, i) = s;
  r(j, j) = c;
  return r;
}

/// Axis-angle via Eigen's own AngleAxis (independent of the library's
/// Rodrigues implementation).
inline M3 axis_angle(const V3& rv) {
  const double a = rv.norm();
  if (a == 0.0) return M3::Identity();
  return Eigen::AngleAxisd(a, rv / a).toRotationMatrix();
}

struct PointMass {
  double m;
  V3 r;
};

/// Six point masses on the principal axes reproducing total mass m, zero
/// first moment and the diagonal inertia diag(a, b, c) about the origin.
inline std::vector<PointMass> point_cloud(double m, const V3& diag) {
  const double k = 3.0 / (2.0 * m);
  const V3 sq{k * (diag(1) + diag(2) - diag(0)), k * (diag(0) + diag(2) - diag(1)),
              k * (diag(0) + diag(1) - diag(2))};
  std::vector<PointMass> pts;
  for (int ax = 0; ax < 3; ++ax) {
    for (double sgn : {-1.0, 1.0}) {
      V3 r = V3::Zero();
      r(ax) = sgn * std::sqrt(sq(ax));
      pts.push_back({m / 6.0, r});
    }
  }
  return pts;
}

/// Inertia of a point cloud about `about`, by summation.
inline M3 inertia_by_summation(const std::vector<PointMass>& pts, const V3& about) {
  M3 out = M3::Zero();
  for (const PointMass& p : pts) {
    const V3 r = p.r - about;
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        out(i, j) += p.m * ((i == j ? r.squaredNorm() : 0.0) - r(i) * r(j));
      }
    }
  }
  return out;
}

/// Rigid body described at a body point P that sits at body offset d from
/// the centre of mass (COM = P - R d).
struct Body {
  double m;
  M3 inertia_cm;  // body frame
  V3 d;
};

/// Kinetic energy from the COM velocity and the spin about the COM.
inline double kinetic_energy(const Body& b, const M3& r, const V3& v_p, const V3& w) {
  const V3 v_c = v_p - cross(w, r * b.d);
  const M3 iw = r * b.inertia_cm * r.transpose();
  return 0.5 * b.m * v_c.squaredNorm() + 0.5 * w.dot(iw * w);
}

/// Newton-Euler at the COM, transported to P: the external wrench about P
/// needed to produce (a_p, alpha) at twist (v_p, w).
inline std::array<V3, 2> newton_euler_at_point(const Body& b, const M3& r, const V3& w,
                                               const V3& a_p, const V3& alpha) {
  const V3 c = -(r * b.d);  // COM relative to P
  const V3 a_c = a_p + cross(alpha, c) + cross(w, cross(w, c));
  const V3 f = b.m * a_c;
  const M3 iw = r * b.inertia_cm * r.transpose();
  const V3 tau_c = iw * alpha + cross(w, iw * w);
  return {f, tau_c + cross(c, f)};
}

/// Linear momentum and angular momentum about the world origin for a body
/// whose point P is at p.
inline std::array<V3, 2> momentum(const Body& b, const M3& r, const V3& p, const V3& v_p,
                                  const V3& w) {
  const V3 c = p - r * b.d;
  const V3 v_c = v_p - cross(w, r * b.d);
  const M3 iw = r * b.inertia_cm * r.transpose();
  return {b.m * v_c, iw * w + cross(c, b.m * v_c)};
}

inline V3 random_vector(std::mt19937_64& rng, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  return {u(rng), u(rng), u(rng)};
}

inline M3 random_rotation(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Eigen::Quaterniond q(n(rng), n(rng), n(rng), n(rng));
  q.normalize();
  return q.toRotationMatrix();
}

/// Random physical inertia: principal moments satisfying the triangle
/// inequality, rotated into a random frame.
inline M3 random_inertia(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.5, 3.0);
  const double a = u(rng), b = u(rng);
  std::uniform_real_distribution<double> uc(std::abs(a - b) + 0.05, a + b - 0.05);
  const V3 diag{a, b, uc(rng)};
  const M3 q = random_rotation(rng);
  return q * diag.asDiagonal() * q.transpose();
}

}  // namespace oracle
