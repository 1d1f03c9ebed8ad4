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

#include "tugsim/spatial_math.hpp"

namespace tugsim {

/// Rigid attachment of a tug to a link: link orientation in the world and
/// grasp point offset from the measurement point, in the link frame.
template <typename Scalar>
struct GraspMap {
  Mat3<Scalar> rotation = Mat3<Scalar>::Identity();
  Vec3<Scalar> offset = Vec3<Scalar>::Zero();

  Vec3<Scalar> arm() const { return rotation * offset; }
};

/// [I 0; skew(R d) I]: tug wrench at the grasp point -> link wrench at the
/// measurement point. Unit determinant for every offset.
template <typename Scalar>
Mat6<Scalar> grasp_matrix(const GraspMap<Scalar>& g) {
  Mat6<Scalar> out = Mat6<Scalar>::Identity();
  out.template block<3, 3>(3, 0) = skew(g.arm());
  return out;
}

template <typename Scalar>
Wrench<Scalar> apply_grasp(const GraspMap<Scalar>& g, const Wrench<Scalar>& tug) {
  return {tug.force, tug.torque + g.arm().cross(tug.force)};
}

/// Closed-form G^{-1} = [I 0; -skew(R d) I].
template <typename Scalar>
Wrench<Scalar> invert_grasp(const GraspMap<Scalar>& g, const Wrench<Scalar>& link) {
  return {link.force, link.torque - g.arm().cross(link.force)};
}

}  // namespace tugsim
