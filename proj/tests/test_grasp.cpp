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

#include <gtest/gtest.h>

#include <numbers>
#include <random>

#include "oracles.hpp"
#include "tugsim/grasp.hpp"

namespace {

using tugsim::GraspMap;
using tugsim::Mat6;
using tugsim::Vec3;
using tugsim::Wrench;
using V3 = Vec3<double>;
using M6 = Mat6<double>;

TEST(GraspMatrix, ZeroOffsetIsIdentity) {
  GraspMap<double> g;
  g.rotation = oracle::rot_axis(1, 0.7);
  EXPECT_EQ(tugsim::grasp_matrix(g), M6::Identity());
}

TEST(GraspMatrix, ForceAtArmProducesMoment) {
  // Unit force along y applied one metre along x makes +z torque at P.
  const GraspMap<double> g{Eigen::Matrix3d::Identity(), V3(1, 0, 0)};
  const Wrench<double> w = tugsim::apply_grasp(g, Wrench<double>{V3(0, 1, 0), V3::Zero()});
  EXPECT_EQ(w.force, V3(0, 1, 0));
  EXPECT_NEAR((w.torque - V3(0, 0, 1)).norm(), 0.0, 1e-15);
}

TEST(GraspMatrix, RotatedArmUsesWorldFrameOffset) {
  // Link turned a quarter turn about z: body x arm points along world y.
  const GraspMap<double> g{oracle::rot_axis(2, std::numbers::pi / 2), V3(2, 0, 0)};
  const Wrench<double> w = tugsim::apply_grasp(g, Wrench<double>{V3(1, 0, 0), V3::Zero()});
  EXPECT_NEAR((w.torque - V3(0, 0, -2)).norm(), 0.0, 1e-14);
}

TEST(GraspMatrix, ClosedFormInverseOnBaseGrasp) {
  const GraspMap<double> g{Eigen::Matrix3d::Identity(), V3(0.36, -0.13, -0.44)};
  const M6 gm = tugsim::grasp_matrix(g);
  M6 inv = M6::Identity();
  inv.block<3, 3>(3, 0) = -gm.block<3, 3>(3, 0);
  EXPECT_LT((gm * inv - M6::Identity()).norm(), 1e-15);
  EXPECT_LT((gm.inverse() - inv).norm(), 1e-13);
}

TEST(GraspMatrix, PropertiesOverRandomGrasps) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 1000; ++i) {
    const GraspMap<double> g{oracle::random_rotation(rng), oracle::random_vector(rng, 2.0)};
    const Wrench<double> tug{oracle::random_vector(rng, 50.0), oracle::random_vector(rng, 20.0)};
    const M6 gm = tugsim::grasp_matrix(g);

    EXPECT_NEAR(gm.determinant(), 1.0, 1e-12);

    const Wrench<double> at_p = tugsim::apply_grasp(g, tug);
    EXPECT_LT((at_p.stacked() - gm * tug.stacked()).norm(), 1e-12);
    EXPECT_LT((tugsim::invert_grasp(g, at_p).stacked() - tug.stacked()).norm(), 1e-13);

    // Oracle: torque about P of a force at P + arm plus the free moment.
    const V3 arm = g.rotation * g.offset;
    EXPECT_LT((at_p.torque - (tug.torque + oracle::cross(arm, tug.force))).norm(), 1e-12);

    // The same rigid motion seen at the grasp point and at P absorbs the
    // same power.
    const V3 v_p = oracle::random_vector(rng), w = oracle::random_vector(rng);
    const V3 v_grasp = v_p + oracle::cross(w, arm);
    const double power_tug = tug.force.dot(v_grasp) + tug.torque.dot(w);
    const double power_p = at_p.force.dot(v_p) + at_p.torque.dot(w);
    EXPECT_NEAR(power_tug, power_p, 1e-10 * (1.0 + std::abs(power_tug)));
  }
}

}  // namespace
