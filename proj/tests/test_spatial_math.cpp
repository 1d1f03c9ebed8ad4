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

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "tugsim/spatial_math.hpp"

namespace {

using tugsim::Mat3;
using tugsim::Vec3;
using V3 = Vec3<double>;
using M3 = Mat3<double>;

constexpr double kPi = std::numbers::pi;

TEST(Skew, ZeroVectorGivesZeroMatrix) {
  EXPECT_EQ(tugsim::skew(V3::Zero()), M3::Zero());
}

TEST(Skew, CanonicalCrossProduct) {
  EXPECT_EQ(tugsim::skew(V3(1, 0, 0)) * V3(0, 1, 0), V3(0, 0, 1));
}

TEST(Skew, MatchesComponentwiseCrossProduct) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 500; ++i) {
    const V3 v = oracle::random_vector(rng);
    const V3 w = oracle::random_vector(rng);
    const M3 s = tugsim::skew(v);
    EXPECT_LT((s * w - oracle::cross(v, w)).norm(), 1e-14);
    EXPECT_EQ(s, M3(-s.transpose()));
    EXPECT_LT((tugsim::skew(v) * w + tugsim::skew(w) * v).norm(), 1e-15);
  }
}

TEST(Vee, InvertsSkew) {
  EXPECT_EQ(tugsim::vee(M3::Zero()), V3::Zero());
  EXPECT_EQ(tugsim::vee(tugsim::skew(V3(1, 2, 3))), V3(1, 2, 3));
  std::mt19937_64 rng(12);
  for (int i = 0; i < 200; ++i) {
    const V3 a = oracle::random_vector(rng);
    const V3 b = oracle::random_vector(rng);
    const M3 anti = a * b.transpose() - b * a.transpose();
    EXPECT_LT((tugsim::skew(tugsim::vee(anti)) - anti).norm(), 1e-14);
    EXPECT_LT((tugsim::vee(tugsim::skew(a)) - a).norm(), 1e-15);
  }
}

TEST(Vee, RejectsNonAntisymmetric) {
  EXPECT_THROW(tugsim::vee(M3::Identity()), std::invalid_argument);
  M3 a = tugsim::skew(V3(1, 2, 3));
  a(0, 1) += 1e-6;
  EXPECT_THROW(tugsim::vee(a), std::invalid_argument);
}

TEST(RotToAngleVector, IdentityIsZero) {
  EXPECT_LT(tugsim::rot_to_angle_vector(M3::Identity()).norm(), 1e-15);
}

TEST(RotToAngleVector, QuarterTurnAboutZ) {
  const V3 th = tugsim::rot_to_angle_vector(oracle::rot_axis(2, kPi / 2));
  EXPECT_LT((th - V3(0, 0, kPi / 2)).norm(), 1e-14);
}

TEST(RotToAngleVector, RoundTripsThroughExponential) {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 1000; ++i) {
    const M3 r = oracle::random_rotation(rng);
    const V3 th = tugsim::rot_to_angle_vector(r);
    EXPECT_LE(th.norm(), kPi + 1e-12);
    EXPECT_LT((oracle::axis_angle(th) - r).norm(), 1e-10);
    EXPECT_LT((tugsim::exp_so3(th) - r).norm(), 1e-10);
  }
}

TEST(RotToAngleVector, HalfTurnExtractsAxis) {
  for (int ax = 0; ax < 3; ++ax) {
    const V3 th = tugsim::rot_to_angle_vector(oracle::rot_axis(ax, kPi));
    EXPECT_NEAR(th.norm(), kPi, 1e-12);
    EXPECT_NEAR(std::abs(th(ax)), kPi, 1e-12);
  }
  const V3 axis = V3(1, -2, 0.5).normalized();
  const V3 th = tugsim::rot_to_angle_vector(oracle::axis_angle(kPi * axis));
  EXPECT_NEAR(std::abs(th.dot(axis)), kPi, 1e-10);
  EXPECT_LT((tugsim::exp_so3(th) - oracle::axis_angle(kPi * axis)).norm(), 1e-10);
}

TEST(RotToAngleVector, ContinuousNearIdentity) {
  const V3 small(1e-9, -2e-9, 3e-10);
  EXPECT_LT((tugsim::rot_to_angle_vector(tugsim::exp_so3(small)) - small).norm(), 1e-20);
}

TEST(LeftJacobian, InverseIsInverse) {
  std::mt19937_64 rng(14);
  for (int i = 0; i < 200; ++i) {
    const V3 th = oracle::random_vector(rng, 1.8);
    EXPECT_LT((tugsim::left_jacobian(th) * tugsim::left_jacobian_inverse(th) - M3::Identity()).norm(),
              1e-12);
  }
  const V3 tiny(1e-7, 0, 0);
  EXPECT_LT((tugsim::left_jacobian(tiny) * tugsim::left_jacobian_inverse(tiny) - M3::Identity()).norm(),
            1e-14);
}

TEST(LeftJacobian, DifferentiatesExponential) {
  std::mt19937_64 rng(15);
  const double h = 1e-6;
  for (int i = 0; i < 50; ++i) {
    const V3 th = oracle::random_vector(rng, 1.5);
    const V3 rate = oracle::random_vector(rng);
    const M3 rdot = (oracle::axis_angle(th + h * rate) - oracle::axis_angle(th - h * rate)) / (2 * h);
    const M3 expect = tugsim::skew(V3(tugsim::left_jacobian(th) * rate)) * oracle::axis_angle(th);
    EXPECT_LT((rdot - expect).norm(), 1e-8);
  }
}

TEST(ParallelAxis, ZeroOffsetLeavesInertiaUnchanged) {
  const M3 i = V3(2.5667, 2.5667, 1.6667).asDiagonal();
  EXPECT_EQ(tugsim::parallel_axis(i, 40.0, V3(V3::Zero())), i);
}

TEST(ParallelAxis, BaseLinkMatchesPointMassSummation) {
  const V3 diag(2.5667, 2.5667, 1.6667);
  const double m = 40.0;
  const V3 d(-1.2, 0.2, -0.1);
  const M3 got = tugsim::parallel_axis(M3(diag.asDiagonal()), m, d);

  M3 hand;
  hand << 2.5667 + 40 * (0.04 + 0.01), 40 * 1.2 * 0.2, -40 * 1.2 * 0.1,
          40 * 1.2 * 0.2, 2.5667 + 40 * (1.44 + 0.01), 40 * 0.2 * 0.1,
          -40 * 1.2 * 0.1, 40 * 0.2 * 0.1, 1.6667 + 40 * (1.44 + 0.04);
  EXPECT_LT((got - hand).norm(), 1e-12);

  const auto cloud = oracle::point_cloud(m, diag);
  EXPECT_LT((oracle::inertia_by_summation(cloud, V3::Zero()) - M3(diag.asDiagonal())).norm(), 1e-12);
  EXPECT_LT((oracle::inertia_by_summation(cloud, d) - got).norm(), 1e-11);
}

TEST(ParallelAxis, RandomBodiesMatchSummationAndOnlyGrow) {
  std::mt19937_64 rng(16);
  std::uniform_real_distribution<double> mass(0.5, 50.0);
  for (int i = 0; i < 300; ++i) {
    const double m = mass(rng);
    std::uniform_real_distribution<double> u(0.5, 3.0);
    const double a = u(rng), b = u(rng);
    const V3 diag(a, b, std::uniform_real_distribution<double>(std::abs(a - b) + 0.01, a + b - 0.01)(rng));
    const V3 d = oracle::random_vector(rng, 2.0);
    const M3 got = tugsim::parallel_axis(M3(diag.asDiagonal()), m, d);
    EXPECT_LT((oracle::inertia_by_summation(oracle::point_cloud(m, diag), d) - got).norm(),
              1e-10 * got.norm());

    Eigen::SelfAdjointEigenSolver<M3> extra(M3(got - M3(diag.asDiagonal())));
    EXPECT_GT(extra.eigenvalues().minCoeff(), -1e-12);
    Eigen::SelfAdjointEigenSolver<M3> before(M3(diag.asDiagonal()));
    Eigen::SelfAdjointEigenSolver<M3> after(got);
    for (int k = 0; k < 3; ++k) {
      EXPECT_GE(after.eigenvalues()(k), before.eigenvalues()(k) - 1e-12);
    }
  }
}

TEST(ParallelAxis, RejectsNonPositiveMass) {
  EXPECT_THROW(tugsim::parallel_axis(M3(M3::Identity()), 0.0, V3(1, 0, 0)), std::invalid_argument);
  EXPECT_THROW(tugsim::parallel_axis(M3(M3::Identity()), -1.0, V3(1, 0, 0)), std::invalid_argument);
}

TEST(IntegrateRotation, ZeroRateIsStationary) {
  std::mt19937_64 rng(17);
  const M3 r = oracle::random_rotation(rng);
  EXPECT_LT((tugsim::integrate_rotation(r, V3(V3::Zero()), 0.01) - r).norm(), 1e-15);
}

TEST(IntegrateRotation, QuarterTurnAboutZ) {
  const M3 r = tugsim::integrate_rotation(M3(M3::Identity()), V3(0, 0, 1), kPi / 2);
  EXPECT_LT((r - oracle::rot_axis(2, kPi / 2)).norm(), 1e-9);
}

TEST(IntegrateRotation, StaysOrthonormalOverManySteps) {
  std::mt19937_64 rng(18);
  M3 r = M3::Identity();
  for (int i = 0; i < 1000; ++i) r = tugsim::integrate_rotation(r, oracle::random_vector(rng, 3.0), 0.01);
  EXPECT_LT((r * r.transpose() - M3::Identity()).norm(), 1e-9);
  EXPECT_NEAR(r.determinant(), 1.0, 1e-9);
  EXPECT_TRUE(tugsim::is_rotation(r));
}

TEST(IntegrateRotation, RejectsNonPositiveStep) {
  EXPECT_THROW(tugsim::integrate_rotation(M3(M3::Identity()), V3(1, 0, 0), 0.0), std::invalid_argument);
}

TEST(Orthonormalize, RecoversPerturbedRotation) {
  std::mt19937_64 rng(19);
  for (int i = 0; i < 100; ++i) {
    const M3 r = oracle::random_rotation(rng);
    const M3 noisy = r + 1e-6 * M3::Random();
    const M3 fixed = tugsim::orthonormalize(noisy);
    EXPECT_TRUE(tugsim::is_rotation(fixed, 1e-12));
    EXPECT_LT((fixed - r).norm(), 1e-5);
  }
}

TEST(Wrench, StackingRoundTrips) {
  const tugsim::Wrench<double> w{V3(1, 2, 3), V3(4, 5, 6)};
  const auto back = tugsim::Wrench<double>::from_stacked(w.stacked());
  EXPECT_EQ(back.force, w.force);
  EXPECT_EQ(back.torque, w.torque);
  const auto sum = w + w;
  EXPECT_EQ(sum.stacked(), 2.0 * w.stacked());
  EXPECT_EQ((sum - w).stacked(), w.stacked());
}

}  // namespace
