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

#include <cstdint>
#include <string>

#include "tugsim/adaptive_controller.hpp"
#include "tugsim/satellite_plant.hpp"

namespace tugsim {

/// Initial conditions as stored in scenario files (attitudes as rotation
/// vectors so files round-trip exactly).
struct InitialConditions {
  Vec3<double> position = Vec3<double>::Zero();
  Vec3<double> velocity = Vec3<double>::Zero();
  Vec3<double> attitude_link1 = Vec3<double>::Zero();
  Vec3<double> attitude_link2 = Vec3<double>::Zero();
  Vec3<double> omega_link1 = Vec3<double>::Zero();
  Vec3<double> omega_link2 = Vec3<double>::Zero();

  SpatialState<double> to_state() const;
};

/// Additive Gaussian measurement noise, off by default.
struct NoiseSpec {
  bool enabled = false;
  double position_std = 0.0;
  double attitude_std = 0.0;
  double velocity_std = 0.0;
  double omega_std = 0.0;
};

struct Scenario {
  SatelliteTruth<double> truth;
  ControllerGains<double> gains;
  InitialConditions initial;
  TugEstimate<double> estimate1;
  TugEstimate<double> estimate2;
  double duration = 40.0;
  double dt = 1e-3;
  std::uint64_t seed = 1;
  NoiseSpec noise;
  bool tugs_enabled = true;
  bool adaptation_enabled = true;
  std::string csv_file = "trajectory.csv";

  const TugEstimate<double>& estimate(LinkId id) const {
    return id == LinkId::link1 ? estimate1 : estimate2;
  }
};

/// Throws ValidationError naming the violated invariant.
void validate(const Scenario& scn);

/// Reference satellite, engagement rates and default gains.
Scenario table1_scenario();

/// Controller gains used by table1_scenario().
ControllerGains<double> default_gains();

}  // namespace tugsim
