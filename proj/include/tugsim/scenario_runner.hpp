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

#include <cstddef>
#include <random>
#include <string>
#include <vector>

#include "tugsim/adaptive_controller.hpp"
#include "tugsim/satellite_plant.hpp"
#include "tugsim/scenario.hpp"

namespace tugsim {

struct TrajectoryRecord {
  double t = 0.0;
  SpatialState<double> state;
  HingeKinematics<double> hinge;
  Wrench<double> tug1;
  Wrench<double> tug2;
  CompositeError<double> s1;
  CompositeError<double> s2;
  double lyapunov = 0.0;
  TugEstimate<double> estimate1;
  TugEstimate<double> estimate2;
};

struct TrajectoryLog {
  std::vector<TrajectoryRecord> records;

  bool empty() const { return records.empty(); }
  std::size_t size() const { return records.size(); }
};

/// One fixed-step RK4 step of the plant under constant tug wrenches;
/// rotations are re-orthonormalized afterwards.
SpatialState<double> plant_step(const SatelliteTruth<double>& truth,
                                const SpatialState<double>& state,
                                const TugWrenches<double>& tugs, double dt);

/// Closed loop: plant, two tug controllers, optional measurement noise.
class Simulation {
 public:
  explicit Simulation(const Scenario& scn);

  /// Record at the current time, then one plant step under zero-order-hold
  /// wrenches followed by one adaptation step.
  TrajectoryRecord step();

  /// Record at the current time without advancing.
  TrajectoryRecord snapshot();

  double time() const { return t_; }
  std::size_t steps_taken() const { return steps_; }
  const SpatialState<double>& state() const { return state_; }
  const TugController<double>& controller(LinkId id) const {
    return id == LinkId::link1 ? tug1_ : tug2_;
  }

  /// Total V from the true state.
  double lyapunov() const;

 private:
  struct Commands {
    TugCommand<double> tug1;
    TugCommand<double> tug2;
  };

  SpatialState<double> measure();
  Commands command(const SpatialState<double>& measured) const;
  TrajectoryRecord make_record(const Commands& cmd) const;

  Scenario scn_;
  SpatialState<double> state_;
  TugController<double> tug1_;
  TugController<double> tug2_;
  std::mt19937_64 rng_;
  double t_ = 0.0;
  std::size_t steps_ = 0;
};

/// Full run; NumericalError messages carry the failing time.
TrajectoryLog run(const Scenario& scn);

struct DiagnosticEntry {
  std::string name;
  bool passed = false;
  double worst = 0.0;
  double threshold = 0.0;
  std::string detail;
};

struct DiagnosticReport {
  std::vector<DiagnosticEntry> entries;

  bool all_passed() const;
};

/// Random admissible state: uniform attitudes, hinge deflection up to
/// max_deflection rad, unit-scale rates.
SpatialState<double> random_state(std::mt19937_64& rng, double max_deflection = 2.5);

/// Property checks at n_samples random states plus a descent check on a full
/// run of the scenario.
DiagnosticReport diagnostics(const Scenario& scn, int n_samples);

/// Descent figures of a logged run.
struct DescentSummary {
  double v0 = 0.0;
  double v_final = 0.0;
  double max_increase = 0.0;  // largest per-step V increase
};

DescentSummary descent_summary(const TrajectoryLog& log);

}  // namespace tugsim
