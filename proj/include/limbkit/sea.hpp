// Copyright 2026 The limbkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Series elastic actuator plant and force controller.
//
// Two masses joined by the series spring:
//
//   motor --> [carriage m_c] --k_s, b--> [load m_l]
//
// The carriage mass is the rotor inertia reflected through the ball screw.
// The spring deflection is read by a linear potentiometer and converted to
// force with Hooke's law. The load side is locked, free, or driven along a
// prescribed trajectory.
//
// Control law, evaluated at the controller sample rate and held in between:
//
//   u = F_s + kp * (w * F_d - F_s) + ki * integral(F_d - F_s) - kd * dF_s/dt
//
// where F_s is the sensed spring force and w the proportional setpoint
// weight. The leading F_s term cancels the sensed spring load, so with all
// gains at zero the motor exactly holds the carriage. u is clipped to the
// motor force limit; the integrator is frozen while clipping would grow.
//
// Integration is semi-implicit Euler: velocities from the forces at the
// current positions, then positions from the new velocities.

#include <cstdint>
#include <functional>
#include <random>
#include <variant>
#include <vector>

#include "limbkit/sizing.hpp"
#include "limbkit/units.hpp"

namespace limbkit::sea {

struct SeaPlant {
  units::Mass reflected_mass;
  units::Stiffness spring_stiffness;
  units::Damping viscous_damping;
  units::Mass load_mass;
  units::Force force_limit;
  units::LinearSpeed speed_limit;
  // Optional Coulomb friction on the carriage; zero by default.
  units::Force coulomb_friction;

  void validate() const;
};

// Builds the plant from the drivetrain. force_limit and speed_limit follow
// from the motor's operating torque and speed through the screw. Throws
// InvalidArgument when the motor has no rotor inertia.
SeaPlant make_plant(const sizing::MotorSpec& motor, const sizing::ScrewSpec& screw, units::Stiffness spring,
                    units::Damping damping, units::Mass load_mass,
                    units::Force coulomb_friction = units::Force::from_si(0.0));

struct SensorModel {
  enum class Kind { linear_potentiometer };
  units::Length noise_std;
  units::Length quantization;
  Kind kind = Kind::linear_potentiometer;

  void validate() const;
};

inline SensorModel ideal_sensor() { return {}; }

// 0.01 mm steps: a 10-bit potentiometer over 10 mm of spring travel.
inline SensorModel default_sensor() { return {units::Length::from_si(0.0), units::Length::from_si(1e-5)}; }

enum class ControlMode {
  closed_loop,
  // Motor unpowered: zero force regardless of gains.
  passive,
};

struct ForceController {
  double kp = 6.0;
  units::Time kd = units::Time::from_si(0.05);
  units::Frequency ki = units::Frequency::from_si(60.0);
  units::Frequency sample_rate = units::Frequency::from_si(1000.0);
  double setpoint_weight = 0.75;
  ControlMode mode = ControlMode::closed_loop;

  void validate() const;
};

// Controller memory carried between steps.
struct ControllerMemory {
  double integral_ns = 0.0;
  units::Force previous_measured;
  bool has_previous = false;
  units::Force measured;
  units::Force command;
  long long next_sample = 0;
  long long saturation_count = 0;
};

struct SeaState {
  units::Length carriage_position;
  units::LinearSpeed carriage_velocity;
  units::Length load_position;
  units::LinearSpeed load_velocity;
  units::Time time;
  ControllerMemory controller;

  units::Length spring_deflection() const { return carriage_position - load_position; }
};

struct LockedLoad {};
struct FreeMassLoad {};
struct PrescribedLoadMotion {
  std::function<units::Length(units::Time)> position;
  std::function<units::LinearSpeed(units::Time)> velocity;
};
using LoadBoundary = std::variant<LockedLoad, FreeMassLoad, PrescribedLoadMotion>;

// x(t) = amplitude * sin(omega * t).
PrescribedLoadMotion sinusoidal_motion(units::Length amplitude, units::AngularSpeed omega);

struct DivergenceBounds {
  double max_position_m = 10.0;
  double max_velocity_m_s = 1000.0;
};

using Rng = std::mt19937_64;

// k_s * (deflection + noise), with the reading quantized to the sensor step.
units::Force measure_force(const SeaState& state, const SeaPlant& plant, const SensorModel& sensor, Rng& rng);
units::Force measure_force(const SeaState& state, const SeaPlant& plant, const SensorModel& sensor,
                           std::uint64_t rng_seed);

// Kinetic energy of both masses plus spring potential energy.
units::Energy mechanical_energy(const SeaState& state, const SeaPlant& plant, const LoadBoundary& boundary);

// Stepper bound to one plant, controller, sensor and load boundary.
// Owns the sensor noise stream; one instance per run.
class SeaSimulator {
 public:
  SeaSimulator(SeaPlant plant, ForceController controller, SensorModel sensor, LoadBoundary boundary,
               std::uint64_t seed, DivergenceBounds bounds = {});

  // Advances one step of dt. Requires 0 < dt <= 1 / (2 * sample_rate).
  // Throws NumericalDivergence when the state leaves the bounds.
  SeaState step(const SeaState& state, units::Force desired_force, units::Time dt);

  const SeaPlant& plant() const { return plant_; }
  const ForceController& controller() const { return controller_; }
  const SensorModel& sensor() const { return sensor_; }
  const LoadBoundary& boundary() const { return boundary_; }

  // Consistent initial state: a prescribed load starts on its trajectory.
  SeaState initial_state(units::Length initial_deflection = units::Length::from_si(0.0)) const;

 private:
  void update_controller(ControllerMemory& mem, const SeaState& state, units::Force desired, units::Time dt);

  SeaPlant plant_;
  ForceController controller_;
  SensorModel sensor_;
  LoadBoundary boundary_;
  DivergenceBounds bounds_;
  Rng rng_;
};

// One step against a locked load with an ideal sensor.
SeaState step(const SeaState& state, const SeaPlant& plant, const ForceController& ctrl,
              units::Force desired_force, units::Time dt);

using ForceCommand = std::function<units::Force(units::Time)>;

ForceCommand constant_command(units::Force f);
ForceCommand sine_command(units::Force amplitude, units::AngularSpeed omega);
// Piecewise-linear through (t, F) samples, held flat beyond both ends.
ForceCommand sampled_command(std::vector<std::pair<double, double>> time_force);

struct SimulationOptions {
  units::Time dt = units::Time::from_si(1e-4);
  units::Time duration = units::Time::from_si(1.0);
  // Rounded to a whole number of steps, at least one.
  units::Time record_interval = units::Time::from_si(1e-3);
  std::uint64_t seed = 0;
  units::Length initial_deflection;
  DivergenceBounds bounds;
};

struct TrajectorySample {
  SeaState state;
  units::Force measured;
  units::Force commanded;
  units::Force desired;
};

struct Trajectory {
  std::vector<TrajectorySample> samples;
  long long saturation_count = 0;
};

// Uniformly sampled run from the boundary's initial state. The first sample
// is t = 0. Recorded forces use a sensor stream separate from the
// controller's, so the record interval does not perturb the dynamics.
Trajectory simulate(const SeaPlant& plant, const ForceController& ctrl, const SensorModel& sensor,
                    const ForceCommand& command, const LoadBoundary& boundary, const SimulationOptions& options);

// CSV header: time_s,carriage_pos_m,load_pos_m,deflection_m,measured_force_n,
// commanded_force_n,desired_force_n.
std::string trajectory_csv(const Trajectory& trajectory);

std::string trajectory_csv_header();

}  // namespace limbkit::sea
