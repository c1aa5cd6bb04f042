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

// Ball-screw drivetrain sizing: static torque and speed demand on the screw,
// retraction time over the effective travel, and the feasibility of a motor
// and nut against those demands.

#include <optional>
#include <string>

#include "limbkit/units.hpp"

namespace limbkit::sizing {

struct ScrewSpec {
  units::Lead lead;
  units::Length nut_diameter;
  units::Length screw_diameter;
  units::Efficiency efficiency{0.9};
  units::Force rated_load;

  void validate() const;
};

struct MotorSpec {
  units::AngularSpeed operating_speed;
  units::Torque operating_torque;
  double supply_voltage_v = 0.0;
  units::Mass mass;
  std::optional<units::RotaryInertia> rotor_inertia;

  void validate() const;
};

struct SizingReport {
  units::Torque required_torque;
  units::AngularSpeed required_speed;
  double torque_margin = 0.0;
  double speed_margin = 0.0;
  units::Time retraction_time;
  double load_margin = 0.0;
  bool feasible = false;
};

// tau = F * L / eta, with L in m/rad (equivalently F*L/(2*pi*eta) for L in m/rev).
units::Torque screw_torque(units::Force load, const ScrewSpec& screw);

// omega = V_L / L.
units::AngularSpeed screw_speed(units::LinearSpeed linear_speed, const ScrewSpec& screw);

// t = travel / (L * omega_m). Throws InvalidArgument for travel <= 0.
units::Time retraction_time(units::Length effective_travel, const ScrewSpec& screw, const MotorSpec& motor);

// Margins are capability / demand ratios. Infeasible designs are reported,
// never thrown.
SizingReport check_feasibility(units::Force load, units::LinearSpeed linear_speed, units::Length travel,
                               const ScrewSpec& screw, const MotorSpec& motor);

// Largest axial force the motor can hold through the screw: tau_m * eta / L.
units::Force motor_force_limit(const MotorSpec& motor, const ScrewSpec& screw);

// Nut speed at the motor's operating speed: omega_m * L.
units::LinearSpeed motor_speed_limit(const MotorSpec& motor, const ScrewSpec& screw);

// Rotor inertia seen as a linear mass at the nut: J / L^2 = J * (2*pi/L_rev)^2.
units::Mass reflected_mass(units::RotaryInertia rotor_inertia, const ScrewSpec& screw);

// Multi-line human-readable report in N*m, rpm and seconds.
std::string format_report(const SizingReport& report);

}  // namespace limbkit::sizing
