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

#include "limbkit/sizing.hpp"

#include <cstdio>

namespace limbkit::sizing {

using namespace limbkit::units;

void ScrewSpec::validate() const {
  if (!(lead.si() > 0.0)) throw InvalidArgument("screw lead must be > 0");
  if (!(rated_load.si() > 0.0)) throw InvalidArgument("screw rated_load must be > 0");
  if (nut_diameter.si() < 0.0 || screw_diameter.si() < 0.0) {
    throw InvalidArgument("screw diameters must be non-negative");
  }
}

void MotorSpec::validate() const {
  if (!(operating_speed.si() > 0.0)) throw InvalidArgument("motor operating_speed must be > 0");
  if (!(operating_torque.si() > 0.0)) throw InvalidArgument("motor operating_torque must be > 0");
  if (rotor_inertia && !(rotor_inertia->si() > 0.0)) throw InvalidArgument("motor rotor_inertia must be > 0");
}

Torque screw_torque(Force load, const ScrewSpec& screw) {
  if (load.si() < 0.0) throw InvalidArgument("screw_torque: load must be >= 0");
  return load * screw.lead / screw.efficiency.value();
}

AngularSpeed screw_speed(LinearSpeed linear_speed, const ScrewSpec& screw) {
  if (linear_speed.si() < 0.0) throw InvalidArgument("screw_speed: linear speed must be >= 0");
  return linear_speed / screw.lead;
}

Time retraction_time(Length effective_travel, const ScrewSpec& screw, const MotorSpec& motor) {
  if (!(effective_travel.si() > 0.0)) throw InvalidArgument("retraction_time: effective travel must be > 0");
  return effective_travel / (screw.lead * motor.operating_speed);
}

SizingReport check_feasibility(Force load, LinearSpeed linear_speed, Length travel, const ScrewSpec& screw,
                               const MotorSpec& motor) {
  if (!(load.si() > 0.0) || !(linear_speed.si() > 0.0) || !(travel.si() > 0.0)) {
    throw InvalidArgument("check_feasibility: load, linear speed and travel must be > 0");
  }
  screw.validate();
  motor.validate();

  SizingReport r;
  r.required_torque = screw_torque(load, screw);
  r.required_speed = screw_speed(linear_speed, screw);
  r.torque_margin = motor.operating_torque.si() / r.required_torque.si();
  r.speed_margin = motor.operating_speed.si() / r.required_speed.si();
  r.retraction_time = retraction_time(travel, screw, motor);
  r.load_margin = screw.rated_load.si() / load.si();
  r.feasible = r.torque_margin >= 1.0 && r.speed_margin >= 1.0 && r.load_margin >= 1.0;
  return r;
}

Force motor_force_limit(const MotorSpec& motor, const ScrewSpec& screw) {
  return motor.operating_torque * screw.efficiency.value() / screw.lead;
}

LinearSpeed motor_speed_limit(const MotorSpec& motor, const ScrewSpec& screw) {
  return motor.operating_speed * screw.lead;
}

Mass reflected_mass(RotaryInertia rotor_inertia, const ScrewSpec& screw) {
  return rotor_inertia / (screw.lead * screw.lead);
}

std::string format_report(const SizingReport& r) {
  char buf[512];
  std::snprintf(buf, sizeof buf,
                "required torque   %.4f N*m\n"
                "required speed    %.2f rpm\n"
                "torque margin     %.4f\n"
                "speed margin      %.4f\n"
                "load margin       %.4f\n"
                "retraction time   %.4f s\n"
                "feasible          %s\n",
                in(r.required_torque, Unit::newton_meter), in(r.required_speed, Unit::revolution_per_minute),
                r.torque_margin, r.speed_margin, r.load_margin, r.retraction_time.si(),
                r.feasible ? "yes" : "no");
  return buf;
}

}  // namespace limbkit::sizing
