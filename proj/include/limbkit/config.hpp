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

// Toolkit configuration. A JSON file overlays the built-in defaults, which
// describe the reference prosthesis. Quantities are either bare numbers in
// SI units or strings with a unit: "4790 rpm", "5 mm/rev", "350 lbf".

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "limbkit/frequency.hpp"
#include "limbkit/gait.hpp"
#include "limbkit/sea.hpp"
#include "limbkit/sizing.hpp"
#include "limbkit/stress.hpp"
#include "limbkit/units.hpp"

namespace limbkit {

struct SimulationSettings {
  units::Time dt = units::Time::from_si(1e-4);
  units::Time record_interval = units::Time::from_si(1e-3);
  sea::DivergenceBounds bounds;
};

struct SweepSettings {
  sea::SweepOptions options;
  units::Force force_amplitude = units::Force::from_si(50.0);
  units::Length motion_amplitude = units::Length::from_si(1e-3);
};

struct SizingInputs {
  units::Force load;
  units::LinearSpeed linear_speed;
};

struct GeometrySettings {
  units::Length effective_travel;
  units::Length overall_length;
};

struct GaitSettings {
  units::Force body_weight;
  units::Time stride_duration;
  double load_factor = 1.5;
  std::vector<gait::GaitPhase> phases = gait::default_phases();
  gait::LoadShape load_shape;
  double swing_apex_fraction = 0.5;
  double export_rate_hz = 1000.0;
};

struct SocketSettings {
  units::Unit modulus_unit = units::Unit::megapascal;
  int bands = 4;
};

struct ToolkitConfig {
  sizing::MotorSpec motor;
  sizing::ScrewSpec screw;
  units::Stiffness spring;
  units::Damping viscous_damping;
  units::Mass load_mass;
  units::Force coulomb_friction;
  sea::SensorModel sensor;
  sea::ForceController controller;
  SimulationSettings simulation;
  SweepSettings sweep;
  SizingInputs sizing;
  GeometrySettings geometry;
  GaitSettings gait;
  SocketSettings socket;
  std::vector<stress::MemberGeometry> members;
  std::vector<stress::LoadCase> load_cases;
  std::filesystem::path materials;
  std::filesystem::path output_dir = "limbkit-out";
  std::uint64_t seed = 0;

  sea::SeaPlant plant() const;
  gait::GaitProfile gait_profile() const;

  // Throws InvalidArgument when any sub-config breaks its invariants.
  void validate() const;
};

// The reference prosthesis: 4790 rpm / 1.69 N*m motor, 5 mm/rev 24 mm screw,
// 315 kN/m spring, 108 mm travel.
ToolkitConfig default_config();

// Overlays the JSON document on defaults. Relative paths resolve against
// base_dir, except output_dir, which is relative to the working directory.
// Throws ParseError on malformed input or unknown keys.
ToolkitConfig parse_config(std::string_view json_text, const std::filesystem::path& base_dir = {});

// Throws Error naming the path when it cannot be read.
ToolkitConfig load_config(const std::filesystem::path& path);

}  // namespace limbkit
