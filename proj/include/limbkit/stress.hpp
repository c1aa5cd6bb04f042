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

// Closed-form member checks. Joints are rigid and each member is checked on
// its own: axial stress F/A, bending at the worst fibre from the transverse
// load on its lever arm, average shear V/A, combined as von Mises for a
// uniaxial-plus-shear beam state. No stress concentration factors.

#include <string>
#include <variant>
#include <vector>

#include "limbkit/materials.hpp"
#include "limbkit/units.hpp"

namespace limbkit::stress {

struct SolidCircle {
  units::Length diameter;
};

// Bending about the axis parallel to width: c = height / 2.
struct Rectangle {
  units::Length width;
  units::Length height;
};

using CrossSection = std::variant<SolidCircle, Rectangle>;

units::Area area(const CrossSection& section);
units::SecondMomentOfArea second_moment(const CrossSection& section);
units::Length extreme_fibre(const CrossSection& section);

// Fraction of each load case component carried by one member.
struct LoadShare {
  double axial = 1.0;
  double shear = 1.0;
};

struct MemberGeometry {
  std::string name;
  CrossSection cross_section;
  units::Length length;
  std::string material;
  LoadShare share;

  void validate() const;
};

enum class CaseName { heel_strike, opposite_heel_strike, standing };

std::string_view to_string(CaseName c);
CaseName parse_case_name(std::string_view text);

struct LoadCase {
  CaseName name;
  units::Force axial;
  units::Force shear;
  units::Length moment_arm;

  void validate() const;
};

struct StressReport {
  std::string member;
  std::string load_case;
  units::Stress axial_stress;
  units::Stress bending_stress;
  units::Stress shear_stress;
  units::Stress von_mises;
  double utilization = 0.0;
  bool safe = true;
};

// sqrt((axial + bending)^2 + 3 * shear^2).
units::Stress von_mises(units::Stress axial, units::Stress bending, units::Stress shear);

// Throws UnknownMaterial when the member's material is not in the catalog.
StressReport evaluate_case(const MemberGeometry& member, const LoadCase& load_case,
                           const MaterialCatalog& catalog);

// Member-major order: all cases for members[0], then members[1], ...
std::vector<StressReport> run_all_cases(const std::vector<MemberGeometry>& members,
                                        const std::vector<LoadCase>& cases, const MaterialCatalog& catalog);

// CSV header: member,case,axial_pa,bending_pa,shear_pa,von_mises_pa,utilization,safe.
std::string reports_csv(const std::vector<StressReport>& reports);

}  // namespace limbkit::stress
