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

#include "limbkit/units.hpp"

#include <array>
#include <charconv>
#include <cctype>
#include <utility>

namespace limbkit::units {

namespace {

constexpr DimVec kNone{};
constexpr DimVec kForce{1, 1, -2, 0};
constexpr DimVec kTorque{1, 2, -2, -1};
constexpr DimVec kLength{0, 1, 0, 0};
constexpr DimVec kMass{1, 0, 0, 0};
constexpr DimVec kTime{0, 0, 1, 0};
constexpr DimVec kFrequency{0, 0, -1, 0};
constexpr DimVec kLinearSpeed{0, 1, -1, 0};
constexpr DimVec kAngularSpeed{0, 0, -1, 1};
constexpr DimVec kStiffness{1, 0, -2, 0};
constexpr DimVec kDamping{1, 0, -1, 0};
constexpr DimVec kLead{0, 1, 0, -1};
constexpr DimVec kStress{1, -1, -2, 0};
constexpr DimVec kInertia{1, 2, 0, -2};
constexpr DimVec kDensity{1, -3, 0, 0};

constexpr double kRev = 2.0 * kPi;

// Indexed by Unit; order must follow the enum.
constexpr std::array<UnitInfo, 30> kUnits{{
    {"1", kNone, 1.0},
    {"N", kForce, 1.0},
    {"kN", kForce, 1e3},
    {"lbf", kForce, kPoundForceN},
    {"N*m", kTorque, 1.0},
    {"m", kLength, 1.0},
    {"cm", kLength, 1e-2},
    {"mm", kLength, 1e-3},
    {"kg", kMass, 1.0},
    {"lbm", kMass, kPoundMassKg},
    {"s", kTime, 1.0},
    {"ms", kTime, 1e-3},
    {"Hz", kFrequency, 1.0},
    {"m/s", kLinearSpeed, 1.0},
    {"mm/s", kLinearSpeed, 1e-3},
    {"mm/min", kLinearSpeed, 1e-3 / 60.0},
    {"rad/s", kAngularSpeed, 1.0},
    {"rpm", kAngularSpeed, kRev / 60.0},
    {"rev/s", kAngularSpeed, kRev},
    {"N/m", kStiffness, 1.0},
    {"kN/m", kStiffness, 1e3},
    {"N*s/m", kDamping, 1.0},
    {"mm/rev", kLead, 1e-3 / kRev},
    {"m/rad", kLead, 1.0},
    {"Pa", kStress, 1.0},
    {"kPa", kStress, 1e3},
    {"MPa", kStress, 1e6},
    {"GPa", kStress, 1e9},
    {"kg*m^2", kInertia, 1.0},
    {"kg/m^3", kDensity, 1.0},
}};

double require_nonnegative(double v, const char* what) {
  if (!(v >= 0.0)) {
    throw InvalidArgument(std::string(what) + " must be non-negative, got " + std::to_string(v));
  }
  return v;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

std::string to_string(const DimVec& d) {
  return "[M^" + std::to_string(d.mass) + " L^" + std::to_string(d.length) + " T^" +
         std::to_string(d.time) + " A^" + std::to_string(d.angle) + "]";
}

Efficiency::Efficiency(double v) : value_(v) {
  if (!(v > 0.0 && v <= 1.0)) {
    throw InvalidArgument("efficiency must lie in (0, 1], got " + std::to_string(v));
  }
}

Force newtons(double v) { return Force::from_si(v); }
Force kilonewtons(double v) { return Force::from_si(v * 1e3); }
Force pounds_force(double v) { return Force::from_si(v * kPoundForceN); }
Torque newton_meters(double v) { return Torque::from_si(v); }
Length meters(double v) { return Length::from_si(require_nonnegative(v, "length")); }
Length millimeters(double v) { return Length::from_si(require_nonnegative(v, "length") * 1e-3); }
Mass kilograms(double v) { return Mass::from_si(require_nonnegative(v, "mass")); }
Time seconds(double v) { return Time::from_si(v); }
Time milliseconds(double v) { return Time::from_si(v * 1e-3); }
Stiffness newtons_per_meter(double v) { return Stiffness::from_si(require_nonnegative(v, "stiffness")); }
Stiffness kilonewtons_per_meter(double v) {
  return Stiffness::from_si(require_nonnegative(v, "stiffness") * 1e3);
}
Damping newton_seconds_per_meter(double v) { return Damping::from_si(v); }
LinearSpeed meters_per_second(double v) { return LinearSpeed::from_si(v); }
LinearSpeed millimeters_per_minute(double v) { return LinearSpeed::from_si(v * 1e-3 / 60.0); }
AngularSpeed radians_per_second(double v) { return AngularSpeed::from_si(v); }
AngularSpeed revolutions_per_minute(double v) { return AngularSpeed::from_si(v * kRev / 60.0); }
AngularSpeed revolutions_per_second(double v) { return AngularSpeed::from_si(v * kRev); }
Lead millimeters_per_revolution(double v) { return Lead::from_si(v * 1e-3 / kRev); }
Stress pascals(double v) { return Stress::from_si(v); }
Stress megapascals(double v) { return Stress::from_si(v * 1e6); }
Stress gigapascals(double v) { return Stress::from_si(v * 1e9); }
RotaryInertia kilogram_square_meters(double v) {
  return RotaryInertia::from_si(require_nonnegative(v, "rotary inertia"));
}
Density kilograms_per_cubic_meter(double v) { return Density::from_si(require_nonnegative(v, "density")); }

const UnitInfo& info(Unit u) { return kUnits.at(static_cast<std::size_t>(u)); }

std::string_view symbol(Unit u) { return info(u).symbol; }

Unit parse_unit(std::string_view text) {
  text = trim(text);
  static constexpr std::array<std::pair<std::string_view, Unit>, 6> kAliases{{
      {"", Unit::dimensionless},
      {"N.m", Unit::newton_meter},
      {"Nm", Unit::newton_meter},
      {"rev/min", Unit::revolution_per_minute},
      {"N.s/m", Unit::newton_second_per_meter},
      {"lb", Unit::pound_force},
  }};
  for (const auto& [alias, unit] : kAliases) {
    if (text == alias) return unit;
  }
  for (std::size_t i = 0; i < kUnits.size(); ++i) {
    if (kUnits[i].symbol == text) return static_cast<Unit>(i);
  }
  throw InvalidArgument("unknown unit '" + std::string(text) + "'");
}

DynamicQuantity convert(DynamicQuantity q, Unit target) {
  const UnitInfo& from = info(q.unit);
  const UnitInfo& to = info(target);
  if (!(from.dim == to.dim)) {
    throw DimensionMismatch("cannot convert '" + std::string(from.symbol) + "' " + to_string(from.dim) +
                            " to '" + std::string(to.symbol) + "' " + to_string(to.dim));
  }
  if (q.unit == target) return q;
  return {q.value * from.to_si / to.to_si, target};
}

DynamicQuantity parse_quantity(std::string_view text) {
  text = trim(text);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{}) {
    throw InvalidArgument("expected a number in '" + std::string(text) + "'");
  }
  std::string_view rest(ptr, static_cast<std::size_t>(text.data() + text.size() - ptr));
  return {value, parse_unit(rest)};
}

}  // namespace limbkit::units
