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

// Typed physical quantities.
//
// Every quantity stores its value in canonical SI units. The dimension is
// tracked at compile time as exponents of (mass, length, time, angle).
// Angle is carried as a pseudo-dimension so that screw lead (m/rad),
// torque (N*m/rad) and angular speed (rad/s) compose without hand-inserted
// factors of 2*pi: lead in mm/rev converts to m/rad on the way in.

#include <cmath>
#include <compare>
#include <string>
#include <string_view>

#include "limbkit/errors.hpp"

namespace limbkit::units {

struct DimVec {
  int mass = 0;
  int length = 0;
  int time = 0;
  int angle = 0;
  friend constexpr bool operator==(const DimVec&, const DimVec&) = default;
};

std::string to_string(const DimVec& d);

template <int M, int L, int T, int A>
class Quantity {
 public:
  static constexpr DimVec kDim{M, L, T, A};

  constexpr Quantity() = default;

  // Unchecked construction from a canonical SI value.
  static constexpr Quantity from_si(double v) { return Quantity(v); }

  constexpr double si() const { return value_; }

  constexpr Quantity operator-() const { return Quantity(-value_); }
  constexpr Quantity& operator+=(Quantity o) {
    value_ += o.value_;
    return *this;
  }
  constexpr Quantity& operator-=(Quantity o) {
    value_ -= o.value_;
    return *this;
  }
  constexpr Quantity& operator*=(double s) {
    value_ *= s;
    return *this;
  }

  friend constexpr Quantity operator+(Quantity a, Quantity b) { return Quantity(a.value_ + b.value_); }
  friend constexpr Quantity operator-(Quantity a, Quantity b) { return Quantity(a.value_ - b.value_); }
  friend constexpr Quantity operator*(double s, Quantity q) { return Quantity(s * q.value_); }
  friend constexpr Quantity operator*(Quantity q, double s) { return Quantity(q.value_ * s); }
  friend constexpr Quantity operator/(Quantity q, double s) { return Quantity(q.value_ / s); }
  friend constexpr auto operator<=>(Quantity a, Quantity b) = default;

 private:
  constexpr explicit Quantity(double v) : value_(v) {}
  double value_ = 0.0;
};

template <int M1, int L1, int T1, int A1, int M2, int L2, int T2, int A2>
constexpr auto operator*(Quantity<M1, L1, T1, A1> a, Quantity<M2, L2, T2, A2> b) {
  using R = Quantity<M1 + M2, L1 + L2, T1 + T2, A1 + A2>;
  return R::from_si(a.si() * b.si());
}

template <int M1, int L1, int T1, int A1, int M2, int L2, int T2, int A2>
constexpr auto operator/(Quantity<M1, L1, T1, A1> a, Quantity<M2, L2, T2, A2> b) {
  using R = Quantity<M1 - M2, L1 - L2, T1 - T2, A1 - A2>;
  return R::from_si(a.si() / b.si());
}

template <int M, int L, int T, int A>
constexpr Quantity<M, L, T, A> abs(Quantity<M, L, T, A> q) {
  return Quantity<M, L, T, A>::from_si(std::abs(q.si()));
}

using Scalar = Quantity<0, 0, 0, 0>;
using Mass = Quantity<1, 0, 0, 0>;
using Length = Quantity<0, 1, 0, 0>;
using Time = Quantity<0, 0, 1, 0>;
using Angle = Quantity<0, 0, 0, 1>;
using Area = Quantity<0, 2, 0, 0>;
using SecondMomentOfArea = Quantity<0, 4, 0, 0>;
using Frequency = Quantity<0, 0, -1, 0>;
using LinearSpeed = Quantity<0, 1, -1, 0>;
using Acceleration = Quantity<0, 1, -2, 0>;
using AngularSpeed = Quantity<0, 0, -1, 1>;
using Force = Quantity<1, 1, -2, 0>;
using Torque = Quantity<1, 2, -2, -1>;
using Power = Quantity<1, 2, -3, 0>;
using Energy = Quantity<1, 2, -2, 0>;
using Stress = Quantity<1, -1, -2, 0>;
using Stiffness = Quantity<1, 0, -2, 0>;
using Damping = Quantity<1, 0, -1, 0>;
using Lead = Quantity<0, 1, 0, -1>;
using RotaryInertia = Quantity<1, 2, 0, -2>;
using Density = Quantity<1, -3, 0, 0>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kPoundForceN = 4.4482216;
inline constexpr double kPoundMassKg = 0.45359237;

// Efficiency in (0, 1].
class Efficiency {
 public:
  explicit Efficiency(double v);
  double value() const { return value_; }

 private:
  double value_;
};

// Named factories. Extents (length, mass, stiffness) reject negative values;
// forces, speeds and stresses are signed.
Force newtons(double v);
Force kilonewtons(double v);
Force pounds_force(double v);
Torque newton_meters(double v);
Length meters(double v);
Length millimeters(double v);
Mass kilograms(double v);
Time seconds(double v);
Time milliseconds(double v);
Stiffness newtons_per_meter(double v);
Stiffness kilonewtons_per_meter(double v);
Damping newton_seconds_per_meter(double v);
LinearSpeed meters_per_second(double v);
LinearSpeed millimeters_per_minute(double v);
AngularSpeed radians_per_second(double v);
AngularSpeed revolutions_per_minute(double v);
AngularSpeed revolutions_per_second(double v);
Lead millimeters_per_revolution(double v);
Stress pascals(double v);
Stress megapascals(double v);
Stress gigapascals(double v);
RotaryInertia kilogram_square_meters(double v);
Density kilograms_per_cubic_meter(double v);

// Runtime unit tags for text input/output.
enum class Unit {
  dimensionless,
  newton,
  kilonewton,
  pound_force,
  newton_meter,
  meter,
  centimeter,
  millimeter,
  kilogram,
  pound_mass,
  second,
  millisecond,
  hertz,
  meter_per_second,
  millimeter_per_second,
  millimeter_per_minute,
  radian_per_second,
  revolution_per_minute,
  revolution_per_second,
  newton_per_meter,
  kilonewton_per_meter,
  newton_second_per_meter,
  millimeter_per_revolution,
  meter_per_radian,
  pascal,
  kilopascal,
  megapascal,
  gigapascal,
  kilogram_square_meter,
  kilogram_per_cubic_meter,
};

struct UnitInfo {
  std::string_view symbol;
  DimVec dim;
  double to_si;
};

const UnitInfo& info(Unit u);
std::string_view symbol(Unit u);
// Accepts the canonical symbols ("rpm", "mm/rev", "kN/m", "N*m", ...).
Unit parse_unit(std::string_view text);

struct DynamicQuantity {
  double value = 0.0;
  Unit unit = Unit::dimensionless;
};

// Re-expresses q in target; throws DimensionMismatch if kinds differ.
DynamicQuantity convert(DynamicQuantity q, Unit target);

// Parses "<number> <unit>" or a bare number (taken as dimensionless).
DynamicQuantity parse_quantity(std::string_view text);

template <class Q>
Q to_typed(DynamicQuantity q) {
  const UnitInfo& u = info(q.unit);
  if (!(u.dim == Q::kDim)) {
    throw DimensionMismatch("unit '" + std::string(u.symbol) + "' has dimension " + to_string(u.dim) +
                            ", expected " + to_string(Q::kDim));
  }
  return Q::from_si(q.value * u.to_si);
}

// Value of q expressed in unit u (which must match q's dimension).
template <int M, int L, int T, int A>
double in(Quantity<M, L, T, A> q, Unit u) {
  const UnitInfo& ui = info(u);
  if (!(ui.dim == Quantity<M, L, T, A>::kDim)) {
    throw DimensionMismatch("cannot express " + to_string(Quantity<M, L, T, A>::kDim) + " in '" +
                            std::string(ui.symbol) + "'");
  }
  return q.si() / ui.to_si;
}

}  // namespace limbkit::units
