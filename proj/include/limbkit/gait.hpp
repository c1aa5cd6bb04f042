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

#include <string>
#include <string_view>
#include <vector>

#include "limbkit/units.hpp"

namespace limbkit::gait {

enum class PhaseName { heel_strike, foot_flat, midstance, opposite_heel_strike, toe_off, swing };

std::string_view to_string(PhaseName p);
PhaseName parse_phase_name(std::string_view text);

// A phase covers [start_fraction, end_fraction) of the stride.
struct GaitPhase {
  PhaseName name;
  double start_fraction = 0.0;
  double end_fraction = 0.0;
};

// 60/40 stance/swing with opposite heel strike at 50%.
std::vector<GaitPhase> default_phases();

// Throws InvalidArgument unless the phases tile [0, 1] in order, start with
// heel strike and contain exactly one swing phase, which ends the stride.
void validate_phases(const std::vector<GaitPhase>& phases);

// Stance load is a double hump built from four half-cosine ramps:
// 0 -> 1 at first_peak, down to trough_ratio at trough, up to
// second_peak_ratio at second_peak, back to 0 at toe-off (start of swing).
// Values are fractions of the stride and of the peak load.
struct LoadShape {
  double first_peak = 0.15;
  double trough = 0.30;
  double second_peak = 0.45;
  double trough_ratio = 0.75;
  double second_peak_ratio = 1.0;
};

struct TravelShape {
  units::Length effective_travel = units::Length::from_si(0.108);
  // Swing apex as a fraction of effective travel.
  double apex_fraction = 0.5;
};

class GaitProfile {
 public:
  GaitProfile(units::Force body_weight, units::Time stride_duration, double load_factor,
              std::vector<GaitPhase> phases = default_phases(), LoadShape load_shape = {},
              TravelShape travel_shape = {});

  units::Force body_weight() const { return body_weight_; }
  units::Time stride_duration() const { return stride_duration_; }
  double load_factor() const { return load_factor_; }
  const std::vector<GaitPhase>& phases() const { return phases_; }
  const LoadShape& load_shape() const { return load_shape_; }
  const TravelShape& travel_shape() const { return travel_shape_; }

  units::Force peak_load() const { return load_factor_ * body_weight_; }
  double stance_end() const { return swing_.start_fraction; }

  // Stride fraction in [0, 1) for t >= 0, resolved to 1e-12 of a stride so
  // that t and t + stride map to the same fraction.
  double phase_fraction(units::Time t) const;

  const GaitPhase& phase_at(double fraction) const;
  units::Force axial_load_at(double fraction) const;
  units::Length knee_travel_at(double fraction) const;

 private:
  units::Force body_weight_;
  units::Time stride_duration_;
  double load_factor_;
  std::vector<GaitPhase> phases_;
  LoadShape load_shape_;
  TravelShape travel_shape_;
  GaitPhase swing_;
};

GaitProfile build_profile(units::Force body_weight, units::Time stride_duration, double load_factor);

struct GaitSample {
  units::Force axial_load;
  units::Length knee_travel;
};

// Periodic in t with the stride duration. Throws InvalidArgument for t < 0.
GaitSample sample(const GaitProfile& profile, units::Time t);

// CSV with header time_s,axial_force_n,knee_travel_m over one stride.
std::string profile_csv(const GaitProfile& profile, double sample_rate_hz);

// JSON phase table.
std::string phase_table(const GaitProfile& profile);

}  // namespace limbkit::gait
