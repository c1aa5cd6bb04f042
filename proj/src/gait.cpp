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

#include "limbkit/gait.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include <json.hpp>

#include "limbkit/io.hpp"

namespace limbkit::gait {

using namespace limbkit::units;

namespace {

constexpr std::array<std::string_view, 6> kPhaseNames{
    "heel-strike", "foot-flat", "midstance", "opposite-heel-strike", "toe-off", "swing"};

constexpr double kPhaseResolution = 1e12;

// Half-cosine ramp from a to b as u goes 0 -> 1; zero slope at both ends.
double ramp(double a, double b, double u) { return a + (b - a) * 0.5 * (1.0 - std::cos(kPi * u)); }

const GaitPhase& find_swing(const std::vector<GaitPhase>& phases) {
  return *std::find_if(phases.begin(), phases.end(),
                       [](const GaitPhase& p) { return p.name == PhaseName::swing; });
}

}  // namespace

std::string_view to_string(PhaseName p) { return kPhaseNames.at(static_cast<std::size_t>(p)); }

PhaseName parse_phase_name(std::string_view text) {
  for (std::size_t i = 0; i < kPhaseNames.size(); ++i) {
    if (kPhaseNames[i] == text) return static_cast<PhaseName>(i);
  }
  throw InvalidArgument("unknown gait phase '" + std::string(text) + "'");
}

std::vector<GaitPhase> default_phases() {
  return {
      {PhaseName::heel_strike, 0.00, 0.10},
      {PhaseName::foot_flat, 0.10, 0.30},
      {PhaseName::midstance, 0.30, 0.50},
      {PhaseName::opposite_heel_strike, 0.50, 0.55},
      {PhaseName::toe_off, 0.55, 0.60},
      {PhaseName::swing, 0.60, 1.00},
  };
}

void validate_phases(const std::vector<GaitPhase>& phases) {
  if (phases.empty()) throw InvalidArgument("gait: no phases");
  if (phases.front().name != PhaseName::heel_strike || phases.front().start_fraction != 0.0) {
    throw InvalidArgument("gait: first phase must be heel-strike starting at 0");
  }
  if (phases.back().end_fraction != 1.0) throw InvalidArgument("gait: last phase must end at 1");
  int swing_count = 0;
  for (std::size_t i = 0; i < phases.size(); ++i) {
    const auto& p = phases[i];
    if (!(p.start_fraction >= 0.0 && p.start_fraction < p.end_fraction && p.end_fraction <= 1.0)) {
      throw InvalidArgument("gait: phase '" + std::string(to_string(p.name)) + "' has an invalid range");
    }
    if (i > 0 && phases[i - 1].end_fraction != p.start_fraction) {
      throw InvalidArgument("gait: phases must be contiguous without overlap");
    }
    if (p.name == PhaseName::swing) ++swing_count;
  }
  if (swing_count != 1 || phases.back().name != PhaseName::swing) {
    throw InvalidArgument("gait: exactly one swing phase is required and it must end the stride");
  }
}

GaitProfile::GaitProfile(Force body_weight, Time stride_duration, double load_factor,
                         std::vector<GaitPhase> phases, LoadShape load_shape, TravelShape travel_shape)
    : body_weight_(body_weight),
      stride_duration_(stride_duration),
      load_factor_(load_factor),
      phases_(std::move(phases)),
      load_shape_(load_shape),
      travel_shape_(travel_shape) {
  if (!(body_weight.si() > 0.0)) throw InvalidArgument("gait: body weight must be > 0");
  if (!(stride_duration.si() > 0.0)) throw InvalidArgument("gait: stride duration must be > 0");
  if (!(load_factor >= 0.0)) throw InvalidArgument("gait: load factor must be >= 0");
  validate_phases(phases_);
  swing_ = find_swing(phases_);

  const auto& s = load_shape_;
  if (!(0.0 < s.first_peak && s.first_peak < s.trough && s.trough < s.second_peak &&
        s.second_peak < swing_.start_fraction)) {
    throw InvalidArgument("gait: load shape points must be ordered inside stance");
  }
  if (!(s.second_peak_ratio > 0.0 && s.second_peak_ratio <= 1.0)) {
    throw InvalidArgument("gait: second_peak_ratio must lie in (0, 1]");
  }
  if (!(s.trough_ratio >= 0.0 && s.trough_ratio <= s.second_peak_ratio)) {
    throw InvalidArgument("gait: trough_ratio must lie in [0, second_peak_ratio]");
  }
  if (!(travel_shape_.effective_travel.si() > 0.0)) throw InvalidArgument("gait: effective travel must be > 0");
  if (!(travel_shape_.apex_fraction >= 0.0 && travel_shape_.apex_fraction <= 1.0)) {
    throw InvalidArgument("gait: apex_fraction must lie in [0, 1]");
  }
}

double GaitProfile::phase_fraction(Time t) const {
  if (!(t.si() >= 0.0)) throw InvalidArgument("gait: sample time must be >= 0");
  double f = std::fmod(t.si(), stride_duration_.si()) / stride_duration_.si();
  f = std::round(f * kPhaseResolution) / kPhaseResolution;
  return f >= 1.0 ? 0.0 : f;
}

const GaitPhase& GaitProfile::phase_at(double fraction) const {
  for (const auto& p : phases_) {
    if (fraction >= p.start_fraction && fraction < p.end_fraction) return p;
  }
  return phases_.back();
}

Force GaitProfile::axial_load_at(double fraction) const {
  const auto& s = load_shape_;
  const double stance_end = swing_.start_fraction;
  double shape = 0.0;
  if (fraction < 0.0 || fraction >= stance_end) {
    shape = 0.0;
  } else if (fraction < s.first_peak) {
    shape = ramp(0.0, 1.0, fraction / s.first_peak);
  } else if (fraction < s.trough) {
    shape = ramp(1.0, s.trough_ratio, (fraction - s.first_peak) / (s.trough - s.first_peak));
  } else if (fraction < s.second_peak) {
    shape = ramp(s.trough_ratio, s.second_peak_ratio, (fraction - s.trough) / (s.second_peak - s.trough));
  } else {
    shape = ramp(s.second_peak_ratio, 0.0, (fraction - s.second_peak) / (stance_end - s.second_peak));
  }
  return shape * peak_load();
}

Length GaitProfile::knee_travel_at(double fraction) const {
  if (fraction < swing_.start_fraction || fraction >= swing_.end_fraction) return Length::from_si(0.0);
  const double u = (fraction - swing_.start_fraction) / (swing_.end_fraction - swing_.start_fraction);
  const double apex = travel_shape_.apex_fraction * travel_shape_.effective_travel.si();
  return Length::from_si(apex * 0.5 * (1.0 - std::cos(2.0 * kPi * u)));
}

GaitProfile build_profile(Force body_weight, Time stride_duration, double load_factor) {
  return GaitProfile(body_weight, stride_duration, load_factor);
}

GaitSample sample(const GaitProfile& profile, Time t) {
  const double f = profile.phase_fraction(t);
  return {profile.axial_load_at(f), profile.knee_travel_at(f)};
}

std::string profile_csv(const GaitProfile& profile, double sample_rate_hz) {
  if (!(sample_rate_hz > 0.0)) throw InvalidArgument("gait: sample rate must be > 0");
  io::CsvBuilder csv{"time_s", "axial_force_n", "knee_travel_m"};
  const auto n = static_cast<long long>(std::llround(profile.stride_duration().si() * sample_rate_hz));
  for (long long i = 0; i <= n; ++i) {
    const Time t = Time::from_si(static_cast<double>(i) / sample_rate_hz);
    const GaitSample s = sample(profile, t);
    csv.field(t.si()).field(s.axial_load.si()).field(s.knee_travel.si());
    csv.end_row();
  }
  return csv.str();
}

std::string phase_table(const GaitProfile& profile) {
  nlohmann::ordered_json doc;
  doc["stride_duration_s"] = profile.stride_duration().si();
  doc["body_weight_n"] = profile.body_weight().si();
  doc["load_factor"] = profile.load_factor();
  doc["peak_load_n"] = profile.peak_load().si();
  auto& arr = doc["phases"] = nlohmann::ordered_json::array();
  for (const auto& p : profile.phases()) {
    nlohmann::ordered_json row;
    row["name"] = to_string(p.name);
    row["start_fraction"] = p.start_fraction;
    row["end_fraction"] = p.end_fraction;
    row["start_s"] = p.start_fraction * profile.stride_duration().si();
    row["end_s"] = p.end_fraction * profile.stride_duration().si();
    arr.push_back(row);
  }
  return doc.dump(2) + "\n";
}

}  // namespace limbkit::gait
