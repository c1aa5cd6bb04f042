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

// Sinusoidal sweeps of the simulated actuator. Each frequency point is an
// independent run: settle, then fit a*sin + b*cos + c to the spring force
// k_s * deflection over whole drive cycles. Sensor noise and quantization act
// through the controller only.

#include <cstdint>
#include <string>
#include <vector>

#include "limbkit/sea.hpp"

namespace limbkit::sea {

struct SweepOptions {
  double f_min_hz = 0.1;
  double f_max_hz = 200.0;
  int points_per_decade = 10;
  units::Time settle_time = units::Time::from_si(1.0);
  int measure_cycles = 4;
  units::Time dt = units::Time::from_si(1e-4);
  // Bisection steps on the -3 dB bracket after the grid sweep; 0 disables.
  int refine_iterations = 12;
  std::uint64_t seed = 0;
  bool parallel = true;
};

struct FrequencyResponse {
  std::vector<double> frequencies_rad_s;
  // Force ratio for bandwidth sweeps, N/m for impedance sweeps.
  std::vector<double> magnitude;
  // First -3 dB crossing; NaN when the sweep never drops below it.
  double bandwidth_hz = 0.0;
};

std::vector<double> log_sweep_rad_s(const SweepOptions& options);

// |spring force| / amplitude for a sine force command against a locked load.
double force_gain_at(const SeaPlant& plant, const ForceController& ctrl, const SensorModel& sensor,
                     units::Force amplitude, units::AngularSpeed omega, const SweepOptions& options);

// |spring force| / amplitude for zero force command while the load follows
// amplitude * sin(omega t).
double impedance_at(const SeaPlant& plant, const ForceController& ctrl, const SensorModel& sensor,
                    units::Length amplitude, units::AngularSpeed omega, const SweepOptions& options);

// Throws InvalidArgument when amplitude exceeds the plant force limit.
FrequencyResponse force_bandwidth(const SeaPlant& plant, const ForceController& ctrl, const SensorModel& sensor,
                                  units::Force amplitude, const SweepOptions& options = {});

FrequencyResponse output_impedance(const SeaPlant& plant, const ForceController& ctrl,
                                   const SensorModel& sensor, units::Length motion_amplitude,
                                   const SweepOptions& options = {});

// CSV header: freq_rad_s,magnitude.
std::string frequency_response_csv(const FrequencyResponse& response);

}  // namespace limbkit::sea
