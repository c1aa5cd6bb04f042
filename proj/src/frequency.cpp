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

#include "limbkit/frequency.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <future>
#include <limits>
#include <numeric>

#include "limbkit/io.hpp"

namespace limbkit::sea {

using namespace limbkit::units;

namespace {

constexpr double kHalfPower = 0.70710678118654752440;

// Least-squares amplitude of y ~ a*sin(wt) + b*cos(wt) + c.
class SineFit {
 public:
  explicit SineFit(double omega) : omega_(omega) {}

  void add(double t, double y) {
    const double basis[3] = {std::sin(omega_ * t), std::cos(omega_ * t), 1.0};
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) normal_[i][j] += basis[i] * basis[j];
      rhs_[i] += basis[i] * y;
    }
  }

  double amplitude() const {
    // Cramer's rule on the 3x3 normal equations.
    auto det3 = [](const double m[3][3]) {
      return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
             m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    };
    const double d = det3(normal_);
    if (d == 0.0) throw Error("sine fit: singular normal equations");
    double coef[2];
    for (int col = 0; col < 2; ++col) {
      double m[3][3];
      for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) m[i][j] = (j == col) ? rhs_[i] : normal_[i][j];
      }
      coef[col] = det3(m) / d;
    }
    return std::hypot(coef[0], coef[1]);
  }

 private:
  double omega_;
  double normal_[3][3] = {};
  double rhs_[3] = {};
};

// Runs one sinusoidal experiment and returns the fitted amplitude of the
// spring force k_s * deflection. The sensor still drives the controller.
double spring_force_amplitude(const SeaPlant& plant, const ForceController& ctrl, const SensorModel& sensor,
                              const ForceCommand& command, const LoadBoundary& boundary, double omega,
                              const SweepOptions& opt) {
  SeaSimulator sim(plant, ctrl, sensor, boundary, opt.seed);
  const double h = opt.dt.si();
  const double period = 2.0 * kPi / omega;
  const auto settle_steps = static_cast<long long>(std::ceil(opt.settle_time.si() / h));
  const auto window_steps = static_cast<long long>(std::llround(opt.measure_cycles * period / h));

  SineFit fit(omega);
  SeaState state = sim.initial_state();
  const long long total = settle_steps + window_steps;
  for (long long i = 0; i < total; ++i) {
    state = sim.step(state, command(state.time), opt.dt);
    state.time = Time::from_si(static_cast<double>(i + 1) * h);
    if (i + 1 > settle_steps) {
      fit.add(state.time.si(), (plant.spring_stiffness * state.spring_deflection()).si());
    }
  }
  return fit.amplitude();
}

std::vector<double> evaluate_all(const std::vector<double>& omegas, const std::function<double(double)>& f,
                                 bool parallel) {
  std::vector<double> out(omegas.size());
  if (!parallel) {
    std::transform(omegas.begin(), omegas.end(), out.begin(), f);
    return out;
  }
  std::vector<std::future<double>> jobs;
  jobs.reserve(omegas.size());
  for (double w : omegas) jobs.push_back(std::async(std::launch::async, f, w));
  for (std::size_t i = 0; i < jobs.size(); ++i) out[i] = jobs[i].get();
  return out;
}

void validate_sweep(const SweepOptions& o) {
  if (!(o.f_min_hz > 0.0 && o.f_max_hz > o.f_min_hz)) throw InvalidArgument("sweep: need 0 < f_min < f_max");
  if (o.points_per_decade < 1) throw InvalidArgument("sweep: points_per_decade must be >= 1");
  if (o.measure_cycles < 1) throw InvalidArgument("sweep: measure_cycles must be >= 1");
  if (!(o.settle_time.si() >= 0.0)) throw InvalidArgument("sweep: settle_time must be >= 0");
}

}  // namespace

std::vector<double> log_sweep_rad_s(const SweepOptions& o) {
  validate_sweep(o);
  const double decades = std::log10(o.f_max_hz / o.f_min_hz);
  const int n = static_cast<int>(std::ceil(decades * o.points_per_decade - 1e-9));
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) {
    const double f = std::min(o.f_max_hz, o.f_min_hz * std::pow(10.0, static_cast<double>(i) / o.points_per_decade));
    out.push_back(2.0 * kPi * f);
  }
  return out;
}

double force_gain_at(const SeaPlant& plant, const ForceController& ctrl, const SensorModel& sensor,
                     Force amplitude, AngularSpeed omega, const SweepOptions& options) {
  const double w = omega.si();
  const double amp = spring_force_amplitude(plant, ctrl, sensor, sine_command(amplitude, omega), LockedLoad{}, w,
                                            options);
  return amp / amplitude.si();
}

double impedance_at(const SeaPlant& plant, const ForceController& ctrl, const SensorModel& sensor,
                    Length amplitude, AngularSpeed omega, const SweepOptions& options) {
  const double w = omega.si();
  const double amp = spring_force_amplitude(plant, ctrl, sensor, constant_command(Force::from_si(0.0)),
                                            sinusoidal_motion(amplitude, omega), w, options);
  return amp / amplitude.si();
}

FrequencyResponse force_bandwidth(const SeaPlant& plant, const ForceController& ctrl, const SensorModel& sensor,
                                  Force amplitude, const SweepOptions& options) {
  if (!(amplitude.si() > 0.0)) throw InvalidArgument("force_bandwidth: amplitude must be > 0");
  if (amplitude > plant.force_limit) throw InvalidArgument("force_bandwidth: amplitude exceeds force limit");

  auto gain = [&](double w) {
    return force_gain_at(plant, ctrl, sensor, amplitude, AngularSpeed::from_si(w), options);
  };

  FrequencyResponse r;
  r.frequencies_rad_s = log_sweep_rad_s(options);
  r.magnitude = evaluate_all(r.frequencies_rad_s, gain, options.parallel);
  r.bandwidth_hz = std::numeric_limits<double>::quiet_NaN();

  std::size_t cross = 0;
  for (std::size_t i = 1; i < r.magnitude.size(); ++i) {
    if (r.magnitude[i - 1] >= kHalfPower && r.magnitude[i] < kHalfPower) {
      cross = i;
      break;
    }
  }
  if (cross == 0) return r;

  // Bisect in log frequency on the bracketing pair.
  double lo = std::log(r.frequencies_rad_s[cross - 1]);
  double hi = std::log(r.frequencies_rad_s[cross]);
  double mag_lo = r.magnitude[cross - 1];
  double mag_hi = r.magnitude[cross];
  std::vector<std::pair<double, double>> extra;
  for (int it = 0; it < options.refine_iterations; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double m = gain(std::exp(mid));
    extra.emplace_back(std::exp(mid), m);
    if (m >= kHalfPower) {
      lo = mid;
      mag_lo = m;
    } else {
      hi = mid;
      mag_hi = m;
    }
  }
  const double t = (mag_lo - kHalfPower) / (mag_lo - mag_hi);
  r.bandwidth_hz = std::exp(lo + t * (hi - lo)) / (2.0 * kPi);

  if (!extra.empty()) {
    std::vector<std::pair<double, double>> all;
    for (std::size_t i = 0; i < r.magnitude.size(); ++i) all.emplace_back(r.frequencies_rad_s[i], r.magnitude[i]);
    all.insert(all.end(), extra.begin(), extra.end());
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end(), [](const auto& a, const auto& b) { return a.first == b.first; }),
              all.end());
    r.frequencies_rad_s.clear();
    r.magnitude.clear();
    for (const auto& [w, m] : all) {
      r.frequencies_rad_s.push_back(w);
      r.magnitude.push_back(m);
    }
  }
  return r;
}

FrequencyResponse output_impedance(const SeaPlant& plant, const ForceController& ctrl, const SensorModel& sensor,
                                   Length motion_amplitude, const SweepOptions& options) {
  if (!(motion_amplitude.si() > 0.0)) throw InvalidArgument("output_impedance: motion amplitude must be > 0");
  FrequencyResponse r;
  r.frequencies_rad_s = log_sweep_rad_s(options);
  r.magnitude = evaluate_all(
      r.frequencies_rad_s,
      [&](double w) { return impedance_at(plant, ctrl, sensor, motion_amplitude, AngularSpeed::from_si(w), options); },
      options.parallel);
  r.bandwidth_hz = std::numeric_limits<double>::quiet_NaN();
  return r;
}

std::string frequency_response_csv(const FrequencyResponse& response) {
  io::CsvBuilder csv{"freq_rad_s", "magnitude"};
  for (std::size_t i = 0; i < response.frequencies_rad_s.size(); ++i) {
    csv.field(response.frequencies_rad_s[i]).field(response.magnitude[i]);
    csv.end_row();
  }
  return csv.str();
}

}  // namespace limbkit::sea
