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

#include "limbkit/sea.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "limbkit/io.hpp"

namespace limbkit::sea {

using namespace limbkit::units;

namespace {

// Decorrelates the recording stream from the controller stream.
constexpr std::uint64_t kRecordStreamSalt = 0x9E3779B97F4A7C15ULL;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void check_bounds(const SeaState& s, const DivergenceBounds& b) {
  const double xs[] = {s.carriage_position.si(), s.load_position.si()};
  const double vs[] = {s.carriage_velocity.si(), s.load_velocity.si()};
  for (double x : xs) {
    if (!(std::abs(x) <= b.max_position_m)) {
      throw NumericalDivergence(s.time.si(), "position " + std::to_string(x) + " m exceeds bound at t = " +
                                                 std::to_string(s.time.si()) + " s");
    }
  }
  for (double v : vs) {
    if (!(std::abs(v) <= b.max_velocity_m_s)) {
      throw NumericalDivergence(s.time.si(), "velocity " + std::to_string(v) + " m/s exceeds bound at t = " +
                                                 std::to_string(s.time.si()) + " s");
    }
  }
}

double sign(double v) { return (v > 0.0) - (v < 0.0); }

}  // namespace

void SeaPlant::validate() const {
  if (!(reflected_mass.si() > 0.0)) throw InvalidArgument("plant: reflected_mass must be > 0");
  if (!(spring_stiffness.si() > 0.0)) throw InvalidArgument("plant: spring_stiffness must be > 0");
  if (!(viscous_damping.si() >= 0.0)) throw InvalidArgument("plant: viscous_damping must be >= 0");
  if (!(load_mass.si() > 0.0)) throw InvalidArgument("plant: load_mass must be > 0");
  if (!(force_limit.si() > 0.0)) throw InvalidArgument("plant: force_limit must be > 0");
  if (!(speed_limit.si() > 0.0)) throw InvalidArgument("plant: speed_limit must be > 0");
  if (!(coulomb_friction.si() >= 0.0)) throw InvalidArgument("plant: coulomb_friction must be >= 0");
}

SeaPlant make_plant(const sizing::MotorSpec& motor, const sizing::ScrewSpec& screw, Stiffness spring,
                    Damping damping, Mass load_mass, Force coulomb_friction) {
  motor.validate();
  screw.validate();
  if (!motor.rotor_inertia) throw InvalidArgument("plant: motor rotor_inertia is required for simulation");
  SeaPlant p{
      sizing::reflected_mass(*motor.rotor_inertia, screw),
      spring,
      damping,
      load_mass,
      sizing::motor_force_limit(motor, screw),
      sizing::motor_speed_limit(motor, screw),
      coulomb_friction,
  };
  p.validate();
  return p;
}

void SensorModel::validate() const {
  if (!(noise_std.si() >= 0.0)) throw InvalidArgument("sensor: noise_std must be >= 0");
  if (!(quantization.si() >= 0.0)) throw InvalidArgument("sensor: quantization must be >= 0");
}

void ForceController::validate() const {
  if (!(kp >= 0.0)) throw InvalidArgument("controller: kp must be >= 0");
  if (!(kd.si() >= 0.0)) throw InvalidArgument("controller: kd must be >= 0");
  if (!(ki.si() >= 0.0)) throw InvalidArgument("controller: ki must be >= 0");
  if (!(sample_rate.si() > 0.0)) throw InvalidArgument("controller: sample_rate must be > 0");
  if (!(setpoint_weight >= 0.0 && setpoint_weight <= 1.0)) {
    throw InvalidArgument("controller: setpoint_weight must lie in [0, 1]");
  }
}

PrescribedLoadMotion sinusoidal_motion(Length amplitude, AngularSpeed omega) {
  const double a = amplitude.si();
  const double w = omega.si();
  return {
      [a, w](Time t) { return Length::from_si(a * std::sin(w * t.si())); },
      [a, w](Time t) { return LinearSpeed::from_si(a * w * std::cos(w * t.si())); },
  };
}

Force measure_force(const SeaState& state, const SeaPlant& plant, const SensorModel& sensor, Rng& rng) {
  double reading = state.spring_deflection().si();
  if (sensor.noise_std.si() > 0.0) {
    std::normal_distribution<double> noise(0.0, sensor.noise_std.si());
    reading += noise(rng);
  }
  const double q = sensor.quantization.si();
  if (q > 0.0) reading = std::round(reading / q) * q;
  return plant.spring_stiffness * Length::from_si(reading);
}

Force measure_force(const SeaState& state, const SeaPlant& plant, const SensorModel& sensor,
                    std::uint64_t rng_seed) {
  Rng rng(rng_seed);
  return measure_force(state, plant, sensor, rng);
}

Energy mechanical_energy(const SeaState& s, const SeaPlant& p, const LoadBoundary& boundary) {
  const double vc = s.carriage_velocity.si();
  const double vl = s.load_velocity.si();
  const double x = s.spring_deflection().si();
  double e = 0.5 * p.reflected_mass.si() * vc * vc + 0.5 * p.spring_stiffness.si() * x * x;
  if (std::holds_alternative<FreeMassLoad>(boundary)) e += 0.5 * p.load_mass.si() * vl * vl;
  return Energy::from_si(e);
}

SeaSimulator::SeaSimulator(SeaPlant plant, ForceController controller, SensorModel sensor, LoadBoundary boundary,
                           std::uint64_t seed, DivergenceBounds bounds)
    : plant_(plant),
      controller_(controller),
      sensor_(sensor),
      boundary_(std::move(boundary)),
      bounds_(bounds),
      rng_(seed) {
  plant_.validate();
  controller_.validate();
  sensor_.validate();
}

SeaState SeaSimulator::initial_state(Length initial_deflection) const {
  SeaState s;
  if (const auto* m = std::get_if<PrescribedLoadMotion>(&boundary_)) {
    s.load_position = m->position(Time::from_si(0.0));
    s.load_velocity = m->velocity(Time::from_si(0.0));
  }
  s.carriage_position = s.load_position + initial_deflection;
  return s;
}

void SeaSimulator::update_controller(ControllerMemory& mem, const SeaState& state, Force desired, Time dt) {
  const double period = 1.0 / controller_.sample_rate.si();
  const double next_time = static_cast<double>(mem.next_sample) * period;
  if (state.time.si() < next_time - 0.5 * dt.si()) return;
  mem.next_sample += 1;

  const Force measured = measure_force(state, plant_, sensor_, rng_);
  mem.measured = measured;
  if (controller_.mode == ControlMode::passive) {
    mem.command = Force::from_si(0.0);
    mem.previous_measured = measured;
    mem.has_previous = true;
    return;
  }

  const double fs = measured.si();
  const double fd = desired.si();
  const double error = fd - fs;
  const double rate = mem.has_previous ? (fs - mem.previous_measured.si()) / period : 0.0;
  const double integral = mem.integral_ns + error * period;

  const double unclipped = fs + controller_.kp * (controller_.setpoint_weight * fd - fs) +
                           controller_.ki.si() * integral - controller_.kd.si() * rate;
  const double limit = plant_.force_limit.si();
  const double clipped = std::clamp(unclipped, -limit, limit);
  const bool saturated = clipped != unclipped;
  if (saturated) ++mem.saturation_count;
  // Conditional integration: hold the integrator while it would push further into the limit.
  if (!(saturated && error * unclipped > 0.0)) mem.integral_ns = integral;

  mem.command = Force::from_si(clipped);
  mem.previous_measured = measured;
  mem.has_previous = true;
}

SeaState SeaSimulator::step(const SeaState& state, Force desired_force, Time dt) {
  if (!(dt.si() > 0.0) || dt.si() > 0.5 / controller_.sample_rate.si() * (1.0 + 1e-12)) {
    throw InvalidArgument("step: dt must satisfy 0 < dt <= 1 / (2 * sample_rate)");
  }
  SeaState next = state;
  update_controller(next.controller, state, desired_force, dt);

  const double h = dt.si();
  const double k = plant_.spring_stiffness.si();
  const double b = plant_.viscous_damping.si();
  const double mc = plant_.reflected_mass.si();
  const double x = state.spring_deflection().si();
  const double v = state.carriage_velocity.si() - state.load_velocity.si();
  const double spring_force = k * x + b * v;
  const double u = next.controller.command.si();

  double net = u - spring_force;
  const double friction = plant_.coulomb_friction.si();
  double vc = state.carriage_velocity.si();
  if (friction > 0.0) {
    if (vc != 0.0) {
      net -= friction * sign(vc);
    } else if (std::abs(net) <= friction) {
      net = 0.0;
    } else {
      net -= friction * sign(net);
    }
  }
  double vc_new = vc + h * net / mc;
  // Kinetic friction cannot reverse the motion within one step.
  if (friction > 0.0 && vc != 0.0 && sign(vc_new) != sign(vc) && std::abs(u - spring_force) <= friction) {
    vc_new = 0.0;
  }
  const double vmax = plant_.speed_limit.si();
  vc_new = std::clamp(vc_new, -vmax, vmax);

  next.carriage_velocity = LinearSpeed::from_si(vc_new);
  next.carriage_position = state.carriage_position + LinearSpeed::from_si(vc_new) * dt;
  next.time = state.time + dt;

  std::visit(Overloaded{
                 [&](const LockedLoad&) {
                   next.load_velocity = LinearSpeed::from_si(0.0);
                 },
                 [&](const FreeMassLoad&) {
                   const double vl = state.load_velocity.si() + h * spring_force / plant_.load_mass.si();
                   next.load_velocity = LinearSpeed::from_si(vl);
                   next.load_position = state.load_position + LinearSpeed::from_si(vl) * dt;
                 },
                 [&](const PrescribedLoadMotion& m) {
                   next.load_position = m.position(next.time);
                   next.load_velocity = m.velocity(next.time);
                 },
             },
             boundary_);

  check_bounds(next, bounds_);
  return next;
}

SeaState step(const SeaState& state, const SeaPlant& plant, const ForceController& ctrl, Force desired_force,
              Time dt) {
  SeaSimulator sim(plant, ctrl, ideal_sensor(), LockedLoad{}, 0);
  return sim.step(state, desired_force, dt);
}

ForceCommand constant_command(Force f) {
  return [f](Time) { return f; };
}

ForceCommand sine_command(Force amplitude, AngularSpeed omega) {
  const double a = amplitude.si();
  const double w = omega.si();
  return [a, w](Time t) { return Force::from_si(a * std::sin(w * t.si())); };
}

ForceCommand sampled_command(std::vector<std::pair<double, double>> time_force) {
  if (time_force.empty()) throw InvalidArgument("sampled_command: no samples");
  std::stable_sort(time_force.begin(), time_force.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  return [pts = std::move(time_force)](Time t) {
    const double ts = t.si();
    if (ts <= pts.front().first) return Force::from_si(pts.front().second);
    if (ts >= pts.back().first) return Force::from_si(pts.back().second);
    auto hi = std::upper_bound(pts.begin(), pts.end(), ts, [](double v, const auto& p) { return v < p.first; });
    auto lo = hi - 1;
    const double span = hi->first - lo->first;
    const double w = span > 0.0 ? (ts - lo->first) / span : 1.0;
    return Force::from_si(lo->second + w * (hi->second - lo->second));
  };
}

Trajectory simulate(const SeaPlant& plant, const ForceController& ctrl, const SensorModel& sensor,
                    const ForceCommand& command, const LoadBoundary& boundary, const SimulationOptions& options) {
  if (!(options.duration.si() > 0.0)) throw InvalidArgument("simulate: duration must be > 0");
  if (!(options.dt.si() > 0.0)) throw InvalidArgument("simulate: dt must be > 0");

  SeaSimulator sim(plant, ctrl, sensor, boundary, options.seed, options.bounds);
  Rng record_rng(options.seed ^ kRecordStreamSalt);

  const double h = options.dt.si();
  const auto steps = static_cast<long long>(std::llround(options.duration.si() / h));
  const long long stride = std::max(1LL, static_cast<long long>(std::llround(options.record_interval.si() / h)));

  Trajectory traj;
  traj.samples.reserve(static_cast<std::size_t>(steps / stride + 2));

  SeaState state = sim.initial_state(options.initial_deflection);
  auto record = [&](const SeaState& s, Force commanded) {
    traj.samples.push_back({s, measure_force(s, plant, sensor, record_rng), commanded, command(s.time)});
  };
  record(state, Force::from_si(0.0));

  for (long long i = 0; i < steps; ++i) {
    state = sim.step(state, command(state.time), options.dt);
    // Re-derive time from the step index so it does not accumulate rounding.
    state.time = Time::from_si(static_cast<double>(i + 1) * h);
    if ((i + 1) % stride == 0 || i + 1 == steps) record(state, state.controller.command);
  }
  traj.saturation_count = state.controller.saturation_count;
  return traj;
}

std::string trajectory_csv_header() {
  return "time_s,carriage_pos_m,load_pos_m,deflection_m,measured_force_n,commanded_force_n,desired_force_n\n";
}

std::string trajectory_csv(const Trajectory& trajectory) {
  io::CsvBuilder csv{"time_s",           "carriage_pos_m",    "load_pos_m",     "deflection_m",
                     "measured_force_n", "commanded_force_n", "desired_force_n"};
  for (const auto& s : trajectory.samples) {
    csv.field(s.state.time.si())
        .field(s.state.carriage_position.si())
        .field(s.state.load_position.si())
        .field(s.state.spring_deflection().si())
        .field(s.measured.si())
        .field(s.commanded.si())
        .field(s.desired.si());
    csv.end_row();
  }
  return csv.str();
}

}  // namespace limbkit::sea
