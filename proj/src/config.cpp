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

#include "limbkit/config.hpp"

#include <set>

#include <json.hpp>

#include "limbkit/io.hpp"
#include "limbkit/materials.hpp"

namespace limbkit {

using namespace limbkit::units;
using nlohmann::json;

namespace {

// JSON object reader that rejects keys nobody asked for.
class Section {
 public:
  Section(const json& obj, std::string path) : obj_(obj), path_(std::move(path)) {
    if (!obj_.is_object()) fail("expected an object");
  }

  ~Section() noexcept(false) {
    if (std::uncaught_exceptions() > 0) return;
    for (const auto& [key, _] : obj_.items()) {
      if (!seen_.count(key)) fail("unknown key '" + key + "'");
    }
  }

  Section(const Section&) = delete;
  Section& operator=(const Section&) = delete;

  const json* get(const std::string& key) {
    seen_.insert(key);
    auto it = obj_.find(key);
    return it == obj_.end() ? nullptr : &*it;
  }

  template <class Q>
  void quantity(const std::string& key, Q& out) {
    if (const json* v = get(key)) out = to_quantity<Q>(*v, key);
  }

  void number(const std::string& key, double& out) {
    if (const json* v = get(key)) {
      if (!v->is_number()) fail("'" + key + "' must be a number");
      out = v->get<double>();
    }
  }

  void integer(const std::string& key, int& out) {
    if (const json* v = get(key)) {
      if (!v->is_number_integer()) fail("'" + key + "' must be an integer");
      out = v->get<int>();
    }
  }

  void text(const std::string& key, std::string& out) {
    if (const json* v = get(key)) {
      if (!v->is_string()) fail("'" + key + "' must be a string");
      out = v->get<std::string>();
    }
  }

  std::string child(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(0, "config" + (path_.empty() ? std::string() : " '" + path_ + "'") + ": " + what);
  }

  template <class Q>
  Q to_quantity(const json& v, const std::string& key) const {
    try {
      if (v.is_number()) return Q::from_si(v.get<double>());
      if (v.is_string()) return to_typed<Q>(parse_quantity(v.get<std::string>()));
    } catch (const Error& e) {
      fail("'" + key + "': " + e.what());
    }
    fail("'" + key + "' must be a number (SI) or a \"value unit\" string");
  }

 private:
  const json& obj_;
  std::string path_;
  std::set<std::string> seen_;
};

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  std::filesystem::path path(p);
  if (path.is_relative() && !base.empty()) return base / path;
  return path;
}

stress::MemberGeometry parse_member(const json& obj, const std::string& where) {
  Section s(obj, where);
  stress::MemberGeometry m;
  s.text("name", m.name);
  std::string section = "solid-circle";
  s.text("section", section);
  Length diameter, width, height;
  s.quantity("diameter", diameter);
  s.quantity("width", width);
  s.quantity("height", height);
  if (section == "solid-circle") {
    m.cross_section = stress::SolidCircle{diameter};
  } else if (section == "rectangle") {
    m.cross_section = stress::Rectangle{width, height};
  } else {
    s.fail("unknown section '" + section + "' (solid-circle | rectangle)");
  }
  s.quantity("length", m.length);
  s.text("material", m.material);
  s.number("axial_share", m.share.axial);
  s.number("shear_share", m.share.shear);
  return m;
}

stress::LoadCase parse_load_case(const json& obj, const std::string& where) {
  Section s(obj, where);
  std::string name;
  s.text("name", name);
  stress::LoadCase c{};
  try {
    c.name = stress::parse_case_name(name);
  } catch (const Error& e) {
    s.fail(e.what());
  }
  s.quantity("axial", c.axial);
  s.quantity("shear", c.shear);
  s.quantity("moment_arm", c.moment_arm);
  return c;
}

gait::GaitPhase parse_phase(const json& obj, const std::string& where) {
  Section s(obj, where);
  std::string name;
  s.text("name", name);
  gait::GaitPhase p{};
  try {
    p.name = gait::parse_phase_name(name);
  } catch (const Error& e) {
    s.fail(e.what());
  }
  s.number("start", p.start_fraction);
  s.number("end", p.end_fraction);
  return p;
}

void apply(ToolkitConfig& c, const json& doc, const std::filesystem::path& base) {
  Section root(doc, "");

  if (const json* v = root.get("motor")) {
    Section s(*v, "motor");
    s.quantity("operating_speed", c.motor.operating_speed);
    s.quantity("operating_torque", c.motor.operating_torque);
    s.number("supply_voltage_v", c.motor.supply_voltage_v);
    s.quantity("mass", c.motor.mass);
    if (const json* j = s.get("rotor_inertia")) {
      if (j->is_null()) {
        c.motor.rotor_inertia.reset();
      } else {
        c.motor.rotor_inertia = s.to_quantity<RotaryInertia>(*j, "rotor_inertia");
      }
    }
  }
  if (const json* v = root.get("screw")) {
    Section s(*v, "screw");
    s.quantity("lead", c.screw.lead);
    s.quantity("nut_diameter", c.screw.nut_diameter);
    s.quantity("screw_diameter", c.screw.screw_diameter);
    double eta = c.screw.efficiency.value();
    s.number("efficiency", eta);
    try {
      c.screw.efficiency = Efficiency(eta);
    } catch (const Error& e) {
      s.fail(e.what());
    }
    s.quantity("rated_load", c.screw.rated_load);
  }
  if (const json* v = root.get("spring")) {
    Section s(*v, "spring");
    s.quantity("stiffness", c.spring);
    s.quantity("viscous_damping", c.viscous_damping);
  }
  if (const json* v = root.get("load")) {
    Section s(*v, "load");
    s.quantity("mass", c.load_mass);
    s.quantity("coulomb_friction", c.coulomb_friction);
  }
  if (const json* v = root.get("sensor")) {
    Section s(*v, "sensor");
    s.quantity("noise_std", c.sensor.noise_std);
    s.quantity("quantization", c.sensor.quantization);
  }
  if (const json* v = root.get("controller")) {
    Section s(*v, "controller");
    s.number("kp", c.controller.kp);
    s.quantity("ki", c.controller.ki);
    s.quantity("kd", c.controller.kd);
    s.quantity("sample_rate", c.controller.sample_rate);
    s.number("setpoint_weight", c.controller.setpoint_weight);
  }
  if (const json* v = root.get("simulation")) {
    Section s(*v, "simulation");
    s.quantity("dt", c.simulation.dt);
    s.quantity("record_interval", c.simulation.record_interval);
    s.number("max_position_m", c.simulation.bounds.max_position_m);
    s.number("max_velocity_m_s", c.simulation.bounds.max_velocity_m_s);
  }
  if (const json* v = root.get("sweep")) {
    Section s(*v, "sweep");
    auto& o = c.sweep.options;
    s.number("f_min_hz", o.f_min_hz);
    s.number("f_max_hz", o.f_max_hz);
    s.integer("points_per_decade", o.points_per_decade);
    s.quantity("settle_time", o.settle_time);
    s.integer("measure_cycles", o.measure_cycles);
    s.integer("refine_iterations", o.refine_iterations);
    s.quantity("force_amplitude", c.sweep.force_amplitude);
    s.quantity("motion_amplitude", c.sweep.motion_amplitude);
  }
  if (const json* v = root.get("sizing")) {
    Section s(*v, "sizing");
    s.quantity("load", c.sizing.load);
    s.quantity("linear_speed", c.sizing.linear_speed);
  }
  if (const json* v = root.get("geometry")) {
    Section s(*v, "geometry");
    s.quantity("effective_travel", c.geometry.effective_travel);
    s.quantity("overall_length", c.geometry.overall_length);
  }
  if (const json* v = root.get("gait")) {
    Section s(*v, "gait");
    s.quantity("body_weight", c.gait.body_weight);
    s.quantity("stride_duration", c.gait.stride_duration);
    s.number("load_factor", c.gait.load_factor);
    s.number("swing_apex_fraction", c.gait.swing_apex_fraction);
    s.number("export_rate_hz", c.gait.export_rate_hz);
    if (const json* p = s.get("phases")) {
      if (!p->is_array()) s.fail("'phases' must be an array");
      c.gait.phases.clear();
      for (std::size_t i = 0; i < p->size(); ++i) {
        c.gait.phases.push_back(parse_phase((*p)[i], s.child("phases[" + std::to_string(i) + "]")));
      }
    }
    if (const json* l = s.get("load_shape")) {
      Section ls(*l, s.child("load_shape"));
      ls.number("first_peak", c.gait.load_shape.first_peak);
      ls.number("trough", c.gait.load_shape.trough);
      ls.number("second_peak", c.gait.load_shape.second_peak);
      ls.number("trough_ratio", c.gait.load_shape.trough_ratio);
      ls.number("second_peak_ratio", c.gait.load_shape.second_peak_ratio);
    }
  }
  if (const json* v = root.get("socket")) {
    Section s(*v, "socket");
    std::string unit(symbol(c.socket.modulus_unit));
    s.text("modulus_unit", unit);
    try {
      c.socket.modulus_unit = parse_unit(unit);
    } catch (const Error& e) {
      s.fail(e.what());
    }
    if (!(info(c.socket.modulus_unit).dim == Stress::kDim)) s.fail("modulus_unit must be a stress unit");
    s.integer("bands", c.socket.bands);
  }
  if (const json* v = root.get("materials")) {
    if (!v->is_string()) root.fail("'materials' must be a path string");
    c.materials = resolve(base, v->get<std::string>());
  }
  if (const json* v = root.get("members")) {
    if (!v->is_array()) root.fail("'members' must be an array");
    c.members.clear();
    for (std::size_t i = 0; i < v->size(); ++i) {
      c.members.push_back(parse_member((*v)[i], "members[" + std::to_string(i) + "]"));
    }
  }
  if (const json* v = root.get("load_cases")) {
    if (!v->is_array()) root.fail("'load_cases' must be an array");
    c.load_cases.clear();
    for (std::size_t i = 0; i < v->size(); ++i) {
      c.load_cases.push_back(parse_load_case((*v)[i], "load_cases[" + std::to_string(i) + "]"));
    }
  }
  if (const json* v = root.get("output_dir")) {
    if (!v->is_string()) root.fail("'output_dir' must be a path string");
    c.output_dir = v->get<std::string>();  // relative to the working directory
  }
  if (const json* v = root.get("seed")) {
    if (!v->is_number_unsigned()) root.fail("'seed' must be a non-negative integer");
    c.seed = v->get<std::uint64_t>();
  }
}

}  // namespace

sea::SeaPlant ToolkitConfig::plant() const {
  return sea::make_plant(motor, screw, spring, viscous_damping, load_mass, coulomb_friction);
}

gait::GaitProfile ToolkitConfig::gait_profile() const {
  return gait::GaitProfile(gait.body_weight, gait.stride_duration, gait.load_factor, gait.phases, gait.load_shape,
                           gait::TravelShape{geometry.effective_travel, gait.swing_apex_fraction});
}

void ToolkitConfig::validate() const {
  motor.validate();
  screw.validate();
  // Sizing works without a rotor inertia; simulation asks for it in plant().
  if (motor.rotor_inertia) (void)plant();
  sensor.validate();
  controller.validate();
  if (!(simulation.dt.si() > 0.0)) throw InvalidArgument("simulation: dt must be > 0");
  if (simulation.dt.si() > 0.5 / controller.sample_rate.si() * (1.0 + 1e-12)) {
    throw InvalidArgument("simulation: dt must be <= 1 / (2 * controller sample_rate)");
  }
  if (!(simulation.record_interval.si() > 0.0)) throw InvalidArgument("simulation: record_interval must be > 0");
  if (!(sizing.load.si() > 0.0) || !(sizing.linear_speed.si() > 0.0)) {
    throw InvalidArgument("sizing: load and linear_speed must be > 0");
  }
  if (!(geometry.effective_travel.si() > 0.0) || !(geometry.overall_length.si() > 0.0)) {
    throw InvalidArgument("geometry: lengths must be > 0");
  }
  (void)gait_profile();
  if (socket.bands < 1) throw InvalidArgument("socket: bands must be >= 1");
  if (members.empty() || load_cases.empty()) throw InvalidArgument("stress: members and load_cases must be non-empty");
  for (const auto& m : members) m.validate();
  for (const auto& lc : load_cases) lc.validate();
}

ToolkitConfig default_config() {
  ToolkitConfig c;
  c.motor = {revolutions_per_minute(4790.0), newton_meters(1.69), 50.0, kilograms(3.3),
             kilogram_square_meters(1.4e-4)};
  c.screw = {millimeters_per_revolution(5.0), millimeters(24.0), millimeters(24.0), Efficiency(0.9),
             pounds_force(350.0)};
  c.spring = kilonewtons_per_meter(315.0);
  c.viscous_damping = newton_seconds_per_meter(50.0);
  c.load_mass = kilograms(10.0);
  c.coulomb_friction = newtons(0.0);
  c.sensor = sea::default_sensor();
  c.controller = sea::ForceController{};
  c.sizing = {pounds_force(300.0), millimeters_per_minute(18000.0)};
  c.geometry = {millimeters(108.0), millimeters(665.0)};
  c.gait.body_weight = pounds_force(200.0);
  c.gait.stride_duration = seconds(1.0);
  c.gait.load_factor = 1.5;

  c.members = {
      {"ball-screw", stress::SolidCircle{millimeters(24.0)}, millimeters(300.0), "stainless304", {1.0, 0.0}},
      {"rail-left", stress::Rectangle{millimeters(15.0), millimeters(10.0)}, millimeters(200.0), "stainless304",
       {0.0, 0.5}},
      {"rail-right", stress::Rectangle{millimeters(15.0), millimeters(10.0)}, millimeters(200.0), "stainless304",
       {0.0, 0.5}},
  };
  // Transverse ground reaction ~20% of the vertical load; lever arms are
  // 0.18 and 0.22 of the 665 mm overall length.
  c.load_cases = {
      {stress::CaseName::heel_strike, pounds_force(300.0), pounds_force(60.0), millimeters(120.0)},
      {stress::CaseName::opposite_heel_strike, pounds_force(300.0), pounds_force(60.0), millimeters(146.0)},
      {stress::CaseName::standing, pounds_force(200.0), pounds_force(0.0), millimeters(0.0)},
  };
  c.materials = default_catalog_path();
  return c;
}

ToolkitConfig parse_config(std::string_view json_text, const std::filesystem::path& base_dir) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(0, std::string("config: ") + e.what());
  }
  ToolkitConfig c = default_config();
  apply(c, doc, base_dir);
  try {
    c.validate();
  } catch (const InvalidArgument& e) {
    throw ParseError(0, std::string("config: ") + e.what());
  }
  return c;
}

ToolkitConfig load_config(const std::filesystem::path& path) {
  std::string text;
  try {
    text = io::read_file(path);
  } catch (const Error&) {
    throw Error("cannot read config file '" + path.string() + "'");
  }
  return parse_config(text, path.parent_path());
}

}  // namespace limbkit
