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

// limbkit command-line driver.
//
// Exit codes: 0 success, 1 usage/config/input error, 2 design infeasible or
// unsafe, 3 numerical divergence.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "limbkit/config.hpp"
#include "limbkit/errors.hpp"
#include "limbkit/frequency.hpp"
#include "limbkit/gait.hpp"
#include "limbkit/io.hpp"
#include "limbkit/materials.hpp"
#include "limbkit/sea.hpp"
#include "limbkit/sizing.hpp"
#include "limbkit/socket.hpp"
#include "limbkit/stress.hpp"
#include "limbkit/units.hpp"

namespace fs = std::filesystem;
using namespace limbkit;
using namespace limbkit::units;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitDiverged = 3;

struct CommonOptions {
  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
};

void add_common(CLI::App* cmd, CommonOptions& common) {
  cmd->add_option("--config", common.config_path, "Configuration file (JSON); falls back to $LIMBKIT_CONFIG");
  cmd->add_option("--out", common.out_dir, "Output directory (overrides output_dir in the config)");
  cmd->add_option("--seed", common.seed, "Random seed for sensor noise (overrides the config)");
}

// Flags > file > built-in defaults.
ToolkitConfig resolve_config(const CommonOptions& common) {
  std::string path = common.config_path;
  if (path.empty()) {
    if (const char* env = std::getenv("LIMBKIT_CONFIG"); env != nullptr && *env != '\0') path = env;
  }
  ToolkitConfig cfg = path.empty() ? default_config() : load_config(path);
  if (!common.out_dir.empty()) cfg.output_dir = common.out_dir;
  if (common.seed) cfg.seed = *common.seed;
  return cfg;
}

// A bare number is read in default_unit; otherwise "<value> <unit>".
template <class Q>
Q parse_flag(const std::string& flag, const std::string& text, Unit default_unit) {
  double v = 0.0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  try {
    if (ec == std::errc{} && ptr == end) return to_typed<Q>(DynamicQuantity{v, default_unit});
    return to_typed<Q>(parse_quantity(text));
  } catch (const Error& e) {
    throw InvalidArgument(flag + ": " + e.what());
  }
}

void write_output(const fs::path& dir, const std::string& name, const std::string& content) {
  const fs::path path = dir / name;
  io::write_file_atomic(path, content);
  std::cout << "wrote " << path.string() << "\n";
}

std::string fmt(const char* format, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, v);
  return buf;
}

// ---- size ----------------------------------------------------------------

struct SizeArgs {
  std::string load, speed, travel, nut_rating;
};

int cmd_size(const CommonOptions& common, const SizeArgs& a) {
  ToolkitConfig cfg = resolve_config(common);
  if (!a.load.empty()) cfg.sizing.load = parse_flag<Force>("--load", a.load, Unit::newton);
  if (!a.speed.empty()) cfg.sizing.linear_speed = parse_flag<LinearSpeed>("--speed", a.speed, Unit::millimeter_per_minute);
  if (!a.travel.empty()) cfg.geometry.effective_travel = parse_flag<Length>("--travel", a.travel, Unit::millimeter);
  if (!a.nut_rating.empty()) cfg.screw.rated_load = parse_flag<Force>("--nut-rating", a.nut_rating, Unit::pound_force);

  const auto r = sizing::check_feasibility(cfg.sizing.load, cfg.sizing.linear_speed, cfg.geometry.effective_travel,
                                           cfg.screw, cfg.motor);
  std::cout << sizing::format_report(r);

  nlohmann::ordered_json rec;
  rec["load_n"] = cfg.sizing.load.si();
  rec["linear_speed_m_s"] = cfg.sizing.linear_speed.si();
  rec["effective_travel_m"] = cfg.geometry.effective_travel.si();
  rec["required_torque_n_m"] = in(r.required_torque, Unit::newton_meter);
  rec["required_speed_rpm"] = in(r.required_speed, Unit::revolution_per_minute);
  rec["torque_margin"] = r.torque_margin;
  rec["speed_margin"] = r.speed_margin;
  rec["load_margin"] = r.load_margin;
  rec["retraction_time_s"] = r.retraction_time.si();
  rec["feasible"] = r.feasible;
  write_output(cfg.output_dir, "sizing.json", rec.dump(2) + "\n");
  return r.feasible ? kExitOk : kExitInfeasible;
}

// ---- simulate --------------------------------------------------------------

struct SimulateArgs {
  std::string step;
  bool gait = false;
  std::string command_file;
  double duration_s = 2.0;
  std::string boundary = "locked";
};

// Two columns, time_s and force_n, with an optional header line.
sea::ForceCommand load_command_file(const std::string& path) {
  const std::string text = io::read_file(path);
  std::vector<std::pair<double, double>> points;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string::npos) eol = text.size();
    std::string line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    const char* p = line.data();
    const char* end = p + line.size();
    double v[2] = {};
    bool ok = true;
    for (double& x : v) {
      while (p < end && (*p == ' ' || *p == '\t')) ++p;
      auto [q, ec] = std::from_chars(p, end, x);
      if (ec != std::errc{}) {
        ok = false;
        break;
      }
      p = q;
    }
    while (p < end && (*p == ' ' || *p == '\t')) ++p;
    if (!ok || p != end) {
      if (line_no == 1 && points.empty()) continue;  // header
      throw ParseError(line_no, path + ": expected 'time_s,force_n'");
    }
    if (!points.empty() && !(v[0] > points.back().first)) {
      throw ParseError(line_no, path + ": times must be strictly increasing");
    }
    points.emplace_back(v[0], v[1]);
  }
  if (points.empty()) throw ParseError(line_no, path + ": no command samples");
  return sea::sampled_command(std::move(points));
}

int cmd_simulate(const CommonOptions& common, const SimulateArgs& a) {
  ToolkitConfig cfg = resolve_config(common);
  const int sources = static_cast<int>(!a.step.empty()) + static_cast<int>(a.gait) +
                      static_cast<int>(!a.command_file.empty());
  if (sources != 1) throw InvalidArgument("simulate: give exactly one of --step, --gait, --command-file");
  if (!(a.duration_s >= 0.0) || !std::isfinite(a.duration_s)) {
    throw InvalidArgument("simulate: --duration must be >= 0");
  }

  sea::ForceCommand command;
  if (!a.step.empty()) {
    command = sea::constant_command(parse_flag<Force>("--step", a.step, Unit::newton));
  } else if (a.gait) {
    const gait::GaitProfile profile = cfg.gait_profile();
    command = [profile](Time t) { return gait::sample(profile, t).axial_load; };
  } else {
    command = load_command_file(a.command_file);
  }

  sea::LoadBoundary boundary;
  if (a.boundary == "locked") {
    boundary = sea::LockedLoad{};
  } else if (a.boundary == "free") {
    boundary = sea::FreeMassLoad{};
  } else {
    throw InvalidArgument("simulate: --boundary must be 'locked' or 'free'");
  }

  if (a.duration_s == 0.0) {
    write_output(cfg.output_dir, "trajectory.csv", sea::trajectory_csv_header());
    std::cout << "duration 0: empty trajectory\n";
    return kExitOk;
  }

  sea::SimulationOptions opt;
  opt.dt = cfg.simulation.dt;
  opt.duration = seconds(a.duration_s);
  opt.record_interval = cfg.simulation.record_interval;
  opt.seed = cfg.seed;
  opt.bounds = cfg.simulation.bounds;
  const sea::Trajectory tr = sea::simulate(cfg.plant(), cfg.controller, cfg.sensor, command, boundary, opt);
  write_output(cfg.output_dir, "trajectory.csv", sea::trajectory_csv(tr));

  // Steady state = mean over the last 10% of the run.
  const auto& s = tr.samples;
  const std::size_t tail = std::max<std::size_t>(1, s.size() / 10);
  double measured = 0.0, desired = 0.0, peak_deflection = 0.0, peak_desired = 0.0;
  for (std::size_t i = s.size() - tail; i < s.size(); ++i) {
    measured += s[i].measured.si();
    desired += s[i].desired.si();
  }
  measured /= static_cast<double>(tail);
  desired /= static_cast<double>(tail);
  for (const auto& x : s) {
    peak_deflection = std::max(peak_deflection, std::abs(x.state.spring_deflection().si()));
    peak_desired = std::max(peak_desired, std::abs(x.desired.si()));
  }
  const double err = measured - desired;

  nlohmann::ordered_json sum;
  sum["duration_s"] = a.duration_s;
  sum["samples"] = s.size();
  sum["steady_state_desired_n"] = desired;
  sum["steady_state_measured_n"] = measured;
  sum["steady_state_error_n"] = err;
  if (desired != 0.0) sum["steady_state_error_pct"] = 100.0 * std::abs(err) / std::abs(desired);
  sum["peak_deflection_m"] = peak_deflection;
  sum["peak_desired_force_n"] = peak_desired;
  sum["saturation_count"] = tr.saturation_count;
  write_output(cfg.output_dir, "simulate_summary.json", sum.dump(2) + "\n");

  std::cout << "steady-state error: " << fmt("%.4g N", err);
  if (desired != 0.0) std::cout << fmt(" (%.3f %%)", 100.0 * std::abs(err) / std::abs(desired));
  std::cout << "\npeak deflection:    " << fmt("%.4g mm", peak_deflection * 1e3)
            << "\npeak desired force: " << fmt("%.6g N", peak_desired)
            << "\nsaturation count:   " << tr.saturation_count << "\n";
  return kExitOk;
}

// ---- bandwidth -------------------------------------------------------------

struct BandwidthArgs {
  std::vector<double> ks_kn_m;
  std::string amplitude;
};

int cmd_bandwidth(const CommonOptions& common, const BandwidthArgs& a) {
  ToolkitConfig cfg = resolve_config(common);
  if (a.ks_kn_m.empty()) throw InvalidArgument("bandwidth: --ks needs at least one value");
  const Force amplitude =
      a.amplitude.empty() ? cfg.sweep.force_amplitude : parse_flag<Force>("--amplitude", a.amplitude, Unit::newton);

  sea::SweepOptions opt = cfg.sweep.options;
  opt.dt = cfg.simulation.dt;
  opt.seed = cfg.seed;

  io::CsvBuilder table{"ks_n_m", "bandwidth_hz", "low_freq_impedance_n_m", "low_freq_rad_s"};
  std::printf("%12s %14s %22s\n", "k_s [kN/m]", "bandwidth [Hz]", "impedance@f_min [N/m]");
  for (double ks : a.ks_kn_m) {
    if (!(ks > 0.0)) throw InvalidArgument("bandwidth: --ks values must be > 0");
    sea::SeaPlant plant = cfg.plant();
    plant.spring_stiffness = kilonewtons_per_meter(ks);
    const sea::FrequencyResponse fr = sea::force_bandwidth(plant, cfg.controller, cfg.sensor, amplitude, opt);
    const AngularSpeed w_low = AngularSpeed::from_si(2.0 * kPi * opt.f_min_hz);
    const double z_low = sea::impedance_at(plant, cfg.controller, cfg.sensor, cfg.sweep.motion_amplitude, w_low, opt);

    write_output(cfg.output_dir, "bandwidth_ks" + io::format_double(ks) + "kNm.csv", sea::frequency_response_csv(fr));
    table.field(plant.spring_stiffness.si()).field(fr.bandwidth_hz).field(z_low).field(w_low.si());
    table.end_row();
    std::printf("%12g %14.4f %22.6g\n", ks, fr.bandwidth_hz, z_low);
  }
  write_output(cfg.output_dir, "bandwidth_table.csv", table.str());
  return kExitOk;
}

// ---- gait ------------------------------------------------------------------

struct GaitArgs {
  std::string body_weight, stride;
  std::optional<double> load_factor, rate_hz;
};

int cmd_gait(const CommonOptions& common, const GaitArgs& a) {
  ToolkitConfig cfg = resolve_config(common);
  if (!a.body_weight.empty()) cfg.gait.body_weight = parse_flag<Force>("--body-weight", a.body_weight, Unit::pound_force);
  if (!a.stride.empty()) cfg.gait.stride_duration = parse_flag<Time>("--stride", a.stride, Unit::second);
  if (a.load_factor) cfg.gait.load_factor = *a.load_factor;
  if (a.rate_hz) cfg.gait.export_rate_hz = *a.rate_hz;
  const gait::GaitProfile profile = cfg.gait_profile();
  write_output(cfg.output_dir, "gait_profile.csv", gait::profile_csv(profile, cfg.gait.export_rate_hz));
  write_output(cfg.output_dir, "gait_phases.json", gait::phase_table(profile));
  std::cout << "peak axial load: " << fmt("%.6g N", profile.peak_load().si()) << "\n";
  return kExitOk;
}

// ---- socket-map ------------------------------------------------------------

struct SocketArgs {
  std::string input;
  std::optional<int> bands;
  std::string unit;
};

int cmd_socket_map(const CommonOptions& common, const SocketArgs& a) {
  ToolkitConfig cfg = resolve_config(common);
  const int bands = a.bands.value_or(cfg.socket.bands);
  const Unit unit = a.unit.empty() ? cfg.socket.modulus_unit : parse_unit(a.unit);

  socket::DepthGrid grid;
  try {
    grid = socket::load_depth_raster(a.input);
  } catch (const ParseError& e) {
    throw Error(a.input + ": " + e.what());
  }
  const socket::StiffnessField field = socket::quantize_bands(socket::map_stiffness(grid, unit), bands);
  for (const auto& w : field.warnings) std::cerr << "warning: " << w << "\n";

  const std::string stem = fs::path(a.input).stem().string();
  write_output(cfg.output_dir, stem + "_modulus.txt", socket::modulus_raster(field));
  write_output(cfg.output_dir, stem + "_bands.txt", socket::band_raster(field));
  write_output(cfg.output_dir, stem + "_band_boundaries.csv", socket::boundary_table_csv(field));
  write_output(cfg.output_dir, stem + "_field.csv", socket::field_csv(grid, field));

  double dmin = HUGE_VAL, dmax = -HUGE_VAL, mmin = HUGE_VAL, mmax = -HUGE_VAL;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid.is_sentinel(i)) continue;
    dmin = std::min(dmin, grid.depth_mm[i]);
    dmax = std::max(dmax, grid.depth_mm[i]);
    mmin = std::min(mmin, field.modulus[i]);
    mmax = std::max(mmax, field.modulus[i]);
  }
  if (dmin > dmax) {
    std::cout << "no limb cells\n";
  } else {
    const std::string u(symbol(unit));
    std::cout << "depth:   min " << io::format_double(dmin) << " mm, max " << io::format_double(dmax) << " mm\n"
              << "modulus: min " << io::format_double(mmin) << " " << u << ", max " << io::format_double(mmax) << " "
              << u << "\n";
  }
  return kExitOk;
}

// ---- stress ----------------------------------------------------------------

struct StressArgs {
  std::string yield_override;
};

int cmd_stress(const CommonOptions& common, const StressArgs& a) {
  ToolkitConfig cfg = resolve_config(common);
  MaterialCatalog catalog = MaterialCatalog::load(cfg.materials);
  if (!a.yield_override.empty()) {
    const Stress y = parse_flag<Stress>("--yield-override", a.yield_override, Unit::pascal);
    MaterialCatalog patched;
    for (const auto& name : catalog.names()) {
      MaterialProps p = catalog.lookup(name);
      p.yield_strength = y;
      patched.insert(p);
    }
    catalog = std::move(patched);
  }
  const auto reports = stress::run_all_cases(cfg.members, cfg.load_cases, catalog);
  write_output(cfg.output_dir, "stress.csv", stress::reports_csv(reports));

  const auto worst = std::max_element(reports.begin(), reports.end(),
                                      [](const auto& x, const auto& y) { return x.utilization < y.utilization; });
  std::printf("%-14s %-22s %14s %12s %s\n", "member", "case", "von_mises_MPa", "utilization", "safe");
  for (const auto& r : reports) {
    std::printf("%-14s %-22s %14.4f %12.5f %s\n", r.member.c_str(), r.load_case.c_str(), r.von_mises.si() / 1e6,
                r.utilization, r.safe ? "yes" : "NO");
  }
  std::cout << "worst: " << worst->member << " / " << worst->load_case << ", utilization "
            << fmt("%.5g", worst->utilization) << "\n";
  const bool all_safe = std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.safe; });
  return all_safe ? kExitOk : kExitInfeasible;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"limbkit: SEA prosthesis design toolkit"};
  app.require_subcommand(1);
  app.fallthrough(false);

  CommonOptions common;

  SizeArgs size_args;
  auto* size = app.add_subcommand("size", "Ball-screw drivetrain sizing and motor feasibility");
  add_common(size, common);
  size->add_option("--load", size_args.load, "Axial design load (N unless a unit is given, e.g. '300 lbf')");
  size->add_option("--speed", size_args.speed, "Linear speed (mm/min unless a unit is given)");
  size->add_option("--travel", size_args.travel, "Effective linear travel (mm unless a unit is given)");
  size->add_option("--nut-rating", size_args.nut_rating, "Nut rated load (lbf unless a unit is given)");

  SimulateArgs sim_args;
  auto* sim = app.add_subcommand("simulate", "Closed-loop SEA force-control simulation");
  add_common(sim, common);
  sim->add_option("--step", sim_args.step, "Constant force command (N unless a unit is given)");
  sim->add_flag("--gait", sim_args.gait, "Track the gait axial-load profile");
  sim->add_option("--command-file", sim_args.command_file, "CSV of time_s,force_n command samples");
  sim->add_option("--duration", sim_args.duration_s, "Simulated time in seconds")->capture_default_str();
  sim->add_option("--boundary", sim_args.boundary, "Load side: locked or free")->capture_default_str();

  BandwidthArgs bw_args;
  auto* bw = app.add_subcommand("bandwidth", "Force bandwidth and output impedance versus spring stiffness");
  add_common(bw, common);
  bw->add_option("--ks", bw_args.ks_kn_m, "Spring stiffness values in kN/m")->required()->expected(1, -1);
  bw->add_option("--amplitude", bw_args.amplitude, "Force command amplitude (N unless a unit is given)");

  GaitArgs gait_args;
  auto* gt = app.add_subcommand("gait", "Export the gait load and knee-travel profile");
  add_common(gt, common);
  gt->add_option("--body-weight", gait_args.body_weight, "Body weight (lbf unless a unit is given)");
  gt->add_option("--stride", gait_args.stride, "Stride duration (s unless a unit is given)");
  gt->add_option("--load-factor", gait_args.load_factor, "Peak load as a multiple of body weight");
  gt->add_option("--rate", gait_args.rate_hz, "Export sample rate in Hz");

  SocketArgs sock_args;
  auto* sock = app.add_subcommand("socket-map", "Map a bone-depth raster to socket wall stiffness bands");
  add_common(sock, common);
  sock->add_option("input", sock_args.input, "Depth raster: 'width height spacing_mm sentinel' then depths in mm")
      ->required();
  sock->add_option("--bands", sock_args.bands, "Number of durometer bands");
  sock->add_option("--unit", sock_args.unit, "Modulus unit for the mapped field (default from config, MPa)");

  StressArgs stress_args;
  auto* st = app.add_subcommand("stress", "Von Mises member checks for the gait load cases");
  add_common(st, common);
  st->add_option("--yield-override", stress_args.yield_override,
                 "Replace every material's yield strength (Pa unless a unit is given)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitError;
  }

  try {
    if (*size) return cmd_size(common, size_args);
    if (*sim) return cmd_simulate(common, sim_args);
    if (*bw) return cmd_bandwidth(common, bw_args);
    if (*gt) return cmd_gait(common, gait_args);
    if (*sock) return cmd_socket_map(common, sock_args);
    if (*st) return cmd_stress(common, stress_args);
  } catch (const NumericalDivergence& e) {
    std::cerr << "limbkit: numerical divergence at t = " << io::format_double(e.time_s()) << " s: " << e.what()
              << "\n";
    return kExitDiverged;
  } catch (const std::exception& e) {
    std::cerr << "limbkit: error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
