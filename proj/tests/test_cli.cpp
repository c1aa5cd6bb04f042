#include <doctest.h>

#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

const std::string kCli = LIMBKIT_CLI;

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void spit(const fs::path& p, const std::string& text) { std::ofstream(p, std::ios::binary) << text; }

// Scratch directory removed on scope exit.
struct TempDir {
  fs::path path;
  TempDir() {
    std::string tmpl = (fs::temp_directory_path() / "limbkit-cli-XXXXXX").string();
    path = ::mkdtemp(tmpl.data());
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  fs::path operator/(const std::string& name) const { return path / name; }
};

Run run(const TempDir& dir, const std::string& args, const std::string& env = "") {
  const std::string cmd = "cd '" + dir.path.string() + "' && " + env + " '" + kCli + "' " + args + " > stdout.txt 2> stderr.txt";
  const int status = std::system(cmd.c_str());
  Run r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(dir / "stdout.txt");
  r.err = slurp(dir / "stderr.txt");
  return r;
}

std::vector<std::vector<std::string>> read_csv(const fs::path& p) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(slurp(p));
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> row;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) row.push_back(cell);
    rows.push_back(row);
  }
  return rows;
}

double column_max(const fs::path& p, std::size_t col) {
  const auto rows = read_csv(p);
  double best = -1e300;
  for (std::size_t i = 1; i < rows.size(); ++i) best = std::max(best, std::stod(rows[i].at(col)));
  return best;
}

// Coarser sweep so the CLI tests stay quick.
const char* kFastSweep = R"({"sweep": {"points_per_decade": 5, "f_max_hz": 100, "settle_time": "0.5 s"}})";

}  // namespace

TEST_CASE("help and argument errors") {
  TempDir d;
  auto r = run(d, "--help");
  CHECK(r.code == 0);
  for (const char* sub : {"size", "simulate", "bandwidth", "gait", "socket-map", "stress"}) {
    CHECK(r.out.find(sub) != std::string::npos);
  }
  r = run(d, "simulate --help");
  CHECK(r.code == 0);
  CHECK(r.out.find("--step") != std::string::npos);
  CHECK(r.out.find("--config") != std::string::npos);
  CHECK(run(d, "").code == 1);
  CHECK(run(d, "size --bogus").code == 1);
  CHECK(run(d, "frobnicate").code == 1);
  CHECK(run(d, "size --config missing.json").code == 1);
}

TEST_CASE("size exit codes") {
  TempDir d;
  auto r = run(d, "size --out o");
  CHECK(r.code == 0);
  const auto rec = nlohmann::json::parse(slurp(d / "o/sizing.json"));
  CHECK(rec["feasible"] == true);
  CHECK(rec["required_speed_rpm"].get<double>() == doctest::Approx(3600.0));
  CHECK(run(d, "size --out o --load '400 lbf'").code == 2);
  CHECK(run(d, "size --out o --speed 36000").code == 2);
  CHECK(run(d, "size --out o --load -5").code == 1);
  CHECK(run(d, "size --out o --load '5 kg'").code == 1);
}

TEST_CASE("simulate step and edge cases") {
  TempDir d;
  auto r = run(d, "simulate --out o --step 300 --duration 1");
  REQUIRE(r.code == 0);
  const auto sum = nlohmann::json::parse(slurp(d / "o/simulate_summary.json"));
  CHECK(sum["steady_state_error_pct"].get<double>() < 1.0);
  CHECK(slurp(d / "o/trajectory.csv").rfind("time_s,carriage_pos_m,", 0) == 0);

  r = run(d, "simulate --out z --step 300 --duration 0");
  CHECK(r.code == 0);
  CHECK(read_csv(d / "z/trajectory.csv").size() == 1);

  CHECK(run(d, "simulate --out o --duration 1").code == 1);
  CHECK(run(d, "simulate --out o --step 1 --gait").code == 1);
  CHECK(run(d, "simulate --out o --step 1 --duration -1").code == 1);
  CHECK(run(d, "simulate --out o --step 1 --boundary wobbly").code == 1);

  spit(d / "cmd.csv", "time_s,force_n\n0,0\n0.1,200\n");
  r = run(d, "simulate --out c --command-file cmd.csv --duration 0.5");
  CHECK(r.code == 0);
  spit(d / "bad.csv", "0,0\n0.1\n");
  CHECK(run(d, "simulate --out c --command-file bad.csv").code == 1);
}

TEST_CASE("simulate reports divergence") {
  TempDir d;
  spit(d / "wild.json",
       R"({"controller": {"kp": 400, "kd": "2 s"}, "simulation": {"max_position_m": 0.5},
           "screw": {"rated_load": "1e9 N"}, "motor": {"operating_torque": "1e6 N*m", "operating_speed": "1e9 rpm"}})");
  const auto r = run(d, "simulate --config wild.json --out o --step 300 --duration 2");
  CHECK(r.code == 3);
  CHECK(r.err.find("numerical divergence at t =") != std::string::npos);
}

TEST_CASE("gait export peaks at 1.5 body weights") {
  TempDir d;
  REQUIRE(run(d, "gait --out g").code == 0);
  CHECK(column_max(d / "g/gait_profile.csv", 1) == doctest::Approx(1334.0).epsilon(0.005));
  const auto phases = nlohmann::json::parse(slurp(d / "g/gait_phases.json"));
  CHECK(phases["phases"].size() == 6);
  CHECK(run(d, "gait --out g --body-weight 0").code == 1);
}

TEST_CASE("bandwidth table") {
  TempDir d;
  spit(d / "fast.json", kFastSweep);
  auto r = run(d, "bandwidth --config fast.json --out b --ks 100 600");
  REQUIRE(r.code == 0);
  const auto rows = read_csv(d / "b/bandwidth_table.csv");
  REQUIRE(rows.size() == 3);
  CHECK(rows[0][0] == "ks_n_m");
  CHECK(std::stod(rows[2][1]) > std::stod(rows[1][1]));
  CHECK(fs::exists(d / "b/bandwidth_ks100kNm.csv"));
  CHECK(fs::exists(d / "b/bandwidth_ks600kNm.csv"));

  CHECK(run(d, "bandwidth --config fast.json --out s --ks 315").code == 0);
  CHECK(read_csv(d / "s/bandwidth_table.csv").size() == 2);
  CHECK(run(d, "bandwidth --out e --ks").code == 1);
  CHECK(run(d, "bandwidth --out e").code == 1);
  CHECK(run(d, "bandwidth --out e --ks -3").code == 1);
}

TEST_CASE("socket map") {
  TempDir d;
  spit(d / "flat.txt", "2 2 1 -1\n0 0\n0 0\n");
  auto r = run(d, "socket-map flat.txt --out s");
  REQUIRE(r.code == 0);
  const std::string mod = slurp(d / "s/flat_modulus.txt");
  CHECK(mod.find("1.0882 1.0882\n1.0882 1.0882") != std::string::npos);
  CHECK(r.err.find("DegenerateRange") != std::string::npos);

  spit(d / "limb.txt", "3 2 1 -1\n0 25 -1\n50 10 5\n");
  r = run(d, "socket-map limb.txt --out s --bands 2");
  REQUIRE(r.code == 0);
  CHECK(r.out.find("max 50 mm") != std::string::npos);
  CHECK(slurp(d / "s/limb_bands.txt").find("0 1 -1\n1 0 0") != std::string::npos);
  CHECK(fs::exists(d / "s/limb_band_boundaries.csv"));
  CHECK(fs::exists(d / "s/limb_field.csv"));

  spit(d / "deep.txt", "1 1 1 -1\n60\n");
  r = run(d, "socket-map deep.txt --out s");
  CHECK(r.code == 0);
  CHECK(r.err.find("50 mm") != std::string::npos);

  spit(d / "short.txt", "2 2 1 -1\n0 1\n2\n");
  r = run(d, "socket-map short.txt --out s");
  CHECK(r.code == 1);
  CHECK(r.err.find("short.txt") != std::string::npos);
  CHECK(run(d, "socket-map missing.txt --out s").code == 1);
  CHECK(run(d, "socket-map limb.txt --out s --bands 0").code == 1);
}

TEST_CASE("stress checks") {
  TempDir d;
  auto r = run(d, "stress --out t");
  CHECK(r.code == 0);
  const auto rows = read_csv(d / "t/stress.csv");
  CHECK(rows.size() == 1 + 9);
  CHECK(r.out.find("worst: rail") != std::string::npos);
  CHECK(run(d, "stress --out t --yield-override 1").code == 2);
}

TEST_CASE("config from the environment") {
  TempDir d;
  spit(d / "env.json", R"({"gait": {"body_weight": "100 lbf"}})");
  REQUIRE(run(d, "gait --out g", "LIMBKIT_CONFIG=env.json").code == 0);
  CHECK(column_max(d / "g/gait_profile.csv", 1) == doctest::Approx(667.0).epsilon(0.005));
  // An explicit flag wins over the environment.
  spit(d / "flag.json", R"({"gait": {"body_weight": "300 lbf"}})");
  REQUIRE(run(d, "gait --config flag.json --out h", "LIMBKIT_CONFIG=env.json").code == 0);
  CHECK(column_max(d / "h/gait_profile.csv", 1) == doctest::Approx(2001.0).epsilon(0.005));
  CHECK(run(d, "gait --out g", "LIMBKIT_CONFIG=nope.json").code == 1);
}

TEST_CASE("outputs are byte-identical across runs") {
  TempDir d;
  spit(d / "noisy.json", R"({"sensor": {"noise_std": "0.002 mm"}})");
  REQUIRE(run(d, "simulate --config noisy.json --seed 11 --out a --gait --duration 1").code == 0);
  REQUIRE(run(d, "simulate --config noisy.json --seed 11 --out b --gait --duration 1").code == 0);
  CHECK(slurp(d / "a/trajectory.csv") == slurp(d / "b/trajectory.csv"));
  REQUIRE(run(d, "simulate --config noisy.json --seed 12 --out c --gait --duration 1").code == 0);
  CHECK(slurp(d / "a/trajectory.csv") != slurp(d / "c/trajectory.csv"));
  REQUIRE(run(d, "gait --out g1").code == 0);
  REQUIRE(run(d, "gait --out g2").code == 0);
  CHECK(slurp(d / "g1/gait_profile.csv") == slurp(d / "g2/gait_profile.csv"));
}
