#include <doctest.h>

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "gen.hpp"
#include "limbkit/errors.hpp"
#include "limbkit/gait.hpp"

using namespace limbkit;
using namespace limbkit::units;
using namespace limbkit::gait;
using limbkit::testing::for_all;
using limbkit::testing::Gen;

namespace {

bool same(const GaitSample& a, const GaitSample& b) {
  return a.axial_load.si() == b.axial_load.si() && a.knee_travel.si() == b.knee_travel.si();
}

double dense_peak(const GaitProfile& p, int n = 20000) {
  double peak = 0.0;
  for (int i = 0; i <= n; ++i) {
    peak = std::max(peak, p.axial_load_at(static_cast<double>(i) / n).si());
  }
  return peak;
}

}  // namespace

TEST_CASE("reference profile peaks at 1.5 x 200 lbf") {
  const auto p = build_profile(pounds_force(200.0), seconds(1.0), 1.5);
  CHECK(p.peak_load().si() == doctest::Approx(1334.0).epsilon(0.005));
  CHECK(dense_peak(p) == doctest::Approx(1.5 * 200.0 * 4.4482216).epsilon(1e-3));
}

TEST_CASE("zero load factor gives no load") {
  const auto p = build_profile(pounds_force(200.0), seconds(1.0), 0.0);
  for (int i = 0; i < 1000; ++i) CHECK(sample(p, seconds(i * 1e-3)).axial_load.si() == 0.0);
}

TEST_CASE("stance carries load, swing does not") {
  const auto p = build_profile(pounds_force(200.0), seconds(1.0), 1.5);
  double integral = 0.0;
  const int n = 6000;
  for (int i = 0; i < n; ++i) integral += p.axial_load_at((i + 0.5) / n * 0.6).si() * (0.6 / n);
  CHECK(integral > 0.0);
  CHECK(sample(p, seconds(0.8)).axial_load.si() == 0.0);
}

TEST_CASE("cycle start and swing apex") {
  const auto p = build_profile(pounds_force(200.0), seconds(1.0), 1.5);
  const auto s0 = sample(p, seconds(0.0));
  CHECK(s0.axial_load.si() == 0.0);
  CHECK(s0.knee_travel.si() == 0.0);
  CHECK(sample(p, seconds(0.01)).axial_load.si() > 0.0);
  const auto s8 = sample(p, seconds(0.8));
  CHECK(s8.axial_load.si() == 0.0);
  CHECK(s8.knee_travel.si() <= 0.108);
  CHECK(s8.knee_travel.si() == doctest::Approx(0.054).epsilon(1e-9));
}

TEST_CASE("periodicity is exact") {
  const auto p = build_profile(pounds_force(200.0), seconds(1.0), 1.5);
  CHECK(same(sample(p, seconds(0.3)), sample(p, seconds(1.3))));
  for_all(31, [](Gen& g, int case_index) {
    const auto q = build_profile(newtons(g.uniform(300.0, 1500.0)), seconds(g.uniform(0.6, 2.0)), 1.5);
    const double t = g.uniform(0.0, 5.0);
    const int k = g.integer(1, 5);
    CAPTURE(case_index);
    CHECK(same(sample(q, seconds(t)), sample(q, seconds(t + k * q.stride_duration().si()))));
  });
}

TEST_CASE("every instant belongs to exactly one phase") {
  const auto p = build_profile(pounds_force(200.0), seconds(1.0), 1.5);
  for_all(32, [&](Gen& g, int) {
    const double f = p.phase_fraction(seconds(g.uniform(0.0, 10.0)));
    int hits = 0;
    for (const auto& ph : p.phases()) hits += (f >= ph.start_fraction && f < ph.end_fraction) ? 1 : 0;
    CHECK(hits == 1);
    const auto& ph = p.phase_at(f);
    CHECK((f >= ph.start_fraction && f < ph.end_fraction));
  }, 2000);
}

TEST_CASE("peak load property over random profiles") {
  for_all(33, [](Gen& g, int) {
    const double bw = g.uniform(200.0, 1500.0);
    const double lf = g.uniform(0.5, 3.0);
    LoadShape shape;
    shape.trough_ratio = g.uniform(0.3, 0.9);
    shape.second_peak_ratio = g.uniform(shape.trough_ratio + 0.01, 1.0);
    const GaitProfile p(newtons(bw), seconds(g.uniform(0.7, 1.5)), lf, default_phases(), shape);
    CHECK(dense_peak(p) == doctest::Approx(lf * bw).epsilon(1e-3));
  }, 50);
}

TEST_CASE("swing is unloaded and holds the travel peak") {
  for_all(34, [](Gen& g, int) {
    TravelShape travel;
    travel.apex_fraction = g.uniform(0.05, 1.0);
    const GaitProfile p(newtons(g.uniform(200.0, 1500.0)), seconds(1.0), 1.5, default_phases(), {}, travel);
    double best = -1.0, best_f = 0.0;
    for (int i = 0; i < 5000; ++i) {
      const double f = i / 5000.0;
      const double x = p.knee_travel_at(f).si();
      CHECK(x >= 0.0);
      CHECK(x <= 0.108);
      if (f < p.stance_end()) {
        CHECK(x == 0.0);
      } else {
        CHECK(p.axial_load_at(f).si() == 0.0);
      }
      if (x > best) {
        best = x;
        best_f = f;
      }
    }
    CHECK(best_f >= p.stance_end());
  }, 30);
}

TEST_CASE("invalid inputs") {
  CHECK_THROWS_AS(build_profile(newtons(0.0), seconds(1.0), 1.5), InvalidArgument);
  CHECK_THROWS_AS(build_profile(newtons(100.0), seconds(0.0), 1.5), InvalidArgument);
  const auto p = build_profile(newtons(100.0), seconds(1.0), 1.5);
  CHECK_THROWS_AS(sample(p, seconds(-1e-3)), InvalidArgument);

  auto gap = default_phases();
  gap[2].start_fraction = 0.31;
  CHECK_THROWS_AS(validate_phases(gap), InvalidArgument);
  auto overlap = default_phases();
  overlap[1].end_fraction = 0.35;
  CHECK_THROWS_AS(validate_phases(overlap), InvalidArgument);
  auto no_heel = default_phases();
  no_heel.erase(no_heel.begin());
  CHECK_THROWS_AS(validate_phases(no_heel), InvalidArgument);
  auto swing_first = default_phases();
  std::rotate(swing_first.begin(), swing_first.end() - 1, swing_first.end());
  CHECK_THROWS_AS(validate_phases(swing_first), InvalidArgument);
  CHECK_THROWS_AS(parse_phase_name("moonwalk"), InvalidArgument);
}

TEST_CASE("exports") {
  const auto p = build_profile(pounds_force(200.0), seconds(1.0), 1.5);
  const std::string csv = profile_csv(p, 100.0);
  CHECK(csv.rfind("time_s,axial_force_n,knee_travel_m\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 102);

  const auto doc = nlohmann::json::parse(phase_table(p));
  REQUIRE(doc["phases"].size() == 6);
  CHECK(doc["phases"][0]["name"] == "heel-strike");
  CHECK(doc["phases"][5]["name"] == "swing");
  CHECK(doc["phases"][5]["start_fraction"] == 0.6);
  CHECK(doc["peak_load_n"].get<double>() == doctest::Approx(1334.4665));
  for (int i = 0; i < 6; ++i) CHECK(parse_phase_name(to_string(static_cast<PhaseName>(i))) == static_cast<PhaseName>(i));
}
