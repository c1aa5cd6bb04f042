#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "gen.hpp"
#include "limbkit/errors.hpp"
#include "limbkit/socket.hpp"

using namespace limbkit;
using namespace limbkit::units;
using namespace limbkit::socket;
using limbkit::testing::for_all;
using limbkit::testing::Gen;

namespace {

DepthGrid grid(std::size_t w, std::size_t h, std::vector<double> depths, double sentinel = -1.0) {
  DepthGrid g;
  g.width = w;
  g.height = h;
  g.spacing = millimeters(2.0);
  g.sentinel = sentinel;
  g.depth_mm = std::move(depths);
  return g;
}

DepthGrid random_grid(Gen& g) {
  const auto w = static_cast<std::size_t>(g.integer(1, 12));
  const auto h = static_cast<std::size_t>(g.integer(1, 12));
  std::vector<double> d(w * h);
  const bool coarse = g.coin();  // coarse grids produce ties
  for (auto& x : d) {
    if (g.integer(0, 5) == 0) {
      x = -1.0;
    } else {
      x = coarse ? static_cast<double>(g.integer(0, 6)) * 10.0 : g.uniform(0.0, 60.0);
    }
  }
  return grid(w, h, d);
}

// O(n^2) reading of the property: deeper bone means a stiffer socket.
bool monotone_brute_force(const DepthGrid& g, const StiffnessField& f) {
  for (std::size_t a = 0; a < g.size(); ++a) {
    if (g.is_sentinel(a) != f.is_sentinel(a)) return false;
    for (std::size_t b = 0; b < g.size(); ++b) {
      if (g.is_sentinel(a) || g.is_sentinel(b)) continue;
      if (g.depth_mm[a] > g.depth_mm[b] && !(f.modulus[a] > f.modulus[b])) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("mapping examples") {
  const auto f = map_stiffness(grid(3, 1, {0.0, 20.0, 50.0}));
  CHECK(f.modulus[0] == 1.0882);
  CHECK(std::abs(f.modulus[1] - 1.8522) < 1e-9);
  CHECK(std::abs(f.modulus[2] - 2.9982) < 1e-9);
  CHECK(f.modulus_unit == Unit::megapascal);
  CHECK(f.modulus_si(0).si() == doctest::Approx(1.0882e6));
  CHECK(f.warnings.empty());
}

TEST_CASE("deep cells warn without failing") {
  const auto f = map_stiffness(grid(2, 1, {10.0, 55.0}));
  REQUIRE(f.warnings.size() == 1);
  CHECK(f.warnings[0].find("50 mm") != std::string::npos);
  CHECK(f.modulus[1] == doctest::Approx(0.0382 * 55.0 + 1.0882));
}

TEST_CASE("affine exactness and sentinel preservation") {
  for_all(61, [](Gen& g, int) {
    const DepthGrid d = random_grid(g);
    const auto f = map_stiffness(d);
    for (std::size_t i = 0; i < d.size(); ++i) {
      CHECK(d.is_sentinel(i) == f.is_sentinel(i));
      if (d.is_sentinel(i)) {
        CHECK(f.modulus[i] == d.sentinel);
      } else {
        CHECK(std::abs(f.modulus[i] - (0.0382 * d.depth_mm[i] + 1.0882)) < 1e-9);
        CHECK(f.modulus[i] > 0.0);
      }
    }
  });
}

TEST_CASE("monotonicity check agrees with brute force") {
  for_all(62, [](Gen& g, int case_index) {
    const DepthGrid d = random_grid(g);
    auto f = map_stiffness(d);
    CAPTURE(case_index);
    CHECK(verify_inverse_monotonicity(d, f));
    CHECK(monotone_brute_force(d, f));
    // Corrupt one cell; both readings must agree on the verdict.
    std::vector<std::size_t> cells;
    for (std::size_t i = 0; i < d.size(); ++i) {
      if (!d.is_sentinel(i)) cells.push_back(i);
    }
    if (cells.size() < 2) return;
    const std::size_t i = cells[static_cast<std::size_t>(g.integer(0, static_cast<int>(cells.size()) - 1))];
    const std::size_t j = cells[static_cast<std::size_t>(g.integer(0, static_cast<int>(cells.size()) - 1))];
    std::swap(f.modulus[i], f.modulus[j]);
    CHECK(verify_inverse_monotonicity(d, f) == monotone_brute_force(d, f));
  });
}

TEST_CASE("monotonicity examples") {
  const auto d = grid(3, 1, {5.0, 15.0, 30.0});
  auto f = map_stiffness(d);
  CHECK(verify_inverse_monotonicity(d, f));
  std::swap(f.modulus[0], f.modulus[2]);
  CHECK_FALSE(verify_inverse_monotonicity(d, f));
  const auto flat = grid(2, 2, {7.0, 7.0, 7.0, 7.0});
  CHECK(verify_inverse_monotonicity(flat, map_stiffness(flat)));
}

TEST_CASE("band examples") {
  const auto d = grid(4, 1, {0.0, 20.0, 30.0, 50.0});
  const auto one = quantize_bands(map_stiffness(d), 1);
  for (int b : one.band) CHECK(b == 0);

  const auto two = quantize_bands(map_stiffness(d), 2);
  const double mid = (1.0882 + 2.9982) / 2.0;
  CHECK(mid == doctest::Approx(2.0432));
  for (std::size_t i = 0; i < d.size(); ++i) CHECK(two.band[i] == (two.modulus[i] < mid ? 0 : 1));
  CHECK(two.band_boundaries.size() == 3);
  CHECK(two.band_boundaries[1] == doctest::Approx(2.0432));

  const auto flat = grid(3, 1, {12.0, 12.0, 12.0});
  const auto q = quantize_bands(map_stiffness(flat), 3);
  REQUIRE_FALSE(q.warnings.empty());
  CHECK(q.warnings.back().find("DegenerateRange") != std::string::npos);
  for (int b : q.band) CHECK(b == 0);
  CHECK_THROWS_AS(quantize_bands(map_stiffness(flat), 0), InvalidArgument);
}

TEST_CASE("quantization coverage and idempotence") {
  for_all(63, [](Gen& g, int) {
    const DepthGrid d = random_grid(g);
    const int n = g.integer(1, 8);
    const auto q = quantize_bands(map_stiffness(d), n);
    CHECK(std::is_sorted(q.band_boundaries.begin(), q.band_boundaries.end()));
    for (std::size_t i = 0; i < d.size(); ++i) {
      if (d.is_sentinel(i)) {
        CHECK(q.band[i] == -1);
      } else {
        CHECK(q.band[i] >= 0);
        CHECK(q.band[i] < n);
      }
    }
    const auto again = quantize_bands(q, n);
    CHECK(again.band == q.band);
    CHECK(again.band_boundaries == q.band_boundaries);
  });
}

TEST_CASE("raster parsing") {
  const auto g = parse_depth_raster("3 2 1.5 -1\n0 10 -1\n20 30 50\n");
  CHECK(g.width == 3);
  CHECK(g.height == 2);
  CHECK(g.spacing.si() == doctest::Approx(1.5e-3));
  CHECK(g.is_sentinel(2));
  CHECK(g.depth_mm[5] == 50.0);

  auto line_of = [](const char* text) -> std::size_t {
    try {
      (void)parse_depth_raster(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return 0;
  };
  CHECK(line_of("2 2 1 -1\n0 1\n2\n") == 3);
  CHECK(line_of("2 2 1 -1\n0 1\n2 3\n4\n") == 4);
  CHECK(line_of("2 2 1 -1\n0 x\n2 3\n") == 2);
  CHECK(line_of("2 2 1 -1\n0 1\n-5 3\n") == 3);
  CHECK(line_of("0 2 1 -1\n") == 1);
  CHECK(line_of("2 2 0 -1\n0 1 2 3\n") == 1);
}

TEST_CASE("raster output round-trips") {
  const auto d = parse_depth_raster("3 2 2 -1\n0 10 -1\n20 30 50\n");
  const auto f = quantize_bands(map_stiffness(d), 3);
  const auto back = parse_depth_raster(modulus_raster(f));
  CHECK(back.width == 3);
  for (std::size_t i = 0; i < f.size(); ++i) CHECK(back.depth_mm[i] == f.modulus[i]);
  const auto bands = parse_depth_raster(band_raster(f));
  for (std::size_t i = 0; i < f.size(); ++i) CHECK(bands.depth_mm[i] == f.band[i]);
  CHECK(boundary_table_csv(f).rfind("band,lower,upper,unit\n0,1.0882,", 0) == 0);
  const std::string csv = field_csv(d, f);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 6);
}
