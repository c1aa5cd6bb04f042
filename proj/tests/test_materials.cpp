#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "limbkit/errors.hpp"
#include "limbkit/io.hpp"
#include "limbkit/materials.hpp"

using namespace limbkit;
using namespace limbkit::units;

namespace {

const char* kTwoMaterials = R"({"materials": [
  {"name": "steel", "youngs_modulus_pa": 200e9, "yield_strength_pa": 250e6, "density_kg_m3": 7850},
  {"name": "pla", "youngs_modulus_pa": 3.5e9, "yield_strength_pa": 50e6, "density_kg_m3": 1240}
]})";

}  // namespace

TEST_CASE("shipped catalog holds handbook values") {
  const auto cat = MaterialCatalog::load(default_catalog_path());
  CHECK(cat.lookup("al6061").yield_strength.si() == doctest::Approx(276e6));
  CHECK(cat.lookup("al6061").youngs_modulus.si() == doctest::Approx(68.9e9));
  CHECK(cat.lookup("abs").youngs_modulus.si() == doctest::Approx(2.0e9).epsilon(0.05));
  CHECK(cat.contains("stainless304"));
  CHECK_THROWS_AS(cat.lookup("unobtainium"), UnknownMaterial);
}

TEST_CASE("unknown material error names the material") {
  const auto cat = MaterialCatalog::parse(kTwoMaterials);
  try {
    (void)cat.lookup("unobtainium");
    FAIL("expected UnknownMaterial");
  } catch (const UnknownMaterial& e) {
    CHECK(std::string(e.what()).find("unobtainium") != std::string::npos);
  }
}

TEST_CASE("identical bytes give identical catalogs") {
  const auto a = MaterialCatalog::parse(kTwoMaterials);
  const auto b = MaterialCatalog::parse(kTwoMaterials);
  CHECK(a == b);
  CHECK(a.names() == std::vector<std::string>{"pla", "steel"});

  const auto dir = std::filesystem::temp_directory_path() / "limbkit_materials_test";
  io::write_file_atomic(dir / "cat.json", kTwoMaterials);
  CHECK(MaterialCatalog::load(dir / "cat.json") == a);
  std::filesystem::remove_all(dir);
}

TEST_CASE("malformed catalogs are rejected") {
  CHECK_THROWS_AS(MaterialCatalog::parse("{"), ParseError);
  CHECK_THROWS_AS(MaterialCatalog::parse("{}"), ParseError);
  CHECK_THROWS_AS(MaterialCatalog::parse(R"({"materials": [
    {"name": "x", "youngs_modulus_pa": 1e9, "yield_strength_pa": 0, "density_kg_m3": 1}]})"),
                  ParseError);
  CHECK_THROWS_AS(MaterialCatalog::parse(R"({"materials": [
    {"name": "x", "youngs_modulus_pa": 1e9, "yield_strength_pa": 1e6, "density_kg_m3": 1},
    {"name": "x", "youngs_modulus_pa": 1e9, "yield_strength_pa": 1e6, "density_kg_m3": 1}]})"),
                  ParseError);
  CHECK_THROWS_AS(MaterialCatalog::load("/nonexistent/catalog.json"), Error);
}

TEST_CASE("insert validates") {
  MaterialCatalog cat;
  CHECK_THROWS_AS(cat.insert({"bad", pascals(0.0), pascals(1.0), kilograms_per_cubic_meter(1.0)}), InvalidArgument);
  cat.insert({"ok", gigapascals(1.0), megapascals(1.0), kilograms_per_cubic_meter(1.0)});
  CHECK(cat.contains("ok"));
}
