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

#include "limbkit/materials.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#ifndef LIMBKIT_DATA_DIR
#define LIMBKIT_DATA_DIR "data"
#endif

namespace limbkit {

void MaterialProps::validate() const {
  if (name.empty()) throw InvalidArgument("material name is empty");
  if (!(youngs_modulus.si() > 0.0)) throw InvalidArgument("material '" + name + "': youngs_modulus must be > 0");
  if (!(yield_strength.si() > 0.0)) throw InvalidArgument("material '" + name + "': yield_strength must be > 0");
  if (!(density.si() > 0.0)) throw InvalidArgument("material '" + name + "': density must be > 0");
}

bool operator==(const MaterialProps& a, const MaterialProps& b) {
  return a.name == b.name && a.youngs_modulus == b.youngs_modulus && a.yield_strength == b.yield_strength &&
         a.density == b.density;
}

bool operator==(const MaterialCatalog& a, const MaterialCatalog& b) { return a.entries_ == b.entries_; }

MaterialCatalog MaterialCatalog::parse(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(0, std::string("material catalog: ") + e.what());
  }
  if (!doc.contains("materials") || !doc["materials"].is_array()) {
    throw ParseError(0, "material catalog: missing 'materials' array");
  }
  MaterialCatalog catalog;
  for (const auto& rec : doc["materials"]) {
    try {
      MaterialProps props{
          rec.at("name").get<std::string>(),
          units::pascals(rec.at("youngs_modulus_pa").get<double>()),
          units::pascals(rec.at("yield_strength_pa").get<double>()),
          units::Density::from_si(rec.at("density_kg_m3").get<double>()),
      };
      if (catalog.contains(props.name)) {
        throw ParseError(0, "material catalog: duplicate entry '" + props.name + "'");
      }
      catalog.insert(std::move(props));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(0, std::string("material catalog: ") + e.what());
    } catch (const InvalidArgument& e) {
      throw ParseError(0, std::string("material catalog: ") + e.what());
    }
  }
  return catalog;
}

MaterialCatalog MaterialCatalog::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open material catalog '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

const MaterialProps& MaterialCatalog::lookup(std::string_view name) const {
  auto it = entries_.find(name);
  if (it == entries_.end()) throw UnknownMaterial(std::string(name));
  return it->second;
}

bool MaterialCatalog::contains(std::string_view name) const { return entries_.find(name) != entries_.end(); }

std::vector<std::string> MaterialCatalog::names() const {
  std::vector<std::string> out;
  out.reserve(entries_.size());
  for (const auto& [name, _] : entries_) out.push_back(name);
  return out;
}

void MaterialCatalog::insert(MaterialProps props) {
  props.validate();
  std::string key = props.name;
  entries_.insert_or_assign(std::move(key), std::move(props));
}

std::filesystem::path default_catalog_path() {
  return std::filesystem::path(LIMBKIT_DATA_DIR) / "materials.json";
}

}  // namespace limbkit
