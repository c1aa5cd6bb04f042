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

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "limbkit/units.hpp"

namespace limbkit {

struct MaterialProps {
  std::string name;
  units::Stress youngs_modulus;
  units::Stress yield_strength;
  units::Density density;

  // Throws InvalidArgument unless modulus and yield are positive.
  void validate() const;
};

// Material catalog keyed by name. The shipped catalog holds handbook values;
// none of them are tied to a particular supplier datasheet.
class MaterialCatalog {
 public:
  MaterialCatalog() = default;

  // JSON text: {"materials": [{"name", "youngs_modulus_pa",
  // "yield_strength_pa", "density_kg_m3"}, ...]}.
  static MaterialCatalog parse(std::string_view json_text);
  static MaterialCatalog load(const std::filesystem::path& path);

  const MaterialProps& lookup(std::string_view name) const;
  bool contains(std::string_view name) const;
  std::vector<std::string> names() const;

  void insert(MaterialProps props);

  friend bool operator==(const MaterialCatalog&, const MaterialCatalog&);

 private:
  std::map<std::string, MaterialProps, std::less<>> entries_;
};

bool operator==(const MaterialProps& a, const MaterialProps& b);

// Path of the catalog shipped with the source tree.
std::filesystem::path default_catalog_path();

}  // namespace limbkit
