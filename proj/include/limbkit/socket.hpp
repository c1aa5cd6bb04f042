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

// Residual-limb bone depth -> socket wall stiffness.
//
// Each cell's modulus is Y = 0.0382 * X + 1.0882 with X the bone tissue depth
// in millimetres. The unit of Y is not fixed by the source data; it is a
// label carried with the field and defaults to MPa.
//
// Note the direction: the map increases with depth. Deep bone means a thick
// soft-tissue layer, which gets the stiffer socket material; shallow bone
// (a stiff body region) gets the compliant material.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "limbkit/units.hpp"

namespace limbkit::socket {

inline constexpr double kModulusSlope = 0.0382;
inline constexpr double kModulusIntercept = 1.0882;
// Deepest bone depth seen in the reference limb; deeper cells warn.
inline constexpr double kObservedDepthMaxMm = 50.0;

struct DepthGrid {
  std::size_t width = 0;
  std::size_t height = 0;
  units::Length spacing;
  double sentinel = -1.0;
  // Row-major depths in millimetres; cells equal to sentinel lie outside the limb.
  std::vector<double> depth_mm;

  bool is_sentinel(std::size_t i) const { return depth_mm[i] == sentinel; }
  std::size_t size() const { return width * height; }

  // Throws InvalidArgument on shape mismatch or negative depths.
  void validate() const;
  // Human-readable warnings for depths above the observed range.
  std::vector<std::string> range_warnings() const;
};

struct StiffnessField {
  std::size_t width = 0;
  std::size_t height = 0;
  units::Length spacing;
  double sentinel = -1.0;
  units::Unit modulus_unit = units::Unit::megapascal;
  // Young's modulus per cell in modulus_unit; sentinel outside the limb.
  std::vector<double> modulus;
  // Durometer band per cell; -1 outside the limb.
  std::vector<int> band;
  // n_bands + 1 boundaries in modulus_unit, empty before quantization.
  std::vector<double> band_boundaries;
  std::vector<std::string> warnings;

  bool is_sentinel(std::size_t i) const { return band[i] < 0; }
  std::size_t size() const { return width * height; }
  units::Stress modulus_si(std::size_t i) const;
};

double modulus_for_depth(double depth_mm);

StiffnessField map_stiffness(const DepthGrid& grid, units::Unit modulus_unit = units::Unit::megapascal);

// True iff deeper cells always carry strictly higher modulus.
bool verify_inverse_monotonicity(const DepthGrid& grid, const StiffnessField& field);

// Uniform partition of [min, max] modulus into n_bands. A flat field with
// n_bands > 1 puts every cell in band 0 and records a DegenerateRange warning.
StiffnessField quantize_bands(const StiffnessField& field, int n_bands);

// Text raster: header "width height spacing_mm sentinel", then
// width*height row-major values. Throws ParseError with the line number.
DepthGrid parse_depth_raster(std::string_view text);
DepthGrid load_depth_raster(const std::string& path);

std::string modulus_raster(const StiffnessField& field);
std::string band_raster(const StiffnessField& field);
std::string boundary_table_csv(const StiffnessField& field);
// CSV: row,col,x_mm,y_mm,depth_mm,modulus,band (limb cells only).
std::string field_csv(const DepthGrid& grid, const StiffnessField& field);

}  // namespace limbkit::socket
