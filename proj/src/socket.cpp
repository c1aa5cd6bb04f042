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

#include "limbkit/socket.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <charconv>
#include <cmath>
#include <numeric>
#include <sstream>

#include "limbkit/io.hpp"

namespace limbkit::socket {

using namespace limbkit::units;

void DepthGrid::validate() const {
  if (width == 0 || height == 0) throw InvalidArgument("depth grid: width and height must be > 0");
  if (depth_mm.size() != width * height) {
    throw InvalidArgument("depth grid: expected " + std::to_string(width * height) + " cells, got " +
                          std::to_string(depth_mm.size()));
  }
  if (!(spacing.si() > 0.0)) throw InvalidArgument("depth grid: spacing must be > 0");
  for (std::size_t i = 0; i < depth_mm.size(); ++i) {
    if (is_sentinel(i)) continue;
    if (!std::isfinite(depth_mm[i]) || depth_mm[i] < 0.0) {
      throw InvalidArgument("depth grid: cell " + std::to_string(i) + " has invalid depth " +
                            std::to_string(depth_mm[i]));
    }
  }
}

std::vector<std::string> DepthGrid::range_warnings() const {
  std::size_t count = 0;
  double deepest = 0.0;
  for (std::size_t i = 0; i < depth_mm.size(); ++i) {
    if (!is_sentinel(i) && depth_mm[i] > kObservedDepthMaxMm) {
      ++count;
      deepest = std::max(deepest, depth_mm[i]);
    }
  }
  if (count == 0) return {};
  return {std::to_string(count) + " cell(s) deeper than " + io::format_double(kObservedDepthMaxMm) +
          " mm (max " + io::format_double(deepest) + " mm); outside the observed depth range"};
}

Stress StiffnessField::modulus_si(std::size_t i) const { return Stress::from_si(modulus[i] * info(modulus_unit).to_si); }

double modulus_for_depth(double depth_mm) { return kModulusSlope * depth_mm + kModulusIntercept; }

StiffnessField map_stiffness(const DepthGrid& grid, Unit modulus_unit) {
  grid.validate();
  if (!(info(modulus_unit).dim == Stress::kDim)) throw DimensionMismatch("modulus unit must be a stress unit");
  StiffnessField f;
  f.width = grid.width;
  f.height = grid.height;
  f.spacing = grid.spacing;
  f.sentinel = grid.sentinel;
  f.modulus_unit = modulus_unit;
  f.modulus.resize(grid.size());
  f.band.assign(grid.size(), 0);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid.is_sentinel(i)) {
      f.modulus[i] = grid.sentinel;
      f.band[i] = -1;
    } else {
      f.modulus[i] = modulus_for_depth(grid.depth_mm[i]);
    }
  }
  f.warnings = grid.range_warnings();
  return f;
}

bool verify_inverse_monotonicity(const DepthGrid& grid, const StiffnessField& field) {
  if (grid.size() != field.size() || field.modulus.size() != grid.size()) return false;
  std::vector<std::size_t> cells;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid.is_sentinel(i) != field.is_sentinel(i)) return false;
    if (!grid.is_sentinel(i)) cells.push_back(i);
  }
  std::sort(cells.begin(), cells.end(),
            [&](std::size_t a, std::size_t b) { return grid.depth_mm[a] < grid.depth_mm[b]; });

  // Walk groups of equal depth; every modulus in a group must exceed the
  // largest modulus of all strictly shallower cells.
  double shallower_max = -std::numeric_limits<double>::infinity();
  std::size_t i = 0;
  while (i < cells.size()) {
    std::size_t j = i;
    double group_min = std::numeric_limits<double>::infinity();
    double group_max = -std::numeric_limits<double>::infinity();
    while (j < cells.size() && grid.depth_mm[cells[j]] == grid.depth_mm[cells[i]]) {
      group_min = std::min(group_min, field.modulus[cells[j]]);
      group_max = std::max(group_max, field.modulus[cells[j]]);
      ++j;
    }
    if (!(group_min > shallower_max)) return false;
    shallower_max = std::max(shallower_max, group_max);
    i = j;
  }
  return true;
}

StiffnessField quantize_bands(const StiffnessField& field, int n_bands) {
  if (n_bands < 1) throw InvalidArgument("quantize_bands: n_bands must be >= 1");
  StiffnessField out = field;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < field.size(); ++i) {
    if (field.is_sentinel(i)) continue;
    lo = std::min(lo, field.modulus[i]);
    hi = std::max(hi, field.modulus[i]);
  }
  out.band_boundaries.clear();
  if (lo > hi) return out;  // no limb cells

  if (hi == lo) {
    if (n_bands > 1) {
      out.warnings.push_back("DegenerateRange: modulus is constant (" + io::format_double(lo) +
                             "); all cells assigned band 0");
    }
    for (std::size_t i = 0; i < out.size(); ++i) {
      if (!out.is_sentinel(i)) out.band[i] = 0;
    }
    out.band_boundaries = {lo, hi};
    return out;
  }

  const double width = (hi - lo) / n_bands;
  out.band_boundaries.resize(static_cast<std::size_t>(n_bands) + 1);
  for (int b = 0; b <= n_bands; ++b) out.band_boundaries[static_cast<std::size_t>(b)] = lo + b * width;
  out.band_boundaries.back() = hi;

  // Band = number of interior boundaries at or below the value.
  const auto first_inner = out.band_boundaries.begin() + 1;
  const auto last_inner = out.band_boundaries.end() - 1;
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out.is_sentinel(i)) continue;
    out.band[i] = static_cast<int>(std::upper_bound(first_inner, last_inner, out.modulus[i]) - first_inner);
  }
  return out;
}

namespace {

class RasterReader {
 public:
  explicit RasterReader(std::string_view text) : text_(text) {}

  // Next whitespace-separated token; empty at end of input.
  std::string_view next() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      if (text_[pos_] == '\n') ++line_;
      ++pos_;
    }
    const std::size_t start = pos_;
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ > start) token_line_ = line_;
    return text_.substr(start, pos_ - start);
  }

  // Line of the most recent token, so end-of-input errors point at real content.
  std::size_t line() const { return token_line_; }

  double number(std::string_view what) {
    std::string_view tok = next();
    if (tok.empty()) throw ParseError(token_line_, "unexpected end of input, expected " + std::string(what));
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
      throw ParseError(token_line_, "expected " + std::string(what) + ", got '" + std::string(tok) + "'");
    }
    return v;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t token_line_ = 1;
};

std::size_t as_dimension(double v, std::size_t line, const char* what) {
  if (!(v >= 1.0) || v != std::floor(v) || v > 1e8) {
    throw ParseError(line, std::string(what) + " must be a positive integer");
  }
  return static_cast<std::size_t>(v);
}

}  // namespace

DepthGrid parse_depth_raster(std::string_view text) {
  RasterReader in(text);
  DepthGrid g;
  g.width = as_dimension(in.number("width"), in.line(), "width");
  g.height = as_dimension(in.number("height"), in.line(), "height");
  const double spacing = in.number("spacing_mm");
  if (!(spacing > 0.0)) throw ParseError(in.line(), "spacing_mm must be > 0");
  g.spacing = Length::from_si(spacing * 1e-3);
  g.sentinel = in.number("sentinel");

  const std::size_t expected = g.width * g.height;
  g.depth_mm.reserve(expected);
  while (true) {
    std::string_view tok = in.next();
    if (tok.empty()) break;
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
      throw ParseError(in.line(), "expected a depth value, got '" + std::string(tok) + "'");
    }
    if (g.depth_mm.size() == expected) {
      throw ParseError(in.line(), "too many cells: expected " + std::to_string(expected));
    }
    if (v != g.sentinel && !(v >= 0.0)) throw ParseError(in.line(), "negative depth " + std::string(tok));
    g.depth_mm.push_back(v);
  }
  if (g.depth_mm.size() != expected) {
    throw ParseError(in.line(), "expected " + std::to_string(expected) + " cells, found " +
                                    std::to_string(g.depth_mm.size()));
  }
  return g;
}

DepthGrid load_depth_raster(const std::string& path) { return parse_depth_raster(io::read_file(path)); }

namespace {

template <class T, class Fmt>
std::string raster(const StiffnessField& f, const std::vector<T>& values, double sentinel, Fmt fmt) {
  std::string out = std::to_string(f.width) + " " + std::to_string(f.height) + " " +
                    io::format_double(f.spacing.si() * 1e3) + " " + io::format_double(sentinel) + "\n";
  for (std::size_t r = 0; r < f.height; ++r) {
    for (std::size_t c = 0; c < f.width; ++c) {
      if (c > 0) out.push_back(' ');
      out += fmt(values[r * f.width + c]);
    }
    out.push_back('\n');
  }
  return out;
}

}  // namespace

std::string modulus_raster(const StiffnessField& f) {
  return raster(f, f.modulus, f.sentinel, [](double v) { return io::format_double(v); });
}

std::string band_raster(const StiffnessField& f) {
  return raster(f, f.band, -1.0, [](int v) { return std::to_string(v); });
}

std::string boundary_table_csv(const StiffnessField& f) {
  io::CsvBuilder csv{"band", "lower", "upper", "unit"};
  for (std::size_t b = 0; b + 1 < f.band_boundaries.size(); ++b) {
    csv.field(static_cast<long long>(b))
        .field(f.band_boundaries[b])
        .field(f.band_boundaries[b + 1])
        .field(symbol(f.modulus_unit));
    csv.end_row();
  }
  return csv.str();
}

std::string field_csv(const DepthGrid& grid, const StiffnessField& f) {
  io::CsvBuilder csv{"row", "col", "x_mm", "y_mm", "depth_mm", "modulus", "band"};
  const double s = f.spacing.si() * 1e3;
  for (std::size_t r = 0; r < f.height; ++r) {
    for (std::size_t c = 0; c < f.width; ++c) {
      const std::size_t i = r * f.width + c;
      if (f.is_sentinel(i)) continue;
      csv.field(static_cast<long long>(r))
          .field(static_cast<long long>(c))
          .field(static_cast<double>(c) * s)
          .field(static_cast<double>(r) * s)
          .field(grid.depth_mm[i])
          .field(f.modulus[i])
          .field(static_cast<long long>(f.band[i]));
      csv.end_row();
    }
  }
  return csv.str();
}

}  // namespace limbkit::socket
