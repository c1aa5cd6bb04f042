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

#include "limbkit/io.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <sstream>

#include "limbkit/errors.hpp"

namespace limbkit::io {

std::string format_double(double v) {
  std::array<char, 32> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc{}) throw Error("format_double: to_chars failed");
  return std::string(buf.data(), ptr);
}

CsvBuilder::CsvBuilder(std::initializer_list<std::string_view> header) {
  for (auto h : header) field(h);
  end_row();
}

CsvBuilder& CsvBuilder::field(double v) { return field(std::string_view(format_double(v))); }

CsvBuilder& CsvBuilder::field(long long v) { return field(std::string_view(std::to_string(v))); }

CsvBuilder& CsvBuilder::field(std::string_view text) {
  if (row_open_) text_.push_back(',');
  text_.append(text);
  row_open_ = true;
  return *this;
}

void CsvBuilder::end_row() {
  text_.push_back('\n');
  row_open_ = false;
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  namespace fs = std::filesystem;
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write '" + tmp.string() + "'");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error("short write to '" + tmp.string() + "'");
  }
  fs::rename(tmp, path);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace limbkit::io
