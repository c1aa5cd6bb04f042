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
#include <initializer_list>
#include <string>
#include <string_view>

namespace limbkit::io {

// Shortest decimal text that parses back to exactly v.
std::string format_double(double v);

// Appends one CSV row; fields are written verbatim.
class CsvBuilder {
 public:
  explicit CsvBuilder(std::initializer_list<std::string_view> header);

  CsvBuilder& field(double v);
  CsvBuilder& field(long long v);
  CsvBuilder& field(std::string_view text);
  void end_row();

  const std::string& str() const { return text_; }

 private:
  std::string text_;
  bool row_open_ = false;
};

// Writes via a sibling temp file and rename, so readers never see a partial file.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

std::string read_file(const std::filesystem::path& path);

}  // namespace limbkit::io
