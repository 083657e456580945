// Copyright 2026 The imdecide Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>

#include "json.hpp"

namespace imdecide::cli {

// A parse or validation failure pinned to a position in the config text.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string source, std::size_t line, std::size_t column, const std::string& message);

  const std::string& source() const { return source_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::string source_;
  std::size_t line_;
  std::size_t column_;
};

// The TOML subset used by experiment configs: [section] and [a.b] headers,
// bare keys, basic strings, integers, floats, booleans and one-line arrays.
// Tables come back as JSON objects; integers stay integers.
struct TomlDocument {
  std::string source;
  nlohmann::json data;
  // "section.key" -> (line, column) of the key, "section" -> its header.
  std::map<std::string, std::pair<std::size_t, std::size_t>> positions;

  [[noreturn]] void fail(const std::string& path, const std::string& message) const;
};

TomlDocument parse_toml(const std::string& text, const std::string& source = "<config>");

TomlDocument load_toml(const std::string& path);

}  // namespace imdecide::cli
