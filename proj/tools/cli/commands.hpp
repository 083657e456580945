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

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "toml.hpp"

#include "imdecide/validity.hpp"

namespace imdecide::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumerical = 3;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CommandOutput {
  // Bytes of the output file.
  std::string body;
  // Human-readable notes for stdout.
  std::string console;
};

// Runs a command from its fully resolved config. Pure: the same config gives
// the same body.
CommandOutput execute(const std::string& command, const nlohmann::json& config);

nlohmann::json make_manifest(const std::string& command, const nlohmann::json& config);

// [model], [experiment] and [output] tables -> resolved validity config.
nlohmann::json validity_config(const TomlDocument& doc);
ExperimentConfig experiment_from_json(const nlohmann::json& config);

// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace imdecide::cli
