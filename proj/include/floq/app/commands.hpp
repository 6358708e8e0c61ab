// Copyright 2026 The floqlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace floq::app {

inline constexpr int kExitOk = 0;
inline constexpr int kExitSchema = 2;
inline constexpr int kExitModule = 3;

inline const std::vector<std::string> kSubcommands = {"magnus",    "lr-scan", "response",
                                                      "heat-scan", "delta",   "lemmas"};

struct RunOptions {
  std::string subcommand;
  std::string config_path;
  std::vector<std::string> overrides;
  std::optional<std::string> out_dir;
  std::optional<int> threads;
};

/** Runs one subcommand and writes its artifacts; returns the exit status. */
int run(const RunOptions& options, std::ostream& log);

}  // namespace floq::app
