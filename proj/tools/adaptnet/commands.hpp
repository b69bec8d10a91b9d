/*
 * Copyright 2026 The adaptnet Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "config.hpp"

namespace adaptnet::cli {

struct RunOptions {
  std::optional<std::string> out_dir;  // overrides output.directory
  bool quiet = false;
};

// Runs one experiment, writes its artifacts and prints the summary line to out.
// Throws ConfigError, ApiError or std::runtime_error (I/O).
void run_experiment(const ExperimentConfig& cfg, const RunOptions& options, std::ostream& out);

// Maps an exception thrown by run_experiment or parse_config to the process exit code.
int exit_code_for(const std::exception& e);

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitRuntime = 3;

}  // namespace adaptnet::cli
