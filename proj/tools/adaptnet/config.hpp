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

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace adaptnet::cli {

enum class Subcommand { Simulate, Certify, Converge, Attract };

const char* subcommand_name(Subcommand cmd);
std::optional<Subcommand> parse_subcommand(const std::string& name);

// Invalid or unparsable configuration. `where` is a dotted field path or "line L, column C".
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string where, const std::string& what)
      : std::runtime_error(where + ": " + what), where_(std::move(where)) {}
  const std::string& where() const noexcept { return where_; }

 private:
  std::string where_;
};

// Random phases or frequencies drawn uniformly on [lo, hi).
struct UniformSpec {
  double lo = 0.0;
  double hi = 0.0;
  std::optional<std::uint64_t> seed;
};

enum class InitialWeights { SlowManifold, CriticalManifold, Explicit };

struct ExperimentConfig {
  Subcommand command = Subcommand::Simulate;
  nlohmann::json source;  // the document as given (after --seed override)
  std::optional<std::uint64_t> seed;

  // model
  std::size_t n_nodes = 0;
  std::optional<std::vector<double>> omega_values;
  std::optional<UniformSpec> omega_uniform;
  std::optional<double> epsilon;
  std::vector<double> epsilon_list;
  double alpha = 0.0;

  // integration (dt = dt_factor * eps)
  double dt_factor = 0.05;
  std::optional<double> t_end;
  std::optional<std::size_t> sample_every;

  // initial phases for simulate / converge / attract
  std::optional<std::vector<double>> theta0_values;
  std::optional<UniformSpec> theta0_uniform;

  // simulate
  InitialWeights initial_weights = InitialWeights::SlowManifold;
  std::vector<double> a0_values;

  // certify (triples are zero-based here, one-based in the document)
  int order = 1;
  double fd_step = 1e-3;
  std::size_t random_points = 50;
  bool include_proof_point = true;
  std::vector<std::array<std::size_t, 3>> triples;
  std::vector<std::vector<double>> points;

  // converge
  double degenerate_threshold = 1e-12;

  // attract
  double perturbation_norm = 1.0;
  double t_end_fast = 30.0;
  double fit_lower = 1e-8;
  double fit_upper_fraction = 0.5;
  double floor_factor = 100.0;
  int manifold_order = 1;

  // output
  std::string out_dir = "out";
  bool write_csv = true;
  bool write_json = true;

  // True when any field is drawn from the seed.
  bool uses_randomness() const;
  // The seed used for draws of a given field: its own seed if present, else the top-level seed.
  std::uint64_t seed_for(const UniformSpec& spec) const;
};

inline constexpr double kMaxDtFactor = 0.1;

// Validates doc for the given subcommand. seed_override replaces every seed in the document.
ExperimentConfig parse_config(nlohmann::json doc, Subcommand cmd, std::optional<std::uint64_t> seed_override = {});

// Parses text as JSON, reporting syntax errors with line and column.
nlohmann::json parse_json_text(const std::string& text);

}  // namespace adaptnet::cli
