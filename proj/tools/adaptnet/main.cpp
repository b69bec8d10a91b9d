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

// adaptnet: run one experiment described by a JSON config.
//
//   adaptnet certify --config cert.json --out results/cert
//   adaptnet converge --config - < sweep.json
//
// Exit codes: 0 success, 2 config or precondition error, 3 runtime or numerical failure.

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include <CLI11.hpp>
#include <adaptnet/adaptnet.h>

#include "commands.hpp"
#include "config.hpp"

namespace {

std::string read_source(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  std::ifstream f(path, std::ios::binary);
  if (!f) throw adaptnet::cli::ConfigError(path, "cannot open config file");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  using namespace adaptnet::cli;

  CLI::App app{"Fast-slow adaptive phase-oscillator networks: simulation, reduction and nonpairwise certificate"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(adn_version()));

  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  bool quiet = false;

  for (const char* name : {"simulate", "certify", "converge", "attract"}) {
    CLI::App* sub = app.add_subcommand(name, std::string("run the ") + name + " experiment");
    sub->add_option("--config", config_path, "JSON config file, or - for standard input")->required();
    sub->add_option("--out", out_dir, "output directory (overrides output.directory)");
    sub->add_option("--seed", seed, "seed overriding every seed in the config");
    sub->add_flag("--quiet", quiet, "suppress informational output");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  const CLI::App* sub = app.get_subcommands().front();
  const Subcommand cmd = *parse_subcommand(sub->get_name());
  try {
    std::optional<std::uint64_t> seed_override;
    if (sub->count("--seed")) seed_override = seed;
    const ExperimentConfig cfg = parse_config(parse_json_text(read_source(config_path)), cmd, seed_override);

    RunOptions options;
    if (sub->count("--out")) options.out_dir = out_dir;
    options.quiet = quiet;
    run_experiment(cfg, options, std::cout);
    if (!quiet) std::cerr << "artifacts written to " << options.out_dir.value_or(cfg.out_dir) << "\n";
    return kExitOk;
  } catch (const std::exception& e) {
    std::cerr << "adaptnet " << subcommand_name(cmd) << ": error: " << e.what() << "\n";
    return exit_code_for(e);
  }
}
