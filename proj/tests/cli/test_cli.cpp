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

// End-to-end checks of the adaptnet executable plus direct config-schema tests.

#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "config.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace adaptnet::cli;

namespace {

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("adaptnet_cli_test_" + std::to_string(::getpid())) / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

Run run(const std::string& args, const std::string& stdin_path = {}) {
  static int counter = 0;
  const fs::path base = fs::temp_directory_path() / ("adaptnet_cli_io_" + std::to_string(::getpid()));
  fs::create_directories(base);
  const fs::path out = base / ("out" + std::to_string(counter));
  const fs::path err = base / ("err" + std::to_string(counter++));
  std::string cmd = std::string(ADAPTNET_CLI_PATH) + " " + args + " > " + out.string() + " 2> " + err.string();
  if (!stdin_path.empty()) cmd += " < " + stdin_path;
  const int status = std::system(cmd.c_str());
  Run r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

fs::path write_config(const fs::path& dir, const json& doc, const std::string& name = "config.json") {
  const fs::path p = dir / name;
  std::ofstream(p) << doc.dump(2);
  return p;
}

json shipped(const std::string& name) { return json::parse(slurp(fs::path(ADAPTNET_CONFIG_DIR) / name)); }

std::string cfg_arg(const fs::path& p, const fs::path& out) {
  return "--config " + p.string() + " --out " + out.string();
}

json base_model(std::size_t n = 3) {
  json omega = json::array();
  for (std::size_t i = 0; i < n; ++i) omega.push_back(0.1 * static_cast<double>(i));
  return {{"n_nodes", n}, {"omega", omega}, {"epsilon", 0.01}, {"coupling", {{"kind", "kuramoto"}, {"alpha", 0.7}}}};
}

}  // namespace

TEST_CASE("shipped configs run and write their artifacts") {
  for (const std::string cmd : {"simulate", "certify", "converge", "attract"}) {
    CAPTURE(cmd);
    const fs::path dir = scratch("shipped_" + cmd);
    const Run r = run(cmd + " --quiet " + cfg_arg(fs::path(ADAPTNET_CONFIG_DIR) / (cmd + ".json"), dir));
    CHECK(r.code == 0);
    CHECK(fs::exists(dir / "manifest.json"));
    CHECK(fs::exists(dir / "report.json"));
    CHECK(fs::exists(dir / "raw.csv"));
    CHECK(slurp(dir / "raw.csv").rfind("# ", 0) == 0);
  }
}

TEST_CASE("certify prints the decision line") {
  const fs::path dir = scratch("certify_line");
  Run r = run("certify " + cfg_arg(fs::path(ADAPTNET_CONFIG_DIR) / "certify.json", dir));
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("NONPAIRWISE-CERTIFIED at (i,j,k)=(", 0) == 0);
  CHECK(r.out.find(" theta=(") != std::string::npos);
  CHECK(r.out.find(" value=") != std::string::npos);
  const json report = json::parse(slurp(dir / "report.json"));
  CHECK(report["result"]["decision"] == "NonpairwiseCertified");
  CHECK(report["result"]["proof_point"]["analytic_value"].get<double>() == doctest::Approx(-0.7).epsilon(1e-12));

  r = run("certify " + cfg_arg(fs::path(ADAPTNET_CONFIG_DIR) / "certify_order0.json", dir));
  CHECK(r.code == 0);
  CHECK(r.out == "NO-EVIDENCE\n");
}

TEST_CASE("converge prints slopes within the expected windows") {
  const fs::path dir = scratch("converge_line");
  const Run r = run("converge " + cfg_arg(fs::path(ADAPTNET_CONFIG_DIR) / "converge.json", dir));
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("slope0=", 0) == 0);
  const json res = json::parse(slurp(dir / "report.json"))["result"];
  CHECK(res["degenerate"] == false);
  CHECK(res["errors"].size() == 4);
  CHECK(res["fit_order0"]["slope"].get<double>() == doctest::Approx(1.0).epsilon(0.2));
  CHECK(res["fit_order1"]["slope"].get<double>() >= 1.6);
}

TEST_CASE("attract prints the fitted rate") {
  const fs::path dir = scratch("attract_line");
  const Run r = run("attract " + cfg_arg(fs::path(ADAPTNET_CONFIG_DIR) / "attract.json", dir));
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("rate=", 0) == 0);
  const json res = json::parse(slurp(dir / "report.json"))["result"];
  const double rate = res["fitted_rate_per_fast_time"];
  CHECK(rate >= 0.9);
  CHECK(rate <= 1.1);
}

TEST_CASE("reports are byte-identical across runs; manifests differ only in created_at") {
  for (const std::string cmd : {"simulate", "certify", "converge", "attract"}) {
    CAPTURE(cmd);
    const fs::path a = scratch("det_a_" + cmd), b = scratch("det_b_" + cmd);
    const fs::path cfg = fs::path(ADAPTNET_CONFIG_DIR) / (cmd + ".json");
    REQUIRE(run(cmd + " --quiet " + cfg_arg(cfg, a)).code == 0);
    REQUIRE(run(cmd + " --quiet " + cfg_arg(cfg, b)).code == 0);
    CHECK(slurp(a / "report.json") == slurp(b / "report.json"));
    CHECK(slurp(a / "raw.csv") == slurp(b / "raw.csv"));
    json ma = json::parse(slurp(a / "manifest.json")), mb = json::parse(slurp(b / "manifest.json"));
    CHECK(ma.contains("created_at"));
    ma.erase("created_at");
    mb.erase("created_at");
    CHECK(ma == mb);
  }
}

TEST_CASE("every emitted report re-validates against the config schema") {
  for (const std::string cmd : {"simulate", "certify", "converge", "attract"}) {
    CAPTURE(cmd);
    const fs::path dir = scratch("roundtrip_" + cmd);
    REQUIRE(run(cmd + " --quiet " + cfg_arg(fs::path(ADAPTNET_CONFIG_DIR) / (cmd + ".json"), dir)).code == 0);
    const json report = json::parse(slurp(dir / "report.json"));
    CHECK(report["command"] == cmd);
    const Subcommand sub = *parse_subcommand(cmd);
    CHECK_NOTHROW(parse_config(report["config"], sub));
    const json manifest = json::parse(slurp(dir / "manifest.json"));
    CHECK_NOTHROW(parse_config(manifest["config"], sub));
    CHECK(manifest["version"] == "0.1.0");
  }
}

TEST_CASE("config from standard input and seed override") {
  const fs::path dir = scratch("stdin");
  const std::string cfg = (fs::path(ADAPTNET_CONFIG_DIR) / "simulate.json").string();
  REQUIRE(run("simulate --quiet --config - --out " + (dir / "a").string(), cfg).code == 0);
  REQUIRE(run("simulate --quiet --config " + cfg + " --out " + (dir / "b").string()).code == 0);
  CHECK(slurp(dir / "a" / "report.json") == slurp(dir / "b" / "report.json"));

  REQUIRE(run("simulate --quiet --seed 99 --config " + cfg + " --out " + (dir / "c").string()).code == 0);
  const json c = json::parse(slurp(dir / "c" / "report.json"));
  const json b = json::parse(slurp(dir / "b" / "report.json"));
  CHECK(c["seed"] == 99);
  CHECK(c["config"]["seed"] == 99);
  CHECK(c["inputs"]["omega"] != b["inputs"]["omega"]);
}

TEST_CASE("seed override replaces per-field seeds too") {
  const fs::path dir = scratch("seed_fields");
  json doc = shipped("simulate.json");
  doc["model"]["omega"]["seed"] = 3;
  const fs::path cfg = write_config(dir, doc);
  REQUIRE(run("simulate --quiet --seed 8 " + cfg_arg(cfg, dir / "x")).code == 0);
  const json report = json::parse(slurp(dir / "x" / "report.json"));
  CHECK(report["config"]["model"]["omega"]["seed"] == 8);
}

TEST_CASE("simulate from a synchronized zero-frequency start is constant") {
  const fs::path dir = scratch("sync");
  json doc = {{"model", base_model(4)}, {"simulate", {{"theta0", {1.0, 1.0, 1.0, 1.0}}}}};
  doc["model"]["omega"] = {0.0, 0.0, 0.0, 0.0};
  doc["integration"] = {{"t_end", 0.1}};
  const fs::path cfg = write_config(dir, doc);
  REQUIRE(run("simulate --quiet " + cfg_arg(cfg, dir)).code == 0);
  std::istringstream csv(slurp(dir / "raw.csv"));
  std::string line, first;
  std::getline(csv, line);  // comment
  std::getline(csv, line);  // header
  std::size_t rows = 0;
  while (std::getline(csv, line)) {
    const std::string state = line.substr(line.find(','));
    if (rows++ == 0) first = state;
    CHECK(state == first);
  }
  CHECK(rows == 201);
}

TEST_CASE("simulate default run stores at most 10^4 rows") {
  const fs::path dir = scratch("rows");
  json doc = shipped("simulate.json");
  doc["model"]["epsilon"] = 0.001;  // 40000 steps
  const fs::path cfg = write_config(dir, doc);
  REQUIRE(run("simulate --quiet " + cfg_arg(cfg, dir)).code == 0);
  const json res = json::parse(slurp(dir / "report.json"))["result"];
  CHECK(res["samples"].get<int>() <= 10000);
  CHECK(res["final_time"].get<double>() == doctest::Approx(2.0));
}

TEST_CASE("degenerate convergence sweep is reported, not fitted") {
  const fs::path dir = scratch("degenerate");
  json doc = {{"model", base_model(3)}, {"converge", {{"theta0", {2.0, 2.0, 2.0}}}}};
  doc["model"].erase("epsilon");
  doc["model"]["omega"] = {0.0, 0.0, 0.0};
  doc["model"]["epsilon_list"] = {0.02, 0.01, 0.005};
  const fs::path cfg = write_config(dir, doc);
  const Run r = run("converge " + cfg_arg(cfg, dir));
  CHECK(r.code == 0);
  CHECK(r.out.find("degenerate") != std::string::npos);
  const json res = json::parse(slurp(dir / "report.json"))["result"];
  CHECK(res["degenerate"] == true);
  CHECK(res["fit_order0"].is_null());
}

TEST_CASE("exit code 2: configuration and precondition errors") {
  const fs::path dir = scratch("exit2");
  auto expect2 = [&](const std::string& cmd, const json& doc, const std::string& needle) {
    CAPTURE(cmd);
    CAPTURE(needle);
    const fs::path cfg = write_config(dir, doc);
    const Run r = run(cmd + " " + cfg_arg(cfg, dir / "out"));
    CHECK(r.code == 2);
    CHECK(r.err.find(needle) != std::string::npos);
  };

  json missing_eps = {{"model", base_model()}};
  missing_eps["model"].erase("epsilon");
  expect2("simulate", missing_eps, "model.epsilon");

  json two_eps = {{"model", base_model()}};
  two_eps["model"].erase("epsilon");
  two_eps["model"]["epsilon_list"] = {0.02, 0.01};
  expect2("converge", two_eps, "model.epsilon_list");

  json list_for_single = {{"model", base_model()}};
  list_for_single["model"]["epsilon_list"] = {0.02, 0.01, 0.005};
  expect2("certify", list_for_single, "exactly one");

  expect2("certify", {{"model", base_model(2)}}, "at least 3 nodes");

  json unstable = {{"model", base_model()}, {"integration", {{"dt_factor", 0.2}}}};
  unstable["model"]["epsilon_list"] = {0.02, 0.01, 0.005};
  unstable["model"].erase("epsilon");
  expect2("converge", unstable, "integration.dt_factor");

  expect2("attract", {{"seed", 1}, {"model", base_model()}, {"attract", {{"perturbation_norm", 0.0}}}},
          "attract.perturbation_norm");
  // positive but too small to be off the manifold: library precondition
  expect2("attract", {{"seed", 1}, {"model", base_model()}, {"attract", {{"perturbation_norm", 0.01}}}},
          "distance");

  expect2("simulate", {{"model", base_model()}, {"bogus", 1}}, "bogus: unknown field");
  expect2("simulate", {{"model", base_model()}}, "seed");  // random theta0 without a seed

  json bad_kind = {{"seed", 1}, {"model", base_model()}};
  bad_kind["model"]["coupling"]["kind"] = "stuart-landau";
  expect2("simulate", bad_kind, "model.coupling.kind");

  json bad_omega = {{"seed", 1}, {"model", base_model()}};
  bad_omega["model"]["omega"] = {0.1, 0.2};
  expect2("simulate", bad_omega, "model.omega");

  json bad_triple = {{"model", base_model()}, {"certify", {{"random_points", 0}, {"triples", {{1, 1, 2}}}}}};
  expect2("certify", bad_triple, "certify.triples");
}

TEST_CASE("exit code 2: malformed input and command line") {
  const fs::path dir = scratch("exit2_cli");
  const fs::path broken = dir / "broken.json";
  std::ofstream(broken) << "{\n  \"model\": {\n    \"n_nodes\": 3,,\n  }\n}\n";
  Run r = run("simulate --config " + broken.string());
  CHECK(r.code == 2);
  CHECK(r.err.find("line 3") != std::string::npos);

  CHECK(run("simulate --config " + (dir / "absent.json").string()).code == 2);
  CHECK(run("simulate").code == 2);
  CHECK(run("").code == 2);
  CHECK(run("frobnicate --config x").code == 2);
  CHECK(run("simulate --config x --bogus").code == 2);
  CHECK(run("--help").code == 0);
}

TEST_CASE("exit code 3: runtime and numerical failures") {
  const fs::path dir = scratch("exit3");
  json diverge = {{"model", base_model()}, {"simulate", {{"theta0", {0.0, 1.0, 2.0}}}}};
  diverge["model"]["omega"] = {1e300, 0.0, 0.0};
  Run r = run("simulate " + cfg_arg(write_config(dir, diverge), dir / "a"));
  CHECK(r.code == 3);
  CHECK(r.err.find("integration") != std::string::npos);

  json short_window = {{"seed", 1}, {"model", base_model()}, {"attract", {{"t_end_fast", 0.2}}}};
  r = run("attract " + cfg_arg(write_config(dir, short_window), dir / "b"));
  CHECK(r.code == 3);
  CHECK(r.err.find("window") != std::string::npos);

  // output directory cannot be created
  const fs::path blocker = dir / "file";
  std::ofstream(blocker) << "x";
  r = run("certify --config " + (fs::path(ADAPTNET_CONFIG_DIR) / "certify.json").string() + " --out " +
          (blocker / "sub").string());
  CHECK(r.code == 3);
}

TEST_CASE("config parser details") {
  json doc = {{"seed", 4}, {"model", base_model(3)}, {"certify", {{"triples", {{1, 2, 3}, {3, 1, 2}}}}}};
  ExperimentConfig cfg = parse_config(doc, Subcommand::Certify);
  CHECK(cfg.triples.size() == 2);
  CHECK(cfg.triples[1] == std::array<std::size_t, 3>{2, 0, 1});
  CHECK(cfg.uses_randomness());

  doc["certify"]["random_points"] = 0;
  doc.erase("seed");
  cfg = parse_config(doc, Subcommand::Certify);
  CHECK_FALSE(cfg.uses_randomness());

  json uni = {{"model", base_model(3)}, {"simulate", {{"theta0", {0.0, 0.0, 0.0}}}}};
  uni["model"]["omega"] = {{"distribution", "uniform"}, {"seed", 12}};
  cfg = parse_config(uni, Subcommand::Simulate);
  REQUIRE(cfg.omega_uniform.has_value());
  CHECK(cfg.omega_uniform->lo == -1.0);
  CHECK(cfg.omega_uniform->hi == 1.0);
  CHECK(cfg.seed_for(*cfg.omega_uniform) == 12);

  uni["model"]["omega"]["distribution"] = "normal";
  CHECK_THROWS_AS(parse_config(uni, Subcommand::Simulate), ConfigError);

  CHECK_THROWS_AS(parse_json_text("{\"a\": }"), ConfigError);
  try {
    parse_json_text("{\n\n  \"a\": tru\n}");
  } catch (const ConfigError& e) {
    CHECK(e.where().rfind("line 3", 0) == 0);
  }
  CHECK(subcommand_name(Subcommand::Attract) == std::string("attract"));
  CHECK_FALSE(parse_subcommand("nope").has_value());
}
