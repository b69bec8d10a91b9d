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

#include "config.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <set>

namespace adaptnet::cli {

using nlohmann::json;

namespace {

// Checked access to one JSON object, with the dotted path kept for diagnostics.
class Section {
 public:
  Section(const json& node, std::string path, std::initializer_list<const char*> allowed)
      : node_(node), path_(std::move(path)) {
    if (!node_.is_object()) fail("", "expected an object");
    std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& item : node_.items())
      if (!ok.count(item.key())) fail(item.key(), "unknown field");
  }

  bool has(const char* key) const { return node_.contains(key); }
  const json& at(const char* key) const { return node_.at(key); }

  std::string field(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

  [[noreturn]] void fail(const std::string& key, const std::string& what) const {
    throw ConfigError(key.empty() ? (path_.empty() ? "config" : path_) : field(key), what);
  }

  double number(const char* key) const {
    const json& v = require(key);
    if (!v.is_number()) fail(key, "expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) fail(key, "expected a finite number");
    return x;
  }

  double number_or(const char* key, double fallback) const { return has(key) ? number(key) : fallback; }

  double positive(const char* key, double fallback) const {
    const double x = number_or(key, fallback);
    if (!(x > 0.0)) fail(key, "must be > 0");
    return x;
  }

  std::uint64_t unsigned_int(const char* key) const {
    const json& v = require(key);
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
      fail(key, "expected a non-negative integer");
    return v.get<std::uint64_t>();
  }

  bool boolean_or(const char* key, bool fallback) const {
    if (!has(key)) return fallback;
    if (!at(key).is_boolean()) fail(key, "expected true or false");
    return at(key).get<bool>();
  }

  std::string string(const char* key) const {
    const json& v = require(key);
    if (!v.is_string()) fail(key, "expected a string");
    return v.get<std::string>();
  }

  std::vector<double> numbers(const char* key, std::optional<std::size_t> expected = {}) const {
    return numbers_of(require(key), field(key), expected);
  }

  static std::vector<double> numbers_of(const json& v, const std::string& where, std::optional<std::size_t> expected) {
    if (!v.is_array()) throw ConfigError(where, "expected an array of numbers");
    std::vector<double> out;
    for (const auto& e : v) {
      if (!e.is_number() || !std::isfinite(e.get<double>()))
        throw ConfigError(where, "expected an array of finite numbers");
      out.push_back(e.get<double>());
    }
    if (expected && out.size() != *expected)
      throw ConfigError(where, "expected " + std::to_string(*expected) + " entries, got " + std::to_string(out.size()));
    return out;
  }

  Section child(const char* key, std::initializer_list<const char*> allowed) const {
    return Section(require(key), field(key), allowed);
  }

 private:
  const json& require(const char* key) const {
    if (!has(key)) fail(key, "missing required field");
    return at(key);
  }

  const json& node_;
  std::string path_;
};

UniformSpec uniform_spec(const Section& parent, const char* key, double default_lo, double default_hi) {
  const Section s = parent.child(key, {"distribution", "lo", "hi", "seed"});
  if (s.has("distribution") && s.string("distribution") != "uniform")
    s.fail("distribution", "only \"uniform\" is supported");
  UniformSpec spec;
  spec.lo = s.number_or("lo", default_lo);
  spec.hi = s.number_or("hi", default_hi);
  if (!(spec.hi > spec.lo)) s.fail("hi", "must be greater than lo");
  if (s.has("seed")) spec.seed = s.unsigned_int("seed");
  return spec;
}

// theta0 given either as an explicit list or as a uniform distribution over [0, 2pi).
void read_theta0(const Section& s, ExperimentConfig& cfg) {
  if (!s.has("theta0")) {
    cfg.theta0_uniform = UniformSpec{0.0, 2.0 * M_PI, std::nullopt};
    return;
  }
  if (s.at("theta0").is_array())
    cfg.theta0_values = s.numbers("theta0", cfg.n_nodes);
  else
    cfg.theta0_uniform = uniform_spec(s, "theta0", 0.0, 2.0 * M_PI);
}

void override_seeds(json& doc, std::uint64_t seed) {
  doc["seed"] = seed;
  auto patch = [seed](json& node) {
    if (node.is_object() && node.contains("seed")) node["seed"] = seed;
  };
  if (doc.contains("model") && doc["model"].is_object() && doc["model"].contains("omega"))
    patch(doc["model"]["omega"]);
  for (const char* block : {"simulate", "converge", "attract"})
    if (doc.contains(block) && doc[block].is_object() && doc[block].contains("theta0")) patch(doc[block]["theta0"]);
}

}  // namespace

const char* subcommand_name(Subcommand cmd) {
  switch (cmd) {
    case Subcommand::Simulate: return "simulate";
    case Subcommand::Certify: return "certify";
    case Subcommand::Converge: return "converge";
    case Subcommand::Attract: return "attract";
  }
  return "?";
}

std::optional<Subcommand> parse_subcommand(const std::string& name) {
  for (Subcommand c : {Subcommand::Simulate, Subcommand::Certify, Subcommand::Converge, Subcommand::Attract})
    if (name == subcommand_name(c)) return c;
  return std::nullopt;
}

bool ExperimentConfig::uses_randomness() const {
  const bool certify_random = command == Subcommand::Certify && random_points > 0;
  const bool needs_theta0 = command != Subcommand::Certify;
  return omega_uniform.has_value() || (needs_theta0 && theta0_uniform.has_value()) || certify_random ||
         command == Subcommand::Attract;
}

std::uint64_t ExperimentConfig::seed_for(const UniformSpec& spec) const {
  if (spec.seed) return *spec.seed;
  if (seed) return *seed;
  throw ConfigError("seed", "missing seed for a randomized field");
}

json parse_json_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, column = 1;
    const std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t p = 0; p < end; ++p) {
      if (text[p] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ConfigError("line " + std::to_string(line) + ", column " + std::to_string(column),
                      "invalid JSON (" + std::string(e.what()) + ")");
  }
}

ExperimentConfig parse_config(json doc, Subcommand cmd, std::optional<std::uint64_t> seed_override) {
  if (seed_override && doc.is_object()) override_seeds(doc, *seed_override);

  ExperimentConfig cfg;
  cfg.command = cmd;
  cfg.source = doc;

  const Section root(doc, "",
                     {"seed", "model", "integration", "simulate", "certify", "converge", "attract", "output"});
  if (root.has("seed")) cfg.seed = root.unsigned_int("seed");

  // -- model
  const Section model = root.child("model", {"n_nodes", "omega", "epsilon", "epsilon_list", "coupling"});
  {
    const std::uint64_t n = model.unsigned_int("n_nodes");
    if (n < 1) model.fail("n_nodes", "must be >= 1");
    if (n > 4096) model.fail("n_nodes", "must be <= 4096");
    cfg.n_nodes = static_cast<std::size_t>(n);
  }
  if (!model.has("omega")) model.fail("omega", "missing required field");
  if (model.at("omega").is_array())
    cfg.omega_values = model.numbers("omega", cfg.n_nodes);
  else
    cfg.omega_uniform = uniform_spec(model, "omega", -1.0, 1.0);

  const bool wants_list = cmd == Subcommand::Converge;
  if (model.has("epsilon") == model.has("epsilon_list"))
    model.fail(wants_list ? "epsilon_list" : "epsilon", "exactly one of epsilon / epsilon_list must be present");
  if (wants_list) {
    if (!model.has("epsilon_list")) model.fail("epsilon_list", std::string(subcommand_name(cmd)) + " needs epsilon_list");
    cfg.epsilon_list = model.numbers("epsilon_list");
    if (cfg.epsilon_list.size() < 3) model.fail("epsilon_list", "needs at least 3 values");
    for (std::size_t p = 0; p < cfg.epsilon_list.size(); ++p) {
      if (!(cfg.epsilon_list[p] > 0.0)) model.fail("epsilon_list", "values must be > 0");
      if (p > 0 && !(cfg.epsilon_list[p] < cfg.epsilon_list[p - 1]))
        model.fail("epsilon_list", "values must be strictly decreasing");
    }
  } else {
    if (!model.has("epsilon")) model.fail("epsilon", std::string(subcommand_name(cmd)) + " needs a single epsilon");
    cfg.epsilon = model.number("epsilon");
    if (!(*cfg.epsilon > 0.0)) model.fail("epsilon", "must be > 0");
  }

  {
    const Section coupling = model.child("coupling", {"kind", "alpha"});
    if (coupling.string("kind") != "kuramoto") coupling.fail("kind", "only \"kuramoto\" is supported");
    cfg.alpha = coupling.number("alpha");
  }

  // -- integration
  if (root.has("integration")) {
    const Section integ = root.child("integration", {"dt_factor", "t_end", "sample_every"});
    cfg.dt_factor = integ.positive("dt_factor", cfg.dt_factor);
    if (cfg.dt_factor > kMaxDtFactor) integ.fail("dt_factor", "must be <= 0.1 (explicit stability limit dt <= eps/10)");
    if (integ.has("t_end")) cfg.t_end = integ.positive("t_end", 1.0);
    if (integ.has("sample_every")) {
      const std::uint64_t k = integ.unsigned_int("sample_every");
      if (k < 1) integ.fail("sample_every", "must be >= 1");
      cfg.sample_every = static_cast<std::size_t>(k);
    }
  }

  // -- experiment blocks
  switch (cmd) {
    case Subcommand::Simulate: {
      if (root.has("simulate")) {
        const Section s = root.child("simulate", {"theta0", "initial_weights"});
        read_theta0(s, cfg);
        if (s.has("initial_weights")) {
          const json& w = s.at("initial_weights");
          if (w.is_string()) {
            const std::string mode = w.get<std::string>();
            if (mode == "slow_manifold")
              cfg.initial_weights = InitialWeights::SlowManifold;
            else if (mode == "critical_manifold")
              cfg.initial_weights = InitialWeights::CriticalManifold;
            else
              s.fail("initial_weights", "expected \"slow_manifold\", \"critical_manifold\" or an N x N array");
          } else {
            if (!w.is_array() || w.size() != cfg.n_nodes) s.fail("initial_weights", "expected N rows");
            for (const auto& row : w) {
              const auto r = Section::numbers_of(row, s.field("initial_weights"), cfg.n_nodes);
              cfg.a0_values.insert(cfg.a0_values.end(), r.begin(), r.end());
            }
            cfg.initial_weights = InitialWeights::Explicit;
          }
        }
      } else {
        cfg.theta0_uniform = UniformSpec{0.0, 2.0 * M_PI, std::nullopt};
      }
      break;
    }
    case Subcommand::Certify: {
      if (cfg.n_nodes < 3) model.fail("n_nodes", "certify needs at least 3 nodes");
      if (root.has("certify")) {
        const Section s =
            root.child("certify", {"order", "fd_step", "random_points", "include_proof_point", "triples", "points"});
        if (s.has("order")) {
          const std::uint64_t o = s.unsigned_int("order");
          if (o > 1) s.fail("order", "must be 0 or 1");
          cfg.order = static_cast<int>(o);
        }
        cfg.fd_step = s.positive("fd_step", cfg.fd_step);
        if (s.has("random_points")) cfg.random_points = static_cast<std::size_t>(s.unsigned_int("random_points"));
        cfg.include_proof_point = s.boolean_or("include_proof_point", true);
        if (s.has("triples")) {
          const json& ts = s.at("triples");
          if (!ts.is_array()) s.fail("triples", "expected an array of [i, j, k] (1-based)");
          for (const auto& t : ts) {
            const auto v = Section::numbers_of(t, s.field("triples"), 3);
            std::array<std::size_t, 3> idx{};
            for (std::size_t q = 0; q < 3; ++q) {
              if (v[q] != std::floor(v[q]) || v[q] < 1 || v[q] > static_cast<double>(cfg.n_nodes))
                s.fail("triples", "indices must be integers in 1..N");
              idx[q] = static_cast<std::size_t>(v[q]) - 1;
            }
            if (idx[0] == idx[1] || idx[0] == idx[2] || idx[1] == idx[2])
              s.fail("triples", "indices must be pairwise distinct");
            cfg.triples.push_back(idx);
          }
        }
        if (s.has("points")) {
          const json& ps = s.at("points");
          if (!ps.is_array()) s.fail("points", "expected an array of phase vectors");
          for (const auto& p : ps) cfg.points.push_back(Section::numbers_of(p, s.field("points"), cfg.n_nodes));
        }
      }
      if (!cfg.include_proof_point && cfg.points.empty() && cfg.random_points == 0)
        throw ConfigError("certify", "search grid is empty");
      break;
    }
    case Subcommand::Converge: {
      if (root.has("converge")) {
        const Section s = root.child("converge", {"theta0", "degenerate_threshold"});
        read_theta0(s, cfg);
        cfg.degenerate_threshold = s.positive("degenerate_threshold", cfg.degenerate_threshold);
      } else {
        cfg.theta0_uniform = UniformSpec{0.0, 2.0 * M_PI, std::nullopt};
      }
      break;
    }
    case Subcommand::Attract: {
      if (root.has("attract")) {
        const Section s = root.child("attract", {"theta0", "perturbation_norm", "t_end_fast", "fit_lower",
                                                 "fit_upper_fraction", "floor_factor", "manifold_order"});
        read_theta0(s, cfg);
        if (cfg.t_end) throw ConfigError("integration.t_end", "attract sets its horizon with attract.t_end_fast");
        cfg.perturbation_norm = s.number_or("perturbation_norm", cfg.perturbation_norm);
        if (!(cfg.perturbation_norm > 0.0)) s.fail("perturbation_norm", "must be > 0");
        cfg.t_end_fast = s.positive("t_end_fast", cfg.t_end_fast);
        cfg.fit_lower = s.positive("fit_lower", cfg.fit_lower);
        cfg.fit_upper_fraction = s.positive("fit_upper_fraction", cfg.fit_upper_fraction);
        if (cfg.fit_upper_fraction >= 1.0) s.fail("fit_upper_fraction", "must be < 1");
        cfg.floor_factor = s.positive("floor_factor", cfg.floor_factor);
        if (s.has("manifold_order")) {
          const std::uint64_t o = s.unsigned_int("manifold_order");
          if (o > 1) s.fail("manifold_order", "must be 0 or 1");
          cfg.manifold_order = static_cast<int>(o);
        }
      } else {
        if (cfg.t_end) throw ConfigError("integration.t_end", "attract sets its horizon with attract.t_end_fast");
        cfg.theta0_uniform = UniformSpec{0.0, 2.0 * M_PI, std::nullopt};
      }
      break;
    }
  }

  // -- output
  if (root.has("output")) {
    const Section out = root.child("output", {"directory", "formats"});
    if (out.has("directory")) cfg.out_dir = out.string("directory");
    if (out.has("formats")) {
      const json& f = out.at("formats");
      if (!f.is_array()) out.fail("formats", "expected a subset of [\"csv\", \"json\"]");
      cfg.write_csv = cfg.write_json = false;
      for (const auto& e : f) {
        if (e == "csv")
          cfg.write_csv = true;
        else if (e == "json")
          cfg.write_json = true;
        else
          out.fail("formats", "expected a subset of [\"csv\", \"json\"]");
      }
    }
  }

  // -- reproducibility
  if (cfg.uses_randomness()) {
    const bool omega_seeded = !cfg.omega_uniform || cfg.omega_uniform->seed || cfg.seed;
    const bool theta_seeded = cfg.command == Subcommand::Certify || !cfg.theta0_uniform || cfg.theta0_uniform->seed ||
                              cfg.seed;
    const bool rest_seeded = cfg.seed.has_value() ||
                             (cfg.command != Subcommand::Attract &&
                              !(cfg.command == Subcommand::Certify && cfg.random_points > 0));
    if (!omega_seeded || !theta_seeded || !rest_seeded)
      throw ConfigError("seed", "a seed is required because the config uses randomized fields");
  }
  return cfg;
}

}  // namespace adaptnet::cli
