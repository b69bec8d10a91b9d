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

#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <vector>

#include "handles.hpp"

namespace adaptnet::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr double kDefaultSlowHorizon = 2.0;
constexpr std::size_t kMaxSamples = 10000;

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string fmt_vector(const std::vector<double>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + fmt(v[i]);
  return s + ")";
}

json or_null(const std::optional<std::uint64_t>& v) { return v ? json(*v) : json(nullptr); }

std::vector<double> draw(const ExperimentConfig& cfg, const UniformSpec& spec, adn_random_stream stream,
                         std::size_t n) {
  std::vector<double> out(n);
  check(adn_random_uniform(cfg.seed_for(spec), stream, n, spec.lo, spec.hi, out.data()), "adn_random_uniform");
  return out;
}

std::vector<double> omega_of(const ExperimentConfig& cfg) {
  return cfg.omega_values ? *cfg.omega_values : draw(cfg, *cfg.omega_uniform, ADN_STREAM_OMEGA, cfg.n_nodes);
}

std::vector<double> theta0_of(const ExperimentConfig& cfg) {
  return cfg.theta0_values ? *cfg.theta0_values
                           : draw(cfg, *cfg.theta0_uniform, ADN_STREAM_INITIAL_PHASES, cfg.n_nodes);
}

struct Model {
  CouplingHandle coupling;
  ModelHandle model;
  std::vector<double> omega;
};

Model build_model(const ExperimentConfig& cfg, double epsilon) {
  Model m;
  m.omega = omega_of(cfg);
  m.coupling = make_handle<CouplingHandle>("adn_coupling_kuramoto",
                                           [&](adn_coupling** out) { return adn_coupling_kuramoto(cfg.alpha, out); });
  m.model = make_handle<ModelHandle>("adn_model_create", [&](adn_model** out) {
    return adn_model_create(cfg.n_nodes, m.omega.data(), epsilon, m.coupling.get(), out);
  });
  return m;
}

// h0 + eps * h1 at theta.
std::vector<double> slow_manifold(const adn_model* model, const std::vector<double>& theta, double epsilon,
                                  bool first_order) {
  const std::size_t n = theta.size();
  std::vector<double> a(n * n), a1(n * n);
  check(adn_h0(model, theta.data(), a.data()), "adn_h0");
  if (first_order) {
    check(adn_h1(model, theta.data(), a1.data()), "adn_h1");
    for (std::size_t q = 0; q < a.size(); ++q) a[q] += epsilon * a1[q];
  }
  return a;
}

std::size_t default_stride(double dt, double t_end) {
  const auto steps = static_cast<std::size_t>(std::max(1.0, std::ceil(t_end / dt * (1.0 - 1e-12))));
  return std::max<std::size_t>(1, (steps + kMaxSamples - 2) / (kMaxSamples - 1));
}

std::string timestamp_utc() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

class Artifacts {
 public:
  Artifacts(const ExperimentConfig& cfg, const RunOptions& options)
      : cfg_(cfg), dir_(options.out_dir.value_or(cfg.out_dir)) {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec) throw std::runtime_error("cannot create output directory " + dir_.string() + ": " + ec.message());
  }

  fs::path path(const char* name) const { return dir_ / name; }
  bool csv() const { return cfg_.write_csv; }

  // Deterministic report: no timestamps, keys sorted.
  void write_report(json result, const json& inputs) {
    if (!cfg_.write_json) return;
    json doc;
    doc["command"] = subcommand_name(cfg_.command);
    doc["config"] = cfg_.source;
    doc["seed"] = or_null(cfg_.seed);
    doc["inputs"] = inputs;
    doc["result"] = std::move(result);
    write_text("report.json", doc.dump(2) + "\n");
    files_.push_back("report.json");
  }

  void write_csv(const char* name, const std::string& header_comment, const std::string& columns,
                 const std::vector<std::vector<double>>& rows) {
    if (!cfg_.write_csv) return;
    std::ostringstream os;
    os << "# " << header_comment << "\n" << columns << "\n";
    for (const auto& row : rows) {
      for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << fmt(row[c]);
      os << "\n";
    }
    write_text(name, os.str());
    files_.push_back(name);
  }

  void record(const char* name) { files_.push_back(name); }

  void write_manifest() {
    json doc;
    doc["tool"] = "adaptnet";
    doc["version"] = adn_version();
    doc["command"] = subcommand_name(cfg_.command);
    doc["config"] = cfg_.source;
    doc["seed"] = or_null(cfg_.seed);
    doc["files"] = files_;
    doc["created_at"] = timestamp_utc();
    write_text("manifest.json", doc.dump(2) + "\n");
  }

 private:
  void write_text(const char* name, const std::string& text) {
    std::ofstream f(path(name), std::ios::binary);
    f << text;
    if (!f) throw std::runtime_error("cannot write " + path(name).string());
  }

  const ExperimentConfig& cfg_;
  fs::path dir_;
  std::vector<std::string> files_;
};

json fit_json(const adn_slope_fit& f) {
  if (!f.available) return nullptr;
  return {{"slope", f.slope}, {"intercept", f.intercept}, {"r_squared", f.r_squared}, {"poor_fit", f.poor_fit != 0}};
}

void run_simulate(const ExperimentConfig& cfg, Artifacts& files, std::ostream& out, bool quiet) {
  const double eps = *cfg.epsilon;
  Model m = build_model(cfg, eps);
  const std::vector<double> theta0 = theta0_of(cfg);
  std::vector<double> a0;
  switch (cfg.initial_weights) {
    case InitialWeights::SlowManifold: a0 = slow_manifold(m.model.get(), theta0, eps, true); break;
    case InitialWeights::CriticalManifold: a0 = slow_manifold(m.model.get(), theta0, eps, false); break;
    case InitialWeights::Explicit: a0 = cfg.a0_values; break;
  }

  adn_integration_config ic{};
  ic.dt = cfg.dt_factor * eps;
  ic.t_end = cfg.t_end.value_or(kDefaultSlowHorizon);
  ic.sample_every = cfg.sample_every.value_or(default_stride(ic.dt, ic.t_end));
  TrajectoryHandle traj = make_handle<TrajectoryHandle>("adn_integrate_full", [&](adn_trajectory** p) {
    return adn_integrate_full(m.model.get(), theta0.data(), a0.data(), &ic, p);
  });

  const std::size_t rows = adn_trajectory_size(traj.get());
  const std::size_t width = adn_trajectory_width(traj.get());
  std::vector<double> last(width);
  double t_last = 0.0;
  check(adn_trajectory_row(traj.get(), rows - 1, &t_last, last.data()), "adn_trajectory_row");
  const std::size_t n = cfg.n_nodes;
  const std::vector<double> theta_end(last.begin(), last.begin() + static_cast<std::ptrdiff_t>(n));
  const std::vector<double> a_end(last.begin() + static_cast<std::ptrdiff_t>(n), last.end());
  double distance = 0.0;
  check(adn_distance_to_slow_manifold(m.model.get(), theta_end.data(), a_end.data(), 1, &distance),
        "adn_distance_to_slow_manifold");

  if (files.csv()) {
    const std::string comment = "full-system trajectory in slow time; columns time, theta_i (radians, [0,2pi)), "
                                "a_i_j (row-major weights); nodes are 1-based";
    check(adn_trajectory_write_csv(traj.get(), files.path("raw.csv").c_str(), comment.c_str()),
          "adn_trajectory_write_csv");
    files.record("raw.csv");
  }
  json result = {{"epsilon", eps},
                 {"dt", ic.dt},
                 {"t_end", ic.t_end},
                 {"sample_every", ic.sample_every},
                 {"samples", rows},
                 {"final_time", t_last},
                 {"final_theta", theta_end},
                 {"final_distance_to_slow_manifold", distance}};
  files.write_report(std::move(result), {{"omega", m.omega}, {"theta0", theta0}, {"a0", a0}});
  if (!quiet)
    out << "simulated " << rows << " samples to t=" << fmt(t_last)
        << " distance_to_slow_manifold=" << fmt(distance) << "\n";
}

void run_certify(const ExperimentConfig& cfg, Artifacts& files, std::ostream& out) {
  const double eps = *cfg.epsilon;
  Model m = build_model(cfg, eps);
  const std::size_t n = cfg.n_nodes;

  std::vector<std::size_t> triples;
  for (const auto& t : cfg.triples) triples.insert(triples.end(), t.begin(), t.end());
  std::vector<double> points;
  for (const auto& p : cfg.points) points.insert(points.end(), p.begin(), p.end());

  adn_certify_options opts;
  adn_certify_options_default(&opts);
  opts.triples = triples.empty() ? nullptr : triples.data();
  opts.n_triples = cfg.triples.size();
  opts.points = points.empty() ? nullptr : points.data();
  opts.n_points = cfg.points.size();
  opts.include_proof_point = cfg.include_proof_point ? 1 : 0;
  opts.random_points = cfg.random_points;
  opts.seed = cfg.random_points > 0 ? *cfg.seed : 0;
  opts.fd_step = cfg.fd_step;

  CertificateHandle cert = make_handle<CertificateHandle>(
      "adn_certify", [&](adn_certificate** p) { return adn_certify(m.model.get(), cfg.order, &opts, p); });
  adn_certificate_summary s{};
  check(adn_certificate_summary_get(cert.get(), &s), "adn_certificate_summary_get");
  std::vector<double> point(n), proof(n);
  check(adn_certificate_point(cert.get(), point.data()), "adn_certificate_point");
  check(adn_certificate_proof_point(cert.get(), proof.data()), "adn_certificate_proof_point");

  const std::size_t scanned = adn_certificate_scan_size(cert.get());
  std::vector<std::size_t> scan_triples(3 * scanned), grid(scanned);
  std::vector<double> values(scanned), reference(scanned);
  check(adn_certificate_scan(cert.get(), scan_triples.data(), grid.data(), values.data(), reference.data()),
        "adn_certificate_scan");

  const json triple = {s.i + 1, s.j + 1, s.k + 1};
  json result = {{"order", cfg.order},
                 {"epsilon", eps},
                 {"decision", s.certified ? "NonpairwiseCertified" : "NoEvidence"},
                 {"index_triple", triple},
                 {"point", point},
                 {"grid_index", s.grid_index},
                 {"fd_value", s.fd_value},
                 {"analytic_value", s.has_analytic ? json(s.analytic_value) : json(nullptr)},
                 {"fd_step", s.fd_step},
                 {"noise_floor", s.noise_floor},
                 {"threshold", s.threshold},
                 {"candidates_scanned", s.candidates_scanned},
                 {"candidates_above_threshold", s.candidates_above_threshold},
                 {"proof_point",
                  {{"index_triple", triple},
                   {"point", proof},
                   {"fd_value", s.proof_fd_value},
                   {"analytic_value", s.proof_has_analytic ? json(s.proof_analytic_value) : json(nullptr)}}}};
  files.write_report(std::move(result), {{"omega", m.omega}});

  std::vector<std::vector<double>> rows;
  rows.reserve(scanned);
  for (std::size_t c = 0; c < scanned; ++c)
    rows.push_back({double(scan_triples[3 * c] + 1), double(scan_triples[3 * c + 1] + 1),
                    double(scan_triples[3 * c + 2] + 1), double(grid[c]), values[c], reference[c]});
  files.write_csv("raw.csv",
                  "mixed-derivative scan; i,j,k 1-based; grid_index per triple (proof point first when included); "
                  "fd_value of the chosen field, reference_fd_value of the order-0 field",
                  "i,j,k,grid_index,fd_value,reference_fd_value", rows);

  // The decision line is the command's result and is printed even with --quiet.
  if (s.certified)
    out << "NONPAIRWISE-CERTIFIED at (i,j,k)=(" << s.i + 1 << "," << s.j + 1 << "," << s.k + 1
        << ") theta=" << fmt_vector(point) << " value=" << fmt(s.fd_value) << "\n";
  else
    out << "NO-EVIDENCE\n";
}

void run_converge(const ExperimentConfig& cfg, Artifacts& files, std::ostream& out) {
  Model m = build_model(cfg, cfg.epsilon_list.front());
  const std::vector<double> theta0 = theta0_of(cfg);

  adn_convergence_options opts;
  adn_convergence_options_default(&opts);
  opts.dt_factor = cfg.dt_factor;
  opts.t_end = cfg.t_end.value_or(kDefaultSlowHorizon);
  opts.sample_every = cfg.sample_every.value_or(1);
  opts.degenerate_threshold = cfg.degenerate_threshold;

  ConvergenceHandle study = make_handle<ConvergenceHandle>("adn_convergence_study", [&](adn_convergence** p) {
    return adn_convergence_study(m.model.get(), theta0.data(), cfg.epsilon_list.data(), cfg.epsilon_list.size(),
                                 &opts, p);
  });
  const std::size_t count = adn_convergence_count(study.get());
  std::vector<double> eps(count), e0(count), e1(count);
  check(adn_convergence_errors(study.get(), eps.data(), e0.data(), e1.data()), "adn_convergence_errors");
  adn_slope_fit fit0{}, fit1{};
  check(adn_convergence_fit(study.get(), 0, &fit0), "adn_convergence_fit");
  check(adn_convergence_fit(study.get(), 1, &fit1), "adn_convergence_fit");
  const bool degenerate = adn_convergence_degenerate(study.get()) != 0;

  json pairs = json::array();
  std::vector<std::vector<double>> rows;
  for (std::size_t p = 0; p < count; ++p) {
    pairs.push_back({{"epsilon", eps[p]}, {"error_order0", e0[p]}, {"error_order1", e1[p]}});
    rows.push_back({eps[p], e0[p], e1[p]});
  }
  json result = {{"dt_factor", opts.dt_factor}, {"t_end", opts.t_end},      {"sample_every", opts.sample_every},
                 {"degenerate", degenerate},    {"errors", pairs},          {"fit_order0", fit_json(fit0)},
                 {"fit_order1", fit_json(fit1)}, {"min_r_squared", 0.98}};
  files.write_report(std::move(result), {{"omega", m.omega}, {"theta0", theta0}});
  files.write_csv("raw.csv",
                  "max phase error over [0, t_end] between the full system and the order-0 / order-1 reductions",
                  "epsilon,error_order0,error_order1", rows);

  if (degenerate) {
    out << "slope0=undefined slope1=undefined (degenerate: errors at machine precision)\n";
    return;
  }
  auto slope = [](const adn_slope_fit& f) { return fmt(f.slope) + (f.poor_fit ? " (poor fit)" : ""); };
  out << "slope0=" << slope(fit0) << " slope1=" << slope(fit1) << "\n";
}

void run_attract(const ExperimentConfig& cfg, Artifacts& files, std::ostream& out) {
  const double eps = *cfg.epsilon;
  Model m = build_model(cfg, eps);
  const std::size_t n = cfg.n_nodes;
  const std::vector<double> theta0 = theta0_of(cfg);

  std::vector<double> a0 = slow_manifold(m.model.get(), theta0, eps, cfg.manifold_order == 1);
  std::vector<double> dir(n * n);
  check(adn_random_uniform(*cfg.seed, ADN_STREAM_PERTURBATION, dir.size(), -1.0, 1.0, dir.data()),
        "adn_random_uniform");
  double norm = 0.0;
  for (double d : dir) norm += d * d;
  norm = std::sqrt(norm);
  for (std::size_t q = 0; q < a0.size(); ++q) a0[q] += cfg.perturbation_norm * dir[q] / norm;

  adn_integration_config ic{};
  ic.dt = cfg.dt_factor * eps;
  ic.t_end = cfg.t_end_fast * eps;
  ic.sample_every = cfg.sample_every.value_or(1);
  adn_attraction_options opts;
  adn_attraction_options_default(&opts);
  opts.manifold_order = cfg.manifold_order;
  opts.lower_bound = cfg.fit_lower;
  opts.upper_fraction = cfg.fit_upper_fraction;
  opts.floor_factor = cfg.floor_factor;

  AttractionHandle study = make_handle<AttractionHandle>("adn_attraction_study", [&](adn_attraction** p) {
    return adn_attraction_study(m.model.get(), theta0.data(), a0.data(), &ic, &opts, p);
  });
  adn_attraction_summary s{};
  check(adn_attraction_summary_get(study.get(), &s), "adn_attraction_summary_get");
  const std::size_t samples = adn_attraction_samples(study.get());
  std::vector<double> fast(samples), dist(samples);
  check(adn_attraction_series(study.get(), fast.data(), dist.data()), "adn_attraction_series");

  json pairs = json::array();
  std::vector<std::vector<double>> rows;
  for (std::size_t p = 0; p < samples; ++p) {
    pairs.push_back({fast[p], dist[p]});
    rows.push_back({fast[p], dist[p]});
  }
  json result = {{"epsilon", s.epsilon},
                 {"fitted_rate_per_fast_time", s.fitted_rate_per_fast_time},
                 {"fit_window", {s.fit_window_start, s.fit_window_end}},
                 {"residual", s.residual},
                 {"plateau", s.plateau},
                 {"lower_cutoff", s.lower_cutoff},
                 {"fit_points", s.fit_points},
                 {"dt", ic.dt},
                 {"t_end_slow", ic.t_end},
                 {"perturbation_norm", cfg.perturbation_norm},
                 {"manifold_order", cfg.manifold_order},
                 {"fast_time_distance", pairs}};
  files.write_report(std::move(result), {{"omega", m.omega}, {"theta0", theta0}, {"a0", a0}});
  files.write_csv("raw.csv", "Frobenius distance to the approximate slow manifold vs fast time s = tau / eps",
                  "fast_time,distance", rows);
  out << "rate=" << fmt(s.fitted_rate_per_fast_time) << " per fast-time unit (eps=" << fmt(s.epsilon)
      << ", window s in [" << fmt(s.fit_window_start) << ", " << fmt(s.fit_window_end) << "])\n";
}

}  // namespace

void run_experiment(const ExperimentConfig& cfg, const RunOptions& options, std::ostream& out) {
  Artifacts files(cfg, options);
  switch (cfg.command) {
    case Subcommand::Simulate: run_simulate(cfg, files, out, options.quiet); break;
    case Subcommand::Certify: run_certify(cfg, files, out); break;
    case Subcommand::Converge: run_converge(cfg, files, out); break;
    case Subcommand::Attract: run_attract(cfg, files, out); break;
  }
  files.write_manifest();
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ConfigError*>(&e)) return kExitConfig;
  if (const auto* api = dynamic_cast<const ApiError*>(&e)) {
    switch (api->status()) {
      case ADN_ERR_CONTRACT:
      case ADN_ERR_DOMAIN:
      case ADN_ERR_CAPABILITY: return kExitConfig;
      default: return kExitRuntime;
    }
  }
  return kExitRuntime;
}

}  // namespace adaptnet::cli
