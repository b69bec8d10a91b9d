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

#include "integrator.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>

namespace adaptnet {

namespace {

// Divergence guard: any state component beyond this magnitude aborts the run.
constexpr double kDivergenceBound = 1e12;

void check_bounded(std::span<const double> y, double t) {
  for (double v : y)
    if (!(std::fabs(v) <= kDivergenceBound)) throw IntegrationError("divergence: state left the bounded region", t);
}

void sample_into(Trajectory& traj, double t, std::span<const double> y, std::size_t n, std::vector<double>& buf) {
  buf.assign(y.begin(), y.end());
  for (std::size_t i = 0; i < n; ++i) buf[i] = canonicalize_phase(buf[i]);
  traj.append(t, buf);
}

template <class Rhs>
Trajectory run(Trajectory traj, std::vector<double> y, const IntegrationConfig& config, Rhs&& rhs) {
  const std::size_t steps = step_count(config);
  const double dt = config.t_end / static_cast<double>(steps);
  const std::size_t n = traj.n_nodes();
  Rk4Workspace ws;
  std::vector<double> buf;
  sample_into(traj, 0.0, y, n, buf);
  for (std::size_t k = 0; k < steps; ++k) {
    const double t = static_cast<double>(k) * dt;
    rk4_step(rhs, t, std::span<double>(y), dt, ws);
    check_bounded(y, t + dt);
    if ((k + 1) % config.sample_every == 0 || k + 1 == steps) sample_into(traj, static_cast<double>(k + 1) * dt, y, n, buf);
  }
  return traj;
}

}  // namespace

namespace detail {
void throw_if_nonfinite(std::span<const double> v, double t, const char* what) {
  for (double x : v)
    if (!std::isfinite(x)) throw IntegrationError(std::string(what) + ": non-finite value", t);
}
}  // namespace detail

IntegrationConfig default_config(double epsilon, double t_end) {
  if (!(epsilon > 0.0)) throw ContractError("default_config: epsilon must be > 0");
  IntegrationConfig c;
  c.dt = kDefaultDtFactor * epsilon;
  c.t_end = t_end;
  validate_config(c);
  const std::size_t steps = step_count(c);
  // steps / stride + 1 samples, including t = 0.
  c.sample_every = std::max<std::size_t>(1, (steps + kMaxDefaultSamples - 2) / (kMaxDefaultSamples - 1));
  return c;
}

void validate_config(const IntegrationConfig& config) {
  if (!(config.dt > 0.0) || !std::isfinite(config.dt)) throw ContractError("integration: dt must be finite and > 0");
  if (!(config.t_end > 0.0) || !std::isfinite(config.t_end))
    throw ContractError("integration: t_end must be finite and > 0");
  if (config.dt > config.t_end) throw ContractError("integration: dt must not exceed t_end");
  if (config.sample_every < 1) throw ContractError("integration: sample_every must be >= 1");
}

void validate_full_config(const IntegrationConfig& config, double epsilon) {
  validate_config(config);
  // Relative slack so that dt = 0.1 * eps computed in floating point is accepted.
  if (config.dt > kMaxDtFactor * epsilon * (1.0 + 1e-12))
    throw ContractError("integration: dt=" + std::to_string(config.dt) + " exceeds the stability limit eps/10=" +
                        std::to_string(kMaxDtFactor * epsilon));
}

std::size_t step_count(const IntegrationConfig& config) {
  validate_config(config);
  const double ratio = config.t_end / config.dt;
  return static_cast<std::size_t>(std::max(1.0, std::ceil(ratio * (1.0 - 1e-12))));
}

// --- Trajectory -----------------------------------------------------------------

std::span<const double> Trajectory::row(std::size_t k) const {
  if (k >= size()) throw ContractError("Trajectory::row: index out of range");
  return std::span<const double>(data_).subspan(k * width(), width());
}

PhaseVector Trajectory::phases(std::size_t k) const {
  const auto t = theta(k);
  return PhaseVector(std::vector<double>(t.begin(), t.end()));
}

WeightMatrix Trajectory::weights(std::size_t k) const {
  if (kind_ != Kind::Full) throw ContractError("Trajectory::weights: phase-only trajectory");
  const auto r = row(k).subspan(n_);
  return WeightMatrix(n_, std::vector<double>(r.begin(), r.end()));
}

FullState Trajectory::state(std::size_t k) const { return FullState{phases(k), weights(k)}; }

std::vector<std::string> Trajectory::column_labels() const {
  std::vector<std::string> labels;
  labels.reserve(width() + 1);
  labels.emplace_back("time");
  for (std::size_t i = 1; i <= n_; ++i) labels.push_back("theta_" + std::to_string(i));
  if (kind_ == Kind::Full)
    for (std::size_t i = 1; i <= n_; ++i)
      for (std::size_t j = 1; j <= n_; ++j) labels.push_back("a_" + std::to_string(i) + "_" + std::to_string(j));
  return labels;
}

void Trajectory::append(double t, std::span<const double> r) {
  if (r.size() != width()) throw ContractError("Trajectory::append: row width mismatch");
  if (!times_.empty() && !(t > times_.back())) throw ContractError("Trajectory::append: times must increase");
  times_.push_back(t);
  data_.insert(data_.end(), r.begin(), r.end());
}

void Trajectory::write_csv(std::ostream& out, const std::string& comment) const {
  if (!comment.empty()) out << "# " << comment << '\n';
  const auto labels = column_labels();
  for (std::size_t c = 0; c < labels.size(); ++c) out << (c ? "," : "") << labels[c];
  out << '\n';
  char buf[32];
  for (std::size_t k = 0; k < size(); ++k) {
    std::snprintf(buf, sizeof buf, "%.17g", times_[k]);
    out << buf;
    for (double v : row(k)) {
      std::snprintf(buf, sizeof buf, "%.17g", v);
      out << ',' << buf;
    }
    out << '\n';
  }
}

// --- Drivers ----------------------------------------------------------------------

Trajectory integrate_full(const ModelParams& params, const CouplingPtr& coupling, const FullState& initial,
                          const IntegrationConfig& config) {
  if (!coupling) throw ContractError("integrate_full: null coupling");
  validate_full_config(config, params.epsilon());
  const std::size_t n = params.n_nodes();
  if (initial.theta.size() != n || initial.a.dim() != n) throw ContractError("integrate_full: dimension mismatch");

  std::vector<double> y(n + n * n);
  std::copy(initial.theta.values().begin(), initial.theta.values().end(), y.begin());
  std::copy(initial.a.entries().begin(), initial.a.entries().end(), y.begin() + static_cast<std::ptrdiff_t>(n));

  const Coupling& c = *coupling;
  const double inv_eps = 1.0 / params.epsilon();
  auto rhs = [&](double, std::span<const double> s, std::span<double> ds) {
    const auto theta = s.first(n);
    const auto a = s.subspan(n);
    detail::phase_rhs_into(params, c, theta, a, ds.first(n));
    detail::weight_rhs_into(c, theta, a, inv_eps, ds.subspan(n));
  };
  return run(Trajectory(Trajectory::Kind::Full, n), std::move(y), config, rhs);
}

Trajectory integrate_reduced(const ReducedField& field, const PhaseVector& initial, const IntegrationConfig& config) {
  validate_config(config);
  const std::size_t n = field.n_nodes();
  if (initial.size() != n) throw ContractError("integrate_reduced: dimension mismatch");
  std::vector<double> y(initial.values().begin(), initial.values().end());
  auto rhs = [&](double, std::span<const double> s, std::span<double> ds) {
    const std::vector<double> f = field(s);
    std::copy(f.begin(), f.end(), ds.begin());
  };
  return run(Trajectory(Trajectory::Kind::Phases, n), std::move(y), config, rhs);
}

}  // namespace adaptnet
