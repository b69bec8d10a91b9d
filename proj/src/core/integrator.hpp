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

#include <cmath>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "dynamics.hpp"
#include "errors.hpp"

namespace adaptnet {

// Slow-time stepping parameters. The step actually used is t_end / ceil(t_end / dt),
// so the horizon is hit exactly. Every sample_every-th step is recorded, plus the
// initial and final states.
struct IntegrationConfig {
  double dt = 0.0;
  double t_end = 0.0;
  std::size_t sample_every = 1;
};

inline constexpr std::size_t kMaxDefaultSamples = 10000;
// Full-system runs must satisfy dt <= epsilon * kMaxDtFactor.
inline constexpr double kMaxDtFactor = 0.1;
inline constexpr double kDefaultDtFactor = 0.05;

// dt = eps / 20 and the smallest stride that stores at most 10^4 samples.
IntegrationConfig default_config(double epsilon, double t_end);

// Throws ContractError unless dt > 0, t_end > 0, dt <= t_end and sample_every >= 1.
void validate_config(const IntegrationConfig& config);
// Adds the stiffness guard dt <= eps / 10 used for every full-system run.
void validate_full_config(const IntegrationConfig& config, double epsilon);

std::size_t step_count(const IntegrationConfig& config);

// Uniformly sampled states. Phases are canonicalized at sampling time.
// Full trajectories store [theta_1..theta_N, a_11..a_NN] per row, phase
// trajectories store [theta_1..theta_N].
class Trajectory {
 public:
  enum class Kind { Full, Phases };

  Trajectory(Kind kind, std::size_t n_nodes) : kind_(kind), n_(n_nodes) {}

  Kind kind() const noexcept { return kind_; }
  std::size_t n_nodes() const noexcept { return n_; }
  std::size_t width() const noexcept { return kind_ == Kind::Full ? n_ + n_ * n_ : n_; }
  std::size_t size() const noexcept { return times_.size(); }

  const std::vector<double>& times() const noexcept { return times_; }
  double time(std::size_t k) const { return times_.at(k); }
  std::span<const double> row(std::size_t k) const;
  std::span<const double> theta(std::size_t k) const { return row(k).first(n_); }
  PhaseVector phases(std::size_t k) const;
  WeightMatrix weights(std::size_t k) const;
  FullState state(std::size_t k) const;

  std::vector<std::string> column_labels() const;

  void append(double t, std::span<const double> row);

  // Header row "time,theta_1,...", then one row per sample with 17 significant digits.
  // A non-empty comment is written first as a '#' line.
  void write_csv(std::ostream& out, const std::string& comment = {}) const;

 private:
  Kind kind_;
  std::size_t n_;
  std::vector<double> times_;
  std::vector<double> data_;
};

struct Rk4Workspace {
  std::vector<double> k1, k2, k3, k4, stage;
  void resize(std::size_t n) {
    k1.resize(n);
    k2.resize(n);
    k3.resize(n);
    k4.resize(n);
    stage.resize(n);
  }
};

namespace detail {
void throw_if_nonfinite(std::span<const double> v, double t, const char* what);
}

// One classical RK4 step of y' = rhs(t, y) in place. rhs has signature
// void(double t, std::span<const double> y, std::span<double> dy).
// Throws IntegrationError naming the stage time when a stage value is not finite.
template <class Rhs>
void rk4_step(Rhs&& rhs, double t, std::span<double> y, double dt, Rk4Workspace& ws) {
  const std::size_t n = y.size();
  ws.resize(n);
  rhs(t, std::span<const double>(y), std::span<double>(ws.k1));
  detail::throw_if_nonfinite(ws.k1, t, "rk4 stage 1");
  for (std::size_t i = 0; i < n; ++i) ws.stage[i] = y[i] + 0.5 * dt * ws.k1[i];
  rhs(t + 0.5 * dt, std::span<const double>(ws.stage), std::span<double>(ws.k2));
  detail::throw_if_nonfinite(ws.k2, t + 0.5 * dt, "rk4 stage 2");
  for (std::size_t i = 0; i < n; ++i) ws.stage[i] = y[i] + 0.5 * dt * ws.k2[i];
  rhs(t + 0.5 * dt, std::span<const double>(ws.stage), std::span<double>(ws.k3));
  detail::throw_if_nonfinite(ws.k3, t + 0.5 * dt, "rk4 stage 3");
  for (std::size_t i = 0; i < n; ++i) ws.stage[i] = y[i] + dt * ws.k3[i];
  rhs(t + dt, std::span<const double>(ws.stage), std::span<double>(ws.k4));
  detail::throw_if_nonfinite(ws.k4, t + dt, "rk4 stage 4");
  for (std::size_t i = 0; i < n; ++i) y[i] += dt / 6.0 * (ws.k1[i] + 2.0 * ws.k2[i] + 2.0 * ws.k3[i] + ws.k4[i]);
  detail::throw_if_nonfinite(y, t + dt, "rk4 update");
}

template <class Rhs>
std::vector<double> rk4_step(Rhs&& rhs, double t, std::span<const double> y, double dt) {
  if (!(dt > 0.0)) throw ContractError("rk4_step: dt must be > 0");
  std::vector<double> out(y.begin(), y.end());
  Rk4Workspace ws;
  rk4_step(rhs, t, std::span<double>(out), dt, ws);
  return out;
}

// Full fast-slow system in slow time. Rejects dt > eps / 10 before stepping.
Trajectory integrate_full(const ModelParams& params, const CouplingPtr& coupling, const FullState& initial,
                          const IntegrationConfig& config);

// Reduced phase dynamics under the given truncation. No stiffness guard.
Trajectory integrate_reduced(const ReducedField& field, const PhaseVector& initial, const IntegrationConfig& config);

}  // namespace adaptnet
