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

#include "dynamics.hpp"

#include <string>

#include "errors.hpp"

namespace adaptnet {

namespace {

void check_dims(std::size_t n, std::span<const double> theta, const WeightMatrix& a, const char* who) {
  if (theta.size() != n || a.dim() != n)
    throw ContractError(std::string(who) + ": dimension mismatch (N=" + std::to_string(n) +
                        ", theta=" + std::to_string(theta.size()) + ", A=" + std::to_string(a.dim()) + ")");
}

void check_index(std::size_t idx, std::size_t n, const char* who) {
  if (idx >= n) throw ContractError(std::string(who) + ": node index out of range");
}

// S_i = sum_k H(theta_i, theta_k) Gamma(theta_k - theta_i), the Order0 interaction sum.
std::vector<double> critical_sums(const Coupling& c, std::span<const double> theta) {
  const std::size_t n = theta.size();
  std::vector<double> s(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t k = 0; k < n; ++k) acc += c.h(theta[i], theta[k]) * c.gamma(theta[k] - theta[i]);
    s[i] = acc;
  }
  return s;
}

}  // namespace

namespace detail {

void phase_rhs_into(const ModelParams& params, const Coupling& c, std::span<const double> theta,
                    std::span<const double> a_flat, std::span<double> out) {
  const std::size_t n = theta.size();
  const double inv_n = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) acc += a_flat[i * n + j] * c.gamma(theta[j] - theta[i]);
    out[i] = params.omega(i) + inv_n * acc;
  }
}

void weight_rhs_into(const Coupling& c, std::span<const double> theta, std::span<const double> a_flat, double scale,
                     std::span<double> out) {
  const std::size_t n = theta.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      out[i * n + j] = scale * (-a_flat[i * n + j] + c.h(theta[i], theta[j]));
}

}  // namespace detail

std::vector<double> phase_rhs(const ModelParams& params, const Coupling& c, std::span<const double> theta,
                              const WeightMatrix& a) {
  const std::size_t n = params.n_nodes();
  check_dims(n, theta, a, "phase_rhs");
  std::vector<double> out(n);
  detail::phase_rhs_into(params, c, theta, a.entries(), out);
  return out;
}

WeightMatrix weight_rhs(const Coupling& c, std::span<const double> theta, const WeightMatrix& a) {
  const std::size_t n = theta.size();
  check_dims(n, theta, a, "weight_rhs");
  WeightMatrix g(n);
  detail::weight_rhs_into(c, theta, a.entries(), 1.0, g.entries());
  return g;
}

WeightMatrix layer_rhs(const Coupling& c, std::span<const double> theta_frozen, const WeightMatrix& a) {
  return weight_rhs(c, theta_frozen, a);
}

FullDerivative full_rhs_slow_time(const ModelParams& params, const Coupling& c, const FullState& state) {
  const std::size_t n = params.n_nodes();
  check_dims(n, state.theta.values(), state.a, "full_rhs_slow_time");
  FullDerivative d{std::vector<double>(n), WeightMatrix(n)};
  detail::phase_rhs_into(params, c, state.theta.values(), state.a.entries(), d.dtheta);
  detail::weight_rhs_into(c, state.theta.values(), state.a.entries(), 1.0 / params.epsilon(), d.da.entries());
  return d;
}

WeightMatrix h0(const Coupling& c, std::span<const double> theta) {
  const std::size_t n = theta.size();
  WeightMatrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = c.h(theta[i], theta[j]);
  return m;
}

WeightMatrix h1(const ModelParams& params, const Coupling& c, std::span<const double> theta) {
  c.require_order(1, "h1");
  const std::size_t n = params.n_nodes();
  if (theta.size() != n) throw ContractError("h1: dimension mismatch");
  const std::vector<double> f = phase_rhs(params, c, theta, h0(c, theta));
  WeightMatrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      m(i, j) = -c.h_du(theta[i], theta[j]) * f[i] - c.h_dv(theta[i], theta[j]) * f[j];
  return m;
}

double pair_term_P(const ModelParams& params, const Coupling& c, std::size_t i, std::size_t j,
                   std::span<const double> theta) {
  c.require_order(1, "pair_term_P");
  const std::size_t n = params.n_nodes();
  if (theta.size() != n) throw ContractError("pair_term_P: dimension mismatch");
  check_index(i, n, "pair_term_P");
  check_index(j, n, "pair_term_P");
  const double ti = theta[i], tj = theta[j];
  return -c.gamma(tj - ti) * (c.h_du(ti, tj) * params.omega(i) + c.h_dv(ti, tj) * params.omega(j));
}

double triplet_term_T(const Coupling& c, std::size_t i, std::size_t j, std::size_t k, std::span<const double> theta) {
  c.require_order(1, "triplet_term_T");
  const std::size_t n = theta.size();
  check_index(i, n, "triplet_term_T");
  check_index(j, n, "triplet_term_T");
  check_index(k, n, "triplet_term_T");
  const double ti = theta[i], tj = theta[j], tk = theta[k];
  const double g_ji = c.gamma(tj - ti);
  return -g_ji * c.h_du(ti, tj) * c.h(ti, tk) * c.gamma(tk - ti) -
         g_ji * c.h_dv(ti, tj) * c.h(tj, tk) * c.gamma(tk - tj);
}

// --- ReducedField ---------------------------------------------------------------

ReducedField::ReducedField(ReducedOrder order, ModelParams params, CouplingPtr coupling)
    : order_(order), params_(std::move(params)), coupling_(std::move(coupling)) {
  if (!coupling_) throw ContractError("ReducedField: null coupling");
  if (order_ == ReducedOrder::Order1) coupling_->require_order(1, "ReducedField(Order1)");
}

// Order1 uses sum_k T_ijk = -Gamma(theta_j - theta_i) (H_u(theta_i, theta_j) S_i + H_v(theta_i, theta_j) S_j),
// with S_i the Order0 interaction sum, so the double sum costs O(N^2) instead of O(N^3).
std::vector<double> ReducedField::operator()(std::span<const double> theta) const {
  const std::size_t n = params_.n_nodes();
  if (theta.size() != n) throw ContractError("reduced_rhs: dimension mismatch");
  const Coupling& c = *coupling_;
  const double inv_n = 1.0 / static_cast<double>(n);
  const std::vector<double> s = critical_sums(c, theta);

  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = params_.omega(i) + inv_n * s[i];
  if (order_ == ReducedOrder::Order0) return out;

  const double eps = params_.epsilon();
  for (std::size_t i = 0; i < n; ++i) {
    double pair = 0.0;
    double triplet = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double ti = theta[i], tj = theta[j];
      const double g_ji = c.gamma(tj - ti);
      const double hu = c.h_du(ti, tj);
      const double hv = c.h_dv(ti, tj);
      pair += -g_ji * (hu * params_.omega(i) + hv * params_.omega(j));
      triplet += -g_ji * (hu * s[i] + hv * s[j]);
    }
    out[i] += eps * inv_n * pair + eps * inv_n * inv_n * triplet;
  }
  return out;
}

double ReducedField::component(std::size_t i, std::span<const double> theta) const {
  const std::size_t n = params_.n_nodes();
  if (theta.size() != n) throw ContractError("reduced_rhs: dimension mismatch");
  check_index(i, n, "ReducedField::component");
  const Coupling& c = *coupling_;
  const double inv_n = 1.0 / static_cast<double>(n);
  const double ti = theta[i];

  const bool first_order = order_ == ReducedOrder::Order1;
  double s_i = 0.0;
  for (std::size_t k = 0; k < n; ++k) s_i += c.h(ti, theta[k]) * c.gamma(theta[k] - ti);
  double value = params_.omega(i) + inv_n * s_i;
  if (!first_order) return value;

  double pair = 0.0;
  double triplet = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double tj = theta[j];
    double s_j = 0.0;
    for (std::size_t k = 0; k < n; ++k) s_j += c.h(tj, theta[k]) * c.gamma(theta[k] - tj);
    const double g_ji = c.gamma(tj - ti);
    const double hu = c.h_du(ti, tj);
    const double hv = c.h_dv(ti, tj);
    pair += -g_ji * (hu * params_.omega(i) + hv * params_.omega(j));
    triplet += -g_ji * (hu * s_i + hv * s_j);
  }
  const double eps = params_.epsilon();
  return value + eps * inv_n * pair + eps * inv_n * inv_n * triplet;
}

std::vector<double> reduced_rhs(const ReducedField& field, std::span<const double> theta) { return field(theta); }

}  // namespace adaptnet
