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

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "coupling.hpp"
#include "params.hpp"
#include "phase.hpp"
#include "weights.hpp"

namespace adaptnet {

// Slow phases plus fast weights, one point of T^N x R^{N x N}.
struct FullState {
  PhaseVector theta;
  WeightMatrix a;
};

enum class ReducedOrder { Order0 = 0, Order1 = 1 };

// A truncation of the reduced phase field on the slow manifold.
//   Order0: A = h0(theta) substituted into the phase equation.
//   Order1: adds (eps/N) sum_j P_ij + (eps/N^2) sum_jk T_ijk.
class ReducedField {
 public:
  ReducedField(ReducedOrder order, ModelParams params, CouplingPtr coupling);

  ReducedOrder order() const noexcept { return order_; }
  const ModelParams& params() const noexcept { return params_; }
  const Coupling& coupling() const noexcept { return *coupling_; }
  const CouplingPtr& coupling_ptr() const noexcept { return coupling_; }

  std::size_t n_nodes() const noexcept { return params_.n_nodes(); }

  std::vector<double> operator()(std::span<const double> theta) const;

  // Single component i. Same arithmetic as operator() for that row.
  double component(std::size_t i, std::span<const double> theta) const;

 private:
  ReducedOrder order_;
  ModelParams params_;
  CouplingPtr coupling_;
};

// f_i = omega_i + (1/N) sum_j a_ij Gamma(theta_j - theta_i)
std::vector<double> phase_rhs(const ModelParams& params, const Coupling& c, std::span<const double> theta,
                              const WeightMatrix& a);

// g_ij = -a_ij + H(theta_i, theta_j). Not divided by epsilon.
WeightMatrix weight_rhs(const Coupling& c, std::span<const double> theta, const WeightMatrix& a);

// Fast-time field of the layer problem, theta frozen. Same values as weight_rhs.
WeightMatrix layer_rhs(const Coupling& c, std::span<const double> theta_frozen, const WeightMatrix& a);

struct FullDerivative {
  std::vector<double> dtheta;
  WeightMatrix da;
};

// Slow-time parametrization: dtheta = f, dA = g / eps.
FullDerivative full_rhs_slow_time(const ModelParams& params, const Coupling& c, const FullState& state);

// Critical manifold graph: h0_ij = H(theta_i, theta_j).
WeightMatrix h0(const Coupling& c, std::span<const double> theta);

// First-order slow-manifold correction:
//   h1_ij = -H_u(theta_i, theta_j) f_i(theta, h0) - H_v(theta_i, theta_j) f_j(theta, h0).
WeightMatrix h1(const ModelParams& params, const Coupling& c, std::span<const double> theta);

// Pairwise O(eps) term: -Gamma(theta_j - theta_i) (H_u omega_i + H_v omega_j).
double pair_term_P(const ModelParams& params, const Coupling& c, std::size_t i, std::size_t j,
                   std::span<const double> theta);

// Triplet O(eps) term T_ijk. Indices need not be distinct.
double triplet_term_T(const Coupling& c, std::size_t i, std::size_t j, std::size_t k, std::span<const double> theta);

std::vector<double> reduced_rhs(const ReducedField& field, std::span<const double> theta);

namespace detail {

// Flat kernels shared with the integrator. a_flat is the row-major N x N weight block.
void phase_rhs_into(const ModelParams& params, const Coupling& c, std::span<const double> theta,
                    std::span<const double> a_flat, std::span<double> out);
// out_ij = scale * (-a_ij + H(theta_i, theta_j))
void weight_rhs_into(const Coupling& c, std::span<const double> theta, std::span<const double> a_flat, double scale,
                     std::span<double> out);

}  // namespace detail

inline std::vector<double> reduced_rhs(const ReducedField& field, const PhaseVector& theta) {
  return reduced_rhs(field, theta.values());
}

}  // namespace adaptnet
