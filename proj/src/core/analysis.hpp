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
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "dynamics.hpp"
#include "integrator.hpp"

namespace adaptnet {

using Triple = std::array<std::size_t, 3>;

// A phase vector field accessed one component at a time.
struct PhaseField {
  std::size_t n_nodes = 0;
  std::function<double(std::size_t i, std::span<const double> theta)> component;
};

PhaseField as_phase_field(const ReducedField& field);

// ---------------------------------------------------------------------------
// Mixed second derivatives

inline constexpr double kDefaultFdStep = 1e-3;
inline constexpr double kCertificateAbsoluteFloor = 1e-6;
inline constexpr double kCertificateNoiseFactor = 10.0;

// [F(+j,+k) - F(+j,-k) - F(-j,+k) + F(-j,-k)] / (4 step^2) for a scalar function of theta.
double mixed_fd(const std::function<double(std::span<const double>)>& fn, std::size_t j, std::size_t k,
                std::span<const double> theta, double step);

// d/dtheta_j d/dtheta_k F_i by the 4-point central stencil. i, j, k must be distinct.
double mixed_second_derivative_fd(const PhaseField& field, std::size_t i, std::size_t j, std::size_t k,
                                  std::span<const double> theta, double step = kDefaultFdStep);
double mixed_second_derivative_fd(const ReducedField& field, std::size_t i, std::size_t j, std::size_t k,
                                  std::span<const double> theta, double step = kDefaultFdStep);

// sum_r sum_s T_irs(theta), the bare triplet double sum of component i.
double triplet_double_sum(const Coupling& c, std::size_t i, std::span<const double> theta);

// d/dtheta_j d/dtheta_k [T_ijk + T_ikj] in closed form (the only summands of the
// triplet double sum with a nonzero (j,k) mixed derivative). Needs second-order
// coupling derivatives.
double triplet_sum_mixed_analytic(const Coupling& c, const ModelParams& params, std::size_t i, std::size_t j,
                                  std::size_t k, std::span<const double> theta);

// Phase point used to exhibit the certificate for the adaptive Kuramoto model:
// theta_j = pi/2 and every other phase 0.
std::vector<double> proof_point(std::size_t n, const Triple& triple);

// ---------------------------------------------------------------------------
// Certificate

enum class CertificateDecision { NonpairwiseCertified, NoEvidence };

struct CertificateCandidate {
  Triple triple{};
  std::vector<double> point;
  std::size_t grid_index = 0;
};

struct CertificateSearch {
  // Empty: every ordered triple of distinct indices.
  std::vector<Triple> triples;
  bool include_proof_point = true;
  std::vector<std::vector<double>> points;
  std::size_t random_points = 50;
  std::uint64_t seed = 0;
  double fd_step = kDefaultFdStep;
};

// Candidates sorted lexicographically by (i, j, k, grid index). Per triple the grid is
// [proof point (optional), explicit points..., random points...].
std::vector<CertificateCandidate> certificate_candidates(std::size_t n, const CertificateSearch& search);

struct ProofPointCheck {
  Triple triple{};
  std::vector<double> point;
  double fd_value = 0.0;
  std::optional<double> analytic_value;
};

// One scanned candidate: FD value of the field and of its Order0 reference.
struct CertificateScanEntry {
  Triple triple{};
  std::size_t grid_index = 0;
  double fd_value = 0.0;
  double reference_value = 0.0;
};

struct CertificateReport {
  Triple triple{};
  std::vector<double> point;
  std::size_t grid_index = 0;
  double fd_value = 0.0;
  // Closed-form mixed derivative of the bare triplet double sum at the maximizer
  // (no eps / N^2 factor). Present when the coupling has second derivatives.
  std::optional<double> analytic_value;
  CertificateDecision decision = CertificateDecision::NoEvidence;
  double fd_step = kDefaultFdStep;
  double noise_floor = 0.0;
  double threshold = kCertificateAbsoluteFloor;
  std::size_t candidates_scanned = 0;
  std::size_t candidates_above_threshold = 0;
  std::optional<ProofPointCheck> proof_point;
  std::vector<CertificateScanEntry> scan;  // in candidate order
};

// Scans candidates, reports the maximizer of |FD mixed derivative| of field. The
// threshold is max(1e-6, 10 * max |FD| of reference over the same candidates), where
// reference is the pairwise Order0 counterpart of field.
CertificateReport certify(const PhaseField& field, const PhaseField& reference,
                          std::span<const CertificateCandidate> candidates, double fd_step);

// Requires N >= 3. Fills analytic values when the coupling has second derivatives.
CertificateReport certify_nonpairwise(const ReducedField& field, const CertificateSearch& search = {});

// ---------------------------------------------------------------------------
// Node-respecting transforms: psi_i = theta_{perm[i]} + shifts[i].

struct NodeTransform {
  std::vector<std::size_t> permutation;
  std::vector<double> shifts;
};

void validate_transform(const NodeTransform& t, std::size_t n);
PhaseVector node_respecting_transform(std::span<const double> theta, const NodeTransform& t);
// Preimage theta of psi under the transform (not canonicalized).
std::vector<double> inverse_transform(std::span<const double> psi, const NodeTransform& t);
// Node index in psi-coordinates that carries original node m.
std::size_t relabel(std::size_t m, const NodeTransform& t);
Triple relabel(const Triple& triple, const NodeTransform& t);

// Push-forward of a phase field: G_i(psi) = F_{perm[i]}(inverse(psi)).
PhaseField pushforward(const PhaseField& field, const NodeTransform& t);

struct InvariancePair {
  double before = 0.0;
  double after = 0.0;
};

// Mixed derivative of field at (triple, point) and of its push-forward at the relabeled
// triple and transformed point.
InvariancePair pushforward_certificate_invariance(const ReducedField& field, const NodeTransform& t,
                                                  std::span<const double> point, const Triple& triple,
                                                  double step = kDefaultFdStep);

// Random permutation and uniform shifts in [0, 2pi).
NodeTransform random_transform(std::size_t n, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Slow-manifold distance and attraction

// Frobenius norm of A - h0(theta) (order 0) or A - h0(theta) - eps h1(theta) (order 1).
double distance_to_slow_manifold(const ModelParams& params, const Coupling& c, const FullState& state, int order);

struct SlopeFit {
  std::vector<double> xs;
  std::vector<double> ys;
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  bool poor_fit = false;
};

inline constexpr double kMinRSquared = 0.98;

// Least squares on (log x, log y). xs strictly decreasing and positive, ys positive,
// at least two points. poor_fit is set when r_squared < 0.98.
SlopeFit fit_log_log(std::vector<double> xs, std::vector<double> ys);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  double rms_residual = 0.0;
};

LinearFit least_squares_line(std::span<const double> x, std::span<const double> y);

struct AttractionOptions {
  int manifold_order = 1;
  double lower_bound = 1e-8;
  double upper_fraction = 0.5;
  // The window also stops above floor_factor times the late-time plateau of the distance.
  double floor_factor = 100.0;
};

struct AttractionReport {
  double epsilon = 0.0;
  double fitted_rate_per_fast_time = 0.0;
  double fit_window_start = 0.0;  // fast time
  double fit_window_end = 0.0;
  double residual = 0.0;          // rms of log-distance residuals
  double plateau = 0.0;
  double lower_cutoff = 0.0;
  std::size_t fit_points = 0;
  std::vector<double> fast_times;
  std::vector<double> distances;
};

AttractionReport attraction_study(const ModelParams& params, const CouplingPtr& coupling, const FullState& initial,
                                  const IntegrationConfig& config, const AttractionOptions& options = {});

// ---------------------------------------------------------------------------
// Full vs reduced convergence in eps

struct ConvergenceOptions {
  double dt_factor = kDefaultDtFactor;
  double t_end = 2.0;
  std::size_t sample_every = 1;
  // Any error at or below this marks the sweep as degenerate (no fits).
  double degenerate_threshold = 1e-12;
  bool parallel = true;
};

struct ConvergenceResult {
  std::vector<double> epsilons;
  std::vector<double> errors_order0;
  std::vector<double> errors_order1;
  bool degenerate = false;
  std::optional<SlopeFit> fit0;
  std::optional<SlopeFit> fit1;
};

// For each eps: full system from (theta0, h0 + eps h1) against both reduced fields from
// theta0; error = max over samples of phase_distance.
ConvergenceResult convergence_study(const ModelParams& params_base, const CouplingPtr& coupling,
                                    const PhaseVector& theta0, std::span<const double> epsilons,
                                    const ConvergenceOptions& options = {});

}  // namespace adaptnet
