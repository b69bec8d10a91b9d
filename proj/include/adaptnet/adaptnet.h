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

#ifndef ADAPTNET_ADAPTNET_H
#define ADAPTNET_ADAPTNET_H

/*
 * C interface to the adaptnet library: adaptive phase-oscillator networks with
 * fast coupling weights, their first-order slow-manifold reduction, and the
 * mixed-derivative test for nonpairwise (triplet) interactions.
 *
 * Conventions
 *   - Every fallible call returns adn_status. On failure a message describing
 *     the error is available from adn_last_error() on the same thread.
 *   - Objects are opaque handles created by adn_*_create / adn_* study calls and
 *     released by the matching adn_*_free. Free functions accept NULL.
 *   - Node indices are zero-based. Weight matrices are N*N doubles, row-major
 *     (entry (i,j) at i*N+j). Phases are radians.
 *   - Handles are immutable after creation and may be shared across threads.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(ADN_BUILDING_LIBRARY)
#define ADN_API __attribute__((visibility("default")))
#else
#define ADN_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum adn_status {
  ADN_OK = 0,
  ADN_ERR_CONTRACT = 1,    /* bad argument, dimension, index or config */
  ADN_ERR_DOMAIN = 2,      /* non-finite or out-of-domain value */
  ADN_ERR_CAPABILITY = 3,  /* coupling lacks required derivative data */
  ADN_ERR_INTEGRATION = 4, /* non-finite stage value or divergence */
  ADN_ERR_EXPERIMENT = 5,  /* study could not produce a result */
  ADN_ERR_IO = 6,          /* file could not be written */
  ADN_ERR_INTERNAL = 7
} adn_status;

ADN_API const char* adn_version(void);
ADN_API const char* adn_last_error(void);
ADN_API const char* adn_status_name(adn_status status);

/* ---- Phases and randomness -------------------------------------------- */

typedef enum adn_random_stream {
  ADN_STREAM_OMEGA = 1,
  ADN_STREAM_INITIAL_PHASES = 2,
  ADN_STREAM_PERTURBATION = 3,
  ADN_STREAM_CERTIFICATE_GRID = 4,
  ADN_STREAM_TRANSFORMS = 5
} adn_random_stream;

ADN_API adn_status adn_canonicalize_phase(double x, double* out);
/* max_i of the wrapped angular distance between a_i and b_i */
ADN_API adn_status adn_phase_distance(const double* a, const double* b, size_t n, double* out);
/* n deterministic draws, uniform on [lo, hi), from (seed, stream) */
ADN_API adn_status adn_random_uniform(uint64_t seed, adn_random_stream stream, size_t n, double lo, double hi,
                                      double* out);

/* ---- Couplings --------------------------------------------------------- */

typedef struct adn_coupling adn_coupling;

typedef enum adn_coupling_fn {
  ADN_GAMMA = 0,
  ADN_GAMMA_D1,
  ADN_GAMMA_D2,
  ADN_H,
  ADN_H_DU,
  ADN_H_DV,
  ADN_H_DUU,
  ADN_H_DUV,
  ADN_H_DVV
} adn_coupling_fn;

/* Gamma(phi) = sin(phi), H(u,v) = alpha + cos(u - v). */
ADN_API adn_status adn_coupling_kuramoto(double alpha, adn_coupling** out);
/* Kuramoto H with Gamma == 0 (weights relax with phases frozen at omega drift). */
ADN_API adn_status adn_coupling_decoupled_kuramoto(double alpha, adn_coupling** out);

/* User coupling. gamma and h are required; derivative pointers may be NULL.
 * With fd_complete != 0 missing derivatives are filled by central differences. */
typedef struct adn_coupling_callbacks {
  void* user_data;
  double (*gamma)(void* user_data, double phi);
  double (*gamma_d1)(void* user_data, double phi);
  double (*gamma_d2)(void* user_data, double phi);
  double (*h)(void* user_data, double u, double v);
  double (*h_du)(void* user_data, double u, double v);
  double (*h_dv)(void* user_data, double u, double v);
  double (*h_duu)(void* user_data, double u, double v);
  double (*h_duv)(void* user_data, double u, double v);
  double (*h_dvv)(void* user_data, double u, double v);
} adn_coupling_callbacks;

ADN_API adn_status adn_coupling_from_callbacks(const adn_coupling_callbacks* callbacks, int fd_complete,
                                               adn_coupling** out);
ADN_API void adn_coupling_free(adn_coupling* coupling);
ADN_API adn_status adn_coupling_derivative_order(const adn_coupling* coupling, int* out);
/* v is ignored for the gamma functions. */
ADN_API adn_status adn_coupling_eval(const adn_coupling* coupling, adn_coupling_fn fn, double u, double v,
                                     double* out);

/* ---- Model ------------------------------------------------------------- */

typedef struct adn_model adn_model;

/* Copies omega (n entries); keeps its own reference to the coupling. */
ADN_API adn_status adn_model_create(size_t n, const double* omega, double epsilon, const adn_coupling* coupling,
                                    adn_model** out);
ADN_API void adn_model_free(adn_model* model);
ADN_API size_t adn_model_nodes(const adn_model* model);
ADN_API double adn_model_epsilon(const adn_model* model);

/* ---- Vector fields ------------------------------------------------------ */

/* f_i = omega_i + (1/N) sum_j a_ij Gamma(theta_j - theta_i) */
ADN_API adn_status adn_phase_rhs(const adn_model* model, const double* theta, const double* a, double* out);
/* g_ij = -a_ij + H(theta_i, theta_j) */
ADN_API adn_status adn_weight_rhs(const adn_model* model, const double* theta, const double* a, double* out);
ADN_API adn_status adn_layer_rhs(const adn_model* model, const double* theta_frozen, const double* a, double* out);
/* slow time: dtheta = f, da = g / eps */
ADN_API adn_status adn_full_rhs(const adn_model* model, const double* theta, const double* a, double* dtheta,
                                double* da);
ADN_API adn_status adn_h0(const adn_model* model, const double* theta, double* out);
ADN_API adn_status adn_h1(const adn_model* model, const double* theta, double* out);
ADN_API adn_status adn_pair_term(const adn_model* model, size_t i, size_t j, const double* theta, double* out);
ADN_API adn_status adn_triplet_term(const adn_model* model, size_t i, size_t j, size_t k, const double* theta,
                                    double* out);
/* order 0 or 1 */
ADN_API adn_status adn_reduced_rhs(const adn_model* model, int order, const double* theta, double* out);

/* ---- Integration -------------------------------------------------------- */

typedef struct adn_integration_config {
  double dt;    /* slow-time step; full runs need dt <= eps / 10 */
  double t_end; /* slow-time horizon */
  size_t sample_every; /* record every k-th step; the final state is always recorded */
} adn_integration_config;

typedef struct adn_trajectory adn_trajectory;

ADN_API adn_status adn_default_config(double epsilon, double t_end, adn_integration_config* out);
ADN_API adn_status adn_integrate_full(const adn_model* model, const double* theta0, const double* a0,
                                      const adn_integration_config* config, adn_trajectory** out);
ADN_API adn_status adn_integrate_reduced(const adn_model* model, int order, const double* theta0,
                                         const adn_integration_config* config, adn_trajectory** out);
ADN_API void adn_trajectory_free(adn_trajectory* trajectory);
ADN_API size_t adn_trajectory_size(const adn_trajectory* trajectory);
/* N + N*N for full trajectories, N for reduced ones */
ADN_API size_t adn_trajectory_width(const adn_trajectory* trajectory);
ADN_API adn_status adn_trajectory_row(const adn_trajectory* trajectory, size_t k, double* time, double* row);
/* CSV with header row (time, theta_i, a_i_j); comment may be NULL. */
ADN_API adn_status adn_trajectory_write_csv(const adn_trajectory* trajectory, const char* path,
                                            const char* comment);

/* ---- Certificate -------------------------------------------------------- */

ADN_API adn_status adn_mixed_derivative_fd(const adn_model* model, int order, size_t i, size_t j, size_t k,
                                           const double* theta, double step, double* out);
/* d_j d_k of the bare triplet double sum of component i (no eps/N^2 factor) */
ADN_API adn_status adn_triplet_mixed_analytic(const adn_model* model, size_t i, size_t j, size_t k,
                                              const double* theta, double* out);

typedef struct adn_certify_options {
  const size_t* triples; /* 3 * n_triples indices, NULL for all distinct triples */
  size_t n_triples;
  int include_proof_point;
  const double* points; /* n_points * N phases, may be NULL */
  size_t n_points;
  size_t random_points;
  uint64_t seed;
  double fd_step;
} adn_certify_options;

typedef struct adn_certificate_summary {
  size_t i, j, k;
  size_t grid_index;
  double fd_value;
  int has_analytic;
  double analytic_value;
  int certified;
  double fd_step;
  double noise_floor;
  double threshold;
  size_t candidates_scanned;
  size_t candidates_above_threshold;
  double proof_fd_value;
  int proof_has_analytic;
  double proof_analytic_value;
} adn_certificate_summary;

typedef struct adn_certificate adn_certificate;

ADN_API void adn_certify_options_default(adn_certify_options* out);
ADN_API adn_status adn_certify(const adn_model* model, int order, const adn_certify_options* options,
                               adn_certificate** out);
ADN_API void adn_certificate_free(adn_certificate* certificate);
ADN_API adn_status adn_certificate_summary_get(const adn_certificate* certificate, adn_certificate_summary* out);
/* maximizing grid point, N entries */
ADN_API adn_status adn_certificate_point(const adn_certificate* certificate, double* out);
ADN_API adn_status adn_certificate_proof_point(const adn_certificate* certificate, double* out);
ADN_API size_t adn_certificate_scan_size(const adn_certificate* certificate);
/* per scanned candidate: triple (3 entries each), grid index, FD value, Order0 reference FD value */
ADN_API adn_status adn_certificate_scan(const adn_certificate* certificate, size_t* triples, size_t* grid_indices,
                                        double* fd_values, double* reference_values);

/* psi_i = theta_{permutation[i]} + shifts[i], canonicalized */
ADN_API adn_status adn_node_transform(const double* theta, size_t n, const size_t* permutation,
                                      const double* shifts, double* out);
ADN_API adn_status adn_pushforward_invariance(const adn_model* model, int order, const size_t* permutation,
                                              const double* shifts, const double* point, size_t i, size_t j,
                                              size_t k, double step, double* before, double* after);

/* ---- Slow manifold studies ------------------------------------------------ */

ADN_API adn_status adn_distance_to_slow_manifold(const adn_model* model, const double* theta, const double* a,
                                                 int order, double* out);

typedef struct adn_slope_fit {
  int available;
  double slope;
  double intercept;
  double r_squared;
  int poor_fit;
} adn_slope_fit;

/* xs strictly decreasing and positive, ys positive */
ADN_API adn_status adn_fit_log_log(const double* xs, const double* ys, size_t n, adn_slope_fit* out);

typedef struct adn_attraction_options {
  int manifold_order;
  double lower_bound;
  double upper_fraction;
  double floor_factor;
} adn_attraction_options;

typedef struct adn_attraction_summary {
  double epsilon;
  double fitted_rate_per_fast_time;
  double fit_window_start;
  double fit_window_end;
  double residual;
  double plateau;
  double lower_cutoff;
  size_t fit_points;
} adn_attraction_summary;

typedef struct adn_attraction adn_attraction;

ADN_API void adn_attraction_options_default(adn_attraction_options* out);
ADN_API adn_status adn_attraction_study(const adn_model* model, const double* theta0, const double* a0,
                                        const adn_integration_config* config, const adn_attraction_options* options,
                                        adn_attraction** out);
ADN_API void adn_attraction_free(adn_attraction* study);
ADN_API adn_status adn_attraction_summary_get(const adn_attraction* study, adn_attraction_summary* out);
ADN_API size_t adn_attraction_samples(const adn_attraction* study);
/* fast times and distances, adn_attraction_samples() entries each */
ADN_API adn_status adn_attraction_series(const adn_attraction* study, double* fast_times, double* distances);

typedef struct adn_convergence_options {
  double dt_factor;
  double t_end;
  size_t sample_every;
  double degenerate_threshold;
  int parallel;
} adn_convergence_options;

typedef struct adn_convergence adn_convergence;

ADN_API void adn_convergence_options_default(adn_convergence_options* out);
/* The model's own epsilon is ignored; epsilons must be strictly decreasing, >= 3 entries. */
ADN_API adn_status adn_convergence_study(const adn_model* model, const double* theta0, const double* epsilons,
                                         size_t n_epsilons, const adn_convergence_options* options,
                                         adn_convergence** out);
ADN_API void adn_convergence_free(adn_convergence* study);
ADN_API size_t adn_convergence_count(const adn_convergence* study);
ADN_API int adn_convergence_degenerate(const adn_convergence* study);
ADN_API adn_status adn_convergence_errors(const adn_convergence* study, double* epsilons, double* errors_order0,
                                          double* errors_order1);
/* available == 0 when the sweep is degenerate */
ADN_API adn_status adn_convergence_fit(const adn_convergence* study, int order, adn_slope_fit* out);

#ifdef __cplusplus
}
#endif

#endif /* ADAPTNET_ADAPTNET_H */
