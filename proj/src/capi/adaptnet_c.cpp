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

#include "adaptnet/adaptnet.h"

#include <cstring>
#include <fstream>
#include <new>
#include <optional>
#include <string>
#include <vector>

#include "analysis.hpp"
#include "coupling.hpp"
#include "dynamics.hpp"
#include "errors.hpp"
#include "integrator.hpp"
#include "random.hpp"

struct adn_coupling {
  adaptnet::CouplingPtr ptr;
};

struct adn_model {
  adaptnet::ModelParams params;
  adaptnet::CouplingPtr coupling;
};

struct adn_trajectory {
  adaptnet::Trajectory traj;
};

struct adn_certificate {
  adaptnet::CertificateReport report;
};

struct adn_attraction {
  adaptnet::AttractionReport report;
};

struct adn_convergence {
  adaptnet::ConvergenceResult result;
};

namespace {

using namespace adaptnet;

thread_local std::string g_last_error;

adn_status fail(adn_status status, const char* what) {
  g_last_error = what;
  return status;
}

// Runs body and maps the library's exception types onto status codes.
template <class Body>
adn_status guarded(Body&& body) {
  try {
    body();
    g_last_error.clear();
    return ADN_OK;
  } catch (const ContractError& e) {
    return fail(ADN_ERR_CONTRACT, e.what());
  } catch (const DomainError& e) {
    return fail(ADN_ERR_DOMAIN, e.what());
  } catch (const CapabilityError& e) {
    return fail(ADN_ERR_CAPABILITY, e.what());
  } catch (const IntegrationError& e) {
    return fail(ADN_ERR_INTEGRATION, e.what());
  } catch (const ExperimentError& e) {
    return fail(ADN_ERR_EXPERIMENT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(ADN_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(ADN_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(ADN_ERR_INTERNAL, "unknown error");
  }
}

template <class T>
void require(const T* p, const char* name) {
  if (p == nullptr) throw ContractError(std::string(name) + " must not be NULL");
}

std::span<const double> view(const double* p, std::size_t n, const char* name) {
  require(p, name);
  return {p, n};
}

void copy_out(std::span<const double> src, double* dst, const char* name) {
  require(dst, name);
  std::memcpy(dst, src.data(), src.size() * sizeof(double));
}

WeightMatrix matrix_in(const double* a, std::size_t n) {
  const auto s = view(a, n * n, "a");
  return WeightMatrix(n, std::vector<double>(s.begin(), s.end()));
}

ReducedOrder order_from(int order) {
  if (order == 0) return ReducedOrder::Order0;
  if (order == 1) return ReducedOrder::Order1;
  throw ContractError("order must be 0 or 1");
}

ReducedField field_of(const adn_model* model, int order) {
  require(model, "model");
  return ReducedField(order_from(order), model->params, model->coupling);
}

IntegrationConfig config_from(const adn_integration_config* config) {
  require(config, "config");
  return IntegrationConfig{config->dt, config->t_end, config->sample_every};
}

NodeTransform transform_from(const size_t* permutation, const double* shifts, std::size_t n) {
  require(permutation, "permutation");
  require(shifts, "shifts");
  NodeTransform t;
  t.permutation.assign(permutation, permutation + n);
  t.shifts.assign(shifts, shifts + n);
  validate_transform(t, n);
  return t;
}

adn_slope_fit fit_out(const std::optional<SlopeFit>& fit) {
  adn_slope_fit out{};
  if (!fit) return out;
  out.available = 1;
  out.slope = fit->slope;
  out.intercept = fit->intercept;
  out.r_squared = fit->r_squared;
  out.poor_fit = fit->poor_fit ? 1 : 0;
  return out;
}

// Adapts the C callback table to the C++ coupling contract.
double finite_callback_value(double x) {
  if (!std::isfinite(x)) throw DomainError("coupling callback returned a non-finite value");
  return x;
}

CouplingFunctions functions_from(const adn_coupling_callbacks& cb) {
  CouplingFunctions f;
  void* ud = cb.user_data;
  auto unary = [ud](double (*fn)(void*, double)) -> std::function<double(double)> {
    if (!fn) return {};
    return [fn, ud](double x) { return finite_callback_value(fn(ud, x)); };
  };
  auto binary = [ud](double (*fn)(void*, double, double)) -> std::function<double(double, double)> {
    if (!fn) return {};
    return [fn, ud](double u, double v) { return finite_callback_value(fn(ud, u, v)); };
  };
  f.gamma = unary(cb.gamma);
  f.gamma_d1 = unary(cb.gamma_d1);
  f.gamma_d2 = unary(cb.gamma_d2);
  f.h = binary(cb.h);
  f.h_du = binary(cb.h_du);
  f.h_dv = binary(cb.h_dv);
  f.h_duu = binary(cb.h_duu);
  f.h_duv = binary(cb.h_duv);
  f.h_dvv = binary(cb.h_dvv);
  return f;
}

}  // namespace

extern "C" {

const char* adn_version(void) { return "0.1.0"; }

const char* adn_last_error(void) { return g_last_error.c_str(); }

const char* adn_status_name(adn_status status) {
  switch (status) {
    case ADN_OK: return "ok";
    case ADN_ERR_CONTRACT: return "contract error";
    case ADN_ERR_DOMAIN: return "domain error";
    case ADN_ERR_CAPABILITY: return "capability error";
    case ADN_ERR_INTEGRATION: return "integration error";
    case ADN_ERR_EXPERIMENT: return "experiment error";
    case ADN_ERR_IO: return "i/o error";
    case ADN_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

// ---- Phases -----------------------------------------------------------------

adn_status adn_canonicalize_phase(double x, double* out) {
  return guarded([&] {
    require(out, "out");
    *out = canonicalize_phase(x);
  });
}

adn_status adn_phase_distance(const double* a, const double* b, size_t n, double* out) {
  return guarded([&] {
    require(out, "out");
    *out = phase_distance(view(a, n, "a"), view(b, n, "b"));
  });
}

adn_status adn_random_uniform(uint64_t seed, adn_random_stream stream, size_t n, double lo, double hi, double* out) {
  return guarded([&] {
    if (!(hi > lo)) throw ContractError("random_uniform: need lo < hi");
    const auto v = uniform_vector(seed, static_cast<RandomStream>(stream), n, lo, hi);
    copy_out(v, out, "out");
  });
}

// ---- Couplings ------------------------------------------------------------------

adn_status adn_coupling_kuramoto(double alpha, adn_coupling** out) {
  return guarded([&] {
    require(out, "out");
    *out = new adn_coupling{make_kuramoto(alpha)};
  });
}

adn_status adn_coupling_decoupled_kuramoto(double alpha, adn_coupling** out) {
  return guarded([&] {
    require(out, "out");
    *out = new adn_coupling{make_decoupled_kuramoto(alpha)};
  });
}

adn_status adn_coupling_from_callbacks(const adn_coupling_callbacks* callbacks, int fd_complete, adn_coupling** out) {
  return guarded([&] {
    require(callbacks, "callbacks");
    require(out, "out");
    CouplingPtr c = std::make_shared<FunctionCoupling>(functions_from(*callbacks), "callbacks");
    if (fd_complete) c = with_fd_derivatives(std::move(c));
    *out = new adn_coupling{std::move(c)};
  });
}

void adn_coupling_free(adn_coupling* coupling) { delete coupling; }

adn_status adn_coupling_derivative_order(const adn_coupling* coupling, int* out) {
  return guarded([&] {
    require(coupling, "coupling");
    require(out, "out");
    *out = coupling->ptr->derivative_order();
  });
}

adn_status adn_coupling_eval(const adn_coupling* coupling, adn_coupling_fn fn, double u, double v, double* out) {
  return guarded([&] {
    require(coupling, "coupling");
    require(out, "out");
    const Coupling& c = *coupling->ptr;
    switch (fn) {
      case ADN_GAMMA: *out = c.gamma(u); break;
      case ADN_GAMMA_D1: *out = c.gamma_d1(u); break;
      case ADN_GAMMA_D2: *out = c.gamma_d2(u); break;
      case ADN_H: *out = c.h(u, v); break;
      case ADN_H_DU: *out = c.h_du(u, v); break;
      case ADN_H_DV: *out = c.h_dv(u, v); break;
      case ADN_H_DUU: *out = c.h_duu(u, v); break;
      case ADN_H_DUV: *out = c.h_duv(u, v); break;
      case ADN_H_DVV: *out = c.h_dvv(u, v); break;
      default: throw ContractError("coupling_eval: unknown function selector");
    }
  });
}

// ---- Model -------------------------------------------------------------------------

adn_status adn_model_create(size_t n, const double* omega, double epsilon, const adn_coupling* coupling,
                            adn_model** out) {
  return guarded([&] {
    require(coupling, "coupling");
    require(out, "out");
    const auto w = view(omega, n, "omega");
    *out = new adn_model{ModelParams(std::vector<double>(w.begin(), w.end()), epsilon), coupling->ptr};
  });
}

void adn_model_free(adn_model* model) { delete model; }

size_t adn_model_nodes(const adn_model* model) { return model ? model->params.n_nodes() : 0; }

double adn_model_epsilon(const adn_model* model) { return model ? model->params.epsilon() : 0.0; }

// ---- Vector fields -----------------------------------------------------------------

adn_status adn_phase_rhs(const adn_model* model, const double* theta, const double* a, double* out) {
  return guarded([&] {
    require(model, "model");
    const std::size_t n = model->params.n_nodes();
    copy_out(phase_rhs(model->params, *model->coupling, view(theta, n, "theta"), matrix_in(a, n)), out, "out");
  });
}

adn_status adn_weight_rhs(const adn_model* model, const double* theta, const double* a, double* out) {
  return guarded([&] {
    require(model, "model");
    const std::size_t n = model->params.n_nodes();
    const WeightMatrix g = weight_rhs(*model->coupling, view(theta, n, "theta"), matrix_in(a, n));
    copy_out(g.entries(), out, "out");
  });
}

adn_status adn_layer_rhs(const adn_model* model, const double* theta_frozen, const double* a, double* out) {
  return guarded([&] {
    require(model, "model");
    const std::size_t n = model->params.n_nodes();
    const WeightMatrix g = layer_rhs(*model->coupling, view(theta_frozen, n, "theta"), matrix_in(a, n));
    copy_out(g.entries(), out, "out");
  });
}

adn_status adn_full_rhs(const adn_model* model, const double* theta, const double* a, double* dtheta, double* da) {
  return guarded([&] {
    require(model, "model");
    const std::size_t n = model->params.n_nodes();
    const auto t = view(theta, n, "theta");
    const FullState state{PhaseVector(std::vector<double>(t.begin(), t.end())), matrix_in(a, n)};
    const FullDerivative d = full_rhs_slow_time(model->params, *model->coupling, state);
    copy_out(d.dtheta, dtheta, "dtheta");
    copy_out(d.da.entries(), da, "da");
  });
}

adn_status adn_h0(const adn_model* model, const double* theta, double* out) {
  return guarded([&] {
    require(model, "model");
    const WeightMatrix m = h0(*model->coupling, view(theta, model->params.n_nodes(), "theta"));
    copy_out(m.entries(), out, "out");
  });
}

adn_status adn_h1(const adn_model* model, const double* theta, double* out) {
  return guarded([&] {
    require(model, "model");
    const WeightMatrix m = h1(model->params, *model->coupling, view(theta, model->params.n_nodes(), "theta"));
    copy_out(m.entries(), out, "out");
  });
}

adn_status adn_pair_term(const adn_model* model, size_t i, size_t j, const double* theta, double* out) {
  return guarded([&] {
    require(model, "model");
    require(out, "out");
    *out = pair_term_P(model->params, *model->coupling, i, j, view(theta, model->params.n_nodes(), "theta"));
  });
}

adn_status adn_triplet_term(const adn_model* model, size_t i, size_t j, size_t k, const double* theta, double* out) {
  return guarded([&] {
    require(model, "model");
    require(out, "out");
    *out = triplet_term_T(*model->coupling, i, j, k, view(theta, model->params.n_nodes(), "theta"));
  });
}

adn_status adn_reduced_rhs(const adn_model* model, int order, const double* theta, double* out) {
  return guarded([&] {
    const ReducedField field = field_of(model, order);
    copy_out(field(view(theta, field.n_nodes(), "theta")), out, "out");
  });
}

// ---- Integration -------------------------------------------------------------------

adn_status adn_default_config(double epsilon, double t_end, adn_integration_config* out) {
  return guarded([&] {
    require(out, "out");
    const IntegrationConfig c = default_config(epsilon, t_end);
    *out = adn_integration_config{c.dt, c.t_end, c.sample_every};
  });
}

adn_status adn_integrate_full(const adn_model* model, const double* theta0, const double* a0,
                              const adn_integration_config* config, adn_trajectory** out) {
  return guarded([&] {
    require(model, "model");
    require(out, "out");
    const std::size_t n = model->params.n_nodes();
    const auto t = view(theta0, n, "theta0");
    const FullState initial{PhaseVector(std::vector<double>(t.begin(), t.end())), matrix_in(a0, n)};
    *out = new adn_trajectory{integrate_full(model->params, model->coupling, initial, config_from(config))};
  });
}

adn_status adn_integrate_reduced(const adn_model* model, int order, const double* theta0,
                                 const adn_integration_config* config, adn_trajectory** out) {
  return guarded([&] {
    require(out, "out");
    const ReducedField field = field_of(model, order);
    const auto t = view(theta0, field.n_nodes(), "theta0");
    *out = new adn_trajectory{
        integrate_reduced(field, PhaseVector(std::vector<double>(t.begin(), t.end())), config_from(config))};
  });
}

void adn_trajectory_free(adn_trajectory* trajectory) { delete trajectory; }

size_t adn_trajectory_size(const adn_trajectory* trajectory) { return trajectory ? trajectory->traj.size() : 0; }

size_t adn_trajectory_width(const adn_trajectory* trajectory) { return trajectory ? trajectory->traj.width() : 0; }

adn_status adn_trajectory_row(const adn_trajectory* trajectory, size_t k, double* time, double* row) {
  return guarded([&] {
    require(trajectory, "trajectory");
    require(time, "time");
    const auto r = trajectory->traj.row(k);
    *time = trajectory->traj.time(k);
    copy_out(r, row, "row");
  });
}

adn_status adn_trajectory_write_csv(const adn_trajectory* trajectory, const char* path, const char* comment) {
  if (trajectory == nullptr) return fail(ADN_ERR_CONTRACT, "trajectory must not be NULL");
  if (path == nullptr) return fail(ADN_ERR_CONTRACT, "path must not be NULL");
  std::ofstream file(path);
  if (!file) return fail(ADN_ERR_IO, (std::string("cannot open ") + path).c_str());
  const adn_status st = guarded([&] { trajectory->traj.write_csv(file, comment ? comment : ""); });
  if (st != ADN_OK) return st;
  file.close();
  if (!file) return fail(ADN_ERR_IO, (std::string("write failed: ") + path).c_str());
  return ADN_OK;
}

// ---- Certificate ----------------------------------------------------------------------

adn_status adn_mixed_derivative_fd(const adn_model* model, int order, size_t i, size_t j, size_t k,
                                   const double* theta, double step, double* out) {
  return guarded([&] {
    require(out, "out");
    const ReducedField field = field_of(model, order);
    *out = mixed_second_derivative_fd(field, i, j, k, view(theta, field.n_nodes(), "theta"), step);
  });
}

adn_status adn_triplet_mixed_analytic(const adn_model* model, size_t i, size_t j, size_t k, const double* theta,
                                      double* out) {
  return guarded([&] {
    require(model, "model");
    require(out, "out");
    *out = triplet_sum_mixed_analytic(*model->coupling, model->params, i, j, k,
                                      view(theta, model->params.n_nodes(), "theta"));
  });
}

void adn_certify_options_default(adn_certify_options* out) {
  if (!out) return;
  const CertificateSearch d;
  *out = adn_certify_options{nullptr, 0, d.include_proof_point ? 1 : 0, nullptr, 0, d.random_points, d.seed, d.fd_step};
}

adn_status adn_certify(const adn_model* model, int order, const adn_certify_options* options, adn_certificate** out) {
  return guarded([&] {
    require(out, "out");
    const ReducedField field = field_of(model, order);
    const std::size_t n = field.n_nodes();
    CertificateSearch search;
    if (options) {
      if (options->n_triples) {
        require(options->triples, "options->triples");
        for (std::size_t t = 0; t < options->n_triples; ++t)
          search.triples.push_back(
              {options->triples[3 * t], options->triples[3 * t + 1], options->triples[3 * t + 2]});
      }
      if (options->n_points) {
        require(options->points, "options->points");
        for (std::size_t p = 0; p < options->n_points; ++p)
          search.points.emplace_back(options->points + p * n, options->points + (p + 1) * n);
      }
      search.include_proof_point = options->include_proof_point != 0;
      search.random_points = options->random_points;
      search.seed = options->seed;
      search.fd_step = options->fd_step;
    }
    *out = new adn_certificate{certify_nonpairwise(field, search)};
  });
}

void adn_certificate_free(adn_certificate* certificate) { delete certificate; }

adn_status adn_certificate_summary_get(const adn_certificate* certificate, adn_certificate_summary* out) {
  return guarded([&] {
    require(certificate, "certificate");
    require(out, "out");
    const CertificateReport& r = certificate->report;
    adn_certificate_summary s{};
    s.i = r.triple[0];
    s.j = r.triple[1];
    s.k = r.triple[2];
    s.grid_index = r.grid_index;
    s.fd_value = r.fd_value;
    s.has_analytic = r.analytic_value.has_value();
    s.analytic_value = r.analytic_value.value_or(0.0);
    s.certified = r.decision == CertificateDecision::NonpairwiseCertified;
    s.fd_step = r.fd_step;
    s.noise_floor = r.noise_floor;
    s.threshold = r.threshold;
    s.candidates_scanned = r.candidates_scanned;
    s.candidates_above_threshold = r.candidates_above_threshold;
    if (r.proof_point) {
      s.proof_fd_value = r.proof_point->fd_value;
      s.proof_has_analytic = r.proof_point->analytic_value.has_value();
      s.proof_analytic_value = r.proof_point->analytic_value.value_or(0.0);
    }
    *out = s;
  });
}

adn_status adn_certificate_point(const adn_certificate* certificate, double* out) {
  return guarded([&] {
    require(certificate, "certificate");
    copy_out(certificate->report.point, out, "out");
  });
}

adn_status adn_certificate_proof_point(const adn_certificate* certificate, double* out) {
  return guarded([&] {
    require(certificate, "certificate");
    if (!certificate->report.proof_point) throw ContractError("certificate has no proof-point evaluation");
    copy_out(certificate->report.proof_point->point, out, "out");
  });
}

size_t adn_certificate_scan_size(const adn_certificate* certificate) {
  return certificate ? certificate->report.scan.size() : 0;
}

adn_status adn_certificate_scan(const adn_certificate* certificate, size_t* triples, size_t* grid_indices,
                                double* fd_values, double* reference_values) {
  return guarded([&] {
    require(certificate, "certificate");
    const auto& scan = certificate->report.scan;
    for (std::size_t c = 0; c < scan.size(); ++c) {
      if (triples)
        for (std::size_t q = 0; q < 3; ++q) triples[3 * c + q] = scan[c].triple[q];
      if (grid_indices) grid_indices[c] = scan[c].grid_index;
      if (fd_values) fd_values[c] = scan[c].fd_value;
      if (reference_values) reference_values[c] = scan[c].reference_value;
    }
  });
}

adn_status adn_node_transform(const double* theta, size_t n, const size_t* permutation, const double* shifts,
                              double* out) {
  return guarded([&] {
    const NodeTransform t = transform_from(permutation, shifts, n);
    const PhaseVector moved = node_respecting_transform(view(theta, n, "theta"), t);
    copy_out(moved.values(), out, "out");
  });
}

adn_status adn_pushforward_invariance(const adn_model* model, int order, const size_t* permutation,
                                      const double* shifts, const double* point, size_t i, size_t j, size_t k,
                                      double step, double* before, double* after) {
  return guarded([&] {
    require(before, "before");
    require(after, "after");
    const ReducedField field = field_of(model, order);
    const std::size_t n = field.n_nodes();
    const InvariancePair pair = pushforward_certificate_invariance(field, transform_from(permutation, shifts, n),
                                                                   view(point, n, "point"), {i, j, k}, step);
    *before = pair.before;
    *after = pair.after;
  });
}

// ---- Slow manifold studies ----------------------------------------------------------------

adn_status adn_distance_to_slow_manifold(const adn_model* model, const double* theta, const double* a, int order,
                                         double* out) {
  return guarded([&] {
    require(model, "model");
    require(out, "out");
    const std::size_t n = model->params.n_nodes();
    const auto t = view(theta, n, "theta");
    const FullState state{PhaseVector(std::vector<double>(t.begin(), t.end())), matrix_in(a, n)};
    *out = distance_to_slow_manifold(model->params, *model->coupling, state, order);
  });
}

adn_status adn_fit_log_log(const double* xs, const double* ys, size_t n, adn_slope_fit* out) {
  return guarded([&] {
    require(out, "out");
    const auto x = view(xs, n, "xs");
    const auto y = view(ys, n, "ys");
    *out = fit_out(fit_log_log(std::vector<double>(x.begin(), x.end()), std::vector<double>(y.begin(), y.end())));
  });
}

void adn_attraction_options_default(adn_attraction_options* out) {
  if (!out) return;
  const AttractionOptions d;
  *out = adn_attraction_options{d.manifold_order, d.lower_bound, d.upper_fraction, d.floor_factor};
}

adn_status adn_attraction_study(const adn_model* model, const double* theta0, const double* a0,
                                const adn_integration_config* config, const adn_attraction_options* options,
                                adn_attraction** out) {
  return guarded([&] {
    require(model, "model");
    require(out, "out");
    const std::size_t n = model->params.n_nodes();
    const auto t = view(theta0, n, "theta0");
    const FullState initial{PhaseVector(std::vector<double>(t.begin(), t.end())), matrix_in(a0, n)};
    AttractionOptions opts;
    if (options) {
      opts.manifold_order = options->manifold_order;
      opts.lower_bound = options->lower_bound;
      opts.upper_fraction = options->upper_fraction;
      opts.floor_factor = options->floor_factor;
    }
    *out = new adn_attraction{attraction_study(model->params, model->coupling, initial, config_from(config), opts)};
  });
}

void adn_attraction_free(adn_attraction* study) { delete study; }

adn_status adn_attraction_summary_get(const adn_attraction* study, adn_attraction_summary* out) {
  return guarded([&] {
    require(study, "study");
    require(out, "out");
    const AttractionReport& r = study->report;
    *out = adn_attraction_summary{r.epsilon,   r.fitted_rate_per_fast_time, r.fit_window_start, r.fit_window_end,
                                  r.residual,  r.plateau,                   r.lower_cutoff,     r.fit_points};
  });
}

size_t adn_attraction_samples(const adn_attraction* study) { return study ? study->report.distances.size() : 0; }

adn_status adn_attraction_series(const adn_attraction* study, double* fast_times, double* distances) {
  return guarded([&] {
    require(study, "study");
    copy_out(study->report.fast_times, fast_times, "fast_times");
    copy_out(study->report.distances, distances, "distances");
  });
}

void adn_convergence_options_default(adn_convergence_options* out) {
  if (!out) return;
  const ConvergenceOptions d;
  *out = adn_convergence_options{d.dt_factor, d.t_end, d.sample_every, d.degenerate_threshold, d.parallel ? 1 : 0};
}

adn_status adn_convergence_study(const adn_model* model, const double* theta0, const double* epsilons,
                                 size_t n_epsilons, const adn_convergence_options* options, adn_convergence** out) {
  return guarded([&] {
    require(model, "model");
    require(out, "out");
    const std::size_t n = model->params.n_nodes();
    const auto t = view(theta0, n, "theta0");
    ConvergenceOptions opts;
    if (options) {
      opts.dt_factor = options->dt_factor;
      opts.t_end = options->t_end;
      opts.sample_every = options->sample_every;
      opts.degenerate_threshold = options->degenerate_threshold;
      opts.parallel = options->parallel != 0;
    }
    *out = new adn_convergence{convergence_study(model->params, model->coupling,
                                                 PhaseVector(std::vector<double>(t.begin(), t.end())),
                                                 view(epsilons, n_epsilons, "epsilons"), opts)};
  });
}

void adn_convergence_free(adn_convergence* study) { delete study; }

size_t adn_convergence_count(const adn_convergence* study) { return study ? study->result.epsilons.size() : 0; }

int adn_convergence_degenerate(const adn_convergence* study) { return study && study->result.degenerate ? 1 : 0; }

adn_status adn_convergence_errors(const adn_convergence* study, double* epsilons, double* errors_order0,
                                  double* errors_order1) {
  return guarded([&] {
    require(study, "study");
    copy_out(study->result.epsilons, epsilons, "epsilons");
    copy_out(study->result.errors_order0, errors_order0, "errors_order0");
    copy_out(study->result.errors_order1, errors_order1, "errors_order1");
  });
}

adn_status adn_convergence_fit(const adn_convergence* study, int order, adn_slope_fit* out) {
  return guarded([&] {
    require(study, "study");
    require(out, "out");
    if (order != 0 && order != 1) throw ContractError("order must be 0 or 1");
    *out = fit_out(order == 0 ? study->result.fit0 : study->result.fit1);
  });
}

}  // extern "C"
