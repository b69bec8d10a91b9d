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

#include "analysis.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numbers>
#include <numeric>
#include <string>

#include "random.hpp"

namespace adaptnet {

namespace {

void require_distinct(std::size_t i, std::size_t j, std::size_t k, const char* who) {
  if (i == j || i == k || j == k) throw ContractError(std::string(who) + ": indices must be pairwise distinct");
}

void require_index(std::size_t idx, std::size_t n, const char* who) {
  if (idx >= n) throw ContractError(std::string(who) + ": node index out of range");
}

// d/dtheta_p d/dtheta_q T_ipq for distinct i, p, q. theta_i is held fixed.
//   T_ipq = -G(tp - ti) Hu(ti, tp) H(ti, tq) G(tq - ti)
//           -G(tp - ti) Hv(ti, tp) H(tp, tq) G(tq - tp)
double mixed_of_triplet(const Coupling& c, std::size_t i, std::size_t p, std::size_t q,
                        std::span<const double> theta) {
  const double ti = theta[i], tp = theta[p], tq = theta[q];
  const double x_pi = tp - ti, x_qi = tq - ti, x_qp = tq - tp;

  // First product: factors depend on theta_p and theta_q separately.
  const double a1 = c.gamma_d1(x_pi) * c.h_du(ti, tp) + c.gamma(x_pi) * c.h_duv(ti, tp);
  const double b1 = c.h_dv(ti, tq) * c.gamma(x_qi) + c.h(ti, tq) * c.gamma_d1(x_qi);
  const double first = -a1 * b1;

  // Second product: c(tp) * d(tp, tq).
  const double cp = c.gamma(x_pi) * c.h_dv(ti, tp);
  const double cp_d = c.gamma_d1(x_pi) * c.h_dv(ti, tp) + c.gamma(x_pi) * c.h_dvv(ti, tp);
  const double d_q = c.h_dv(tp, tq) * c.gamma(x_qp) + c.h(tp, tq) * c.gamma_d1(x_qp);
  const double d_pq = c.h_duv(tp, tq) * c.gamma(x_qp) - c.h_dv(tp, tq) * c.gamma_d1(x_qp) +
                      c.h_du(tp, tq) * c.gamma_d1(x_qp) - c.h(tp, tq) * c.gamma_d2(x_qp);
  const double second = -(cp_d * d_q + cp * d_pq);

  return first + second;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

}  // namespace

PhaseField as_phase_field(const ReducedField& field) {
  return PhaseField{field.n_nodes(),
                    [field](std::size_t i, std::span<const double> theta) { return field.component(i, theta); }};
}

// --- Mixed derivatives ------------------------------------------------------------

double mixed_fd(const std::function<double(std::span<const double>)>& fn, std::size_t j, std::size_t k,
                std::span<const double> theta, double step) {
  if (!(step > 0.0)) throw ContractError("mixed_fd: step must be > 0");
  if (j >= theta.size() || k >= theta.size()) throw ContractError("mixed_fd: index out of range");
  std::vector<double> x(theta.begin(), theta.end());
  auto eval = [&](double sj, double sk) {
    x[j] = theta[j] + sj;
    x[k] = theta[k] + sk;
    const double v = fn(x);
    x[j] = theta[j];
    x[k] = theta[k];
    return v;
  };
  return (eval(step, step) - eval(step, -step) - eval(-step, step) + eval(-step, -step)) / (4.0 * step * step);
}

double mixed_second_derivative_fd(const PhaseField& field, std::size_t i, std::size_t j, std::size_t k,
                                  std::span<const double> theta, double step) {
  const std::size_t n = field.n_nodes;
  if (theta.size() != n) throw ContractError("mixed_second_derivative_fd: dimension mismatch");
  require_index(i, n, "mixed_second_derivative_fd");
  require_index(j, n, "mixed_second_derivative_fd");
  require_index(k, n, "mixed_second_derivative_fd");
  require_distinct(i, j, k, "mixed_second_derivative_fd");
  return mixed_fd([&](std::span<const double> x) { return field.component(i, x); }, j, k, theta, step);
}

double mixed_second_derivative_fd(const ReducedField& field, std::size_t i, std::size_t j, std::size_t k,
                                  std::span<const double> theta, double step) {
  return mixed_second_derivative_fd(as_phase_field(field), i, j, k, theta, step);
}

double triplet_double_sum(const Coupling& c, std::size_t i, std::span<const double> theta) {
  const std::size_t n = theta.size();
  require_index(i, n, "triplet_double_sum");
  double sum = 0.0;
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t s = 0; s < n; ++s) sum += triplet_term_T(c, i, r, s, theta);
  return sum;
}

double triplet_sum_mixed_analytic(const Coupling& c, const ModelParams& params, std::size_t i, std::size_t j,
                                  std::size_t k, std::span<const double> theta) {
  c.require_order(2, "triplet_sum_mixed_analytic");
  const std::size_t n = params.n_nodes();
  if (theta.size() != n) throw ContractError("triplet_sum_mixed_analytic: dimension mismatch");
  require_index(i, n, "triplet_sum_mixed_analytic");
  require_index(j, n, "triplet_sum_mixed_analytic");
  require_index(k, n, "triplet_sum_mixed_analytic");
  require_distinct(i, j, k, "triplet_sum_mixed_analytic");
  return mixed_of_triplet(c, i, j, k, theta) + mixed_of_triplet(c, i, k, j, theta);
}

std::vector<double> proof_point(std::size_t n, const Triple& triple) {
  for (std::size_t idx : triple) require_index(idx, n, "proof_point");
  std::vector<double> p(n, 0.0);
  p[triple[1]] = std::numbers::pi / 2.0;
  return p;
}

// --- Certificate --------------------------------------------------------------------

std::vector<CertificateCandidate> certificate_candidates(std::size_t n, const CertificateSearch& search) {
  if (n < 3) throw ContractError("certificate: needs at least 3 nodes");
  std::vector<Triple> triples = search.triples;
  if (triples.empty()) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
          if (i != j && i != k && j != k) triples.push_back({i, j, k});
  } else {
    for (const Triple& t : triples) {
      for (std::size_t idx : t) require_index(idx, n, "certificate");
      require_distinct(t[0], t[1], t[2], "certificate");
    }
    std::sort(triples.begin(), triples.end());
  }

  for (const auto& p : search.points)
    if (p.size() != n) throw ContractError("certificate: grid point has wrong dimension");

  UniformSource rng(search.seed, RandomStream::CertificateGrid);
  std::vector<std::vector<double>> random_points(search.random_points);
  for (auto& p : random_points) p = rng.vector(n, 0.0, kTwoPi);

  std::vector<CertificateCandidate> out;
  for (const Triple& t : triples) {
    std::size_t g = 0;
    if (search.include_proof_point) out.push_back({t, proof_point(n, t), g++});
    for (const auto& p : search.points) out.push_back({t, p, g++});
    for (const auto& p : random_points) out.push_back({t, p, g++});
  }
  if (out.empty()) throw ContractError("certificate: empty search grid");
  return out;
}

CertificateReport certify(const PhaseField& field, const PhaseField& reference,
                          std::span<const CertificateCandidate> candidates, double fd_step) {
  if (field.n_nodes < 3) throw ContractError("certify: needs at least 3 nodes");
  if (reference.n_nodes != field.n_nodes) throw ContractError("certify: reference field dimension mismatch");
  if (candidates.empty()) throw ContractError("certify: no candidates");

  CertificateReport report;
  report.scan.resize(candidates.size());
  std::vector<double> values(candidates.size());
  double floor = 0.0;
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    const auto& cand = candidates[c];
    const auto [i, j, k] = cand.triple;
    values[c] = mixed_second_derivative_fd(field, i, j, k, cand.point, fd_step);
    const double ref = mixed_second_derivative_fd(reference, i, j, k, cand.point, fd_step);
    floor = std::max(floor, std::fabs(ref));
    report.scan[c] = {cand.triple, cand.grid_index, values[c], ref};
  }

  report.fd_step = fd_step;
  report.noise_floor = floor;
  report.threshold = std::max(kCertificateAbsoluteFloor, kCertificateNoiseFactor * floor);
  report.candidates_scanned = candidates.size();

  std::size_t best = 0;
  for (std::size_t c = 0; c < values.size(); ++c) {
    if (std::fabs(values[c]) > report.threshold) ++report.candidates_above_threshold;
    if (std::fabs(values[c]) > std::fabs(values[best])) best = c;
  }
  const auto& winner = candidates[best];
  report.triple = winner.triple;
  report.point = winner.point;
  report.grid_index = winner.grid_index;
  report.fd_value = values[best];
  report.decision = std::fabs(report.fd_value) > report.threshold ? CertificateDecision::NonpairwiseCertified
                                                                  : CertificateDecision::NoEvidence;
  return report;
}

CertificateReport certify_nonpairwise(const ReducedField& field, const CertificateSearch& search) {
  const std::size_t n = field.n_nodes();
  if (n < 3) throw ContractError("certify_nonpairwise: N must be >= 3");
  const auto candidates = certificate_candidates(n, search);
  const ReducedField order0(ReducedOrder::Order0, field.params(), field.coupling_ptr());
  CertificateReport report = certify(as_phase_field(field), as_phase_field(order0), candidates, search.fd_step);

  const Coupling& c = field.coupling();
  const bool analytic = c.derivative_order() >= 2;
  const auto [i, j, k] = report.triple;
  if (analytic) report.analytic_value = triplet_sum_mixed_analytic(c, field.params(), i, j, k, report.point);

  ProofPointCheck check;
  check.triple = report.triple;
  check.point = proof_point(n, report.triple);
  check.fd_value = mixed_second_derivative_fd(field, i, j, k, check.point, search.fd_step);
  if (analytic) check.analytic_value = triplet_sum_mixed_analytic(c, field.params(), i, j, k, check.point);
  report.proof_point = std::move(check);
  return report;
}

// --- Node-respecting transforms -------------------------------------------------------

void validate_transform(const NodeTransform& t, std::size_t n) {
  if (t.permutation.size() != n || t.shifts.size() != n)
    throw ContractError("node transform: permutation and shifts must have N entries");
  std::vector<bool> seen(n, false);
  for (std::size_t p : t.permutation) {
    if (p >= n || seen[p]) throw ContractError("node transform: not a permutation");
    seen[p] = true;
  }
  for (double s : t.shifts)
    if (!std::isfinite(s)) throw ContractError("node transform: non-finite shift");
}

PhaseVector node_respecting_transform(std::span<const double> theta, const NodeTransform& t) {
  validate_transform(t, theta.size());
  std::vector<double> psi(theta.size());
  for (std::size_t i = 0; i < theta.size(); ++i) psi[i] = theta[t.permutation[i]] + t.shifts[i];
  return PhaseVector(std::move(psi));
}

std::vector<double> inverse_transform(std::span<const double> psi, const NodeTransform& t) {
  validate_transform(t, psi.size());
  std::vector<double> theta(psi.size());
  for (std::size_t i = 0; i < psi.size(); ++i) theta[t.permutation[i]] = psi[i] - t.shifts[i];
  return theta;
}

std::size_t relabel(std::size_t m, const NodeTransform& t) {
  const auto it = std::find(t.permutation.begin(), t.permutation.end(), m);
  if (it == t.permutation.end()) throw ContractError("relabel: node not in permutation");
  return static_cast<std::size_t>(it - t.permutation.begin());
}

Triple relabel(const Triple& triple, const NodeTransform& t) {
  return {relabel(triple[0], t), relabel(triple[1], t), relabel(triple[2], t)};
}

PhaseField pushforward(const PhaseField& field, const NodeTransform& t) {
  validate_transform(t, field.n_nodes);
  return PhaseField{field.n_nodes, [field, t](std::size_t i, std::span<const double> psi) {
                      const std::vector<double> theta = inverse_transform(psi, t);
                      return field.component(t.permutation[i], theta);
                    }};
}

InvariancePair pushforward_certificate_invariance(const ReducedField& field, const NodeTransform& t,
                                                  std::span<const double> point, const Triple& triple, double step) {
  const std::size_t n = field.n_nodes();
  if (n < 3) throw ContractError("pushforward_certificate_invariance: N must be >= 3");
  if (point.size() != n) throw ContractError("pushforward_certificate_invariance: dimension mismatch");
  validate_transform(t, n);
  const PhaseField base = as_phase_field(field);
  const PhaseField pushed = pushforward(base, t);
  const auto [i, j, k] = triple;
  const Triple mapped = relabel(triple, t);
  const PhaseVector psi = node_respecting_transform(point, t);

  InvariancePair out;
  out.before = mixed_second_derivative_fd(base, i, j, k, point, step);
  out.after = mixed_second_derivative_fd(pushed, mapped[0], mapped[1], mapped[2], psi.values(), step);
  return out;
}

NodeTransform random_transform(std::size_t n, std::uint64_t seed) {
  UniformSource rng(seed, RandomStream::Transforms);
  NodeTransform t;
  t.permutation.resize(n);
  std::iota(t.permutation.begin(), t.permutation.end(), std::size_t{0});
  for (std::size_t i = n; i > 1; --i) std::swap(t.permutation[i - 1], t.permutation[rng.raw() % i]);
  t.shifts = rng.vector(n, 0.0, kTwoPi);
  return t;
}

// --- Slow manifold distance ---------------------------------------------------------------

double distance_to_slow_manifold(const ModelParams& params, const Coupling& c, const FullState& state, int order) {
  if (order != 0 && order != 1) throw ContractError("distance_to_slow_manifold: order must be 0 or 1");
  const std::size_t n = params.n_nodes();
  if (state.theta.size() != n || state.a.dim() != n) throw ContractError("distance_to_slow_manifold: dimension mismatch");
  WeightMatrix diff = state.a - h0(c, state.theta.values());
  if (order == 1) diff -= params.epsilon() * h1(params, c, state.theta.values());
  return frobenius_norm(diff);
}

// --- Fits ------------------------------------------------------------------------------------

LinearFit least_squares_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw ContractError("least_squares_line: need >= 2 paired points");
  const double m = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / m;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / m;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t p = 0; p < x.size(); ++p) {
    sxx += (x[p] - mx) * (x[p] - mx);
    sxy += (x[p] - mx) * (y[p] - my);
    syy += (y[p] - my) * (y[p] - my);
  }
  if (!(sxx > 0.0)) throw ContractError("least_squares_line: abscissae are all equal");
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0.0;
  for (std::size_t p = 0; p < x.size(); ++p) {
    const double r = y[p] - (fit.intercept + fit.slope * x[p]);
    ss_res += r * r;
  }
  fit.rms_residual = std::sqrt(ss_res / m);
  fit.r_squared = syy > 0.0 ? std::clamp(1.0 - ss_res / syy, 0.0, 1.0) : 1.0;
  return fit;
}

SlopeFit fit_log_log(std::vector<double> xs, std::vector<double> ys) {
  if (xs.size() != ys.size() || xs.size() < 2) throw ContractError("fit_log_log: need >= 2 paired points");
  for (std::size_t p = 0; p < xs.size(); ++p) {
    if (!(xs[p] > 0.0) || !(ys[p] > 0.0)) throw ContractError("fit_log_log: values must be positive");
    if (p > 0 && !(xs[p] < xs[p - 1])) throw ContractError("fit_log_log: xs must be strictly decreasing");
  }
  std::vector<double> lx(xs.size()), ly(ys.size());
  std::transform(xs.begin(), xs.end(), lx.begin(), [](double v) { return std::log(v); });
  std::transform(ys.begin(), ys.end(), ly.begin(), [](double v) { return std::log(v); });
  const LinearFit line = least_squares_line(lx, ly);
  SlopeFit fit;
  fit.xs = std::move(xs);
  fit.ys = std::move(ys);
  fit.slope = line.slope;
  fit.intercept = line.intercept;
  fit.r_squared = line.r_squared;
  fit.poor_fit = line.r_squared < kMinRSquared;
  return fit;
}

// --- Attraction --------------------------------------------------------------------------------

AttractionReport attraction_study(const ModelParams& params, const CouplingPtr& coupling, const FullState& initial,
                                  const IntegrationConfig& config, const AttractionOptions& options) {
  if (!coupling) throw ContractError("attraction_study: null coupling");
  if (!(options.lower_bound > 0.0) || !(options.upper_fraction > 0.0 && options.upper_fraction < 1.0) ||
      options.floor_factor < 1.0)
    throw ContractError("attraction_study: invalid fit-window options");
  const Coupling& c = *coupling;
  const double d0 = distance_to_slow_manifold(params, c, initial, options.manifold_order);
  if (d0 < 0.1) throw ContractError("attraction_study: initial state must be at distance >= 0.1 from the manifold");

  Trajectory traj = [&] {
    try {
      return integrate_full(params, coupling, initial, config);
    } catch (const IntegrationError& e) {
      throw ExperimentError(std::string("attraction_study: ") + e.what());
    }
  }();

  AttractionReport report;
  report.epsilon = params.epsilon();
  report.fast_times.reserve(traj.size());
  report.distances.reserve(traj.size());
  for (std::size_t k = 0; k < traj.size(); ++k) {
    report.fast_times.push_back(traj.time(k) / params.epsilon());
    report.distances.push_back(distance_to_slow_manifold(params, c, traj.state(k), options.manifold_order));
  }

  const std::size_t m = report.distances.size();
  const std::size_t tail = std::max<std::size_t>(1, m / 4);
  report.plateau = median(std::vector<double>(report.distances.end() - static_cast<std::ptrdiff_t>(tail),
                                              report.distances.end()));
  report.lower_cutoff = std::max(options.lower_bound, options.floor_factor * report.plateau);

  const double upper = options.upper_fraction * report.distances.front();
  std::size_t first = 0;
  while (first < m && report.distances[first] > upper) ++first;
  std::size_t last = first;
  while (last < m && report.distances[last] >= report.lower_cutoff) ++last;

  if (last - first < 3)
    throw ExperimentError("attraction_study: fit window is empty (distance never spans [" +
                          std::to_string(report.lower_cutoff) + ", " + std::to_string(upper) + "])");

  std::vector<double> s(report.fast_times.begin() + static_cast<std::ptrdiff_t>(first),
                        report.fast_times.begin() + static_cast<std::ptrdiff_t>(last));
  std::vector<double> logd(last - first);
  for (std::size_t p = first; p < last; ++p) logd[p - first] = std::log(report.distances[p]);
  const LinearFit line = least_squares_line(s, logd);
  report.fitted_rate_per_fast_time = -line.slope;
  report.residual = line.rms_residual;
  report.fit_window_start = s.front();
  report.fit_window_end = s.back();
  report.fit_points = s.size();
  return report;
}

// --- Convergence -------------------------------------------------------------------------------

namespace {

struct SweepPoint {
  double e0 = 0.0;
  double e1 = 0.0;
};

SweepPoint convergence_point(const ModelParams& params, const CouplingPtr& coupling, const PhaseVector& theta0,
                             const IntegrationConfig& config) {
  const Coupling& c = *coupling;
  FullState start{theta0, h0(c, theta0.values()) + params.epsilon() * h1(params, c, theta0.values())};
  const Trajectory full = integrate_full(params, coupling, start, config);
  const Trajectory r0 = integrate_reduced(ReducedField(ReducedOrder::Order0, params, coupling), theta0, config);
  const Trajectory r1 = integrate_reduced(ReducedField(ReducedOrder::Order1, params, coupling), theta0, config);

  SweepPoint out;
  for (std::size_t k = 0; k < full.size(); ++k) {
    out.e0 = std::max(out.e0, phase_distance(full.theta(k), r0.theta(k)));
    out.e1 = std::max(out.e1, phase_distance(full.theta(k), r1.theta(k)));
  }
  return out;
}

}  // namespace

ConvergenceResult convergence_study(const ModelParams& params_base, const CouplingPtr& coupling,
                                    const PhaseVector& theta0, std::span<const double> epsilons,
                                    const ConvergenceOptions& options) {
  if (!coupling) throw ContractError("convergence_study: null coupling");
  coupling->require_order(1, "convergence_study");
  if (epsilons.size() < 3) throw ContractError("convergence_study: needs at least 3 epsilon values");
  if (theta0.size() != params_base.n_nodes()) throw ContractError("convergence_study: dimension mismatch");
  for (std::size_t p = 0; p < epsilons.size(); ++p) {
    if (!(epsilons[p] > 0.0)) throw ContractError("convergence_study: epsilon values must be > 0");
    if (p > 0 && !(epsilons[p] < epsilons[p - 1]))
      throw ContractError("convergence_study: epsilon values must be strictly decreasing");
  }
  // Guard every member before any integration starts.
  std::vector<IntegrationConfig> configs;
  for (double eps : epsilons) {
    IntegrationConfig cfg{options.dt_factor * eps, options.t_end, options.sample_every};
    validate_full_config(cfg, eps);
    configs.push_back(cfg);
  }

  auto run_one = [&](std::size_t p) {
    try {
      return convergence_point(params_base.with_epsilon(epsilons[p]), coupling, theta0, configs[p]);
    } catch (const IntegrationError& e) {
      throw ExperimentError("convergence_study: integration failed at eps=" + std::to_string(epsilons[p]) + ": " +
                            e.what());
    }
  };

  std::vector<SweepPoint> points(epsilons.size());
  if (options.parallel) {
    std::vector<std::future<SweepPoint>> jobs;
    for (std::size_t p = 0; p < epsilons.size(); ++p) jobs.push_back(std::async(std::launch::async, run_one, p));
    for (std::size_t p = 0; p < jobs.size(); ++p) points[p] = jobs[p].get();
  } else {
    for (std::size_t p = 0; p < epsilons.size(); ++p) points[p] = run_one(p);
  }

  ConvergenceResult result;
  result.epsilons.assign(epsilons.begin(), epsilons.end());
  for (const auto& pt : points) {
    result.errors_order0.push_back(pt.e0);
    result.errors_order1.push_back(pt.e1);
    if (pt.e0 <= options.degenerate_threshold || pt.e1 <= options.degenerate_threshold) result.degenerate = true;
  }
  if (!result.degenerate) {
    result.fit0 = fit_log_log(result.epsilons, result.errors_order0);
    result.fit1 = fit_log_log(result.epsilons, result.errors_order1);
  }
  return result;
}

}  // namespace adaptnet
