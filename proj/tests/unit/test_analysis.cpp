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

#include <doctest.h>

#include <cmath>

#include "analysis.hpp"
#include "errors.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace adaptnet;

namespace {

const double kPi = M_PI;

ReducedField kuramoto_field(ReducedOrder order, std::size_t n, double alpha, double eps, std::uint64_t seed = 1) {
  return ReducedField(order, ModelParams(uniform_vector(seed, RandomStream::Omega, n, -1.0, 1.0), eps),
                      make_kuramoto(alpha));
}

}  // namespace

TEST_CASE("mixed_fd is exact for bilinear functions") {
  const auto fn = [](std::span<const double> x) { return 3.0 * x[0] * x[2] + x[1] * x[1]; };
  const std::vector<double> x{0.4, -1.0, 2.0};
  CHECK(mixed_fd(fn, 0, 2, x, 1e-3) == doctest::Approx(3.0).epsilon(1e-9));
  CHECK(std::fabs(mixed_fd(fn, 0, 1, x, 1e-3)) < 1e-9);
}

TEST_CASE("mixed derivative requires distinct indices") {
  const auto f = kuramoto_field(ReducedOrder::Order1, 3, 0.7, 0.01);
  const std::vector<double> th{0.0, 1.0, 2.0};
  CHECK_THROWS_AS(mixed_second_derivative_fd(f, 0, 0, 1, th), ContractError);
  CHECK_THROWS_AS(mixed_second_derivative_fd(f, 0, 1, 1, th), ContractError);
  CHECK_THROWS_AS(mixed_second_derivative_fd(f, 0, 1, 3, th), ContractError);
}

TEST_CASE("triplet mixed derivative at the proof point is -alpha") {
  for (double alpha : {0.7, -0.3, 0.0, 2.5}) {
    const ModelParams p({0.1, 0.2, 0.3, 0.4}, 0.01);
    const KuramotoCoupling c(alpha);
    const auto th = proof_point(4, {0, 1, 2});
    CHECK(th == std::vector<double>{0.0, kPi / 2, 0.0, 0.0});
    CHECK(std::fabs(triplet_sum_mixed_analytic(c, p, 0, 1, 2, th) + alpha) < 1e-12);
  }
}

TEST_CASE("companion triplet term has vanishing mixed derivative at the proof point") {
  const oracle::Kuramoto k{0.7, {0.1, 0.2, 0.3}, 0.01};
  const auto th = proof_point(3, {0, 1, 2});
  const auto companion = [&](std::span<const double> x) { return oracle::T(k, 0, 2, 1, {x.begin(), x.end()}); };
  // The stencil's truncation error here is alpha * h^2, so h = 1e-3 sits at 7e-7.
  CHECK(std::fabs(mixed_fd(companion, 1, 2, th, 1e-3)) == doctest::Approx(0.7e-6).epsilon(1e-3));
  CHECK(std::fabs(mixed_fd(companion, 1, 2, th, 1e-4)) < 1e-7);
  const double main = mixed_fd([&](std::span<const double> x) { return oracle::T(k, 0, 1, 2, {x.begin(), x.end()}); },
                               1, 2, th, 1e-3);
  CHECK(main == doctest::Approx(-0.7).epsilon(1e-5));
}

TEST_CASE("analytic and FD mixed derivatives of the triplet sum agree") {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const auto m = testutil::random_model(3 + seed % 4, 0.01, seed);
    const Triple t{seed % 3, (seed + 1) % 3, (seed + 2) % 3};
    const auto sum = [&](std::span<const double> x) { return triplet_double_sum(*m.coupling, t[0], x); };
    const double fd = mixed_fd(sum, t[1], t[2], m.theta, 1e-3);
    CHECK(std::fabs(triplet_sum_mixed_analytic(*m.coupling, m.params, t[0], t[1], t[2], m.theta) - fd) <= 1e-5);
    CHECK(triplet_double_sum(*m.coupling, t[0], m.theta) ==
          doctest::Approx(oracle::triplet_double_sum(m.oracle, t[0], m.theta)).epsilon(1e-12));
  }
}

TEST_CASE("analytic mixed derivative needs second derivatives") {
  CouplingFunctions fns;
  fns.gamma = [](double x) { return std::sin(x); };
  fns.gamma_d1 = [](double x) { return std::cos(x); };
  fns.h = [](double u, double v) { return std::cos(u - v); };
  fns.h_du = [](double u, double v) { return -std::sin(u - v); };
  fns.h_dv = [](double u, double v) { return std::sin(u - v); };
  const FunctionCoupling c(fns);
  const ModelParams p({0.0, 0.0, 0.0}, 0.1);
  CHECK_THROWS_AS(triplet_sum_mixed_analytic(c, p, 0, 1, 2, std::vector<double>{0.0, 1.0, 2.0}), CapabilityError);
}

TEST_CASE("order-0 field has no mixed derivatives across distinct indices") {
  const auto f = kuramoto_field(ReducedOrder::Order0, 5, 0.7, 0.01, 3);
  UniformSource rng(99, RandomStream::CertificateGrid);
  double worst = 0.0;
  for (int r = 0; r < 100; ++r) {
    const std::size_t i = rng.raw() % 5;
    std::size_t j = rng.raw() % 5, k = rng.raw() % 5;
    while (j == i) j = (j + 1) % 5;
    while (k == i || k == j) k = (k + 1) % 5;
    worst = std::fmax(worst, std::fabs(mixed_second_derivative_fd(f, i, j, k, rng.vector(5, 0.0, kTwoPi))));
  }
  CHECK(worst < 1e-6);
}

TEST_CASE("certificate on the order-1 Kuramoto field") {
  const auto f = kuramoto_field(ReducedOrder::Order1, 3, 0.7, 0.01);
  const CertificateReport r = certify_nonpairwise(f);
  CHECK(r.decision == CertificateDecision::NonpairwiseCertified);
  CHECK(r.candidates_scanned == 6 * 51);
  CHECK(r.scan.size() == r.candidates_scanned);
  CHECK(std::fabs(r.fd_value) > r.threshold);
  REQUIRE(r.analytic_value.has_value());
  REQUIRE(r.proof_point.has_value());
  CHECK(r.proof_point->point == proof_point(3, r.triple));
  CHECK(std::fabs(*r.proof_point->analytic_value + 0.7) < 1e-12);
}

TEST_CASE("certificate at the proof point alone") {
  CertificateSearch s;
  s.triples = {{0, 1, 2}};
  s.random_points = 0;
  const CertificateReport r = certify_nonpairwise(kuramoto_field(ReducedOrder::Order1, 3, 0.7, 0.01), s);
  CHECK(r.candidates_scanned == 1);
  CHECK(r.decision == CertificateDecision::NonpairwiseCertified);
  CHECK(std::fabs(r.fd_value - 0.01 / 9 * -0.7) < 1e-7);
  CHECK(std::fabs(*r.analytic_value + 0.7) < 1e-12);
}

TEST_CASE("order-0 field gives no evidence") {
  const CertificateReport r = certify_nonpairwise(kuramoto_field(ReducedOrder::Order0, 4, 0.7, 0.01));
  CHECK(r.decision == CertificateDecision::NoEvidence);
  CHECK(r.candidates_above_threshold == 0);
}

TEST_CASE("alpha = 0: no evidence at the proof point, generic points still certify") {
  const auto f = kuramoto_field(ReducedOrder::Order1, 3, 0.0, 0.01);
  CertificateSearch at_proof;
  at_proof.random_points = 0;
  const CertificateReport r0 = certify_nonpairwise(f, at_proof);
  CHECK(r0.decision == CertificateDecision::NoEvidence);
  CHECK(std::fabs(*r0.proof_point->analytic_value) < 1e-12);
  // The default grid adds random points where the triplet sum has nonzero mixed derivatives.
  CHECK(certify_nonpairwise(f).decision == CertificateDecision::NonpairwiseCertified);
}

TEST_CASE("certificate candidates are ordered (i, j, k, grid index)") {
  CertificateSearch s;
  s.random_points = 2;
  s.points = {{0.1, 0.2, 0.3}};
  const auto c = certificate_candidates(3, s);
  REQUIRE(c.size() == 6 * 4);
  CHECK(c[0].triple == Triple{0, 1, 2});
  CHECK(c[0].grid_index == 0);
  CHECK(c[1].point == std::vector<double>{0.1, 0.2, 0.3});
  CHECK(c[4].triple == Triple{0, 2, 1});
  // random points are shared across triples
  CHECK(c[2].point == c[6].point);
  CHECK_THROWS_AS(certificate_candidates(2, s), ContractError);
  s.triples = {{0, 0, 1}};
  CHECK_THROWS_AS(certificate_candidates(3, s), ContractError);
  CHECK_THROWS_AS(certify_nonpairwise(kuramoto_field(ReducedOrder::Order1, 2, 0.7, 0.01)), ContractError);
}

TEST_CASE("node transforms and their inverses") {
  const NodeTransform t{{2, 0, 1}, {0.5, 1.0, -0.25}};
  const std::vector<double> th{0.1, 0.2, 0.3};
  const PhaseVector psi = node_respecting_transform(th, t);
  CHECK(psi[0] == doctest::Approx(0.8));
  CHECK(psi[1] == doctest::Approx(1.1));
  CHECK(phase_distance(inverse_transform(psi.values(), t), th) < 1e-15);
  CHECK(relabel(2, t) == 0);
  CHECK(relabel(Triple{0, 1, 2}, t) == Triple{1, 2, 0});
  CHECK_THROWS_AS(validate_transform({{0, 0, 1}, {0, 0, 0}}, 3), ContractError);
  CHECK_THROWS_AS(validate_transform({{0, 1}, {0, 0}}, 3), ContractError);
}

TEST_CASE("pushforward preserves mixed derivatives and decisions") {
  const auto f1 = kuramoto_field(ReducedOrder::Order1, 4, 0.7, 0.01, 5);
  const auto f0 = kuramoto_field(ReducedOrder::Order0, 4, 0.7, 0.01, 5);
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const NodeTransform t = random_transform(4, seed);
    const auto point = proof_point(4, {0, 1, 2});
    const InvariancePair p1 = pushforward_certificate_invariance(f1, t, point, {0, 1, 2});
    CHECK(std::fabs(p1.before - p1.after) < 1e-6);
    CHECK(std::fabs(p1.after) > 1e-6);
    const InvariancePair p0 = pushforward_certificate_invariance(f0, t, point, {0, 1, 2});
    CHECK(std::fabs(p0.after) < 1e-6);
  }
}

TEST_CASE("log-log fit recovers power laws and flags poor fits") {
  const std::vector<double> xs{0.1, 0.05, 0.025, 0.0125};
  std::vector<double> ys;
  for (double x : xs) ys.push_back(3.0 * x * x);
  const SlopeFit f = fit_log_log(xs, ys);
  CHECK(f.slope == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(f.r_squared == doctest::Approx(1.0));
  CHECK_FALSE(f.poor_fit);
  CHECK(fit_log_log(xs, {1.0, 0.01, 1.0, 0.01}).poor_fit);
  CHECK_THROWS_AS(fit_log_log({0.1}, {1.0}), ContractError);
  CHECK_THROWS_AS(fit_log_log({0.1, 0.2}, {1.0, 2.0}), ContractError);
  CHECK_THROWS_AS(fit_log_log({0.2, 0.1}, {1.0, 0.0}), ContractError);
}

TEST_CASE("distance to the slow manifold") {
  const auto m = testutil::random_model(3, 0.01, 2);
  WeightMatrix a = h0(*m.coupling, m.theta) + 0.01 * h1(m.params, *m.coupling, m.theta);
  CHECK(distance_to_slow_manifold(m.params, *m.coupling, {PhaseVector(m.theta), a}, 1) < 1e-15);
  CHECK(distance_to_slow_manifold(m.params, *m.coupling, {PhaseVector(m.theta), a}, 0) ==
        doctest::Approx(0.01 * frobenius_norm(h1(m.params, *m.coupling, m.theta))));
  a(0, 1) += 0.5;
  CHECK(distance_to_slow_manifold(m.params, *m.coupling, {PhaseVector(m.theta), a}, 1) == doctest::Approx(0.5));
  CHECK_THROWS_AS(distance_to_slow_manifold(m.params, *m.coupling, {PhaseVector(m.theta), a}, 2), ContractError);
}

TEST_CASE("attraction study preconditions") {
  const auto m = testutil::random_model(3, 0.01, 2);
  const WeightMatrix on = h0(*m.coupling, m.theta) + 0.01 * h1(m.params, *m.coupling, m.theta);
  const IntegrationConfig c{0.0005, 0.3, 1};
  CHECK_THROWS_AS(attraction_study(m.params, m.coupling, {PhaseVector(m.theta), on}, c), ContractError);
  WeightMatrix off = on;
  off(0, 0) += 1.0;
  // too short a horizon to fall below half the initial distance
  CHECK_THROWS_AS(attraction_study(m.params, m.coupling, {PhaseVector(m.theta), off}, {0.0005, 0.001, 1}),
                  ExperimentError);
  const AttractionReport r = attraction_study(m.params, m.coupling, {PhaseVector(m.theta), off}, c);
  CHECK(r.fitted_rate_per_fast_time == doctest::Approx(1.0).epsilon(0.1));
  CHECK(r.fit_points >= 3);
  CHECK(r.distances.front() == doctest::Approx(1.0));
}

TEST_CASE("convergence study validation and degenerate case") {
  const ModelParams p({0.0, 0.0, 0.0}, 0.01);
  const CouplingPtr c = make_kuramoto(0.8);
  const PhaseVector sync(std::vector<double>{1.0, 1.0, 1.0});
  const std::vector<double> eps{0.02, 0.01, 0.005};
  const ConvergenceResult r = convergence_study(p, c, sync, eps);
  CHECK(r.degenerate);
  CHECK_FALSE(r.fit0.has_value());
  for (double e : r.errors_order0) CHECK(e <= 1e-12);

  CHECK_THROWS_AS(convergence_study(p, c, sync, std::vector<double>{0.02, 0.01}), ContractError);
  CHECK_THROWS_AS(convergence_study(p, c, sync, std::vector<double>{0.01, 0.02, 0.005}), ContractError);
  ConvergenceOptions bad;
  bad.dt_factor = 0.2;
  CHECK_THROWS_AS(convergence_study(p, c, sync, eps, bad), ContractError);
}

TEST_CASE("convergence sweep is independent of parallel execution") {
  const auto m = testutil::random_model(4, 0.01, 6);
  const std::vector<double> eps{0.04, 0.02, 0.01};
  ConvergenceOptions serial;
  serial.parallel = false;
  serial.t_end = 0.5;
  ConvergenceOptions par = serial;
  par.parallel = true;
  const auto a = convergence_study(m.params, m.coupling, PhaseVector(m.theta), eps, serial);
  const auto b = convergence_study(m.params, m.coupling, PhaseVector(m.theta), eps, par);
  CHECK(a.errors_order0 == b.errors_order0);
  CHECK(a.errors_order1 == b.errors_order1);
}
