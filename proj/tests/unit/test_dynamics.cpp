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

#include "dynamics.hpp"
#include "errors.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace adaptnet;

namespace {

std::vector<double> vec(std::span<const double> s) { return {s.begin(), s.end()}; }
std::vector<double> vec(const WeightMatrix& w) { return vec(w.entries()); }

}  // namespace

TEST_CASE("phase and weight fields match the naive loops") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto m = testutil::random_model(2 + seed % 6, 0.01, seed);
    const std::size_t n = m.params.n_nodes();
    const auto a = uniform_vector(seed, RandomStream::Perturbation, n * n, -2.0, 2.0);
    const WeightMatrix w(n, a);
    CHECK(oracle::max_abs_diff(phase_rhs(m.params, *m.coupling, m.theta, w), oracle::phase_rhs(m.oracle, m.theta, a)) <=
          1e-13);
    CHECK(oracle::max_abs_diff(vec(weight_rhs(*m.coupling, m.theta, w)),
                               oracle::weight_rhs(m.oracle, m.theta, a)) <= 1e-13);
    CHECK(layer_rhs(*m.coupling, m.theta, w) == weight_rhs(*m.coupling, m.theta, w));
  }
}

TEST_CASE("slow-time derivative scales the weight field by 1/eps") {
  const auto m = testutil::random_model(4, 0.02, 3);
  const WeightMatrix a(4, 0.5);
  const FullDerivative d = full_rhs_slow_time(m.params, *m.coupling, {PhaseVector(m.theta), a});
  const WeightMatrix g = weight_rhs(*m.coupling, m.theta, a);
  for (std::size_t q = 0; q < 16; ++q) CHECK(d.da.entries()[q] == doctest::Approx(g.entries()[q] / 0.02));
}

TEST_CASE("critical manifold is a fixed point of the layer problem") {
  const auto m = testutil::random_model(6, 0.01, 9);
  const WeightMatrix a0 = h0(*m.coupling, m.theta);
  const WeightMatrix g = weight_rhs(*m.coupling, m.theta, a0);
  for (double v : g.entries()) CHECK(std::fabs(v) < 1e-15);
  CHECK(oracle::max_abs_diff(vec(a0.entries()), oracle::h0(m.oracle, m.theta)) <= 1e-15);
}

TEST_CASE("h1 agrees with the component oracle and the invariance-equation FD oracle") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto m = testutil::random_model(3 + seed % 5, 0.01, seed);
    const auto h = vec(h1(m.params, *m.coupling, m.theta));
    CHECK(oracle::max_abs_diff(h, oracle::h1_components(m.oracle, m.theta)) <= 1e-13);
    CHECK(oracle::max_abs_diff(h, oracle::h1_invariance_fd(m.oracle, m.theta)) <= 1e-6);
  }
}

TEST_CASE("pair and triplet terms match the naive formulas") {
  const auto m = testutil::random_model(5, 0.01, 17);
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j) {
      CHECK(pair_term_P(m.params, *m.coupling, i, j, m.theta) == doctest::Approx(oracle::P(m.oracle, i, j, m.theta)));
      for (std::size_t k = 0; k < 5; ++k)
        CHECK(std::fabs(triplet_term_T(*m.coupling, i, j, k, m.theta) - oracle::T(m.oracle, i, j, k, m.theta)) <=
              1e-15);
    }
  CHECK_THROWS_AS(triplet_term_T(*m.coupling, 0, 1, 5, m.theta), ContractError);
}

TEST_CASE("reduced fields match the O(N^3) oracle") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto m = testutil::random_model(3 + seed % 6, 0.01 * static_cast<double>(seed), seed);
    for (int order : {0, 1}) {
      const ReducedField f(static_cast<ReducedOrder>(order), m.params, m.coupling);
      const auto got = f(m.theta);
      CHECK(oracle::max_abs_diff(got, oracle::reduced(m.oracle, order, m.theta)) <= 1e-13);
      for (std::size_t i = 0; i < got.size(); ++i) CHECK(std::fabs(f.component(i, m.theta) - got[i]) <= 1e-14);
    }
  }
}

TEST_CASE("order-1 field equals the phase field on the first-order manifold") {
  const auto m = testutil::random_model(6, 0.02, 5);
  const WeightMatrix a = h0(*m.coupling, m.theta) + 0.02 * h1(m.params, *m.coupling, m.theta);
  const ReducedField f(ReducedOrder::Order1, m.params, m.coupling);
  CHECK(oracle::max_abs_diff(f(m.theta), phase_rhs(m.params, *m.coupling, m.theta, a)) <= 1e-13);
}

TEST_CASE("order-1 reduction needs first derivatives") {
  CouplingFunctions fns;
  fns.gamma = [](double x) { return std::sin(x); };
  fns.h = [](double u, double v) { return std::cos(u - v); };
  const CouplingPtr bare = std::make_shared<FunctionCoupling>(fns);
  const ModelParams p({0.1, 0.2, 0.3}, 0.01);
  CHECK_NOTHROW(ReducedField(ReducedOrder::Order0, p, bare));
  CHECK_THROWS_AS(ReducedField(ReducedOrder::Order1, p, bare), CapabilityError);
  CHECK_THROWS_AS(ReducedField(ReducedOrder::Order0, p, nullptr), ContractError);
}

TEST_CASE("synchronized start with zero frequencies is stationary") {
  const ModelParams p({0.0, 0.0, 0.0, 0.0}, 0.01);
  const CouplingPtr c = make_kuramoto(0.5);
  const std::vector<double> theta(4, 1.3);
  for (int order : {0, 1})
    for (double v : ReducedField(static_cast<ReducedOrder>(order), p, c)(theta)) CHECK(v == 0.0);
  const WeightMatrix corr = h1(p, *c, theta);
  for (double v : corr.entries()) CHECK(v == 0.0);
}

TEST_CASE("dimension mismatches are rejected") {
  const ModelParams p({0.1, 0.2}, 0.01);
  const CouplingPtr c = make_kuramoto(0.5);
  const std::vector<double> three{0.0, 1.0, 2.0};
  CHECK_THROWS_AS(phase_rhs(p, *c, three, WeightMatrix(3)), ContractError);
  CHECK_THROWS_AS(weight_rhs(*c, three, WeightMatrix(2)), ContractError);
  CHECK_THROWS_AS(ReducedField(ReducedOrder::Order0, p, c)(three), ContractError);
}
