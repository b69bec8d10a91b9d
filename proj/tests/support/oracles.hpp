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

// Reference implementations for the adaptive Kuramoto model written as plain loops
// over sin / cos, sharing no code with the library. Used as test oracles.

#include <cmath>
#include <cstddef>
#include <vector>

namespace oracle {

struct Kuramoto {
  double alpha;
  std::vector<double> omega;
  double eps;

  std::size_t n() const { return omega.size(); }
  double H(double u, double v) const { return alpha + std::cos(u - v); }
  double Hu(double u, double v) const { return -std::sin(u - v); }
  double Hv(double u, double v) const { return std::sin(u - v); }
};

using Matrix = std::vector<double>;  // row-major N x N

inline std::vector<double> phase_rhs(const Kuramoto& m, const std::vector<double>& th, const Matrix& a) {
  const std::size_t n = m.n();
  std::vector<double> f(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) s += a[i * n + j] * std::sin(th[j] - th[i]);
    f[i] = m.omega[i] + s / static_cast<double>(n);
  }
  return f;
}

inline Matrix weight_rhs(const Kuramoto& m, const std::vector<double>& th, const Matrix& a) {
  const std::size_t n = m.n();
  Matrix g(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g[i * n + j] = -a[i * n + j] + m.H(th[i], th[j]);
  return g;
}

inline Matrix h0(const Kuramoto& m, const std::vector<double>& th) {
  const std::size_t n = m.n();
  Matrix a(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i * n + j] = m.H(th[i], th[j]);
  return a;
}

// Component form: h1_ij = -H_u f_i - H_v f_j with f evaluated on the critical manifold.
inline Matrix h1_components(const Kuramoto& m, const std::vector<double>& th) {
  const std::size_t n = m.n();
  const auto f = phase_rhs(m, th, h0(m, th));
  Matrix out(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out[i * n + j] = -m.Hu(th[i], th[j]) * f[i] - m.Hv(th[i], th[j]) * f[j];
  return out;
}

// Invariance-equation form: h1 = -(D h0) f, the directional derivative of h0 along
// the order-0 flow, realized by a central difference with the given step.
inline Matrix h1_invariance_fd(const Kuramoto& m, const std::vector<double>& th, double step = 1e-5) {
  const std::size_t n = m.n();
  const auto f = phase_rhs(m, th, h0(m, th));
  std::vector<double> plus(th), minus(th);
  for (std::size_t i = 0; i < n; ++i) {
    plus[i] += step * f[i];
    minus[i] -= step * f[i];
  }
  const Matrix hp = h0(m, plus), hm = h0(m, minus);
  Matrix out(n * n);
  for (std::size_t q = 0; q < out.size(); ++q) out[q] = -(hp[q] - hm[q]) / (2.0 * step);
  return out;
}

inline double P(const Kuramoto& m, std::size_t i, std::size_t j, const std::vector<double>& th) {
  return -std::sin(th[j] - th[i]) * (m.Hu(th[i], th[j]) * m.omega[i] + m.Hv(th[i], th[j]) * m.omega[j]);
}

inline double T(const Kuramoto& m, std::size_t i, std::size_t j, std::size_t k, const std::vector<double>& th) {
  const double gji = std::sin(th[j] - th[i]);
  return -gji * m.Hu(th[i], th[j]) * m.H(th[i], th[k]) * std::sin(th[k] - th[i]) -
         gji * m.Hv(th[i], th[j]) * m.H(th[j], th[k]) * std::sin(th[k] - th[j]);
}

inline double triplet_double_sum(const Kuramoto& m, std::size_t i, const std::vector<double>& th) {
  double s = 0.0;
  for (std::size_t j = 0; j < m.n(); ++j)
    for (std::size_t k = 0; k < m.n(); ++k) s += T(m, i, j, k, th);
  return s;
}

// order 0: omega + (1/N) sum H Gamma; order 1 adds (eps/N) sum P + (eps/N^2) sum sum T. O(N^3).
inline std::vector<double> reduced(const Kuramoto& m, int order, const std::vector<double>& th) {
  const std::size_t n = m.n();
  const double nn = static_cast<double>(n);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    double pair = 0.0, corr = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      pair += m.H(th[i], th[j]) * std::sin(th[j] - th[i]);
      corr += P(m, i, j, th);
    }
    out[i] = m.omega[i] + pair / nn;
    if (order == 1) out[i] += m.eps / nn * corr + m.eps / (nn * nn) * triplet_double_sum(m, i, th);
  }
  return out;
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t q = 0; q < a.size(); ++q) d = std::fmax(d, std::fabs(a[q] - b[q]));
  return d;
}

}  // namespace oracle
