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

#include "phase.hpp"

#include <algorithm>
#include <cmath>

#include "errors.hpp"

namespace adaptnet {

double canonicalize_phase(double x) {
  if (!std::isfinite(x)) throw DomainError("canonicalize_phase: non-finite angle");
  double r = std::fmod(x, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  // fmod of a tiny negative number plus 2pi can round up to exactly 2pi.
  if (r >= kTwoPi) r = 0.0;
  return r;
}

PhaseVector::PhaseVector(std::vector<double> raw) : values_(std::move(raw)) {
  for (double& v : values_) v = canonicalize_phase(v);
}

void PhaseVector::set(std::size_t i, double x) {
  if (i >= values_.size()) throw ContractError("PhaseVector::set: index out of range");
  values_[i] = canonicalize_phase(x);
}

double angular_distance(double a, double b) {
  const double d = std::fmod(std::fabs(a - b), kTwoPi);
  return std::min(d, kTwoPi - d);
}

double phase_distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw ContractError("phase_distance: length mismatch");
  double dist = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) dist = std::max(dist, angular_distance(a[i], b[i]));
  return dist;
}

double phase_distance(const PhaseVector& a, const PhaseVector& b) {
  return phase_distance(a.values(), b.values());
}

}  // namespace adaptnet
