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
#include <numbers>
#include <span>
#include <vector>

namespace adaptnet {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Reduces x to its representative in [0, 2pi). Throws DomainError for non-finite x.
double canonicalize_phase(double x);

// Oscillator phases on the N-torus, stored canonically in [0, 2pi).
class PhaseVector {
 public:
  PhaseVector() = default;
  explicit PhaseVector(std::size_t n) : values_(n, 0.0) {}
  explicit PhaseVector(std::vector<double> raw);

  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  std::span<const double> values() const& noexcept { return values_; }
  std::span<const double> values() const&& = delete;  // would dangle

  void set(std::size_t i, double x);

  friend bool operator==(const PhaseVector&, const PhaseVector&) = default;

 private:
  std::vector<double> values_;
};

// Wrapped angular distance between two scalars, in [0, pi].
double angular_distance(double a, double b);

// Max over components of the wrapped angular distance. Accepts raw (uncanonicalized) angles.
double phase_distance(std::span<const double> a, std::span<const double> b);
double phase_distance(const PhaseVector& a, const PhaseVector& b);

}  // namespace adaptnet
