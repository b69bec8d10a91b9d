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
#include <vector>

namespace adaptnet {

// Dense N x N coupling weights, row-major. Entries are finite.
class WeightMatrix {
 public:
  WeightMatrix() = default;
  explicit WeightMatrix(std::size_t n, double fill = 0.0) : n_(n), entries_(n * n, fill) {}
  WeightMatrix(std::size_t n, std::vector<double> row_major);

  std::size_t dim() const noexcept { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }
  double& operator()(std::size_t i, std::size_t j) { return entries_[i * n_ + j]; }

  std::span<const double> entries() const& noexcept { return entries_; }
  std::span<double> entries() & noexcept { return entries_; }
  std::span<const double> entries() const&& = delete;  // would dangle


  WeightMatrix transposed() const;

  WeightMatrix& operator+=(const WeightMatrix& other);
  WeightMatrix& operator-=(const WeightMatrix& other);
  WeightMatrix& operator*=(double s);

  friend bool operator==(const WeightMatrix&, const WeightMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> entries_;
};

WeightMatrix operator+(WeightMatrix a, const WeightMatrix& b);
WeightMatrix operator-(WeightMatrix a, const WeightMatrix& b);
WeightMatrix operator*(double s, WeightMatrix a);

double frobenius_norm(const WeightMatrix& m);

}  // namespace adaptnet
