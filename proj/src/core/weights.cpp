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

#include "weights.hpp"

#include <cmath>

#include "errors.hpp"

namespace adaptnet {

WeightMatrix::WeightMatrix(std::size_t n, std::vector<double> row_major)
    : n_(n), entries_(std::move(row_major)) {
  if (entries_.size() != n * n) throw ContractError("WeightMatrix: expected n*n entries");
  for (double v : entries_)
    if (!std::isfinite(v)) throw DomainError("WeightMatrix: non-finite entry");
}

WeightMatrix WeightMatrix::transposed() const {
  WeightMatrix t(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

WeightMatrix& WeightMatrix::operator+=(const WeightMatrix& other) {
  if (other.n_ != n_) throw ContractError("WeightMatrix: dimension mismatch");
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += other.entries_[k];
  return *this;
}

WeightMatrix& WeightMatrix::operator-=(const WeightMatrix& other) {
  if (other.n_ != n_) throw ContractError("WeightMatrix: dimension mismatch");
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] -= other.entries_[k];
  return *this;
}

WeightMatrix& WeightMatrix::operator*=(double s) {
  for (double& v : entries_) v *= s;
  return *this;
}

WeightMatrix operator+(WeightMatrix a, const WeightMatrix& b) { return a += b; }
WeightMatrix operator-(WeightMatrix a, const WeightMatrix& b) { return a -= b; }
WeightMatrix operator*(double s, WeightMatrix a) { return a *= s; }

double frobenius_norm(const WeightMatrix& m) {
  double sum = 0.0;
  for (double v : m.entries()) sum += v * v;
  return std::sqrt(sum);
}

}  // namespace adaptnet
