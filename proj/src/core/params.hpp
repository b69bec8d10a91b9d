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
#include <vector>

namespace adaptnet {

// Natural frequencies and time-scale separation. Validated on construction.
class ModelParams {
 public:
  ModelParams(std::vector<double> omega, double epsilon);

  std::size_t n_nodes() const noexcept { return omega_.size(); }
  const std::vector<double>& omega() const noexcept { return omega_; }
  double omega(std::size_t i) const { return omega_[i]; }
  double epsilon() const noexcept { return epsilon_; }

  ModelParams with_epsilon(double epsilon) const { return ModelParams(omega_, epsilon); }

 private:
  std::vector<double> omega_;
  double epsilon_;
};

}  // namespace adaptnet
