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

#include "params.hpp"

#include <cmath>

#include "errors.hpp"

namespace adaptnet {

ModelParams::ModelParams(std::vector<double> omega, double epsilon)
    : omega_(std::move(omega)), epsilon_(epsilon) {
  if (omega_.empty()) throw ContractError("ModelParams: n_nodes must be >= 1");
  for (double w : omega_)
    if (!std::isfinite(w)) throw ContractError("ModelParams: non-finite natural frequency");
  if (!(epsilon_ > 0.0) || !std::isfinite(epsilon_))
    throw ContractError("ModelParams: epsilon must be finite and > 0");
}

}  // namespace adaptnet
