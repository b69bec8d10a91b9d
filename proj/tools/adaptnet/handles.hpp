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

// Owning wrappers over the C handles. Every call that can fail goes through check().

#include <memory>
#include <stdexcept>
#include <string>

#include <adaptnet/adaptnet.h>

namespace adaptnet::cli {

class ApiError : public std::runtime_error {
 public:
  ApiError(adn_status status, const std::string& what) : std::runtime_error(what), status_(status) {}
  adn_status status() const noexcept { return status_; }

 private:
  adn_status status_;
};

inline void check(adn_status status, const char* call) {
  if (status != ADN_OK)
    throw ApiError(status, std::string(call) + ": " + adn_status_name(status) + ": " + adn_last_error());
}

template <typename T, void (*Free)(T*)>
struct HandleDeleter {
  void operator()(T* p) const noexcept { Free(p); }
};

using CouplingHandle = std::unique_ptr<adn_coupling, HandleDeleter<adn_coupling, adn_coupling_free>>;
using ModelHandle = std::unique_ptr<adn_model, HandleDeleter<adn_model, adn_model_free>>;
using TrajectoryHandle = std::unique_ptr<adn_trajectory, HandleDeleter<adn_trajectory, adn_trajectory_free>>;
using CertificateHandle = std::unique_ptr<adn_certificate, HandleDeleter<adn_certificate, adn_certificate_free>>;
using AttractionHandle = std::unique_ptr<adn_attraction, HandleDeleter<adn_attraction, adn_attraction_free>>;
using ConvergenceHandle = std::unique_ptr<adn_convergence, HandleDeleter<adn_convergence, adn_convergence_free>>;

// Takes ownership of whatever a create-style call wrote into its out parameter.
template <typename Handle, typename Fn>
Handle make_handle(const char* call, Fn&& create) {
  typename Handle::pointer raw = nullptr;
  check(create(&raw), call);
  return Handle(raw);
}

}  // namespace adaptnet::cli
