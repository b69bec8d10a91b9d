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
#include <cstdint>
#include <random>
#include <vector>

namespace adaptnet {

// Named streams keep independent draws (frequencies, initial phases, perturbation
// directions) reproducible from a single experiment seed.
enum class RandomStream : std::uint64_t {
  Omega = 1,
  InitialPhases = 2,
  Perturbation = 3,
  CertificateGrid = 4,
  Transforms = 5,
};

// mt19937_64 output mapped to [lo, hi) with 53 random bits. Unlike
// std::uniform_real_distribution the mapping is identical across standard libraries.
class UniformSource {
 public:
  UniformSource(std::uint64_t seed, RandomStream stream)
      : engine_(seed ^ (static_cast<std::uint64_t>(stream) * 0x9E3779B97F4A7C15ULL)) {}

  double next(double lo, double hi) {
    const double unit = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * unit;
  }

  std::vector<double> vector(std::size_t n, double lo, double hi) {
    std::vector<double> out(n);
    for (double& v : out) v = next(lo, hi);
    return out;
  }

  std::uint64_t raw() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

inline std::vector<double> uniform_vector(std::uint64_t seed, RandomStream stream, std::size_t n, double lo,
                                          double hi) {
  return UniformSource(seed, stream).vector(n, lo, hi);
}

}  // namespace adaptnet
