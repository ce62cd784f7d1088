// Copyright 2026 The esskit authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ESSKIT_RNG_HPP
#define ESSKIT_RNG_HPP

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <numbers>
#include <utility>

namespace esskit {

/// Splittable 64-bit generator (SplitMix64). Streams are derived by hashing
/// (seed, key...) tuples, so every (grid point, replication, trial) gets its
/// own reproducible substream regardless of scheduling. All samplers consume
/// a fixed number of draws per call, which keeps runs bit-reproducible.
///
/// Gaussian variates use the trigonometric Box-Muller transform: exactly two
/// uniforms per pair of normals.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  /// SplitMix64 finalizer; also used to hash stream keys.
  static std::uint64_t mix(std::uint64_t z) noexcept {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Derives an independent stream from a seed and a list of stream keys.
  static SplitMix64 derive(std::uint64_t seed,
                           std::initializer_list<std::uint64_t> keys) {
    std::uint64_t state = mix(seed);
    for (std::uint64_t key : keys) state = mix(state ^ mix(key));
    return SplitMix64(state);
  }

  std::uint64_t next_u64() noexcept {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1), 53-bit resolution.
  double next_uniform01() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform double in (0, 1].
  double next_uniform01_open_low() noexcept {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  /// Exp(1) variate.
  double next_exponential() noexcept {
    return -std::log(next_uniform01_open_low());
  }

  /// Standard normal pair via Box-Muller.
  std::pair<double, double> next_normal_pair() noexcept {
    const double u1 = next_uniform01_open_low();
    const double u2 = next_uniform01();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    return {radius * std::cos(angle), radius * std::sin(angle)};
  }

  /// Index in [0, n).
  std::uint64_t next_below(std::uint64_t n) noexcept {
    // Multiply-shift rejection-free mapping; bias is ~n/2^64, irrelevant here.
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
  }

 private:
  std::uint64_t state_;
};

}  // namespace esskit

#endif  // ESSKIT_RNG_HPP
