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

#ifndef ESSKIT_SIMPLEX_HPP
#define ESSKIT_SIMPLEX_HPP

#include <cstddef>
#include <span>
#include <vector>

namespace esskit {

/// Absolute tolerance on |sum - 1| accepted when validating a normalized
/// weight vector. Double-precision compensated accumulation over N <= 1e6
/// entries stays far below this.
inline constexpr double kNormalizationTolerance = 1e-9;

/// A point on the unit simplex: nonnegative entries summing to 1 (within
/// kNormalizationTolerance). Immutable after construction; all operations on
/// it are pure functions, so values can be shared freely across threads.
///
/// Zero entries are permitted and preserved exactly — an entry counts as zero
/// iff it is exactly 0.0. Several measures (the zero count N_Z, the >= 1/N
/// count N+) depend on this, so no epsilon-zeroing is ever applied.
class WeightVector {
 public:
  /// Validates and adopts already-normalized entries.
  /// Throws InvalidWeight for negative/non-finite entries or a bad sum,
  /// InvalidSize for an empty vector.
  static WeightVector from_normalized(std::vector<double> entries);

  std::size_t size() const noexcept { return entries_.size(); }
  double operator[](std::size_t i) const noexcept { return entries_[i]; }
  const std::vector<double>& entries() const noexcept { return entries_; }

  auto begin() const noexcept { return entries_.begin(); }
  auto end() const noexcept { return entries_.end(); }

  bool operator==(const WeightVector& other) const noexcept = default;

 private:
  struct Unchecked {};
  WeightVector(std::vector<double> entries, Unchecked) noexcept
      : entries_(std::move(entries)) {}

  friend WeightVector normalize(std::span<const double> raw);
  friend WeightVector uniform(std::size_t n);
  friend WeightVector vertex(std::size_t n, std::size_t j);
  friend WeightVector sort_ascending(const WeightVector& w);

  std::vector<double> entries_;
};

/// Unnormalized importance ratios, as produced by a sampler. Validation
/// happens in normalize(); this is plain data.
struct RawWeights {
  std::vector<double> entries;
};

/// Divides by the (compensated) total. Throws InvalidWeight if any entry is
/// negative or non-finite, AllZeroWeights if every entry is 0, InvalidSize if
/// empty.
WeightVector normalize(std::span<const double> raw);
WeightVector normalize(const RawWeights& raw);

/// [1/n, ..., 1/n] — the maximum-diversity configuration.
WeightVector uniform(std::size_t n);

/// Simplex vertex: entry j (1-based) equals 1, all others 0.
WeightVector vertex(std::size_t n, std::size_t j);

/// The mn-dimensional vector (1/m)[w, w, ..., w] (m copies).
WeightVector replicate(const WeightVector& w, std::size_t m);

/// Entries sorted ascending (still on the simplex).
WeightVector sort_ascending(const WeightVector& w);

}  // namespace esskit

#endif  // ESSKIT_SIMPLEX_HPP
