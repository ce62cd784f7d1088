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

#include "esskit/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "esskit/errors.hpp"
#include "esskit/numeric.hpp"

namespace esskit {

namespace {

void check_entries_valid(std::span<const double> entries) {
  if (entries.empty()) {
    throw InvalidSize("weight vector must have at least one entry");
  }
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (!std::isfinite(entries[i])) {
      throw InvalidWeight("entry " + std::to_string(i + 1) +
                          " is not finite");
    }
    if (entries[i] < 0.0) {
      throw InvalidWeight("entry " + std::to_string(i + 1) + " is negative (" +
                          std::to_string(entries[i]) + ")");
    }
  }
}

}  // namespace

WeightVector WeightVector::from_normalized(std::vector<double> entries) {
  check_entries_valid(entries);
  const double total = compensated_sum(entries);
  if (std::abs(total - 1.0) > kNormalizationTolerance) {
    throw InvalidWeight("entries sum to " + std::to_string(total) +
                        ", not 1 within tolerance");
  }
  return WeightVector(std::move(entries), Unchecked{});
}

WeightVector normalize(std::span<const double> raw) {
  check_entries_valid(raw);
  const double total = compensated_sum(raw);
  if (total == 0.0) {
    throw AllZeroWeights("every raw weight is zero");
  }
  std::vector<double> entries(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) entries[i] = raw[i] / total;
  return WeightVector(std::move(entries), WeightVector::Unchecked{});
}

WeightVector normalize(const RawWeights& raw) { return normalize(std::span<const double>(raw.entries)); }

WeightVector uniform(std::size_t n) {
  if (n == 0) throw InvalidSize("uniform requires n >= 1");
  return WeightVector(std::vector<double>(n, 1.0 / static_cast<double>(n)),
                      WeightVector::Unchecked{});
}

WeightVector vertex(std::size_t n, std::size_t j) {
  if (n == 0) throw InvalidSize("vertex requires n >= 1");
  if (j < 1 || j > n) {
    throw IndexOutOfRange("vertex index " + std::to_string(j) +
                          " outside [1, " + std::to_string(n) + "]");
  }
  std::vector<double> entries(n, 0.0);
  entries[j - 1] = 1.0;
  return WeightVector(std::move(entries), WeightVector::Unchecked{});
}

WeightVector replicate(const WeightVector& w, std::size_t m) {
  if (m == 0) throw InvalidSize("replicate requires m >= 1");
  std::vector<double> entries;
  entries.reserve(w.size() * m);
  const double scale = 1.0 / static_cast<double>(m);
  for (std::size_t copy = 0; copy < m; ++copy) {
    for (double e : w) entries.push_back(e * scale);
  }
  return WeightVector::from_normalized(std::move(entries));
}

WeightVector sort_ascending(const WeightVector& w) {
  std::vector<double> entries = w.entries();
  std::stable_sort(entries.begin(), entries.end());
  return WeightVector(std::move(entries), WeightVector::Unchecked{});
}

}  // namespace esskit
