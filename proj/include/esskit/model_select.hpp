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

#ifndef ESSKIT_MODEL_SELECT_HPP
#define ESSKIT_MODEL_SELECT_HPP

#include <cstddef>
#include <vector>

#include "esskit/metrics.hpp"
#include "esskit/simplex.hpp"

namespace esskit {

enum class CurveDirection { NonIncreasing, NonDecreasing };

/// A monotone model-selection error sequence V(0), ..., V(N), e.g. the error
/// of a model using only the first k of N ranked components.
///
/// Construction normalizes the curve to the convention the indices need:
/// non-increasing curves are translated so V(N) = 0, non-decreasing so
/// V(0) = 0 (the applied shift is recorded). Monotonicity violations within
/// 1e-12 are flattened as rounding jitter; larger ones throw NotMonotone.
class ErrorCurve {
 public:
  ErrorCurve(std::vector<double> values, CurveDirection direction);

  const std::vector<double>& values() const noexcept { return values_; }
  CurveDirection direction() const noexcept { return direction_; }

  /// Number of components N (= values().size() - 1).
  std::size_t component_count() const noexcept { return values_.size() - 1; }

  /// Translation applied at construction to zero the anchored endpoint.
  double translation_shift() const noexcept { return shift_; }

 private:
  std::vector<double> values_;
  CurveDirection direction_;
  double shift_ = 0.0;
};

/// Normalized drop vector of a non-increasing curve:
/// d_k = V(k-1) - V(k), w_k = d_k / sum d. Throws FlatCurve when the total
/// drop is zero.
WeightVector weights_from_error_curve(const ErrorCurve& curve);

/// Effective-number-of-variables index:
///   non-increasing: 1 + (2/V(0)) sum_{k=1}^{N-1} V(k)
///   non-decreasing: 1 + (2/V(N)) sum_{k=1}^{N-1} V(k)
/// Throws FlatCurve when the normalizer is zero.
double env_index(const ErrorCurve& curve);

/// ESS via the cumulative-curve construction: sort w ascending, build
/// V(k) = V(k-1) + w_(k) from V(0) = 0, apply env_index. Equals
/// ess_env(w).value (and therefore ess_gini).
double ess_env_via_curve(const WeightVector& w);

/// Effective number of components under `method`, rounded to the nearest
/// integer (ties away from zero).
struct EffectiveComponents {
  double raw = 0.0;
  long rounded = 0;
  EssMethod method;
};

/// Builds weights from a non-increasing curve and evaluates the chosen
/// G-ESS method on them.
EffectiveComponents effective_components(const ErrorCurve& curve,
                                         const EssMethod& method);

}  // namespace esskit

#endif  // ESSKIT_MODEL_SELECT_HPP
