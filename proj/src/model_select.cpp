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

#include "esskit/model_select.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "esskit/errors.hpp"
#include "esskit/numeric.hpp"

namespace esskit {

namespace {

constexpr double kJitterTolerance = 1e-12;

}  // namespace

ErrorCurve::ErrorCurve(std::vector<double> values, CurveDirection direction)
    : values_(std::move(values)), direction_(direction) {
  if (values_.size() < 2) {
    throw InvalidSize("error curve needs at least V(0) and V(1)");
  }
  for (std::size_t k = 0; k < values_.size(); ++k) {
    if (!std::isfinite(values_[k])) {
      throw NotMonotone("V(" + std::to_string(k) + ") is not finite");
    }
  }
  const double sign = direction_ == CurveDirection::NonIncreasing ? 1.0 : -1.0;
  for (std::size_t k = 1; k < values_.size(); ++k) {
    const double step = sign * (values_[k - 1] - values_[k]);
    if (step < -kJitterTolerance) {
      throw NotMonotone("V(" + std::to_string(k) + ") violates the declared " +
                        "direction by " + std::to_string(-step));
    }
    if (step < 0.0) values_[k] = values_[k - 1];  // flatten rounding jitter
  }
  // Anchor the zero endpoint.
  shift_ = direction_ == CurveDirection::NonIncreasing ? values_.back()
                                                       : values_.front();
  if (shift_ != 0.0) {
    for (double& v : values_) v -= shift_;
  }
}

WeightVector weights_from_error_curve(const ErrorCurve& curve) {
  if (curve.direction() != CurveDirection::NonIncreasing) {
    throw NotMonotone("weights need a non-increasing curve");
  }
  const auto& v = curve.values();
  if (v.front() == v.back()) {
    throw FlatCurve("V(0) = V(N), no drop to normalize");
  }
  std::vector<double> drops(v.size() - 1);
  for (std::size_t k = 1; k < v.size(); ++k) drops[k - 1] = v[k - 1] - v[k];
  return normalize(std::span<const double>(drops));
}

double env_index(const ErrorCurve& curve) {
  const auto& v = curve.values();
  const std::size_t n = curve.component_count();
  const double normalizer =
      curve.direction() == CurveDirection::NonIncreasing ? v.front() : v.back();
  if (normalizer == 0.0) {
    throw FlatCurve("normalizing value of the curve is zero");
  }
  CompensatedSum interior;
  for (std::size_t k = 1; k < n; ++k) interior.add(v[k]);
  return 1.0 + 2.0 / normalizer * interior.value();
}

double ess_env_via_curve(const WeightVector& w) {
  const WeightVector sorted = sort_ascending(w);
  std::vector<double> curve(w.size() + 1);
  curve[0] = 0.0;
  CompensatedSum acc;
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    acc.add(sorted[k]);
    curve[k + 1] = acc.value();
  }
  return env_index(ErrorCurve(std::move(curve), CurveDirection::NonDecreasing));
}

EffectiveComponents effective_components(const ErrorCurve& curve,
                                         const EssMethod& method) {
  const WeightVector w = weights_from_error_curve(curve);
  const double raw = evaluate(method, w).value;
  return EffectiveComponents{raw, std::lround(raw), method};
}

}  // namespace esskit
