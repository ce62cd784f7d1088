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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "esskit/errors.hpp"
#include "esskit/model_select.hpp"
#include "esskit/properties.hpp"

using namespace esskit;

namespace {

ErrorCurve decreasing(std::vector<double> v) {
  return ErrorCurve(std::move(v), CurveDirection::NonIncreasing);
}

}  // namespace

TEST_CASE("curve validation and repair") {
  CHECK_THROWS_AS(ErrorCurve({1.0}, CurveDirection::NonIncreasing), InvalidSize);
  CHECK_THROWS_AS(decreasing({1.0, 0.5, 0.6, 0.0}), NotMonotone);
  CHECK_THROWS_AS(ErrorCurve({0.0, std::nan(""), 1.0}, CurveDirection::NonDecreasing),
                  NotMonotone);

  // Jitter within 1e-12 is flattened.
  const ErrorCurve repaired = decreasing({1.0, 0.5, 0.5 + 1e-13, 0.0});
  CHECK(repaired.values()[2] == repaired.values()[1]);

  // A non-zero tail is translated away and recorded.
  const ErrorCurve shifted = decreasing({3.0, 1.5, 1.0});
  CHECK(shifted.translation_shift() == 1.0);
  CHECK(shifted.values().back() == 0.0);
  CHECK(shifted.values().front() == 2.0);
}

TEST_CASE("weights from error curves") {
  CHECK(weights_from_error_curve(decreasing({1, 0})).entries() ==
        std::vector<double>{1});
  const WeightVector linear =
      weights_from_error_curve(decreasing({1, 2.0 / 3, 1.0 / 3, 0}));
  for (double e : linear) CHECK(e == doctest::Approx(1.0 / 3).epsilon(1e-12));
  const WeightVector direct =
      weights_from_error_curve(decreasing({1, 0.2, 0.1, 0}));
  CHECK(direct[0] == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(direct[1] == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(direct[2] == doctest::Approx(0.1).epsilon(1e-12));

  CHECK_THROWS_AS(weights_from_error_curve(decreasing({1, 1, 1})), FlatCurve);
}

TEST_CASE("env index") {
  // Cumulative curves from uniform and vertex weights hit the endpoints.
  CHECK(ess_env_via_curve(uniform(6)) == doctest::Approx(6).epsilon(1e-12));
  CHECK(ess_env_via_curve(vertex(6, 2)) == doctest::Approx(1).epsilon(1e-12));
  CHECK(ess_env_via_curve(WeightVector::from_normalized({0.5, 0.5, 0})) ==
        doctest::Approx(2).epsilon(1e-12));

  const ErrorCurve rising({0.0, 0.5, 1.0}, CurveDirection::NonDecreasing);
  CHECK(env_index(rising) == doctest::Approx(2).epsilon(1e-12));

  CHECK_THROWS_AS(env_index(decreasing({0, 0, 0})), FlatCurve);
}

TEST_CASE("env via curve equals the gini ESS") {
  SplitMix64 rng(61);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 2 + rng.next_below(25);
    const WeightVector w = sample_simplex_point(rng, n, true);
    CHECK(std::abs(ess_env_via_curve(w) - ess_gini(w).value) <= 1e-10);
    CHECK(ess_env_via_curve(w) >= 1.0 - 1e-10);
    CHECK(ess_env_via_curve(w) <= static_cast<double>(n) + 1e-10);
  }
}

TEST_CASE("effective components") {
  const std::size_t n = 12;
  std::vector<double> linear(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    linear[k] = 1.0 - static_cast<double>(k) / static_cast<double>(n);
  }
  const EffectiveComponents uniform_case = effective_components(
      decreasing(std::move(linear)), EssMethod{EssFamily::HugginsRoy, 2.0});
  CHECK(uniform_case.rounded == 12);

  std::vector<double> single_drop(n + 1, 0.0);
  single_drop[0] = 1.0;
  const EffectiveComponents one = effective_components(
      decreasing(std::move(single_drop)), EssMethod{EssFamily::Gini, 0.0});
  CHECK(one.rounded == 1);

  const EffectiveComponents max_based = effective_components(
      decreasing({1, 0.2, 0.1, 0}),
      EssMethod{EssFamily::HugginsRoy, std::numeric_limits<double>::infinity()});
  CHECK(max_based.raw == doctest::Approx(1.25).epsilon(1e-12));
  CHECK(max_based.rounded == 1);
}

TEST_CASE("effective components ignore affine rescaling") {
  SplitMix64 rng(67);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + rng.next_below(10);
    std::vector<double> curve(n + 1);
    curve[n] = 0.0;
    for (std::size_t k = n; k-- > 0;) {
      curve[k] = curve[k + 1] + rng.next_exponential();
    }
    const double a = 0.5 + 4.0 * rng.next_uniform01();
    const double b = -2.0 + 4.0 * rng.next_uniform01();
    std::vector<double> rescaled(curve);
    for (double& v : rescaled) v = a * v + b;

    const EssMethod method{EssFamily::HugginsRoy, 2.0};
    const double raw = effective_components(decreasing(curve), method).raw;
    const double raw_rescaled =
        effective_components(decreasing(rescaled), method).raw;
    CHECK(std::abs(raw - raw_rescaled) <= 1e-9 * static_cast<double>(n));
    CHECK(raw >= 1.0 - 1e-9);
    CHECK(raw <= static_cast<double>(n) + 1e-9);
  }
}

TEST_CASE("rounding goes half away from zero") {
  CHECK(std::lround(2.5) == 3);
  CHECK(std::lround(1.4999) == 1);
}
