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

#ifndef ESSKIT_METRICS_HPP
#define ESSKIT_METRICS_HPP

#include <string>
#include <string_view>

#include "esskit/simplex.hpp"

namespace esskit {

/// Generalized effective-sample-size (G-ESS) formula families. Every family
/// maps the unit simplex into [1, N]: N at the uniform vector, 1 at vertices.
///
///   HugginsRoy — power-mean family (sum w^beta)^(1/(1-beta)); the exponential
///                of the Renyi entropy. Known as Hill numbers in ecology.
///   Tsallis    — affine rescaling of the Tsallis entropy into [1, N].
///   LpDistance — reciprocal scaled Lp distance to the uniform vector.
///   Plus       — count of entries >= 1/N.
///   Q          — Plus corrected with the mass of the entries below 1/N.
///   Gini       — N minus N times the Gini inequality coefficient.
///   Golosov    — effective-number-of-parties index.
///   Env        — cumulative-curve form; identical to Gini.
enum class EssFamily { HugginsRoy, Tsallis, LpDistance, Plus, Q, Gini, Golosov, Env };

/// A formula family plus its real parameter (beta for HugginsRoy, alpha for
/// Tsallis, p for LpDistance; stored as 0 for the parameterless families).
struct EssMethod {
  EssFamily family = EssFamily::HugginsRoy;
  double parameter = 0.0;

  bool operator==(const EssMethod&) const noexcept = default;
};

/// Parses a method specifier: hr:<beta|inf>, ts:<alpha>, lp:<p>, plus, q,
/// gini, env, gol. Throws InvalidParameter on unknown names or parameters
/// outside the family's admissible range.
EssMethod parse_ess_method(std::string_view spec);

/// Inverse of parse_ess_method (round-trips).
std::string format_ess_method(const EssMethod& method);

/// An effective sample count in [1, N] together with its rate value/N.
struct EssValue {
  double value = 0.0;
  double rate = 0.0;
};

/// Huggins-Roy family ESS-H^(beta) = (sum_n w_n^beta)^(1/(1-beta)), beta >= 0,
/// evaluated in log space over the strictly positive entries. Limit branches
/// are selected by exact parameter comparison only (no switching near the
/// limits):
///   beta = 0    ->  N - N_Z, the count of nonzero entries
///   beta = 1    ->  exp(-sum w log w), the perplexity
///   beta = inf  ->  1 / max w
EssValue ess_huggins_roy(const WeightVector& w, double beta);

/// Renyi entropy (nats): (1/(1-beta)) log sum w^beta for beta > 0; Shannon
/// entropy at beta = 1; -log max w at beta = inf.
/// exp(renyi_entropy(w, beta)) == ess_huggins_roy(w, beta).value.
double renyi_entropy(const WeightVector& w, double beta);

/// Tsallis entropy (1/(alpha-1))(1 - sum w^alpha), alpha > 0; Shannon at
/// alpha = 1.
double tsallis_entropy(const WeightVector& w, double alpha);

/// Tsallis-entropy ESS: affine map of tsallis_entropy onto [1, N], equal to N
/// at uniform and 1 at vertices. At N = 1 the scaling constant is 0/0; returns
/// 1, the only point of the 1-simplex. At alpha = 2 this is
/// N * gini_impurity(w) + 1.
EssValue ess_tsallis(const WeightVector& w, double alpha);

/// Gini impurity (Gini-Simpson index): 1 - sum w^2, the probability that two
/// independent draws from the pmf differ.
double gini_impurity(const WeightVector& w);

/// q-exponential: (1 + (1-alpha) t)^(1/(1-alpha)) for alpha != 1, exp(t) at
/// alpha = 1. Throws DomainError when 1 + (1-alpha) t < 0.
/// q_exponential(tsallis_entropy(w, a), a) == ess_huggins_roy(w, a).value.
double q_exponential(double t, double alpha);

/// Lp-distance family ESS-D^(p) = 1/(alpha_p ||w - uniform||_p + 1/N) with
/// alpha_p chosen so vertices map to 1. Proper but not stable.
EssValue ess_lp_distance(const WeightVector& w, double p);

/// N+ = #{w_n >= 1/N}, as an integer-valued EssValue.
EssValue ess_plus(const WeightVector& w);

/// N+ + N*gamma where gamma is the total mass of entries strictly below 1/N.
EssValue ess_q(const WeightVector& w);

/// Gini-coefficient ESS: -2 sum_n n*w_(n) + 1 + 2N over the ascending sort.
EssValue ess_gini(const WeightVector& w);

/// Cumulative-sum form 1 + 2 sum_{k<N} sum_{i<=k} w_(i); equals ess_gini.
EssValue ess_env(const WeightVector& w);

/// Golosov effective-number index: sum_n w_n / (w_n + max^2 - w_n^2).
/// Zero entries contribute 0.
EssValue ess_golosov(const WeightVector& w);

/// Concentration 1/ESS-H^(beta) in [1/N, 1]; at beta = 2 this is the
/// Herfindahl-Hirschman index sum w^2.
double concentration(const WeightVector& w, double beta);

/// Variance form 1/(1/N + N sigma^2) with sigma^2 the population variance of
/// the entries; algebraically identical to ess_huggins_roy(w, 2).
EssValue ess_variance_form(const WeightVector& w);

/// Dispatches on method.family (HugginsRoy uses parameter as beta, etc.).
EssValue evaluate(const EssMethod& method, const WeightVector& w);

}  // namespace esskit

#endif  // ESSKIT_METRICS_HPP
