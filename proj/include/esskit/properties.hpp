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

#ifndef ESSKIT_PROPERTIES_HPP
#define ESSKIT_PROPERTIES_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "esskit/metrics.hpp"
#include "esskit/rng.hpp"
#include "esskit/simplex.hpp"

namespace esskit {

/// Verdict of one empirical condition check. A fail always carries a
/// reproducible counterexample (for the stability check, also the replication
/// factor and both sides of the violated identity).
struct CheckResult {
  bool passed = true;
  std::vector<double> counterexample;  // empty when passed
  std::size_t replication_factor = 0;  // stability failures only
  double lhs = 0.0;
  double rhs = 0.0;
  std::string note;
};

struct ExtremesResult {
  CheckResult maximum;  // f(uniform) == N, and no probe above
  CheckResult minimum;  // f(vertex) == 1 at every vertex
};

/// Condition pattern -> class. NotAGEss flags a symmetry/extreme failure
/// (the function is not even a discrepancy measure).
enum class GEssClass { NotAGEss, Degenerate, Proper, DegenerateStable, ProperStable };

std::string_view to_string(GEssClass c);

/// Full evidence for one method: per-condition verdicts and the resulting
/// class. Deterministic given (method, n, trials, seed). Empirical passes are
/// evidence, not proof — the notes say "no counterexample found in T trials".
struct AxiomReport {
  EssMethod method;
  std::size_t n = 0;
  CheckResult c1_symmetry;
  CheckResult c2_maximum;
  CheckResult c3_minimum;
  CheckResult c4_unicity;
  CheckResult c5_stability;
  GEssClass g_ess_class = GEssClass::NotAGEss;
  int trials_used = 0;
  std::uint64_t seed = 0;
};

/// Any simplex -> [1, N] candidate; lets the checkers run against planted
/// violations in tests, not only the built-in families.
using GEssFunction = std::function<double(const WeightVector&)>;

/// Uniform sampling on the simplex via normalized i.i.d. Exp(1) draws. When
/// `mix_zero_probes` is set, a random proper subset of entries is forced to
/// exactly 0 with probability 0.3 (several degeneracies only show with exact
/// zeros).
WeightVector sample_simplex_point(SplitMix64& rng, std::size_t n,
                                  bool mix_zero_probes);

/// C1: |f(w) - f(permuted w)| <= 1e-9 * n over random points/permutations.
CheckResult check_symmetry(const GEssFunction& f, std::size_t n, int trials,
                           std::uint64_t seed);
CheckResult check_symmetry(const EssMethod& method, std::size_t n, int trials,
                           std::uint64_t seed);

/// C2 and C3: f(uniform) == n and f(vertex_j) == 1 for all j, within 1e-9 * n.
ExtremesResult check_extremes(const GEssFunction& f, std::size_t n);
ExtremesResult check_extremes(const EssMethod& method, std::size_t n);

/// C4: no interior point (never within 1e-6 of uniform or a vertex in L-inf)
/// may evaluate to >= n - 1e-6 or <= 1 + 1e-6. Random trials plus structured
/// probes with one dominant entry and exact zeros. The note records which
/// side (max/min) a violation hit.
CheckResult check_unicity(const GEssFunction& f, std::size_t n, int trials,
                          std::uint64_t seed);
CheckResult check_unicity(const EssMethod& method, std::size_t n, int trials,
                          std::uint64_t seed);

/// C5: |f_n(w) - (1/m) f_{mn}(replicate(w, m))| <= 1e-8 * n for random w and
/// every m in m_values.
CheckResult check_stability(const GEssFunction& f, std::size_t n,
                            const std::vector<std::size_t>& m_values,
                            int trials, std::uint64_t seed);
CheckResult check_stability(const EssMethod& method, std::size_t n,
                            const std::vector<std::size_t>& m_values,
                            int trials, std::uint64_t seed);

/// Runs all checkers (stability with m in {2, 3, 5}) and maps the verdict
/// pattern to a class.
AxiomReport classify(const EssMethod& method, std::size_t n, int trials,
                     std::uint64_t seed);
AxiomReport classify(const GEssFunction& f, const EssMethod& label,
                     std::size_t n, int trials, std::uint64_t seed);

}  // namespace esskit

#endif  // ESSKIT_PROPERTIES_HPP
