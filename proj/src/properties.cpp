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

#include "esskit/properties.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

namespace esskit {

namespace {

// Checker ids, mixed into the sub-seeds so the conditions draw disjoint
// streams from one user seed.
enum : std::uint64_t { kSymmetryKey = 1, kUnicityKey = 2, kStabilityKey = 3 };

GEssFunction method_function(const EssMethod& method) {
  return [method](const WeightVector& w) { return evaluate(method, w).value; };
}

std::string trials_note(int trials) {
  return "no counterexample found in " + std::to_string(trials) + " trials";
}

bool near_uniform_or_vertex(const WeightVector& w) {
  const std::size_t n = w.size();
  const double mean = 1.0 / static_cast<double>(n);
  double max_dev_uniform = 0.0;
  for (double e : w) max_dev_uniform = std::max(max_dev_uniform, std::abs(e - mean));
  if (max_dev_uniform < 1e-6) return true;
  for (std::size_t j = 0; j < n; ++j) {
    double max_dev = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      max_dev = std::max(max_dev, std::abs(w[i] - (i == j ? 1.0 : 0.0)));
    }
    if (max_dev < 1e-6) return true;
  }
  return false;
}

// One dominant entry plus exact zeros; catches formulas that hit an extreme
// away from uniform/vertices ([0.8, 0, 0.2]-style, and a dominant entry just
// above the 1/n threshold).
std::vector<WeightVector> structured_probes(std::size_t n) {
  std::vector<WeightVector> probes;
  if (n < 2) return probes;
  {
    std::vector<double> v(n, 0.0);
    v[0] = 0.8;
    v[std::min<std::size_t>(2, n - 1)] = 0.2;
    probes.push_back(WeightVector::from_normalized(std::move(v)));
  }
  {
    std::vector<double> v(n, 0.0);
    const double small = 1.0 / (2.0 * static_cast<double>(n));
    v[0] = 1.0 - small;
    v[n - 1] = small;
    probes.push_back(WeightVector::from_normalized(std::move(v)));
  }
  {
    // Interior, all-positive, away from uniform: flags formulas whose maximum
    // is reached at every zero-free vector.
    std::vector<double> v(n);
    const double mean = 1.0 / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
      v[i] = mean * (i % 2 == 0 ? 1.2 : 0.8);
    }
    if (n % 2 == 1) v[n - 1] = mean;
    probes.push_back(normalize(std::span<const double>(v)));
  }
  return probes;
}

}  // namespace

std::string_view to_string(GEssClass c) {
  switch (c) {
    case GEssClass::NotAGEss:
      return "NotAGEss";
    case GEssClass::Degenerate:
      return "Degenerate";
    case GEssClass::Proper:
      return "Proper";
    case GEssClass::DegenerateStable:
      return "DegenerateStable";
    case GEssClass::ProperStable:
      return "ProperStable";
  }
  return "?";
}

WeightVector sample_simplex_point(SplitMix64& rng, std::size_t n,
                                  bool mix_zero_probes) {
  std::vector<double> draws(n);
  for (auto& d : draws) d = rng.next_exponential();
  if (mix_zero_probes && n >= 2 && rng.next_uniform01() < 0.3) {
    // Zero a random nonempty proper subset of entries.
    const std::size_t zeros = 1 + rng.next_below(n - 1);
    std::vector<std::size_t> indices(n);
    std::iota(indices.begin(), indices.end(), std::size_t{0});
    for (std::size_t i = 0; i < zeros; ++i) {
      const std::size_t j = i + rng.next_below(n - i);
      std::swap(indices[i], indices[j]);
      draws[indices[i]] = 0.0;
    }
  }
  return normalize(std::span<const double>(draws));
}

CheckResult check_symmetry(const GEssFunction& f, std::size_t n, int trials,
                           std::uint64_t seed) {
  const double tolerance = 1e-9 * static_cast<double>(n);
  for (int trial = 0; trial < trials; ++trial) {
    SplitMix64 rng = SplitMix64::derive(
        seed, {kSymmetryKey, static_cast<std::uint64_t>(trial)});
    const WeightVector w = sample_simplex_point(rng, n, true);
    std::vector<double> permuted = w.entries();
    for (std::size_t i = 0; i + 1 < n; ++i) {  // Fisher-Yates
      const std::size_t j = i + rng.next_below(n - i);
      std::swap(permuted[i], permuted[j]);
    }
    const double lhs = f(w);
    const double rhs = f(WeightVector::from_normalized(std::move(permuted)));
    if (std::abs(lhs - rhs) > tolerance) {
      return CheckResult{false, w.entries(), 0, lhs, rhs,
                         "permutation changed the value at trial " +
                             std::to_string(trial)};
    }
  }
  return CheckResult{true, {}, 0, 0.0, 0.0, trials_note(trials)};
}

ExtremesResult check_extremes(const GEssFunction& f, std::size_t n) {
  const double nd = static_cast<double>(n);
  const double tolerance = 1e-9 * nd;
  ExtremesResult result;
  const WeightVector center = uniform(n);
  const double at_uniform = f(center);
  if (std::abs(at_uniform - nd) > tolerance) {
    result.maximum = CheckResult{false, center.entries(), 0, at_uniform, nd,
                                 "f(uniform) != n"};
  } else {
    result.maximum = CheckResult{true, {}, 0, at_uniform, nd, "f(uniform) = n"};
  }
  result.minimum = CheckResult{true, {}, 0, 1.0, 1.0, "f(vertex) = 1 at all vertices"};
  for (std::size_t j = 1; j <= n; ++j) {
    const WeightVector v = vertex(n, j);
    const double at_vertex = f(v);
    if (std::abs(at_vertex - 1.0) > tolerance) {
      result.minimum = CheckResult{false, v.entries(), 0, at_vertex, 1.0,
                                   "f(vertex " + std::to_string(j) + ") != 1"};
      break;
    }
  }
  return result;
}

CheckResult check_unicity(const GEssFunction& f, std::size_t n, int trials,
                          std::uint64_t seed) {
  const double nd = static_cast<double>(n);
  const auto probe = [&](const WeightVector& w) -> CheckResult {
    const double value = f(w);
    if (value >= nd - 1e-6) {
      return CheckResult{false, w.entries(), 0, value, nd,
                         "maximum reached away from uniform (max side)"};
    }
    if (value <= 1.0 + 1e-6) {
      return CheckResult{false, w.entries(), 0, value, 1.0,
                         "minimum reached away from vertices (min side)"};
    }
    return CheckResult{};
  };

  for (const WeightVector& w : structured_probes(n)) {
    if (near_uniform_or_vertex(w)) continue;
    CheckResult r = probe(w);
    if (!r.passed) return r;
  }
  for (int trial = 0; trial < trials; ++trial) {
    SplitMix64 rng = SplitMix64::derive(
        seed, {kUnicityKey, static_cast<std::uint64_t>(trial)});
    WeightVector w = sample_simplex_point(rng, n, true);
    if (near_uniform_or_vertex(w)) continue;
    CheckResult r = probe(w);
    if (!r.passed) {
      r.note += " at trial " + std::to_string(trial);
      return r;
    }
  }
  return CheckResult{true, {}, 0, 0.0, 0.0, trials_note(trials)};
}

CheckResult check_stability(const GEssFunction& f, std::size_t n,
                            const std::vector<std::size_t>& m_values,
                            int trials, std::uint64_t seed) {
  const double tolerance = 1e-8 * static_cast<double>(n);
  for (int trial = 0; trial < trials; ++trial) {
    SplitMix64 rng = SplitMix64::derive(
        seed, {kStabilityKey, static_cast<std::uint64_t>(trial)});
    const WeightVector w = sample_simplex_point(rng, n, true);
    const double base = f(w);
    for (std::size_t m : m_values) {
      const double replicated = f(replicate(w, m)) / static_cast<double>(m);
      if (std::abs(base - replicated) > tolerance) {
        return CheckResult{false, w.entries(), m, base, replicated,
                           "rate changed under replication at trial " +
                               std::to_string(trial)};
      }
    }
  }
  return CheckResult{true, {}, 0, 0.0, 0.0, trials_note(trials)};
}

CheckResult check_symmetry(const EssMethod& method, std::size_t n, int trials,
                           std::uint64_t seed) {
  return check_symmetry(method_function(method), n, trials, seed);
}

ExtremesResult check_extremes(const EssMethod& method, std::size_t n) {
  return check_extremes(method_function(method), n);
}

CheckResult check_unicity(const EssMethod& method, std::size_t n, int trials,
                          std::uint64_t seed) {
  return check_unicity(method_function(method), n, trials, seed);
}

CheckResult check_stability(const EssMethod& method, std::size_t n,
                            const std::vector<std::size_t>& m_values,
                            int trials, std::uint64_t seed) {
  return check_stability(method_function(method), n, m_values, trials, seed);
}

AxiomReport classify(const GEssFunction& f, const EssMethod& label,
                     std::size_t n, int trials, std::uint64_t seed) {
  AxiomReport report;
  report.method = label;
  report.n = n;
  report.trials_used = trials;
  report.seed = seed;
  report.c1_symmetry = check_symmetry(f, n, trials, seed);
  const ExtremesResult extremes = check_extremes(f, n);
  report.c2_maximum = extremes.maximum;
  report.c3_minimum = extremes.minimum;
  report.c4_unicity = check_unicity(f, n, trials, seed);
  report.c5_stability = check_stability(f, n, {2, 3, 5}, trials, seed);

  if (!report.c1_symmetry.passed || !report.c2_maximum.passed ||
      !report.c3_minimum.passed) {
    report.g_ess_class = GEssClass::NotAGEss;
  } else if (report.c4_unicity.passed && report.c5_stability.passed) {
    report.g_ess_class = GEssClass::ProperStable;
  } else if (report.c4_unicity.passed) {
    report.g_ess_class = GEssClass::Proper;
  } else if (report.c5_stability.passed) {
    report.g_ess_class = GEssClass::DegenerateStable;
  } else {
    report.g_ess_class = GEssClass::Degenerate;
  }
  return report;
}

AxiomReport classify(const EssMethod& method, std::size_t n, int trials,
                     std::uint64_t seed) {
  return classify(method_function(method), method, n, trials, seed);
}

}  // namespace esskit
