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

#include "esskit/metrics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <string>

#include "esskit/errors.hpp"
#include "esskit/numeric.hpp"

namespace esskit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

EssValue make_value(double value, std::size_t n) {
  return EssValue{value, value / static_cast<double>(n)};
}

double require_positive_param(double v, const char* name) {
  if (std::isnan(v) || v <= 0.0) {
    throw InvalidParameter(std::string(name) + " must be > 0");
  }
  return v;
}

/// log sum_n w_n^beta over strictly positive entries, via logsumexp.
/// Raw powers overflow/underflow for beta around 50 at N = 1000.
double log_power_sum(const WeightVector& w, double beta) {
  double max_log = -kInf;
  for (double e : w) {
    if (e > 0.0) max_log = std::max(max_log, beta * std::log(e));
  }
  CompensatedSum acc;
  for (double e : w) {
    if (e > 0.0) acc.add(std::exp(beta * std::log(e) - max_log));
  }
  return max_log + std::log(acc.value());
}

double shannon_entropy(const WeightVector& w) {
  CompensatedSum acc;  // 0*log 0 := 0
  for (double e : w) {
    if (e > 0.0) acc.add(-e * std::log(e));
  }
  return acc.value();
}

double max_entry(const WeightVector& w) {
  return *std::max_element(w.begin(), w.end());
}

std::size_t nonzero_count(const WeightVector& w) {
  std::size_t count = 0;
  for (double e : w) count += (e != 0.0);
  return count;
}

}  // namespace

EssValue ess_huggins_roy(const WeightVector& w, double beta) {
  if (std::isnan(beta) || beta < 0.0) {
    throw InvalidParameter("Huggins-Roy beta must be in [0, inf]");
  }
  const std::size_t n = w.size();
  if (beta == 0.0) {
    return make_value(static_cast<double>(nonzero_count(w)), n);
  }
  if (beta == 1.0) {
    return make_value(std::exp(shannon_entropy(w)), n);
  }
  if (beta == kInf) {
    return make_value(1.0 / max_entry(w), n);
  }
  return make_value(std::exp(log_power_sum(w, beta) / (1.0 - beta)), n);
}

double renyi_entropy(const WeightVector& w, double beta) {
  if (std::isnan(beta) || beta <= 0.0) {
    throw InvalidParameter("Renyi order beta must be > 0");
  }
  if (beta == 1.0) return shannon_entropy(w);
  if (beta == kInf) return -std::log(max_entry(w));
  return log_power_sum(w, beta) / (1.0 - beta);
}

double tsallis_entropy(const WeightVector& w, double alpha) {
  require_positive_param(alpha, "Tsallis alpha");
  if (alpha == kInf) throw InvalidParameter("Tsallis alpha must be finite");
  if (alpha == 1.0) return shannon_entropy(w);
  const double power_sum = std::exp(log_power_sum(w, alpha));
  return (1.0 - power_sum) / (alpha - 1.0);
}

EssValue ess_tsallis(const WeightVector& w, double alpha) {
  require_positive_param(alpha, "Tsallis alpha");
  if (alpha == kInf) throw InvalidParameter("Tsallis alpha must be finite");
  const std::size_t n = w.size();
  if (n == 1) return make_value(1.0, 1);  // scaling constant is 0/0 here
  if (alpha == 1.0) {
    // Continuity limit: scale -> (N-1)/log N, entropy -> Shannon.
    const double nd = static_cast<double>(n);
    const double scale = (nd - 1.0) / std::log(nd);
    return make_value(scale * shannon_entropy(w) + 1.0, n);
  }
  const double nd = static_cast<double>(n);
  const double scale =
      (alpha - 1.0) * (nd - 1.0) / (1.0 - std::pow(nd, 1.0 - alpha));
  return make_value(scale * tsallis_entropy(w, alpha) + 1.0, n);
}

double gini_impurity(const WeightVector& w) {
  CompensatedSum acc;
  for (double e : w) acc.add(e * e);
  return 1.0 - acc.value();
}

double q_exponential(double t, double alpha) {
  if (alpha == 1.0) return std::exp(t);
  const double base = 1.0 + (1.0 - alpha) * t;
  if (base < 0.0) {
    throw DomainError("q-exponential undefined: 1 + (1-alpha)t = " +
                      std::to_string(base) + " < 0");
  }
  return std::pow(base, 1.0 / (1.0 - alpha));
}

EssValue ess_lp_distance(const WeightVector& w, double p) {
  require_positive_param(p, "Lp exponent p");
  const std::size_t n = w.size();
  const double nd = static_cast<double>(n);
  const double mean = 1.0 / nd;
  CompensatedSum acc;
  for (double e : w) acc.add(std::pow(std::abs(e - mean), p));
  const double distance = std::pow(acc.value(), 1.0 / p);
  const double alpha_p =
      (nd - 1.0) /
      (nd * std::pow((nd - 1.0 + std::pow(nd - 1.0, p)) / std::pow(nd, p),
                     1.0 / p));
  return make_value(1.0 / (alpha_p * distance + mean), n);
}

EssValue ess_plus(const WeightVector& w) {
  const std::size_t n = w.size();
  const double threshold = 1.0 / static_cast<double>(n);
  std::size_t count = 0;
  for (double e : w) count += (e >= threshold);
  return make_value(static_cast<double>(count), n);
}

EssValue ess_q(const WeightVector& w) {
  const std::size_t n = w.size();
  const double nd = static_cast<double>(n);
  const double threshold = 1.0 / nd;
  std::size_t n_plus = 0;
  CompensatedSum below;  // gamma: mass strictly below 1/N
  for (double e : w) {
    if (e >= threshold) {
      ++n_plus;
    } else {
      below.add(e);
    }
  }
  return make_value(static_cast<double>(n_plus) + nd * below.value(), n);
}

EssValue ess_gini(const WeightVector& w) {
  const WeightVector sorted = sort_ascending(w);
  const std::size_t n = sorted.size();
  CompensatedSum rank_sum;  // s(w) = sum_n n * w_(n)
  for (std::size_t i = 0; i < n; ++i) {
    rank_sum.add(static_cast<double>(i + 1) * sorted[i]);
  }
  return make_value(-2.0 * rank_sum.value() + 1.0 + 2.0 * static_cast<double>(n),
                    n);
}

EssValue ess_env(const WeightVector& w) {
  const WeightVector sorted = sort_ascending(w);
  const std::size_t n = sorted.size();
  CompensatedSum cumulative;
  CompensatedSum total;  // sum_{k=1}^{N-1} V(k), V(k) = sum_{i<=k} w_(i)
  for (std::size_t k = 1; k < n; ++k) {
    cumulative.add(sorted[k - 1]);
    total.add(cumulative.value());
  }
  return make_value(1.0 + 2.0 * total.value(), n);
}

EssValue ess_golosov(const WeightVector& w) {
  const std::size_t n = w.size();
  const double max_sq = max_entry(w) * max_entry(w);
  if (max_sq == 0.0) {
    throw InvalidWeight("Golosov index requires a positive entry");
  }
  CompensatedSum acc;
  for (double e : w) {
    if (e > 0.0) acc.add(e / (e + max_sq - e * e));
  }
  return make_value(acc.value(), n);
}

double concentration(const WeightVector& w, double beta) {
  require_positive_param(beta, "concentration order beta");
  return 1.0 / ess_huggins_roy(w, beta).value;
}

EssValue ess_variance_form(const WeightVector& w) {
  const std::size_t n = w.size();
  const double nd = static_cast<double>(n);
  const double mean = 1.0 / nd;
  CompensatedSum acc;
  for (double e : w) acc.add((e - mean) * (e - mean));
  const double variance = acc.value() / nd;
  return make_value(1.0 / (mean + nd * variance), n);
}

EssValue evaluate(const EssMethod& method, const WeightVector& w) {
  switch (method.family) {
    case EssFamily::HugginsRoy:
      return ess_huggins_roy(w, method.parameter);
    case EssFamily::Tsallis:
      return ess_tsallis(w, method.parameter);
    case EssFamily::LpDistance:
      return ess_lp_distance(w, method.parameter);
    case EssFamily::Plus:
      return ess_plus(w);
    case EssFamily::Q:
      return ess_q(w);
    case EssFamily::Gini:
      return ess_gini(w);
    case EssFamily::Golosov:
      return ess_golosov(w);
    case EssFamily::Env:
      return ess_env(w);
  }
  throw InvalidParameter("unknown ESS family");
}

EssMethod parse_ess_method(std::string_view spec) {
  const auto colon = spec.find(':');
  const std::string_view name = spec.substr(0, colon);
  std::string_view param_text;
  if (colon != std::string_view::npos) param_text = spec.substr(colon + 1);

  const auto parse_param = [&](const char* what) {
    if (param_text.empty()) {
      throw InvalidParameter("method '" + std::string(name) + "' requires a " +
                             what + " parameter, e.g. " + std::string(name) +
                             ":2");
    }
    if (param_text == "inf") return kInf;
    double value = 0.0;
    const auto [ptr, ec] =
        std::from_chars(param_text.data(), param_text.data() + param_text.size(), value);
    if (ec != std::errc{} || ptr != param_text.data() + param_text.size()) {
      throw InvalidParameter("cannot parse parameter '" +
                             std::string(param_text) + "'");
    }
    return value;
  };
  const auto no_param = [&](EssFamily family) {
    if (colon != std::string_view::npos) {
      throw InvalidParameter("method '" + std::string(name) +
                             "' takes no parameter");
    }
    return EssMethod{family, 0.0};
  };

  if (name == "hr") {
    const double beta = parse_param("beta");
    if (std::isnan(beta) || beta < 0.0) {
      throw InvalidParameter("hr beta must be in [0, inf]");
    }
    return EssMethod{EssFamily::HugginsRoy, beta};
  }
  if (name == "ts") {
    const double alpha = parse_param("alpha");
    if (!(alpha > 0.0) || alpha == kInf) {
      throw InvalidParameter("ts alpha must be finite and > 0");
    }
    return EssMethod{EssFamily::Tsallis, alpha};
  }
  if (name == "lp") {
    const double p = parse_param("p");
    if (!(p > 0.0) || p == kInf) {
      throw InvalidParameter("lp exponent must be finite and > 0");
    }
    return EssMethod{EssFamily::LpDistance, p};
  }
  if (name == "plus") return no_param(EssFamily::Plus);
  if (name == "q") return no_param(EssFamily::Q);
  if (name == "gini") return no_param(EssFamily::Gini);
  if (name == "env") return no_param(EssFamily::Env);
  if (name == "gol") return no_param(EssFamily::Golosov);
  throw InvalidParameter("unknown method specifier '" + std::string(spec) +
                         "'");
}

std::string format_ess_method(const EssMethod& method) {
  const auto format_param = [](double v) {
    if (v == kInf) return std::string("inf");
    char buffer[32];
    const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), v);
    (void)ec;
    return std::string(buffer, ptr);
  };
  switch (method.family) {
    case EssFamily::HugginsRoy:
      return "hr:" + format_param(method.parameter);
    case EssFamily::Tsallis:
      return "ts:" + format_param(method.parameter);
    case EssFamily::LpDistance:
      return "lp:" + format_param(method.parameter);
    case EssFamily::Plus:
      return "plus";
    case EssFamily::Q:
      return "q";
    case EssFamily::Gini:
      return "gini";
    case EssFamily::Golosov:
      return "gol";
    case EssFamily::Env:
      return "env";
  }
  return "?";
}

}  // namespace esskit
