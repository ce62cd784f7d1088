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

#include "esskit/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <limits>
#include <string>
#include <thread>
#include <vector>

#include "esskit/errors.hpp"
#include "esskit/numeric.hpp"

namespace esskit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Stream keys: every (operation, grid point, replication) tuple draws from
// its own substream, so results do not depend on scheduling.
enum : std::uint64_t { kSweepKey = 10, kTeoKey = 11, kCollisionKey = 12 };

// Ladder terms below this are dead for every remaining beta; pruning them
// also keeps the multiply chain out of denormal range.
constexpr double kLadderCutoff = 1e-290;

struct ReplicationCore {
  std::vector<double> samples;
  std::vector<double> shifted_log_weights;  // log w - max log w
  std::vector<double> weights;              // normalized
  double z_total = 0.0;                     // sum exp(shifted log weights)
  double is_estimate = 0.0;
  double shannon = 0.0;
  std::size_t nonzero = 0;
};

void compute_replication(const GaussianPair& pair, int n, SplitMix64& rng,
                         ReplicationCore& core) {
  const double mu = pair.proposal_mean;
  const double sd = pair.proposal_sd;
  core.samples.resize(n);
  for (int i = 0; i < n; i += 2) {
    const auto [z0, z1] = rng.next_normal_pair();
    core.samples[i] = mu + sd * z0;
    if (i + 1 < n) core.samples[i + 1] = mu + sd * z1;
  }

  core.shifted_log_weights.resize(n);
  const double log_sd = std::log(sd);
  double max_log = -kInf;
  for (int i = 0; i < n; ++i) {
    const double x = core.samples[i];
    const double standardized = (x - mu) / sd;
    const double log_w = -0.5 * x * x + 0.5 * standardized * standardized + log_sd;
    core.shifted_log_weights[i] = log_w;
    max_log = std::max(max_log, log_w);
  }
  for (double& lw : core.shifted_log_weights) lw -= max_log;

  core.weights.resize(n);
  CompensatedSum z_acc;
  for (int i = 0; i < n; ++i) {
    core.weights[i] = std::exp(core.shifted_log_weights[i]);
    z_acc.add(core.weights[i]);
  }
  core.z_total = z_acc.value();
  if (core.z_total == 0.0) {
    throw AllZeroWeights("all importance weights underflowed to zero");
  }

  CompensatedSum estimate;
  CompensatedSum entropy;
  core.nonzero = 0;
  const double log_z = std::log(core.z_total);
  for (int i = 0; i < n; ++i) {
    core.weights[i] /= core.z_total;
    const double w = core.weights[i];
    estimate.add(w * core.samples[i]);
    if (w > 0.0) {
      ++core.nonzero;
      entropy.add(-w * (core.shifted_log_weights[i] - log_z));
    }
  }
  core.is_estimate = estimate.value();
  core.shannon = entropy.value();
}

double spread(std::span<const double> values, bool about_zero) {
  const std::size_t r = values.size();
  CompensatedSum acc;
  if (about_zero) {
    for (double v : values) acc.add(v * v);
    return acc.value() / static_cast<double>(r);
  }
  for (double v : values) acc.add(v);
  const double mean = acc.value() / static_cast<double>(r);
  CompensatedSum sq;
  for (double v : values) sq.add((v - mean) * (v - mean));
  return sq.value() / static_cast<double>(r - 1);
}

bool uniformly_spaced(const std::vector<double>& grid, double& step) {
  if (grid.size() < 2) return false;
  step = grid[1] - grid[0];
  for (std::size_t k = 2; k < grid.size(); ++k) {
    if (std::abs((grid[k] - grid[k - 1]) - step) > 1e-12) return false;
  }
  return step > 0.0;
}

/// Scores every finite beta on one replication. For a uniformly spaced grid
/// the power sums S_beta = sum_i exp(beta * d_i) are advanced with one
/// multiply per term and step (s_i *= exp(h * d_i)) instead of a fresh
/// logsumexp per beta; terms are kept sorted descending so the dead tail can
/// be dropped as beta grows.
class BetaScorer {
 public:
  BetaScorer(const std::vector<double>& beta_grid, int n)
      : beta_grid_(beta_grid), ladder_(false), step_(0.0) {
    ladder_ = uniformly_spaced(beta_grid_, step_);
    sorted_.reserve(n);
    state_.reserve(n);
    multiplier_.reserve(n);
  }

  // out[k] += ESS-H^(beta_k)(weights) / n for every finite grid beta.
  void accumulate(const ReplicationCore& core, std::vector<double>& out) {
    const std::size_t n = core.weights.size();
    const double nd = static_cast<double>(n);
    const double log_max_weight = -std::log(core.z_total);  // C = log max w
    const double perplexity = std::exp(core.shannon);

    sorted_.assign(core.shifted_log_weights.begin(),
                   core.shifted_log_weights.end());
    std::sort(sorted_.begin(), sorted_.end(), std::greater<double>());

    const auto ess_from_log_power_sum = [&](double beta, double log_s) {
      return std::exp((beta * log_max_weight + log_s) / (1.0 - beta));
    };

    if (ladder_) {
      state_.resize(n);
      multiplier_.resize(n);
      const double beta0 = beta_grid_.front();
      for (std::size_t i = 0; i < n; ++i) {
        state_[i] = std::exp(beta0 * sorted_[i]);
        multiplier_[i] = std::exp(step_ * sorted_[i]);
      }
      std::size_t len = n;
      while (len > 0 && state_[len - 1] < kLadderCutoff) --len;
      for (std::size_t k = 0; k < beta_grid_.size(); ++k) {
        const double beta = beta_grid_[k];
        double power_sum = 0.0;
        for (std::size_t i = 0; i < len; ++i) power_sum += state_[i];
        double value;
        if (beta == 0.0) {
          value = static_cast<double>(core.nonzero);
        } else if (std::abs(beta - 1.0) <= 1e-9) {
          value = perplexity;
        } else {
          value = ess_from_log_power_sum(beta, std::log(power_sum));
        }
        out[k] += value / nd;
        for (std::size_t i = 0; i < len; ++i) state_[i] *= multiplier_[i];
        while (len > 0 && state_[len - 1] < kLadderCutoff) --len;
      }
      return;
    }

    for (std::size_t k = 0; k < beta_grid_.size(); ++k) {
      const double beta = beta_grid_[k];
      double value;
      if (beta == 0.0) {
        value = static_cast<double>(core.nonzero);
      } else if (std::abs(beta - 1.0) <= 1e-9) {
        value = perplexity;
      } else {
        CompensatedSum acc;
        for (double d : sorted_) {
          const double term = std::exp(beta * d);
          if (term < kLadderCutoff) break;  // sorted descending
          acc.add(term);
        }
        value = ess_from_log_power_sum(beta, std::log(acc.value()));
      }
      out[k] += value / nd;
    }
  }

 private:
  const std::vector<double>& beta_grid_;
  bool ladder_;
  double step_;
  std::vector<double> sorted_;
  std::vector<double> state_;
  std::vector<double> multiplier_;
};

void validate_sweep_config(const SweepConfig& config) {
  if (config.grid.empty()) throw InvalidParameter("sweep grid is empty");
  if (config.n_samples < 2) throw InvalidParameter("n_samples must be >= 2");
  if (config.replications < 2) throw InvalidParameter("replications must be >= 2");
  if (config.beta_grid.empty()) throw InvalidParameter("beta grid is empty");
  for (double b : config.beta_grid) {
    if (std::isnan(b) || b < 0.0) {
      throw InvalidParameter("beta grid values must be >= 0");
    }
  }
}

}  // namespace

std::vector<double> SweepConfig::range(double start, double stop, double step) {
  if (step <= 0.0) throw InvalidParameter("grid step must be > 0");
  const auto count =
      static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
  std::vector<double> values(count);
  for (std::size_t k = 0; k < count; ++k) values[k] = start + static_cast<double>(k) * step;
  return values;
}

IsReplication run_is_replication(const GaussianPair& pair, int n,
                                 SplitMix64& rng) {
  if (n < 2) throw InvalidParameter("replication needs n >= 2 samples");
  if (!(pair.proposal_sd > 0.0)) throw InvalidParameter("proposal sd must be > 0");
  ReplicationCore core;
  compute_replication(pair, n, rng, core);
  return IsReplication{WeightVector::from_normalized(std::move(core.weights)),
                       core.is_estimate};
}

SplitMix64 sweep_replication_stream(std::uint64_t seed, std::size_t grid_index,
                                    int replication) {
  return SplitMix64::derive(seed, {kSweepKey, static_cast<std::uint64_t>(grid_index),
                                   static_cast<std::uint64_t>(replication)});
}

double estimate_theoretical_ess(const GaussianPair& pair, int n, int r,
                                std::uint64_t seed, bool mse_about_zero) {
  if (n < 2) throw InvalidParameter("theoretical ESS needs n >= 2");
  if (r < 2) throw InvalidParameter("theoretical ESS needs r >= 2 replications");
  std::vector<double> estimates(r);
  ReplicationCore core;
  for (int rep = 0; rep < r; ++rep) {
    SplitMix64 rng =
        SplitMix64::derive(seed, {kTeoKey, static_cast<std::uint64_t>(rep)});
    compute_replication(pair, n, rng, core);
    estimates[rep] = core.is_estimate;
  }
  const double var_is = spread(estimates, mse_about_zero);
  if (var_is == 0.0) {
    throw DegenerateVariance("IS estimator variance is zero across replications");
  }
  // N * (1/N) / var = 1 / var.
  return 1.0 / var_is;
}

SweepResult sweep(const SweepConfig& config, SweepParameter vary) {
  validate_sweep_config(config);
  const int n = config.n_samples;
  const int reps = config.replications;
  const std::size_t n_beta = config.beta_grid.size();

  SweepResult result;
  result.vary = vary;
  result.grid = config.grid;
  result.beta_grid = config.beta_grid;
  result.beta_grid.push_back(kInf);
  result.n_samples = n;
  result.replications = reps;
  result.seed = config.seed;
  result.var_mc.assign(config.grid.size(), 1.0 / static_cast<double>(n));

  constexpr int kBlockSize = 64;
  const int n_blocks = (reps + kBlockSize - 1) / kBlockSize;
  const int workers = std::max(1, std::min(thread_count(), n_blocks));

  for (std::size_t g = 0; g < config.grid.size(); ++g) {
    const GaussianPair pair =
        vary == SweepParameter::Mean
            ? GaussianPair{config.grid[g], 1.0}
            : GaussianPair{0.0, config.grid[g]};
    if (!(pair.proposal_sd > 0.0)) {
      throw InvalidParameter("sigma grid values must be > 0");
    }

    // Per-block partial sums, reduced in block order afterwards: the result
    // is identical for any worker count.
    std::vector<std::vector<double>> block_sums(
        n_blocks, std::vector<double>(n_beta + 1, 0.0));
    std::vector<double> estimates(reps);
    std::atomic<int> next_block{0};

    const auto worker = [&]() {
      ReplicationCore core;
      BetaScorer scorer(config.beta_grid, n);
      for (;;) {
        const int block = next_block.fetch_add(1);
        if (block >= n_blocks) break;
        const int rep_begin = block * kBlockSize;
        const int rep_end = std::min(reps, rep_begin + kBlockSize);
        auto& sums = block_sums[block];
        for (int rep = rep_begin; rep < rep_end; ++rep) {
          SplitMix64 rng = sweep_replication_stream(config.seed, g, rep);
          compute_replication(pair, n, rng, core);
          estimates[rep] = core.is_estimate;
          scorer.accumulate(core, sums);
          // ESS-H^(inf) = 1 / max normalized weight.
          const double max_weight =
              *std::max_element(core.weights.begin(), core.weights.end());
          sums[n_beta] += 1.0 / max_weight / static_cast<double>(n);
        }
      }
    };

    if (workers == 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      pool.reserve(workers);
      for (int t = 0; t < workers; ++t) pool.emplace_back(worker);
      for (auto& t : pool) t.join();
    }

    std::vector<double> rates(n_beta + 1, 0.0);
    for (int block = 0; block < n_blocks; ++block) {
      for (std::size_t k = 0; k <= n_beta; ++k) rates[k] += block_sums[block][k];
    }
    for (double& rate : rates) rate /= static_cast<double>(reps);

    const double var_is = spread(estimates, config.center_variance_at_zero);
    if (var_is == 0.0) {
      throw DegenerateVariance("IS estimator variance is zero at grid point " +
                               std::to_string(config.grid[g]));
    }
    result.var_is.push_back(var_is);
    result.ess_teo_rate.push_back(1.0 / (static_cast<double>(n) * var_is));
    result.ess_h_rate.push_back(std::move(rates));
  }
  return result;
}

double optimal_beta(const SweepResult& result) {
  if (result.grid.size() < 2 || result.beta_grid.size() < 2) {
    throw InvalidParameter("optimal beta needs >= 2 grid points and >= 2 betas");
  }
  double best_beta = result.beta_grid.front();
  double best_distance = kInf;
  for (std::size_t k = 0; k < result.beta_grid.size(); ++k) {
    double distance = 0.0;
    for (std::size_t g = 0; g < result.grid.size(); ++g) {
      distance += std::abs(result.ess_h_rate[g][k] - result.ess_teo_rate[g]);
    }
    if (distance < best_distance) {  // ties keep the smaller beta
      best_distance = distance;
      best_beta = result.beta_grid[k];
    }
  }
  return best_beta;
}

ComboFit fit_linear_combo(const SweepResult& result) {
  if (result.grid.size() < 2) {
    throw InvalidParameter("combo fit needs >= 2 grid points");
  }
  std::size_t k2 = result.beta_grid.size();
  std::size_t k_inf = result.beta_grid.size();
  for (std::size_t k = 0; k < result.beta_grid.size(); ++k) {
    if (std::abs(result.beta_grid[k] - 2.0) <= 1e-9) k2 = k;
    if (result.beta_grid[k] == kInf) k_inf = k;
  }
  if (k2 == result.beta_grid.size() || k_inf == result.beta_grid.size()) {
    throw InvalidParameter("combo fit needs beta = 2 and beta = inf columns");
  }

  CompensatedSum aa, ab, bb, ay, by;
  for (std::size_t g = 0; g < result.grid.size(); ++g) {
    const double h2 = result.ess_h_rate[g][k2];
    const double h_inf = result.ess_h_rate[g][k_inf];
    const double teo = result.ess_teo_rate[g];
    aa.add(h2 * h2);
    ab.add(h2 * h_inf);
    bb.add(h_inf * h_inf);
    ay.add(h2 * teo);
    by.add(h_inf * teo);
  }
  const double a = aa.value(), b = ab.value(), c = bb.value();
  const double trace = a + c;
  const double disc = std::sqrt((a - c) * (a - c) + 4.0 * b * b);
  const double eig_min = 0.5 * (trace - disc);
  const double eig_max = 0.5 * (trace + disc);
  if (!(eig_min > 0.0) || eig_max / eig_min > 1e12) {
    throw SingularDesign("ESS-H^(2) and ESS-H^(inf) curves are collinear");
  }
  const double det = a * c - b * b;
  ComboFit fit;
  fit.a1 = (c * ay.value() - b * by.value()) / det;
  fit.a2 = (a * by.value() - b * ay.value()) / det;
  CompensatedSum residual;
  for (std::size_t g = 0; g < result.grid.size(); ++g) {
    const double r = fit.a1 * result.ess_h_rate[g][k2] +
                     fit.a2 * result.ess_h_rate[g][k_inf] -
                     result.ess_teo_rate[g];
    residual.add(r * r);
  }
  fit.residual_l2 = std::sqrt(residual.value());
  return fit;
}

double pair_collision_mean_trials(const WeightVector& w, int r,
                                  std::uint64_t seed) {
  if (r < 1) throw InvalidParameter("collision oracle needs r >= 1 experiments");
  std::vector<double> cumulative(w.size());
  double running = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    running += w[i];
    cumulative[i] = running;
  }
  const double total = cumulative.back();
  const auto draw_index = [&](SplitMix64& rng) {
    const double u = rng.next_uniform01() * total;
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    return static_cast<std::size_t>(
        std::min<std::ptrdiff_t>(it - cumulative.begin(),
                                 static_cast<std::ptrdiff_t>(w.size()) - 1));
  };

  CompensatedSum trials_total;
  for (int e = 0; e < r; ++e) {
    SplitMix64 rng = SplitMix64::derive(
        seed, {kCollisionKey, static_cast<std::uint64_t>(e)});
    long trials = 0;
    std::size_t first, second;
    do {
      first = draw_index(rng);
      second = draw_index(rng);
      ++trials;
    } while (first != second);
    trials_total.add(static_cast<double>(trials));
  }
  return trials_total.value() / static_cast<double>(r);
}

int thread_count() {
  if (const char* env = std::getenv("ESSKIT_THREADS")) {
    const int parsed = std::atoi(env);
    if (parsed > 0) return parsed;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace esskit
