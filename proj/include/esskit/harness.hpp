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

#ifndef ESSKIT_HARNESS_HPP
#define ESSKIT_HARNESS_HPP

#include <cstdint>
#include <vector>

#include "esskit/rng.hpp"
#include "esskit/simplex.hpp"

namespace esskit {

/// Univariate Gaussian importance-sampling pair. The target is fixed to the
/// standard normal N(0, 1); only the proposal N(mu_p, sigma_p^2) varies.
struct GaussianPair {
  double proposal_mean = 0.0;
  double proposal_sd = 1.0;
};

enum class SweepParameter { Mean, Sigma };

/// Configuration of a proposal-parameter sweep. Defaults follow the study
/// setup: N = 1000 samples, proposal mean over [0, 2] step 0.1 (or sd over
/// [0.5, 1] step 0.025), beta grid 0.2..50 step 0.01 with an extra infinity
/// column always computed. The scored integrand is fixed to h(x) = x, i.e.
/// the estimators target the mean of the standard normal.
struct SweepConfig {
  std::vector<double> grid;
  int n_samples = 1000;
  int replications = 10000;
  std::uint64_t seed = 1;
  std::vector<double> beta_grid;
  /// When set, the IS estimator spread is measured as mean squared error
  /// about the true value 0 instead of variance about the empirical mean.
  bool center_variance_at_zero = false;

  static std::vector<double> range(double start, double stop, double step);
  static std::vector<double> default_mean_grid() { return range(0.0, 2.0, 0.1); }
  static std::vector<double> default_sigma_grid() { return range(0.5, 1.0, 0.025); }
  static std::vector<double> default_beta_grid() { return range(0.2, 50.0, 0.01); }
};

/// Sweep output. beta_grid carries the finite grid plus a trailing +infinity
/// entry; ess_h_rate is indexed [grid point][beta] and holds the mean of
/// ESS-H^(beta)/N over replications. Bitwise-identical for identical
/// (config, vary) regardless of thread count.
struct SweepResult {
  SweepParameter vary = SweepParameter::Mean;
  std::vector<double> grid;
  std::vector<double> beta_grid;
  std::vector<double> ess_teo_rate;
  std::vector<std::vector<double>> ess_h_rate;
  std::vector<double> var_is;  // empirical spread of the IS estimator
  std::vector<double> var_mc;  // variance of the ideal MC estimator, 1/N
  int n_samples = 0;
  int replications = 0;
  std::uint64_t seed = 0;
};

struct IsReplication {
  WeightVector weights;
  double is_estimate = 0.0;  // self-normalized estimate of E[X] = 0
};

/// One importance-sampling replication: n proposal draws, raw weights from
/// the log-density difference (max-log subtracted before exponentiation),
/// normalized weights and the self-normalized estimate sum w_i x_i.
IsReplication run_is_replication(const GaussianPair& pair, int n,
                                 SplitMix64& rng);

/// The RNG stream sweep() uses for (grid point, replication); exposed so a
/// sweep can be replayed replication-by-replication.
SplitMix64 sweep_replication_stream(std::uint64_t seed, std::size_t grid_index,
                                    int replication);

/// Monte Carlo estimate of the theoretical ESS = N var_pi[Ihat] / var_q[Itil].
/// The numerator variance is the analytic 1/N (variance of the mean of N
/// standard normals with h(x) = x); the denominator is the unbiased sample
/// variance of the self-normalized estimate across r replications (or the MSE
/// about 0 when mse_about_zero is set). Returns the ESS value; divide by n
/// for the rate. Throws DegenerateVariance when the sample variance is 0.
double estimate_theoretical_ess(const GaussianPair& pair, int n, int r,
                                std::uint64_t seed,
                                bool mse_about_zero = false);

/// Runs the full sweep: per grid point, R replications, each scoring the
/// theoretical-ESS estimate and every ESS-H^(beta) on the beta grid.
SweepResult sweep(const SweepConfig& config, SweepParameter vary);

/// beta minimizing the L1 distance between the averaged ESS-H^(beta) rate
/// curve and the theoretical rate curve over the grid; ties go to the
/// smaller beta.
double optimal_beta(const SweepResult& result);

/// Least-squares fit a1 * ESS-H^(2) + a2 * ESS-H^(inf) ~= ESS_teo on rates
/// over the grid, via the 2x2 normal equations.
struct ComboFit {
  double a1 = 0.0;
  double a2 = 0.0;
  double residual_l2 = 0.0;  // Euclidean norm of the fit residual
};

ComboFit fit_linear_combo(const SweepResult& result);

/// Simulates r pair-drawing experiments on the pmf w (draw index pairs until
/// a pair matches) and returns the mean number of trials. Monte Carlo oracle
/// for E[T] = 1 / sum w^2.
double pair_collision_mean_trials(const WeightVector& w, int r,
                                  std::uint64_t seed);

/// Worker count for parallel sweeps: the ESSKIT_THREADS environment variable,
/// or the hardware concurrency when unset or 0.
int thread_count();

}  // namespace esskit

#endif  // ESSKIT_HARNESS_HPP
