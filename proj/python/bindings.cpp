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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "esskit/errors.hpp"
#include "esskit/harness.hpp"
#include "esskit/metrics.hpp"
#include "esskit/model_select.hpp"
#include "esskit/properties.hpp"
#include "esskit/rng.hpp"
#include "esskit/simplex.hpp"
#include "esskit/version.hpp"

namespace py = pybind11;
using namespace esskit;

namespace {

WeightVector as_weights(const std::vector<double>& entries) {
  return WeightVector::from_normalized(entries);
}

py::dict check_to_dict(const CheckResult& r) {
  py::dict d;
  d["passed"] = r.passed;
  d["counterexample"] = r.counterexample;
  d["replication_factor"] = r.replication_factor;
  d["lhs"] = r.lhs;
  d["rhs"] = r.rhs;
  d["note"] = r.note;
  return d;
}

CurveDirection parse_direction(const std::string& direction) {
  if (direction == "nonincreasing") return CurveDirection::NonIncreasing;
  if (direction == "nondecreasing") return CurveDirection::NonDecreasing;
  throw InvalidParameter("direction must be 'nonincreasing' or 'nondecreasing'");
}

}  // namespace

PYBIND11_MODULE(_esskit, m) {
  m.doc() = "Generalized effective-sample-size metrics and diversity indices";
  m.attr("__version__") = kVersion;

  py::register_exception<Error>(m, "Error");

  // Simplex operations.
  m.def("normalize",
        [](const std::vector<double>& raw) {
          return normalize(std::span<const double>(raw)).entries();
        },
        py::arg("raw"), "Normalize raw nonnegative weights onto the simplex.");
  m.def("uniform", [](std::size_t n) { return uniform(n).entries(); },
        py::arg("n"));
  m.def("vertex",
        [](std::size_t n, std::size_t j) { return vertex(n, j).entries(); },
        py::arg("n"), py::arg("j"), "Vertex j (1-based) of the n-simplex.");
  m.def("replicate",
        [](const std::vector<double>& w, std::size_t m) {
          return replicate(as_weights(w), m).entries();
        },
        py::arg("w"), py::arg("m"));
  m.def("sort_ascending",
        [](const std::vector<double>& w) {
          return sort_ascending(as_weights(w)).entries();
        },
        py::arg("w"));

  // G-ESS metrics. `w` must already be normalized; use normalize() first for
  // raw importance ratios.
  m.def("ess",
        [](const std::vector<double>& w, const std::string& method) {
          return evaluate(parse_ess_method(method), as_weights(w)).value;
        },
        py::arg("w"), py::arg("method"),
        "Effective sample size under a method specifier such as 'hr:2', "
        "'hr:inf', 'ts:1.5', 'lp:2', 'plus', 'q', 'gini', 'env' or 'gol'.");
  m.def("ess_rate",
        [](const std::vector<double>& w, const std::string& method) {
          return evaluate(parse_ess_method(method), as_weights(w)).rate;
        },
        py::arg("w"), py::arg("method"));
  m.def("ess_huggins_roy",
        [](const std::vector<double>& w, double beta) {
          return ess_huggins_roy(as_weights(w), beta).value;
        },
        py::arg("w"), py::arg("beta"));
  m.def("renyi_entropy",
        [](const std::vector<double>& w, double beta) {
          return renyi_entropy(as_weights(w), beta);
        },
        py::arg("w"), py::arg("beta"));
  m.def("tsallis_entropy",
        [](const std::vector<double>& w, double alpha) {
          return tsallis_entropy(as_weights(w), alpha);
        },
        py::arg("w"), py::arg("alpha"));
  m.def("ess_tsallis",
        [](const std::vector<double>& w, double alpha) {
          return ess_tsallis(as_weights(w), alpha).value;
        },
        py::arg("w"), py::arg("alpha"));
  m.def("gini_impurity",
        [](const std::vector<double>& w) { return gini_impurity(as_weights(w)); },
        py::arg("w"));
  m.def("q_exponential", &q_exponential, py::arg("t"), py::arg("alpha"));
  m.def("ess_lp_distance",
        [](const std::vector<double>& w, double p) {
          return ess_lp_distance(as_weights(w), p).value;
        },
        py::arg("w"), py::arg("p"));
  m.def("ess_plus",
        [](const std::vector<double>& w) { return ess_plus(as_weights(w)).value; },
        py::arg("w"));
  m.def("ess_q",
        [](const std::vector<double>& w) { return ess_q(as_weights(w)).value; },
        py::arg("w"));
  m.def("ess_gini",
        [](const std::vector<double>& w) { return ess_gini(as_weights(w)).value; },
        py::arg("w"));
  m.def("ess_env",
        [](const std::vector<double>& w) { return ess_env(as_weights(w)).value; },
        py::arg("w"));
  m.def("ess_golosov",
        [](const std::vector<double>& w) {
          return ess_golosov(as_weights(w)).value;
        },
        py::arg("w"));
  m.def("concentration",
        [](const std::vector<double>& w, double beta) {
          return concentration(as_weights(w), beta);
        },
        py::arg("w"), py::arg("beta"));
  m.def("ess_variance_form",
        [](const std::vector<double>& w) {
          return ess_variance_form(as_weights(w)).value;
        },
        py::arg("w"));

  // Condition checks.
  m.def("classify",
        [](const std::string& method, std::size_t n, int trials,
           std::uint64_t seed) {
          const AxiomReport report =
              classify(parse_ess_method(method), n, trials, seed);
          py::dict d;
          d["method"] = format_ess_method(report.method);
          d["n"] = report.n;
          d["c1_symmetry"] = check_to_dict(report.c1_symmetry);
          d["c2_maximum"] = check_to_dict(report.c2_maximum);
          d["c3_minimum"] = check_to_dict(report.c3_minimum);
          d["c4_unicity"] = check_to_dict(report.c4_unicity);
          d["c5_stability"] = check_to_dict(report.c5_stability);
          d["g_ess_class"] = std::string(to_string(report.g_ess_class));
          d["trials_used"] = report.trials_used;
          d["seed"] = report.seed;
          return d;
        },
        py::arg("method"), py::arg("n"), py::arg("trials") = 2000,
        py::arg("seed") = 1,
        "Run the C1-C5 checks and classify; returns the full report.");

  // Importance-sampling harness.
  py::class_<SweepResult>(m, "SweepResult")
      .def_readonly("grid", &SweepResult::grid)
      .def_readonly("beta_grid", &SweepResult::beta_grid)
      .def_readonly("ess_teo_rate", &SweepResult::ess_teo_rate)
      .def_readonly("ess_h_rate", &SweepResult::ess_h_rate)
      .def_readonly("var_is", &SweepResult::var_is)
      .def_readonly("var_mc", &SweepResult::var_mc)
      .def_readonly("n_samples", &SweepResult::n_samples)
      .def_readonly("replications", &SweepResult::replications)
      .def_readonly("seed", &SweepResult::seed);

  const auto run_sweep = [](const std::vector<double>& grid, int n, int reps,
                            std::uint64_t seed,
                            const std::vector<double>& beta_grid,
                            bool mse_about_zero, SweepParameter vary) {
    SweepConfig config;
    config.grid = grid;
    config.n_samples = n;
    config.replications = reps;
    config.seed = seed;
    config.beta_grid =
        beta_grid.empty() ? SweepConfig::default_beta_grid() : beta_grid;
    config.center_variance_at_zero = mse_about_zero;
    return sweep(config, vary);
  };
  m.def("sweep_mean",
        [run_sweep](const std::vector<double>& grid, int n, int reps,
                    std::uint64_t seed, const std::vector<double>& beta_grid,
                    bool mse_about_zero) {
          return run_sweep(grid, n, reps, seed, beta_grid, mse_about_zero,
                           SweepParameter::Mean);
        },
        py::arg("grid"), py::arg("n") = 1000, py::arg("reps") = 10000,
        py::arg("seed") = 1, py::arg("beta_grid") = std::vector<double>{},
        py::arg("mse_about_zero") = false);
  m.def("sweep_sigma",
        [run_sweep](const std::vector<double>& grid, int n, int reps,
                    std::uint64_t seed, const std::vector<double>& beta_grid,
                    bool mse_about_zero) {
          return run_sweep(grid, n, reps, seed, beta_grid, mse_about_zero,
                           SweepParameter::Sigma);
        },
        py::arg("grid"), py::arg("n") = 1000, py::arg("reps") = 10000,
        py::arg("seed") = 1, py::arg("beta_grid") = std::vector<double>{},
        py::arg("mse_about_zero") = false);
  m.def("beta_range", &SweepConfig::range, py::arg("start"), py::arg("stop"),
        py::arg("step"));
  m.def("optimal_beta", &optimal_beta, py::arg("result"));
  m.def("fit_linear_combo",
        [](const SweepResult& result) {
          const ComboFit fit = fit_linear_combo(result);
          return py::make_tuple(fit.a1, fit.a2, fit.residual_l2);
        },
        py::arg("result"), "Returns (a1, a2, residual_l2).");
  m.def("run_is_replication",
        [](double proposal_mean, double proposal_sd, int n,
           std::uint64_t seed) {
          SplitMix64 rng(seed);
          const IsReplication rep =
              run_is_replication({proposal_mean, proposal_sd}, n, rng);
          return py::make_tuple(rep.weights.entries(), rep.is_estimate);
        },
        py::arg("proposal_mean"), py::arg("proposal_sd"), py::arg("n"),
        py::arg("seed"), "Returns (normalized weights, self-normalized estimate).");
  m.def("estimate_theoretical_ess",
        [](double proposal_mean, double proposal_sd, int n, int r,
           std::uint64_t seed, bool mse_about_zero) {
          return estimate_theoretical_ess({proposal_mean, proposal_sd}, n, r,
                                          seed, mse_about_zero);
        },
        py::arg("proposal_mean"), py::arg("proposal_sd"), py::arg("n"),
        py::arg("r"), py::arg("seed"), py::arg("mse_about_zero") = false);
  m.def("pair_collision_mean_trials",
        [](const std::vector<double>& w, int r, std::uint64_t seed) {
          return pair_collision_mean_trials(as_weights(w), r, seed);
        },
        py::arg("w"), py::arg("r"), py::arg("seed"));

  // Model selection.
  m.def("weights_from_error_curve",
        [](const std::vector<double>& values) {
          return weights_from_error_curve(
                     ErrorCurve(values, CurveDirection::NonIncreasing))
              .entries();
        },
        py::arg("values"));
  m.def("env_index",
        [](const std::vector<double>& values, const std::string& direction) {
          return env_index(ErrorCurve(values, parse_direction(direction)));
        },
        py::arg("values"), py::arg("direction") = "nonincreasing");
  m.def("ess_env_via_curve",
        [](const std::vector<double>& w) {
          return ess_env_via_curve(as_weights(w));
        },
        py::arg("w"));
  m.def("effective_components",
        [](const std::vector<double>& values, const std::string& method) {
          const EffectiveComponents ec =
              effective_components(ErrorCurve(values, CurveDirection::NonIncreasing),
                                   parse_ess_method(method));
          return py::make_tuple(ec.raw, ec.rounded);
        },
        py::arg("values"), py::arg("method"),
        "Returns (raw, rounded) effective number of components.");
}
