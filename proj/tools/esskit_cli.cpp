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

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "esskit/csv_io.hpp"
#include "esskit/errors.hpp"
#include "esskit/harness.hpp"
#include "esskit/metrics.hpp"
#include "esskit/model_select.hpp"
#include "esskit/properties.hpp"
#include "esskit/version.hpp"

namespace {

using namespace esskit;

std::string fmt(double v) {
  if (v == std::numeric_limits<double>::infinity()) return "inf";
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.10g", v);
  return buffer;
}

std::string join_entries(const std::vector<double>& entries) {
  std::string text = "[";
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (i > 0) text += ", ";
    text += fmt(entries[i]);
  }
  return text + "]";
}

// Rejects bad method specifiers at parse time, so they surface as usage
// errors rather than domain errors.
const CLI::Validator kMethodSpec(
    [](std::string& spec) -> std::string {
      try {
        parse_ess_method(spec);
        return {};
      } catch (const Error& e) {
        return std::string(e.what());
      }
    },
    "METHOD");

struct ComputeArgs {
  std::string weights_path;
  std::vector<std::string> methods;
  std::string out_path;
};

int run_compute(const ComputeArgs& args) {
  const WeightVector w = read_weight_csv(args.weights_path);
  std::ostringstream table;
  table << "method,value,rate\n";
  for (const std::string& spec : args.methods) {
    const EssValue v = evaluate(parse_ess_method(spec), w);
    table << spec << ',' << fmt(v.value) << ',' << fmt(v.rate) << "\n";
  }
  std::cout << "# version=" << kVersion << ", config=weights=" << args.weights_path
            << ";n=" << w.size() << "\n"
            << table.str();
  if (!args.out_path.empty()) {
    std::ofstream out(args.out_path);
    if (!out) throw CsvError("cannot open '" + args.out_path + "' for writing");
    out << "# version=" << kVersion << ", config=weights=" << args.weights_path
        << ";n=" << w.size() << "\n"
        << table.str();
  }
  return 0;
}

struct PropertyCheckArgs {
  std::string method;
  std::size_t n = 0;
  int trials = 2000;
  std::uint64_t seed = 1;
  std::string csv_path;
};

void print_condition(const char* name, const CheckResult& r) {
  std::printf("  %-12s %-4s %s\n", name, r.passed ? "pass" : "FAIL",
              r.note.c_str());
  if (!r.passed) {
    std::printf("               counterexample %s\n",
                join_entries(r.counterexample).c_str());
    if (r.replication_factor > 0) {
      std::printf("               m=%zu lhs=%s rhs=%s\n", r.replication_factor,
                  fmt(r.lhs).c_str(), fmt(r.rhs).c_str());
    } else if (r.lhs != 0.0 || r.rhs != 0.0) {
      std::printf("               value=%s expected=%s\n", fmt(r.lhs).c_str(),
                  fmt(r.rhs).c_str());
    }
  }
}

int run_property_check(const PropertyCheckArgs& args) {
  const EssMethod method = parse_ess_method(args.method);
  const AxiomReport report = classify(method, args.n, args.trials, args.seed);
  std::printf("method %s  n=%zu  trials=%d  seed=%llu\n", args.method.c_str(),
              args.n, args.trials,
              static_cast<unsigned long long>(args.seed));
  print_condition("C1 symmetry", report.c1_symmetry);
  print_condition("C2 maximum", report.c2_maximum);
  print_condition("C3 minimum", report.c3_minimum);
  print_condition("C4 unicity", report.c4_unicity);
  print_condition("C5 stability", report.c5_stability);
  std::printf("class: %s\n", std::string(to_string(report.g_ess_class)).c_str());

  if (!args.csv_path.empty()) {
    std::ofstream out(args.csv_path);
    if (!out) throw CsvError("cannot open '" + args.csv_path + "' for writing");
    out << "# seed=" << args.seed << ", version=" << kVersion
        << ", config=method=" << args.method << ";n=" << args.n
        << ";trials=" << args.trials << "\n";
    out << "method,n,condition,passed,lhs,rhs,m,counterexample\n";
    const auto row = [&](const char* name, const CheckResult& r) {
      std::string ce;
      for (std::size_t i = 0; i < r.counterexample.size(); ++i) {
        if (i > 0) ce += ';';
        ce += fmt(r.counterexample[i]);
      }
      out << args.method << ',' << args.n << ',' << name << ','
          << (r.passed ? 1 : 0) << ',' << fmt(r.lhs) << ',' << fmt(r.rhs)
          << ',' << r.replication_factor << ',' << ce << "\n";
    };
    row("C1", report.c1_symmetry);
    row("C2", report.c2_maximum);
    row("C3", report.c3_minimum);
    row("C4", report.c4_unicity);
    row("C5", report.c5_stability);
    out << args.method << ',' << args.n << ",class,"
        << std::string(to_string(report.g_ess_class)) << ",,,,\n";
  }
  return 0;
}

struct SweepArgs {
  int n = 1000;
  int reps = 10000;
  std::uint64_t seed = 1;
  double grid_start = 0.0;
  double grid_stop = 0.0;
  double grid_step = 0.0;
  double beta_start = 0.2;
  double beta_stop = 50.0;
  double beta_step = 0.01;
  bool mse_about_zero = false;
  std::string out_path;
  std::string summary_path;
  std::string config_path;
};

// Flat key=value sweep configuration ('#' comments allowed). Explicit command
// line flags win over file values.
void apply_sweep_config(const CLI::App* cmd, SweepArgs& args) {
  std::ifstream in(args.config_path);
  if (!in) throw CsvError("cannot open config '" + args.config_path + "'");
  const auto overridden = [&](const char* flag) {
    return cmd->count(flag) > 0;
  };
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw CsvError("config line " + std::to_string(line_number) +
                     " is not key=value: '" + line + "'");
    }
    std::string key = line.substr(0, eq);
    const std::string value = line.substr(eq + 1);
    for (char& c : key) {
      if (c == '_') c = '-';
    }
    try {
      if (key == "n" && !overridden("--n")) args.n = std::stoi(value);
      else if (key == "reps" && !overridden("--reps")) args.reps = std::stoi(value);
      else if (key == "seed" && !overridden("--seed")) args.seed = std::stoull(value);
      else if (key == "grid-start" && !overridden("--grid-start")) args.grid_start = std::stod(value);
      else if (key == "grid-stop" && !overridden("--grid-stop")) args.grid_stop = std::stod(value);
      else if (key == "grid-step" && !overridden("--grid-step")) args.grid_step = std::stod(value);
      else if (key == "beta-start" && !overridden("--beta-start")) args.beta_start = std::stod(value);
      else if (key == "beta-stop" && !overridden("--beta-stop")) args.beta_stop = std::stod(value);
      else if (key == "beta-step" && !overridden("--beta-step")) args.beta_step = std::stod(value);
      else if (key == "mse-about-zero" && !overridden("--mse-about-zero")) args.mse_about_zero = (value == "1" || value == "true");
      else if (key == "out" && !overridden("--out")) args.out_path = value;
      else if (key == "summary" && !overridden("--summary")) args.summary_path = value;
      else if (key != "n" && key != "reps" && key != "seed" && key != "grid-start" &&
               key != "grid-stop" && key != "grid-step" && key != "beta-start" &&
               key != "beta-stop" && key != "beta-step" && key != "mse-about-zero" &&
               key != "out" && key != "summary") {
        throw CsvError("unknown config key '" + key + "'");
      }
    } catch (const std::invalid_argument&) {
      throw CsvError("cannot parse config value '" + value + "' for key '" + key + "'");
    }
  }
}

int run_sweep(const CLI::App* cmd, SweepArgs args, SweepParameter vary) {
  if (!args.config_path.empty()) {
    apply_sweep_config(cmd, args);
  }
  if (args.out_path.empty()) {
    throw CLI::RequiredError("--out (or out= in a --config file)");
  }
  SweepConfig config;
  config.grid = SweepConfig::range(args.grid_start, args.grid_stop, args.grid_step);
  config.n_samples = args.n;
  config.replications = args.reps;
  config.seed = args.seed;
  config.beta_grid = SweepConfig::range(args.beta_start, args.beta_stop, args.beta_step);
  config.center_variance_at_zero = args.mse_about_zero;

  const SweepResult result = sweep(config, vary);
  write_sweep_csv(args.out_path, result);
  std::cout << "wrote " << args.out_path << " (" << result.grid.size()
            << " grid points x " << result.beta_grid.size() << " betas)\n";

  if (!args.summary_path.empty()) {
    const double beta_star = optimal_beta(result);
    const ComboFit fit = fit_linear_combo(result);
    std::ostringstream cfg;
    cfg << "vary=" << (vary == SweepParameter::Mean ? "mean" : "sigma")
        << ";n=" << args.n << ";reps=" << args.reps;
    write_summary_csv(args.summary_path, beta_star, fit, args.seed, cfg.str());
    std::cout << "beta_star=" << fmt(beta_star) << " a1=" << fmt(fit.a1)
              << " a2=" << fmt(fit.a2) << " residual_l2=" << fmt(fit.residual_l2)
              << "\n";
  }
  return 0;
}

int run_optimal_beta(const std::string& sweep_path) {
  const SweepResult result = read_sweep_csv(sweep_path);
  std::cout << "beta_star=" << fmt(optimal_beta(result)) << "\n";
  return 0;
}

int run_fit_combo(const std::string& sweep_path) {
  const SweepResult result = read_sweep_csv(sweep_path);
  const ComboFit fit = fit_linear_combo(result);
  std::cout << "a1=" << fmt(fit.a1) << " a2=" << fmt(fit.a2)
            << " residual_l2=" << fmt(fit.residual_l2) << "\n";
  return 0;
}

struct CollisionArgs {
  std::string weights_path;
  int reps = 100000;
  std::uint64_t seed = 1;
};

int run_collision_oracle(const CollisionArgs& args) {
  const WeightVector w = read_weight_csv(args.weights_path);
  const double simulated = pair_collision_mean_trials(w, args.reps, args.seed);
  const double p = concentration(w, 2.0);
  const double expected = 1.0 / p;
  const double se = std::sqrt((1.0 - p) / (p * p) / args.reps);
  std::cout << "# seed=" << args.seed << ", version=" << kVersion
            << ", config=weights=" << args.weights_path << ";reps=" << args.reps
            << "\n";
  std::cout << "simulated_mean=" << fmt(simulated) << " closed_form="
            << fmt(expected) << " standard_error=" << fmt(se);
  if (se > 0.0) std::cout << " z=" << fmt((simulated - expected) / se);
  std::cout << "\n";
  return 0;
}

struct ModelSelectArgs {
  std::string curve_path;
  std::vector<std::string> methods;
  std::string out_path;
};

int run_model_select(const ModelSelectArgs& args) {
  const ErrorCurve curve =
      read_error_curve_csv(args.curve_path, CurveDirection::NonIncreasing);
  std::ostringstream header;
  header << "# version=" << kVersion << ", config=curve=" << args.curve_path
         << ";components=" << curve.component_count();
  if (curve.translation_shift() != 0.0) {
    header << ";shift=" << fmt(curve.translation_shift());
  }
  header << "\n";
  std::ostringstream table;
  table << "method,raw,rounded\n";
  for (const std::string& spec : args.methods) {
    const EffectiveComponents ec =
        effective_components(curve, parse_ess_method(spec));
    table << spec << ',' << fmt(ec.raw) << ',' << ec.rounded << "\n";
  }
  std::cout << header.str() << table.str();
  if (!args.out_path.empty()) {
    std::ofstream out(args.out_path);
    if (!out) throw CsvError("cannot open '" + args.out_path + "' for writing");
    out << header.str() << table.str();
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"G-ESS metrics, axiom checks and importance-sampling harness"};
  app.set_version_flag("--version", std::string("esskit ") + kVersion);
  app.require_subcommand(1);

  ComputeArgs compute_args;
  CLI::App* compute = app.add_subcommand(
      "compute", "Evaluate ESS methods on a weight-vector CSV");
  compute->add_option("--weights", compute_args.weights_path,
                      "CSV with header 'w' (normalized) or 'w_raw'")
      ->required();
  compute->add_option("--method", compute_args.methods,
                      "method specifier (hr:<beta|inf>, ts:<a>, lp:<p>, plus, "
                      "q, gini, env, gol); repeatable")
      ->required()
      ->check(kMethodSpec);
  compute->add_option("--out", compute_args.out_path, "also write the table here");

  PropertyCheckArgs property_args;
  CLI::App* property = app.add_subcommand(
      "property-check", "Check conditions C1-C5 and classify a method");
  property->add_option("--method", property_args.method, "method specifier")
      ->required()
      ->check(kMethodSpec);
  property->add_option("--n", property_args.n, "weight-vector size")
      ->required()
      ->check(CLI::Range(std::size_t{2}, std::size_t{100000}));
  property->add_option("--trials", property_args.trials, "random trials per condition")
      ->check(CLI::PositiveNumber);
  property->add_option("--seed", property_args.seed, "RNG seed");
  property->add_option("--csv", property_args.csv_path,
                       "write per-condition rows to this CSV");

  const auto add_sweep_options = [](CLI::App* cmd, SweepArgs& args,
                                    double start, double stop, double step) {
    args.grid_start = start;
    args.grid_stop = stop;
    args.grid_step = step;
    cmd->add_option("--n", args.n, "samples per replication")->check(CLI::PositiveNumber);
    cmd->add_option("--reps", args.reps, "replications per grid point")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--seed", args.seed, "RNG seed");
    cmd->add_option("--grid-start", args.grid_start, "first grid value");
    cmd->add_option("--grid-stop", args.grid_stop, "last grid value");
    cmd->add_option("--grid-step", args.grid_step, "grid step");
    cmd->add_option("--beta-start", args.beta_start, "first beta");
    cmd->add_option("--beta-stop", args.beta_stop, "last beta");
    cmd->add_option("--beta-step", args.beta_step, "beta step");
    cmd->add_flag("--mse-about-zero", args.mse_about_zero,
                  "measure the IS estimator spread about 0 instead of its mean");
    cmd->add_option("--out", args.out_path, "sweep CSV output path");
    cmd->add_option("--summary", args.summary_path,
                    "also write beta*, a1, a2, residual to this CSV");
    cmd->add_option("--config", args.config_path,
                    "flat key=value file with the options above");
  };

  SweepArgs mean_args;
  CLI::App* sweep_mean = app.add_subcommand(
      "sweep-mean", "Sweep the proposal mean (sd fixed to 1)");
  add_sweep_options(sweep_mean, mean_args, 0.0, 2.0, 0.1);

  SweepArgs sigma_args;
  CLI::App* sweep_sigma = app.add_subcommand(
      "sweep-sigma", "Sweep the proposal sd (mean fixed to 0)");
  add_sweep_options(sweep_sigma, sigma_args, 0.5, 1.0, 0.025);

  std::string optimal_beta_path;
  CLI::App* optimal = app.add_subcommand(
      "optimal-beta", "Best-matching beta from a sweep CSV");
  optimal->add_option("--sweep", optimal_beta_path, "sweep CSV")->required();

  std::string fit_combo_path;
  CLI::App* fit = app.add_subcommand(
      "fit-combo", "Least-squares two-formula combination from a sweep CSV");
  fit->add_option("--sweep", fit_combo_path, "sweep CSV")->required();

  CollisionArgs collision_args;
  CLI::App* collision = app.add_subcommand(
      "collision-oracle", "Simulate mean pair-collision trials vs 1/sum w^2");
  collision->add_option("--weights", collision_args.weights_path, "weights CSV")
      ->required();
  collision->add_option("--reps", collision_args.reps, "experiments")
      ->check(CLI::PositiveNumber);
  collision->add_option("--seed", collision_args.seed, "RNG seed");

  ModelSelectArgs model_args;
  CLI::App* model = app.add_subcommand(
      "model-select", "Effective number of components from an error curve");
  model->add_option("--curve", model_args.curve_path,
                    "non-increasing k,V error-curve CSV")
      ->required();
  model->add_option("--method", model_args.methods, "method specifier; repeatable")
      ->required()
      ->check(kMethodSpec);
  model->add_option("--out", model_args.out_path, "also write the table here");

  try {
    app.parse(argc, argv);
    if (compute->parsed()) return run_compute(compute_args);
    if (property->parsed()) return run_property_check(property_args);
    if (sweep_mean->parsed()) return run_sweep(sweep_mean, mean_args, SweepParameter::Mean);
    if (sweep_sigma->parsed()) return run_sweep(sweep_sigma, sigma_args, SweepParameter::Sigma);
    if (optimal->parsed()) return run_optimal_beta(optimal_beta_path);
    if (fit->parsed()) return run_fit_combo(fit_combo_path);
    if (collision->parsed()) return run_collision_oracle(collision_args);
    if (model->parsed()) return run_model_select(model_args);
    return 2;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const esskit::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
