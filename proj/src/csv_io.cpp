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

#include "esskit/csv_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <vector>

#include "esskit/errors.hpp"
#include "esskit/version.hpp"

namespace esskit {

namespace {

std::string format_double(double v) {
  if (v == std::numeric_limits<double>::infinity()) return "inf";
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.10g", v);
  return buffer;
}

double parse_double(const std::string& text, const std::string& where) {
  if (text == "inf") return std::numeric_limits<double>::infinity();
  try {
    std::size_t consumed = 0;
    const double value = std::stod(text, &consumed);
    if (consumed != text.size()) throw std::invalid_argument(text);
    return value;
  } catch (const std::exception&) {
    throw CsvError("cannot parse number '" + text + "' in " + where);
  }
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream stream(line);
  while (std::getline(stream, field, ',')) fields.push_back(field);
  return fields;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw CsvError("cannot open '" + path.string() + "' for reading");
  return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw CsvError("cannot open '" + path.string() + "' for writing");
  return out;
}

// Reads lines, dropping comments, trailing '\r' and blank lines.
std::vector<std::string> read_data_lines(std::istream& in,
                                         std::string* first_comment = nullptr) {
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.front() == '#') {
      if (first_comment && first_comment->empty()) *first_comment = line;
      continue;
    }
    lines.push_back(line);
  }
  return lines;
}

}  // namespace

WeightVector read_weight_csv(const std::filesystem::path& path) {
  std::ifstream in = open_input(path);
  const std::vector<std::string> lines = read_data_lines(in);
  if (lines.empty()) {
    throw CsvError("'" + path.string() + "' has no header line");
  }
  const std::string& header = lines.front();
  if (header != "w" && header != "w_raw") {
    throw CsvError("'" + path.string() + "': expected header 'w' or 'w_raw', got '" +
                   header + "'");
  }
  std::vector<double> entries;
  entries.reserve(lines.size() - 1);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    entries.push_back(parse_double(lines[i], path.string()));
  }
  if (entries.empty()) {
    throw InvalidSize("'" + path.string() + "' contains no weights");
  }
  if (header == "w_raw") return normalize(std::span<const double>(entries));
  return WeightVector::from_normalized(std::move(entries));
}

void write_weight_csv(const std::filesystem::path& path, const WeightVector& w,
                      const std::string& comment) {
  std::ofstream out = open_output(path);
  if (!comment.empty()) out << "# " << comment << "\n";
  out << "w\n";
  for (double e : w) out << format_double(e) << "\n";
}

ErrorCurve read_error_curve_csv(const std::filesystem::path& path,
                                CurveDirection direction) {
  std::ifstream in = open_input(path);
  const std::vector<std::string> lines = read_data_lines(in);
  if (lines.empty() || split_fields(lines.front()) != std::vector<std::string>{"k", "V"}) {
    throw CsvError("'" + path.string() + "': expected header 'k,V'");
  }
  std::vector<double> values;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto fields = split_fields(lines[i]);
    if (fields.size() != 2) {
      throw CsvError("'" + path.string() + "': line " + std::to_string(i + 1) +
                     " needs exactly two fields");
    }
    const double k = parse_double(fields[0], path.string());
    const double expected = static_cast<double>(values.size());
    if (k != expected) {
      throw CsvError("'" + path.string() + "': expected k=" +
                     std::to_string(static_cast<long>(expected)) + ", got '" +
                     fields[0] + "' (k must be contiguous from 0)");
    }
    values.push_back(parse_double(fields[1], path.string()));
  }
  return ErrorCurve(std::move(values), direction);
}

void write_sweep_csv(std::ostream& out, const SweepResult& result) {
  out << "# seed=" << result.seed << ", version=" << kVersion
      << ", config=vary=" << (result.vary == SweepParameter::Mean ? "mean" : "sigma")
      << ";n=" << result.n_samples << ";reps=" << result.replications << "\n";
  out << "param,ess_teo_rate,beta,ess_h_rate\n";
  for (std::size_t g = 0; g < result.grid.size(); ++g) {
    for (std::size_t k = 0; k < result.beta_grid.size(); ++k) {
      out << format_double(result.grid[g]) << ','
          << format_double(result.ess_teo_rate[g]) << ','
          << format_double(result.beta_grid[k]) << ','
          << format_double(result.ess_h_rate[g][k]) << "\n";
    }
  }
}

void write_sweep_csv(const std::filesystem::path& path, const SweepResult& result) {
  std::ofstream out = open_output(path);
  write_sweep_csv(out, result);
}

SweepResult read_sweep_csv(const std::filesystem::path& path) {
  std::ifstream in = open_input(path);
  std::string comment;
  const std::vector<std::string> lines = read_data_lines(in, &comment);
  if (lines.empty() || lines.front() != "param,ess_teo_rate,beta,ess_h_rate") {
    throw CsvError("'" + path.string() +
                   "': expected header 'param,ess_teo_rate,beta,ess_h_rate'");
  }

  SweepResult result;
  // Recover the metadata the writer recorded: tokens are separated by
  // ", " at the top level and ';' inside the config value.
  const auto comment_value = [&](const std::string& key) -> std::string {
    std::string token;
    std::stringstream stream(comment);
    while (std::getline(stream, token, ',')) {
      std::string part;
      std::stringstream inner(token);
      while (std::getline(inner, part, ';')) {
        while (!part.empty() && (part.front() == ' ' || part.front() == '#')) {
          part.erase(part.begin());
        }
        if (part.rfind("config=", 0) == 0) part.erase(0, 7);
        const auto eq = part.find('=');
        if (eq != std::string::npos && part.substr(0, eq) == key) {
          return part.substr(eq + 1);
        }
      }
    }
    return "";
  };
  if (comment_value("vary") == "sigma") result.vary = SweepParameter::Sigma;
  if (const std::string s = comment_value("seed"); !s.empty()) {
    result.seed = std::stoull(s);
  }
  if (const std::string s = comment_value("n"); !s.empty()) {
    result.n_samples = std::stoi(s);
  }
  if (const std::string s = comment_value("reps"); !s.empty()) {
    result.replications = std::stoi(s);
  }

  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto fields = split_fields(lines[i]);
    if (fields.size() != 4) {
      throw CsvError("'" + path.string() + "': line " + std::to_string(i + 1) +
                     " needs exactly four fields");
    }
    const double param = parse_double(fields[0], path.string());
    const double teo = parse_double(fields[1], path.string());
    const double beta = parse_double(fields[2], path.string());
    const double rate = parse_double(fields[3], path.string());
    if (result.grid.empty() || param != result.grid.back()) {
      result.grid.push_back(param);
      result.ess_teo_rate.push_back(teo);
      result.ess_h_rate.emplace_back();
    }
    result.ess_h_rate.back().push_back(rate);
    if (result.grid.size() == 1) result.beta_grid.push_back(beta);
  }
  if (result.grid.empty()) {
    throw CsvError("'" + path.string() + "' contains no sweep rows");
  }
  for (const auto& row : result.ess_h_rate) {
    if (row.size() != result.beta_grid.size()) {
      throw CsvError("'" + path.string() + "': ragged beta columns");
    }
  }
  return result;
}

void write_summary_csv(const std::filesystem::path& path, double beta_star,
                       const ComboFit& fit, std::uint64_t seed,
                       const std::string& config) {
  std::ofstream out = open_output(path);
  out << "# seed=" << seed << ", version=" << kVersion << ", config=" << config
      << "\n";
  out << "beta_star,a1,a2,residual_l2\n";
  out << format_double(beta_star) << ',' << format_double(fit.a1) << ','
      << format_double(fit.a2) << ',' << format_double(fit.residual_l2) << "\n";
}

}  // namespace esskit
