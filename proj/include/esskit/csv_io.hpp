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

#ifndef ESSKIT_CSV_IO_HPP
#define ESSKIT_CSV_IO_HPP

#include <filesystem>
#include <iosfwd>
#include <string>

#include "esskit/harness.hpp"
#include "esskit/model_select.hpp"
#include "esskit/simplex.hpp"

namespace esskit {

// All CSV files may start with '#'-prefixed comment lines (used for the
// seed/version/config audit trail); readers skip them. Floating output is
// printed with 10 significant digits.

/// Reads a weight-vector CSV. Header "w" means normalized entries (validated
/// as-is); header "w_raw" means raw importance ratios (normalized on read).
WeightVector read_weight_csv(const std::filesystem::path& path);

/// Writes a normalized weight vector under header "w".
void write_weight_csv(const std::filesystem::path& path, const WeightVector& w,
                      const std::string& comment = "");

/// Reads an error curve from a `k,V` CSV. k must run contiguously from 0;
/// missing or duplicate k is an error.
ErrorCurve read_error_curve_csv(const std::filesystem::path& path,
                                CurveDirection direction);

/// Long-format sweep CSV: param,ess_teo_rate,beta,ess_h_rate (beta = "inf"
/// for the max-weight column). The comment line records seed, version and
/// config, including the swept parameter, so the file round-trips.
void write_sweep_csv(std::ostream& out, const SweepResult& result);
void write_sweep_csv(const std::filesystem::path& path, const SweepResult& result);
SweepResult read_sweep_csv(const std::filesystem::path& path);

/// One-row summary: beta_star,a1,a2,residual_l2.
void write_summary_csv(const std::filesystem::path& path, double beta_star,
                       const ComboFit& fit, std::uint64_t seed,
                       const std::string& config);

}  // namespace esskit

#endif  // ESSKIT_CSV_IO_HPP
