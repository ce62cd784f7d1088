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

#ifndef ESSKIT_ERRORS_HPP
#define ESSKIT_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace esskit {

/// Base class for all esskit domain errors. `kind()` names the error case
/// (stable identifier used in CLI diagnostics and tests).
class Error : public std::runtime_error {
 public:
  Error(std::string_view kind, const std::string& message)
      : std::runtime_error(std::string(kind) + ": " + message), kind_(kind) {}

  std::string_view kind() const noexcept { return kind_; }

 private:
  std::string_view kind_;  // always points at a string literal
};

#define ESSKIT_DEFINE_ERROR(NAME)                         \
  class NAME : public Error {                             \
   public:                                                \
    explicit NAME(const std::string& message)             \
        : Error(#NAME, message) {}                        \
  }

ESSKIT_DEFINE_ERROR(InvalidWeight);
ESSKIT_DEFINE_ERROR(AllZeroWeights);
ESSKIT_DEFINE_ERROR(InvalidSize);
ESSKIT_DEFINE_ERROR(IndexOutOfRange);
ESSKIT_DEFINE_ERROR(InvalidParameter);
ESSKIT_DEFINE_ERROR(DomainError);
ESSKIT_DEFINE_ERROR(FlatCurve);
ESSKIT_DEFINE_ERROR(NotMonotone);
ESSKIT_DEFINE_ERROR(DegenerateVariance);
ESSKIT_DEFINE_ERROR(SingularDesign);
ESSKIT_DEFINE_ERROR(CsvError);

#undef ESSKIT_DEFINE_ERROR

}  // namespace esskit

#endif  // ESSKIT_ERRORS_HPP
