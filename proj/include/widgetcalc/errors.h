// Copyright 2026 The Authors.
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

#ifndef WIDGETCALC_ERRORS_H_
#define WIDGETCALC_ERRORS_H_

#include <cstdint>
#include <stdexcept>
#include <string>

namespace widgetcalc {

// Malformed caller input: mixed fields, dimension mismatch, bad indices.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Widget file could not be read. `location` is "line N" for syntax errors
// or a JSON path such as "pairs[2][1][0]" for element errors.
class ParseError : public InputError {
 public:
  ParseError(const std::string& location, const std::string& message)
      : InputError(location + ": " + message), location_(location) {}
  const std::string& location() const { return location_; }

 private:
  std::string location_;
};

// A documented precondition of an operation was violated by the caller, or
// an internal postcondition failed.
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// The perturbation constant sweep ran out of candidates.
class FieldTooSmall : public std::runtime_error {
 public:
  FieldTooSmall(std::uint64_t modulus, std::uint64_t bad_c_count,
                const std::string& detail)
      : std::runtime_error(
            "perturbation sweep exhausted over " +
            (modulus == 0 ? std::string("the rationals")
                          : "GF(" + std::to_string(modulus) + ")") +
            " after rejecting " + std::to_string(bad_c_count) +
            " constants: " + detail),
        modulus_(modulus),
        bad_c_count_(bad_c_count) {}

  // 0 for the rational field.
  std::uint64_t modulus() const { return modulus_; }
  std::uint64_t bad_c_count() const { return bad_c_count_; }

 private:
  std::uint64_t modulus_;
  std::uint64_t bad_c_count_;
};

// Generator configuration is unsatisfiable or rejection sampling hit its cap.
class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace widgetcalc

#endif  // WIDGETCALC_ERRORS_H_
