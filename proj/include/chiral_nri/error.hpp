// Copyright 2026 The chiral-nri Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace chiral_nri {

enum class ErrorCode {
  kInvalidInput,
  kSingularDenominator,   // shared alpha denominator below floor (resonance pole)
  kLocalFieldSingular,    // Clausius-Mossotti determinant below floor
  kInvalidModel,          // coupling on a parity-forbidden transition
  kDegenerateKernel,      // zeroth-order generator kernel dimension != 1
  kSingularShiftedGenerator,
  kConfig,
  kIo,
  kEmptyOutput,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Throws kInvalidInput unless value is finite.
void require_finite(double value, const char* name);
// Throws kInvalidInput unless value is finite and >= 0.
void require_non_negative(double value, const char* name);
// Throws kInvalidInput unless value is finite and > 0.
void require_positive(double value, const char* name);

}  // namespace chiral_nri
