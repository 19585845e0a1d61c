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

#include "chiral_nri/error.hpp"

#include <cmath>

namespace chiral_nri {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kInvalidInput: return "InvalidInput";
    case ErrorCode::kSingularDenominator: return "SingularDenominator";
    case ErrorCode::kLocalFieldSingular: return "LocalFieldSingular";
    case ErrorCode::kInvalidModel: return "InvalidModel";
    case ErrorCode::kDegenerateKernel: return "DegenerateKernel";
    case ErrorCode::kSingularShiftedGenerator: return "SingularShiftedGenerator";
    case ErrorCode::kConfig: return "ConfigError";
    case ErrorCode::kIo: return "IoError";
    case ErrorCode::kEmptyOutput: return "EmptyOutput";
  }
  return "Unknown";
}

void require_finite(double value, const char* name) {
  if (!std::isfinite(value))
    throw Error(ErrorCode::kInvalidInput, std::string(name) + " must be finite");
}

void require_non_negative(double value, const char* name) {
  require_finite(value, name);
  if (value < 0.0)
    throw Error(ErrorCode::kInvalidInput, std::string(name) + " must be >= 0");
}

void require_positive(double value, const char* name) {
  require_finite(value, name);
  if (!(value > 0.0))
    throw Error(ErrorCode::kInvalidInput, std::string(name) + " must be > 0");
}

}  // namespace chiral_nri
