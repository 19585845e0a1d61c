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

#include <numbers>

// CODATA 2018 values, SI units.
namespace chiral_nri::si {

inline constexpr double kHbar = 1.054571817e-34;          // J s
inline constexpr double kEpsilon0 = 8.8541878128e-12;     // F/m
inline constexpr double kMu0 = 1.25663706212e-6;          // N/A^2
inline constexpr double kSpeedOfLight = 299792458.0;      // m/s
inline constexpr double kBohrMagneton = 9.2740100783e-24; // J/T
inline constexpr double kPi = std::numbers::pi;

}  // namespace chiral_nri::si
