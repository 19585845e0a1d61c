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

#include "chiral_nri/atomic_response.hpp"
#include "chiral_nri/constitutive.hpp"
#include "chiral_nri/liouville_oracle.hpp"

namespace chiral_nri {

/// Everything about the medium that stays fixed across a sweep.
struct PhysicsConfig {
  DecayRates rates;
  MediumConfig medium;
  DampingOptions damping;
  AlphaOptions alpha;
  LocalFieldOptions local_field;
};

struct PointEvaluation {
  AlphaSet alphas;
  CouplingCoefficients couplings;
  ChiralConstitutive constitutive;
};

/// Validated physics configuration with the derived dampings and dipole
/// moments cached. Immutable; safe to share between threads.
class ResponseModel {
 public:
  explicit ResponseModel(const PhysicsConfig& config);

  const PhysicsConfig& config() const { return config_; }
  const CoherenceDampings& dampings() const { return dampings_; }
  const DipoleMoments& dipoles() const { return dipoles_; }

  ReducedResponse reduced(const DriveConfig& drive, const DetuningSet& detunings,
                          const AlphaOptions& options) const;
  AlphaSet alphas(const DriveConfig& drive, const DetuningSet& detunings) const;

  /// Closed forms -> couplings -> local-field solve -> refractive index.
  /// Throws kSingularDenominator or kLocalFieldSingular at singular points.
  PointEvaluation evaluate(const DriveConfig& drive, const DetuningSet& detunings) const;

  oracle::OracleAlphaSet oracle(const DriveConfig& drive, const DetuningSet& detunings,
                                oracle::FrameConvention frame) const;

 private:
  PhysicsConfig config_;
  CoherenceDampings dampings_;
  DipoleMoments dipoles_;
};

}  // namespace chiral_nri
