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

#include "chiral_nri/pipeline.hpp"

#include "chiral_nri/error.hpp"

namespace chiral_nri {

ResponseModel::ResponseModel(const PhysicsConfig& config)
    : config_(config),
      dampings_(derive_dampings(config.rates, config.damping)),
      dipoles_(dipole_moments(config.rates, config.medium.wavelength)) {
  config_.medium.validate();
  require_non_negative(config_.alpha.denominator_floor, "denominator_floor");
  require_non_negative(config_.local_field.singular_fraction, "local-field floor");
}

ReducedResponse ResponseModel::reduced(const DriveConfig& drive, const DetuningSet& detunings,
                                       const AlphaOptions& options) const {
  const ResponseInputs in{dampings_, config_.rates.gamma31, drive, detunings};
  return reduced_response_printed(in, options);
}

AlphaSet ResponseModel::alphas(const DriveConfig& drive, const DetuningSet& detunings) const {
  return scale_to_si(reduced(drive, detunings, config_.alpha), dipoles_,
                     config_.rates.gamma_scale);
}

PointEvaluation ResponseModel::evaluate(const DriveConfig& drive,
                                        const DetuningSet& detunings) const {
  PointEvaluation out;
  out.alphas = alphas(drive, detunings);
  out.couplings = coupling_coefficients(out.alphas, config_.medium, dipoles_);
  out.constitutive =
      with_refractive_index(local_field_solve(out.couplings, config_.local_field));
  return out;
}

oracle::OracleAlphaSet ResponseModel::oracle(const DriveConfig& drive,
                                             const DetuningSet& detunings,
                                             oracle::FrameConvention frame) const {
  const auto model = oracle::build_model(config_.rates, config_.damping, drive, detunings, frame);
  return oracle::oracle_alpha_set(model, dipoles_, config_.rates.gamma_scale);
}

}  // namespace chiral_nri
