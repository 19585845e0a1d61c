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

#include <complex>
#include <numbers>

namespace chiral_nri {

using Complex = std::complex<double>;

/// Spontaneous-emission and dephasing rates of the four-level loop.
///
/// Every rate except `gamma_scale` is dimensionless, in units of
/// `gamma_scale` (s^-1). Level 1 is the ground state and does not decay.
struct DecayRates {
  double gamma_scale = 1.0e8;
  double gamma21 = 1.0 / (137.0 * 137.0);  // magnetic-dipole 2 -> 1
  double gamma31 = 1.0;
  double gamma42 = 1.0;
  double gamma43 = 1.0;                    // electric-dipole 4 -> 3
  double gamma_c = 1.0;                    // collisional dephasing

  void validate() const;
};

struct DampingOptions {
  /// Add gamma_c to the 2-3 coherence damping. The closed forms omit it.
  bool gamma6_includes_dephasing = false;
};

/// Damping of the six optical coherences, named after the coherence they damp
/// (rho21 is Gamma_1 ... rho32 is Gamma_6). Units of gamma_scale.
struct CoherenceDampings {
  double rho21 = 0.0;
  double rho31 = 0.0;
  double rho41 = 0.0;
  double rho42 = 0.0;  // not used by the closed forms
  double rho43 = 0.0;
  double rho32 = 0.0;
};

CoherenceDampings derive_dampings(const DecayRates& rates,
                                  const DampingOptions& options = {});

/// Control and signal drives. Rabi frequencies in units of gamma; theta is the
/// control-minus-signal phase in radians.
struct DriveConfig {
  double omega_c = 1.3;
  double omega_s = 20.0;
  double theta = std::numbers::pi / 5.0;

  void validate() const;
};

/// The four detunings, treated as independent knobs (units of gamma).
struct DetuningSet {
  double delta_p = 0.0;
  double delta_c = 0.001;
  double delta_s = 0.0;
  double delta_m = 0.001;

  void validate() const;
};

/// Transition dipole moments. d34/mu12 are the parity-allowed moments; d12 and
/// mu34 are what the radical gives for the other pairing and are only used by
/// the literal polarization mapping.
struct DipoleMoments {
  double d34 = 0.0;   // C m
  double mu12 = 0.0;  // A m^2
  double d12 = 0.0;   // C m
  double mu34 = 0.0;  // A m^2
};

/// First-order coherences per unit probe field:
///   rho43 = ee * E + eh * B,   rho21 = he * E + hh * B
/// ee and he in m/V, eh and hh in 1/T.
struct AlphaSet {
  Complex ee;
  Complex eh;
  Complex he;
  Complex hh;
};

/// Same coefficients per unit Rabi frequency (Rabi frequency in units of
/// gamma). alpha = reduced * dipole / (hbar * gamma_scale).
struct ReducedResponse {
  Complex ee;
  Complex eh;
  Complex he;
  Complex hh;
};

enum class HeLoopPhase {
  kAsPrinted,  // e^{+i theta}, as in the closed form
  kConjugate,  // e^{-i theta}, what the Liouville solve gives
};

enum class EePrefactor {
  kAsPrinted,        // 2 Gamma_1 in A11
  kControlCoherence, // 2 Gamma_2 in A11, what the Liouville solve gives
};

struct AlphaOptions {
  /// |D0 D1 + D2 Os^2 + Os^4| floor, dimensionless (units of gamma^4).
  double denominator_floor = 1.0e-30;
  HeLoopPhase he_loop_phase = HeLoopPhase::kAsPrinted;
  EePrefactor ee_prefactor = EePrefactor::kAsPrinted;
};

/// Intermediate terms of the closed-form evaluation (dimensionless).
struct AlphaDiagnostics {
  Complex a0, a11, a12, a13, a21, a22, a23, a31, a32, a33, a41, a42, a43;
  Complex d0, d1, d2;
  Complex denominator;
};

struct ResponseInputs {
  CoherenceDampings dampings;
  double gamma31 = 1.0;
  DriveConfig drive;
  DetuningSet detunings;
};

/// Literal transcription of the closed forms. Throws kSingularDenominator at a
/// pole and kInvalidInput on non-finite parameters.
ReducedResponse reduced_response_printed(const ResponseInputs& in,
                                         const AlphaOptions& options = {},
                                         AlphaDiagnostics* diagnostics = nullptr);

/// The same rational functions rewritten in terms of the complex coherence
/// factors z_ij = Gamma_ij + i Delta_ij and grouped as polynomials in Os^2.
/// Shares no intermediate with reduced_response_printed.
ReducedResponse reduced_response_regrouped(const ResponseInputs& in,
                                           const AlphaOptions& options = {});

AlphaSet scale_to_si(const ReducedResponse& reduced, const DipoleMoments& dipoles,
                     double gamma_scale);

AlphaSet alpha_coefficients(const CoherenceDampings& dampings,
                            const DriveConfig& drive, const DetuningSet& detunings,
                            const DipoleMoments& dipoles, const DecayRates& rates,
                            const AlphaOptions& options = {},
                            AlphaDiagnostics* diagnostics = nullptr);

}  // namespace chiral_nri
