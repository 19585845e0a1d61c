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

namespace chiral_nri {

enum class PolarizationMapping {
  /// P = N d34 rho43, M = N mu12 rho21 (parity-allowed moments).
  kParityConsistent,
  /// P = N d12 rho21, M = N mu34 rho43, with a1 = N d12 alpha_HE,
  /// a2 = N d12 alpha_HH, a3 = N mu34 alpha_EE, a4 = N mu34 alpha_EH.
  kPaperLiteral,
};

struct MediumConfig {
  double atom_density = 5.0e24;  // m^-3; 0 gives vacuum
  double wavelength = 600.0e-9;  // m
  PolarizationMapping mapping = PolarizationMapping::kParityConsistent;

  void validate() const;
};

/// d = sqrt(3 eps0 hbar Gamma lambda^3 / 8 pi^2), Gamma in s^-1.
double electric_dipole_from_rate(double rate_si, double wavelength);
/// mu = sqrt(3 hbar Gamma lambda^3 / (8 pi^2 mu0)), Gamma in s^-1.
double magnetic_dipole_from_rate(double rate_si, double wavelength);

/// d34 from gamma43 and mu12 from gamma21; the literal-mapping moments d12 and
/// mu34 use gamma21 and gamma43 respectively (0 when the rate is 0).
DipoleMoments dipole_moments(const DecayRates& rates, double wavelength);

/// P = a1 E + a2 B and M = a3 E + a4 B before local-field correction.
/// a1: F/m, a2: C m^-2 T^-1, a3: A m^-1 (V/m)^-1, a4: A m^-1 T^-1.
struct CouplingCoefficients {
  Complex a1;
  Complex a2;
  Complex a3;
  Complex a4;
};

CouplingCoefficients coupling_coefficients(const AlphaSet& alphas,
                                           const MediumConfig& medium,
                                           const DipoleMoments& dipoles);

/// Relative permittivity, permeability and the two chirality coefficients.
struct BianisotropicParameters {
  Complex eps_r{1.0, 0.0};
  Complex mu_r{1.0, 0.0};
  Complex xi_eh{0.0, 0.0};
  Complex xi_he{0.0, 0.0};
};

struct ChiralConstitutive {
  Complex eps_r{1.0, 0.0};
  Complex mu_r{1.0, 0.0};
  Complex xi_eh{0.0, 0.0};
  Complex xi_he{0.0, 0.0};
  Complex n{1.0, 0.0};
};

/// Macroscopic response P = p_e E + p_h H, M = m_e E + m_h H after the
/// local-field replacement E -> E + P/3eps0, B -> mu0 (H + M/3).
struct LocalFieldResponse {
  Complex p_e;
  Complex p_h;
  Complex m_e;
  Complex m_h;
  Complex determinant;  // 1 in vacuum
};

struct LocalFieldOptions {
  /// Points with |det| below this fraction of the vacuum value are singular.
  double singular_fraction = 1.0e-12;
};

/// Solves the 2x2 local-field system exactly. Throws kLocalFieldSingular.
LocalFieldResponse solve_local_field(const CouplingCoefficients& a,
                                     const LocalFieldOptions& options = {});

BianisotropicParameters local_field_solve(const CouplingCoefficients& a,
                                          const LocalFieldOptions& options = {});

/// n = sqrt(eps mu - (xi_eh + xi_he)^2 / 4) + (i/2)(xi_eh - xi_he), with the
/// root taken in the upper half plane (non-negative real part when Im = 0).
Complex refractive_index(const BianisotropicParameters& p);

ChiralConstitutive with_refractive_index(const BianisotropicParameters& p);

/// |a - b| / max(|a|, |b|); 0 when both are exactly zero.
double relative_deviation(const Complex& a, const Complex& b);

/// Closed-form permittivity, permeability and chirality coefficients written
/// directly in terms of a1..a4, compared with the canonical 2x2 solve.
struct PrintedFormReport {
  BianisotropicParameters printed;
  BianisotropicParameters canonical;
  bool canonical_available = false;
  double eps_deviation = 0.0;
  double mu_deviation = 0.0;
  double xi_eh_deviation = 0.0;
  double xi_he_deviation = 0.0;

  double max_deviation() const;
};

PrintedFormReport printed_form_crosscheck(const CouplingCoefficients& a);

}  // namespace chiral_nri
