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

#include "chiral_nri/constitutive.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "chiral_nri/error.hpp"
#include "chiral_nri/physical_constants.hpp"

namespace chiral_nri {

using si::kEpsilon0;
using si::kMu0;
using si::kSpeedOfLight;

void MediumConfig::validate() const {
  require_non_negative(atom_density, "atom_density");
  require_positive(wavelength, "wavelength");
}

double electric_dipole_from_rate(double rate_si, double wavelength) {
  require_positive(rate_si, "electric decay rate");
  require_positive(wavelength, "wavelength");
  const double l3 = wavelength * wavelength * wavelength;
  return std::sqrt(3.0 * kEpsilon0 * si::kHbar * rate_si * l3 / (8.0 * si::kPi * si::kPi));
}

double magnetic_dipole_from_rate(double rate_si, double wavelength) {
  require_positive(rate_si, "magnetic decay rate");
  require_positive(wavelength, "wavelength");
  const double l3 = wavelength * wavelength * wavelength;
  return std::sqrt(3.0 * si::kHbar * rate_si * l3 / (8.0 * si::kPi * si::kPi * kMu0));
}

DipoleMoments dipole_moments(const DecayRates& rates, double wavelength) {
  rates.validate();
  const double g = rates.gamma_scale;
  DipoleMoments out;
  out.d34 = electric_dipole_from_rate(rates.gamma43 * g, wavelength);
  out.mu12 = magnetic_dipole_from_rate(rates.gamma21 * g, wavelength);
  out.d12 = electric_dipole_from_rate(rates.gamma21 * g, wavelength);
  out.mu34 = magnetic_dipole_from_rate(rates.gamma43 * g, wavelength);
  return out;
}

CouplingCoefficients coupling_coefficients(const AlphaSet& alphas, const MediumConfig& medium,
                                           const DipoleMoments& dipoles) {
  medium.validate();
  const double n = medium.atom_density;
  if (medium.mapping == PolarizationMapping::kPaperLiteral) {
    return {n * dipoles.d12 * alphas.he, n * dipoles.d12 * alphas.hh,
            n * dipoles.mu34 * alphas.ee, n * dipoles.mu34 * alphas.eh};
  }
  return {n * dipoles.d34 * alphas.ee, n * dipoles.d34 * alphas.eh,
          n * dipoles.mu12 * alphas.he, n * dipoles.mu12 * alphas.hh};
}

LocalFieldResponse solve_local_field(const CouplingCoefficients& a,
                                     const LocalFieldOptions& options) {
  // [1 - a1/3e0   -mu0 a2/3] [P]   [a1 E + mu0 a2 H]
  // [-a3/3e0    1 - mu0 a4/3] [M] = [a3 E + mu0 a4 H]
  const Complex m11 = 1.0 - a.a1 / (3.0 * kEpsilon0);
  const Complex m12 = -kMu0 * a.a2 / 3.0;
  const Complex m21 = -a.a3 / (3.0 * kEpsilon0);
  const Complex m22 = 1.0 - kMu0 * a.a4 / 3.0;
  const Complex det = m11 * m22 - m12 * m21;
  if (!std::isfinite(det.real()) || !std::isfinite(det.imag()))
    throw Error(ErrorCode::kInvalidInput, "non-finite coupling coefficients");
  if (std::abs(det) < options.singular_fraction)
    throw Error(ErrorCode::kLocalFieldSingular,
                "local-field determinant below floor (Clausius-Mossotti resonance)");

  // Columns of the right-hand side: E -> (a1, a3), H -> mu0 (a2, a4).
  const Complex rhs_e1 = a.a1, rhs_e2 = a.a3;
  const Complex rhs_h1 = kMu0 * a.a2, rhs_h2 = kMu0 * a.a4;

  LocalFieldResponse out;
  out.determinant = det;
  out.p_e = (m22 * rhs_e1 - m12 * rhs_e2) / det;
  out.m_e = (m11 * rhs_e2 - m21 * rhs_e1) / det;
  out.p_h = (m22 * rhs_h1 - m12 * rhs_h2) / det;
  out.m_h = (m11 * rhs_h2 - m21 * rhs_h1) / det;
  return out;
}

BianisotropicParameters local_field_solve(const CouplingCoefficients& a,
                                          const LocalFieldOptions& options) {
  const LocalFieldResponse r = solve_local_field(a, options);
  BianisotropicParameters p;
  p.eps_r = 1.0 + r.p_e / kEpsilon0;
  p.mu_r = 1.0 + r.m_h;
  p.xi_eh = kSpeedOfLight * r.p_h;
  p.xi_he = kSpeedOfLight * kMu0 * r.m_e;
  return p;
}

Complex refractive_index(const BianisotropicParameters& p) {
  for (const Complex& z : {p.eps_r, p.mu_r, p.xi_eh, p.xi_he}) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw Error(ErrorCode::kInvalidInput, "non-finite constitutive parameter");
  }
  const Complex sum = p.xi_eh + p.xi_he;
  Complex root = std::sqrt(p.eps_r * p.mu_r - 0.25 * sum * sum);
  if (root.imag() < 0.0 || (root.imag() == 0.0 && root.real() < 0.0)) root = -root;
  return root + Complex{0.0, 0.5} * (p.xi_eh - p.xi_he);
}

ChiralConstitutive with_refractive_index(const BianisotropicParameters& p) {
  return {p.eps_r, p.mu_r, p.xi_eh, p.xi_he, refractive_index(p)};
}

double relative_deviation(const Complex& a, const Complex& b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  if (scale == 0.0) return 0.0;
  return std::abs(a - b) / scale;
}

double PrintedFormReport::max_deviation() const {
  return std::max({eps_deviation, mu_deviation, xi_eh_deviation, xi_he_deviation});
}

PrintedFormReport printed_form_crosscheck(const CouplingCoefficients& a) {
  const double e0 = kEpsilon0;
  const double u0 = kMu0;
  const Complex a1 = a.a1, a2 = a.a2, a3 = a.a3, a4 = a.a4;

  const Complex den = -3.0 * a1 + u0 * (-a3 * a2 + a4 * (a1 - 3.0 * e0)) + 9.0 * e0;

  PrintedFormReport report;
  report.printed.eps_r = (6.0 * a1 + 9.0 * e0 + u0 * (2.0 * a3 * a2 - a4 * (2.0 * a1 + 3.0 * e0))) / den;
  report.printed.mu_r = (-3.0 * a1 + 2.0 * u0 * (a3 * a2 - a4 * (a1 - 3.0 * e0)) + 9.0 * e0) / den;
  report.printed.xi_eh = 9.0 * kSpeedOfLight * u0 * a2 * e0 / den;
  report.printed.xi_he = 9.0 * kSpeedOfLight * u0 * a3 * e0 / den;

  try {
    report.canonical = local_field_solve(a);
    report.canonical_available = true;
  } catch (const Error&) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    report.eps_deviation = report.mu_deviation = nan;
    report.xi_eh_deviation = report.xi_he_deviation = nan;
    return report;
  }
  report.eps_deviation = relative_deviation(report.printed.eps_r, report.canonical.eps_r);
  report.mu_deviation = relative_deviation(report.printed.mu_r, report.canonical.mu_r);
  report.xi_eh_deviation = relative_deviation(report.printed.xi_eh, report.canonical.xi_eh);
  report.xi_he_deviation = relative_deviation(report.printed.xi_he, report.canonical.xi_he);
  return report;
}

}  // namespace chiral_nri
