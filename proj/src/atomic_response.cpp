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

#include "chiral_nri/atomic_response.hpp"

#include <cmath>

#include "chiral_nri/error.hpp"
#include "chiral_nri/physical_constants.hpp"

namespace chiral_nri {

namespace {

constexpr Complex kI{0.0, 1.0};

void require_finite_complex(const Complex& z, const char* name) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw Error(ErrorCode::kInvalidInput, std::string(name) + " is not finite");
}

void validate_inputs(const ResponseInputs& in) {
  const auto& d = in.dampings;
  for (double g : {d.rho21, d.rho31, d.rho41, d.rho42, d.rho43, d.rho32})
    require_non_negative(g, "coherence damping");
  require_non_negative(in.gamma31, "gamma31");
  in.drive.validate();
  in.detunings.validate();
}

Complex loop_phase(const AlphaOptions& options, double theta, bool he) {
  if (he && options.he_loop_phase == HeLoopPhase::kConjugate)
    return std::polar(1.0, -theta);
  return std::polar(1.0, theta);
}

void check_denominator(const Complex& denominator, double floor) {
  require_finite_complex(denominator, "shared denominator");
  if (std::abs(denominator) < floor)
    throw Error(ErrorCode::kSingularDenominator,
                "shared denominator below floor (resonance pole)");
}

}  // namespace

void DecayRates::validate() const {
  require_positive(gamma_scale, "gamma_scale");
  require_non_negative(gamma21, "gamma21");
  require_non_negative(gamma31, "gamma31");
  require_non_negative(gamma42, "gamma42");
  require_non_negative(gamma43, "gamma43");
  require_non_negative(gamma_c, "gamma_c");
}

void DriveConfig::validate() const {
  require_non_negative(omega_c, "omega_c");
  require_non_negative(omega_s, "omega_s");
  require_finite(theta, "theta");
}

void DetuningSet::validate() const {
  require_finite(delta_p, "delta_p");
  require_finite(delta_c, "delta_c");
  require_finite(delta_s, "delta_s");
  require_finite(delta_m, "delta_m");
}

CoherenceDampings derive_dampings(const DecayRates& rates, const DampingOptions& options) {
  rates.validate();
  constexpr double gamma1 = 0.0;
  const double gc = rates.gamma_c;
  const double level4 = rates.gamma42 + rates.gamma43;

  CoherenceDampings out;
  out.rho21 = 0.5 * (gamma1 + rates.gamma21) + gc;
  out.rho31 = 0.5 * (gamma1 + rates.gamma31) + gc;
  out.rho41 = 0.5 * (gamma1 + level4) + gc;
  out.rho42 = 0.5 * (rates.gamma21 + level4) + gc;
  out.rho43 = 0.5 * (rates.gamma31 + level4) + gc;
  out.rho32 = 0.5 * (rates.gamma31 + rates.gamma21);
  if (options.gamma6_includes_dephasing) out.rho32 += gc;
  return out;
}

ReducedResponse reduced_response_printed(const ResponseInputs& in,
                                         const AlphaOptions& options,
                                         AlphaDiagnostics* diagnostics) {
  validate_inputs(in);

  const double G1 = in.dampings.rho21;
  const double G2 = in.dampings.rho31;
  const double G3 = in.dampings.rho41;
  const double G5 = in.dampings.rho43;
  const double G6 = in.dampings.rho32;
  const double g31 = in.gamma31;
  const double Oc = in.drive.omega_c;
  const double Os = in.drive.omega_s;
  const double Dp = in.detunings.delta_p;
  const double Dc = in.detunings.delta_c;
  const double Dm = in.detunings.delta_m;
  const double Oc2 = Oc * Oc;
  const double Os2 = Os * Os;

  const double a0_den = G2 * G2 * g31 + g31 * Dc * Dc + 4.0 * G2 * Oc2;
  if (!(a0_den > 0.0))
    throw Error(ErrorCode::kSingularDenominator,
                "zeroth-order population denominator is not positive");
  const Complex A0 = kI / a0_den;

  const double a11_damping = options.ee_prefactor == EePrefactor::kAsPrinted ? G1 : G2;
  const Complex A11 = g31 * (G2 - kI * Dc) + 2.0 * a11_damping * (G3 + kI * (Dc + Dp));
  const Complex A12 = (G1 + kI * Dm) * (G6 - kI * (Dc - Dp)) + Oc2;
  const Complex A13 = Os2 * (kI * g31 * Dc - G2 * (g31 - 2.0 * G6 + 2.0 * kI * Dc - 2.0 * kI * Dp));
  const Complex A21 = (G2 - kI * Dc) * (G3 + G6 + 2.0 * kI * Dp) * (G2 * g31 + kI * g31 * Dc + Oc2);
  const Complex A22 = g31 * (G1 + kI * Dm) * (-G3 - kI * (Dc + Dp));
  const Complex A23 = G3 - g31 + G6 + 2.0 * kI * Dp;
  const Complex A31 = -G2 * g31 - kI * g31 * Dc - Oc2;
  const Complex A32 = G3 + kI * (Dc + Dp);
  const Complex A33 = G6 + kI * (Dp - Dc);
  const Complex A41 = G3 + G6 + 2.0 * kI * Dp;
  const Complex A42 = G3 + g31 + kI * (Dc + Dp);
  const Complex A43 = g31 * (Dp - kI * G5) + kI * Oc2;

  const Complex D0 = (G1 + kI * Dm) * (G6 - kI * (Dc - Dp)) + Oc2;
  const Complex D1 = (G5 + kI * Dp) * (G3 + kI * (Dc + Dp)) + Oc2;
  const Complex D2 = (kI * G6 + Dc - Dp) * (Dp - kI * G5) +
                     (G1 + kI * Dm) * (G3 + kI * (Dc + Dp)) - 2.0 * Oc2;
  const Complex D = D0 * D1 + D2 * Os2 + Os2 * Os2;

  if (diagnostics != nullptr) {
    *diagnostics = AlphaDiagnostics{A0,  A11, A12, A13, A21, A22, A23, A31, A32,
                                    A33, A41, A42, A43, D0,  D1,  D2,  D};
  }
  check_denominator(D, options.denominator_floor);

  const Complex eh_phase = loop_phase(options, in.drive.theta, false);
  const Complex he_phase = loop_phase(options, in.drive.theta, true);

  ReducedResponse out;
  out.ee = A0 * Oc2 * (A11 * A12 + A13) / D;
  out.eh = eh_phase * A0 * Oc * Os *
           (A21 - (G2 + kI * Dc) * (A22 - A23 * Oc2 - g31 * Os2)) / D;
  out.he = he_phase * A0 * Oc * Os *
           (A41 * (G2 + kI * Dc) * Oc2 +
            (kI * Dc - G2) * (g31 * Os2 - A42 * Oc2 + (kI * G6 + Dc - Dp) * A43)) / D;
  out.hh = A0 * A31 * (kI * Dc - G2) * (A33 * ((G5 + kI * Dp) * A32 + Oc2) + A32 * Os2) / D -
           A0 * Oc2 * (G2 + kI * Dc) *
               ((g31 - A33) * ((G5 + kI * Dp) * A32 + Oc2) - (A32 + g31) * Os2) / D;
  return out;
}

ReducedResponse reduced_response_regrouped(const ResponseInputs& in,
                                           const AlphaOptions& options) {
  validate_inputs(in);

  const auto& g = in.dampings;
  const double g31 = in.gamma31;
  const auto& det = in.detunings;
  const double c2 = in.drive.omega_c * in.drive.omega_c;
  const double s2 = in.drive.omega_s * in.drive.omega_s;
  const double cross = in.drive.omega_c * in.drive.omega_s;

  // Coherence factors: damping plus i times the coherence's detuning.
  const Complex z21{g.rho21, det.delta_m};
  const Complex z31{g.rho31, det.delta_c};
  const Complex z32{g.rho32, det.delta_p - det.delta_c};
  const Complex z41{g.rho41, det.delta_c + det.delta_p};
  const Complex z43{g.rho43, det.delta_p};
  const Complex z31c = std::conj(z31);

  const double population = g31 * std::norm(z31) + 4.0 * g.rho31 * c2;
  if (!(population > 0.0))
    throw Error(ErrorCode::kSingularDenominator,
                "zeroth-order population denominator is not positive");
  const Complex prefactor = Complex{0.0, 1.0} / population;

  const Complex d0 = z21 * z32 + c2;
  const Complex d1 = z43 * z41 + c2;
  const Complex d2 = z32 * z43 + z21 * z41 - 2.0 * c2;
  const Complex denominator = d0 * d1 + s2 * (d2 + s2);
  check_denominator(denominator, options.denominator_floor);

  const double ee_damping =
      options.ee_prefactor == EePrefactor::kAsPrinted ? g.rho21 : g.rho31;
  const Complex dressed31 = g31 * z31 + c2;

  const Complex ee_num =
      c2 * ((g31 * z31c + 2.0 * ee_damping * z41) * d0 +
            s2 * (2.0 * g.rho31 * z32 - g31 * z31c));

  const Complex eh_num =
      cross * (z31c * (z41 + z32) * dressed31 +
               z31 * (g31 * z21 * z41 + (z41 + z32 - g31) * c2) + s2 * g31 * z31);

  const Complex he_num =
      cross * ((z41 + z32) * z31 * c2 +
               z31c * ((z41 + g31) * c2 - z32 * (g31 * z43 - c2)) - s2 * g31 * z31c);

  const Complex hh_num =
      d1 * (z31c * dressed31 * z32 - c2 * z31 * (g31 - z32)) +
      s2 * (z31c * dressed31 * z41 + c2 * z31 * (z41 + g31));

  const double theta = in.drive.theta;
  const double he_sign = options.he_loop_phase == HeLoopPhase::kConjugate ? -1.0 : 1.0;

  ReducedResponse out;
  out.ee = prefactor * ee_num / denominator;
  out.eh = std::polar(1.0, theta) * prefactor * eh_num / denominator;
  out.he = std::polar(1.0, he_sign * theta) * prefactor * he_num / denominator;
  out.hh = prefactor * hh_num / denominator;
  return out;
}

AlphaSet scale_to_si(const ReducedResponse& reduced, const DipoleMoments& dipoles,
                     double gamma_scale) {
  const double electric = dipoles.d34 / (si::kHbar * gamma_scale);
  const double magnetic = dipoles.mu12 / (si::kHbar * gamma_scale);
  return AlphaSet{reduced.ee * electric, reduced.eh * magnetic, reduced.he * electric,
                  reduced.hh * magnetic};
}

AlphaSet alpha_coefficients(const CoherenceDampings& dampings, const DriveConfig& drive,
                            const DetuningSet& detunings, const DipoleMoments& dipoles,
                            const DecayRates& rates, const AlphaOptions& options,
                            AlphaDiagnostics* diagnostics) {
  rates.validate();
  require_non_negative(dipoles.d34, "d34");
  require_non_negative(dipoles.mu12, "mu12");
  const ResponseInputs in{dampings, rates.gamma31, drive, detunings};
  return scale_to_si(reduced_response_printed(in, options, diagnostics), dipoles,
                     rates.gamma_scale);
}

}  // namespace chiral_nri
