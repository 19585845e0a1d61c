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

#include <Eigen/Dense>
#include <array>
#include <vector>

#include "chiral_nri/atomic_response.hpp"

namespace chiral_nri::oracle {

// Zero-based level indices.
inline constexpr int kLevel1 = 0;
inline constexpr int kLevel2 = 1;
inline constexpr int kLevel3 = 2;
inline constexpr int kLevel4 = 3;

using Superoperator = Eigen::Matrix<Complex, 16, 16>;
using DensityMatrix = Eigen::Matrix<Complex, 4, 4>;
using DensityVector = Eigen::Matrix<Complex, 16, 1>;

enum class FieldRole { kControl, kSignal, kProbeElectric, kProbeMagnetic };

/// One drive term -(rabi e^{-i phase} |upper><lower| + h.c.) in the rotating
/// frame. Rabi frequencies in units of gamma.
struct Coupling {
  FieldRole role;
  int upper;
  int lower;
  double rabi;
  double phase;
};

/// Spontaneous decay from -> to at `rate` (units of gamma).
struct DecayChannel {
  int from;
  int to;
  double rate;
};

enum class FrameConvention {
  /// Coherence detunings rho21: Dm, rho23: Dp - Dc, rho41: Dc + Dp, rho43: Dp.
  /// Reproduces the loop bookkeeping behind the closed forms.
  kIndependentDetunings,
  /// Level energies (0, Dm, Dc, Dc + Dp); rho23 then carries Dm - Dc.
  kLevelFrame,
};

struct RotatingFrameModel {
  std::array<double, 4> level_energies{};
  /// Zeroth-order drives (control and signal).
  std::vector<Coupling> couplings;
  std::vector<DecayChannel> decays;
  /// Pure dephasing added to coherence (i, j), symmetric.
  std::array<std::array<double, 4>, 4> dephasing{};
  /// Extra detuning of the magnetic-probe coherence rho21 in the first-order
  /// generator (independent-detuning bookkeeping).
  double magnetic_probe_offset = 0.0;
};

RotatingFrameModel build_model(const DecayRates& rates, const DampingOptions& damping,
                               const DriveConfig& drive, const DetuningSet& detunings,
                               FrameConvention frame = FrameConvention::kIndependentDetunings);

/// Column-major vectorization index of rho_ij.
constexpr int vec_index(int i, int j) { return j * 4 + i; }

/// Time-independent generator of the zeroth-order problem. Throws kInvalidModel
/// for a coupling on a transition its role does not allow.
Superoperator build_zeroth_liouvillian(const RotatingFrameModel& model);

/// -i [H1, .] for H1 = -(amplitude |upper><lower| + h.c.).
Superoperator coupling_superoperator(int upper, int lower, Complex amplitude);

/// Generator of the first-order (probe-harmonic) problem: the zeroth-order
/// generator with the magnetic-probe coherence offset applied.
Superoperator shifted_generator(const RotatingFrameModel& model, const Superoperator& zeroth);

struct DensityState {
  DensityMatrix rho;
  int kernel_dimension = 0;
  double residual = 0.0;
};

int kernel_dimension(const Superoperator& generator, double tolerance = 1.0e-10);

/// Kernel of the generator normalized to unit trace via a bordered solve (one
/// population row replaced by the trace functional). Throws kDegenerateKernel
/// unless the kernel is one-dimensional.
DensityState zeroth_steady_state(const Superoperator& generator);

enum class ProbeChannel { kElectric, kMagnetic };

struct FirstOrderResponse {
  DensityMatrix sigma;
  Complex sigma43;
  Complex sigma21;
  double residual = 0.0;
};

/// Linear response to a probe of Rabi amplitude `amplitude` (units of gamma)
/// on the chosen channel. Throws kSingularShiftedGenerator at a pole.
FirstOrderResponse first_order_response(const RotatingFrameModel& model,
                                        const Superoperator& zeroth,
                                        const DensityMatrix& rho0, ProbeChannel channel,
                                        Complex amplitude = 1.0);

/// Full steady state with finite probe Rabi amplitudes, for finite-difference
/// checks of the linear response.
DensityMatrix steady_state_with_probe(const RotatingFrameModel& model, Complex probe_e,
                                      Complex probe_b);

struct OracleAlphaSet {
  ReducedResponse reduced;
  AlphaSet alphas;
  DensityMatrix rho0;
  double max_residual = 0.0;
};

OracleAlphaSet oracle_alpha_set(const RotatingFrameModel& model, const DipoleMoments& dipoles,
                                double gamma_scale);

struct AlphaComparison {
  /// Relative deviation per coefficient, order ee, eh, he, hh.
  std::array<double, 4> deviation{};
  /// Every coefficient that is exactly zero on one side is exactly zero on the other.
  bool structural_zeros_match = true;

  double max_deviation() const;
};

AlphaComparison compare_alpha(const ReducedResponse& oracle, const ReducedResponse& closed);
AlphaComparison compare_alpha(const OracleAlphaSet& oracle, const AlphaSet& closed);

}  // namespace chiral_nri::oracle
