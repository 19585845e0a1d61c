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

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "chiral_nri/pipeline.hpp"

namespace chiral_nri::sweep {

/// Uniform probe-detuning grid (units of gamma), endpoints included.
struct DetuningGrid {
  double start = -5.0;
  double stop = 5.0;
  std::size_t count = 2001;

  void validate() const;
  double at(std::size_t index) const;
};

struct Scenario {
  std::string label;
  double theta = 0.0;  // radians
  double omega_c = 0.0;
};

/// The six (theta, Omega_c) pairs of the refractive-index panels.
std::vector<Scenario> default_scenarios();

struct SweepPlan {
  DetuningGrid grid;
  std::vector<Scenario> scenarios = default_scenarios();
  PhysicsConfig physics;
  double omega_s = 20.0;
  double delta_c = 0.001;
  double delta_m = 0.001;
  double delta_s = 0.0;
  std::size_t oracle_stride = 50;
  oracle::FrameConvention oracle_frame = oracle::FrameConvention::kIndependentDetunings;
  /// Largest acceptable steady-state residual in oracle-check.
  double oracle_residual_tolerance = 1.0e-10;

  void validate() const;
  DriveConfig drive_for(const Scenario& scenario) const;
  DetuningSet detunings_at(double delta_p) const;
};

enum class PointFlag { kNone, kPole, kLocalFieldSingular };

/// "", "pole" or "local_field_singular".
const char* flag_name(PointFlag flag);
std::optional<PointFlag> parse_flag(std::string_view name);

struct SpectrumRecord {
  double delta_p = 0.0;
  PointFlag flag = PointFlag::kNone;
  ChiralConstitutive values;  // meaningful only when flag == kNone

  bool ok() const { return flag == PointFlag::kNone; }
};

struct ScenarioSpectrum {
  Scenario scenario;
  std::vector<SpectrumRecord> records;
};

SpectrumRecord evaluate_record(const ResponseModel& model, const SweepPlan& plan,
                               const Scenario& scenario, double delta_p);

/// One record per grid point, in grid order, independent of `jobs`.
std::vector<SpectrumRecord> run_scenario(const ResponseModel& model, const SweepPlan& plan,
                                         const Scenario& scenario, unsigned jobs = 1);

std::vector<ScenarioSpectrum> run_sweep(const SweepPlan& plan, unsigned jobs = 1);

struct BandEdge {
  double position = 0.0;
  /// True when the edge lies between two unflagged grid points whose Re(n)
  /// change sign; false when the band runs into the grid end or a flagged point.
  bool bracketed = false;
};

/// Maximal run of consecutive unflagged records with Re(n) < 0.
struct NegativeBand {
  BandEdge lo;
  BandEdge hi;
  std::size_t first_index = 0;
  std::size_t last_index = 0;
  double width = 0.0;
  double min_re_n = 0.0;
  double min_re_n_at = 0.0;
  double max_im_n = 0.0;
  double min_im_n = 0.0;
};

struct BandReport {
  std::vector<NegativeBand> bands;
  /// max |xi_eh + xi_he| / (|xi_eh| + |xi_he|) over the sweep; empty when
  /// every point has vanishing chirality.
  std::optional<double> max_antisymmetry;

  double total_width() const;
};

/// Records must be sorted by strictly increasing delta_p.
BandReport detect_negative_bands(std::span<const SpectrumRecord> records);

bool is_non_decreasing(std::span<const double> values);

/// |xi_eh + xi_he| / (|xi_eh| + |xi_he|); empty for 0/0.
std::optional<double> antisymmetry(const ChiralConstitutive& c);

std::optional<double> max_antisymmetry(std::span<const SpectrumRecord> records,
                                       double lo = -std::numeric_limits<double>::infinity(),
                                       double hi = std::numeric_limits<double>::infinity());

/// Sign census of Re(eps), Re(mu) over band points with Re(n) < 0.
struct SignCensus {
  std::size_t eps_neg_mu_neg = 0;
  std::size_t eps_neg_mu_nonneg = 0;
  std::size_t eps_nonneg_mu_neg = 0;
  std::size_t eps_nonneg_mu_nonneg = 0;
};

struct ScenarioSummary {
  std::size_t valid_points = 0;
  std::size_t flagged_points = 0;
  std::optional<double> min_re_n;
  double min_re_n_at = 0.0;
  std::size_t band_count = 0;
  double total_band_width = 0.0;
  SignCensus census_in_bands;
  /// Every band contains a point with Re(n) < 0 and Re(mu) > 0.
  bool every_band_has_positive_mu = true;
  std::optional<double> max_antisymmetry;
};

ScenarioSummary summarize_metrics(std::span<const SpectrumRecord> records,
                                  const BandReport& bands);

/// Index of the scenario with the most negative min Re(n).
std::optional<std::size_t> most_negative_scenario(std::span<const ScenarioSummary> summaries);

// Oracle comparison along a sweep.

struct OracleRow {
  std::size_t index = 0;
  double delta_p = 0.0;
  bool evaluated = false;
  std::string excluded_reason;
  ReducedResponse closed;
  ReducedResponse oracle;
  ReducedResponse repaired;  // closed forms with the two known repairs applied
  double residual = 0.0;
  oracle::AlphaComparison printed_vs_oracle;
  oracle::AlphaComparison repaired_vs_oracle;
};

struct ScenarioOracleTable {
  Scenario scenario;
  std::vector<OracleRow> rows;
};

/// A coefficient whose closed form misses the oracle by more than the target.
struct ErrataFinding {
  std::string scenario;
  std::string coefficient;         // "alpha_EE", ...
  std::string printed_expression;  // which printed expression is implicated
  double max_deviation = 0.0;
  double at_delta_p = 0.0;
  std::string repair;              // empty when no repair is known
  double repaired_max_deviation = 0.0;
};

struct OracleCheckReport {
  std::vector<ScenarioOracleTable> tables;
  std::vector<ErrataFinding> findings;
  double residual_tolerance = 1.0e-10;
  double agreement_target = 1.0e-6;
  double max_residual = 0.0;
  bool structural_zeros_match = true;
  std::size_t excluded_points = 0;

  bool residuals_ok() const { return max_residual < residual_tolerance; }
};

/// Oracle at every `oracle_stride`-th grid point of every scenario.
OracleCheckReport run_oracle_check(const SweepPlan& plan, unsigned jobs = 1);

}  // namespace chiral_nri::sweep
