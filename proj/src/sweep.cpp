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

#include "chiral_nri/sweep.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <thread>

#include "chiral_nri/error.hpp"

namespace chiral_nri::sweep {

namespace {

// Runs body(i) for i in [0, n) on up to `jobs` threads, contiguous chunks.
template <class Body>
void parallel_for(std::size_t n, unsigned jobs, Body&& body) {
  const std::size_t workers = std::clamp<std::size_t>(jobs, 1, std::max<std::size_t>(n, 1));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::jthread> threads;
  threads.reserve(workers);
  const std::size_t chunk = (n + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(n, begin + chunk);
    if (begin >= end) break;
    threads.emplace_back([begin, end, &body] {
      for (std::size_t i = begin; i < end; ++i) body(i);
    });
  }
}

double re_n(const SpectrumRecord& r) { return r.values.n.real(); }

// Zero of the linear interpolant of Re(n) between two records.
double crossing(const SpectrumRecord& a, const SpectrumRecord& b) {
  const double ya = re_n(a), yb = re_n(b);
  if (ya == yb) return a.delta_p;
  return a.delta_p + (b.delta_p - a.delta_p) * ya / (ya - yb);
}

}  // namespace

void DetuningGrid::validate() const {
  require_finite(start, "grid start");
  require_finite(stop, "grid stop");
  if (count < 2) throw Error(ErrorCode::kInvalidInput, "grid count must be >= 2");
  if (!(stop > start)) throw Error(ErrorCode::kInvalidInput, "grid must be strictly increasing");
}

double DetuningGrid::at(std::size_t index) const {
  if (index + 1 == count) return stop;
  return start + (stop - start) * static_cast<double>(index) / static_cast<double>(count - 1);
}

std::vector<Scenario> default_scenarios() {
  constexpr double pi = std::numbers::pi;
  return {
      {"fig3a_omega_c_0.4", pi / 5.0, 0.4}, {"fig3a_omega_c_0.8", pi / 5.0, 0.8},
      {"fig3a_omega_c_1.3", pi / 5.0, 1.3}, {"fig3b_omega_c_1", 1.5 * pi, 1.0},
      {"fig3b_omega_c_1.4", 1.5 * pi, 1.4}, {"fig3b_omega_c_1.8", 1.5 * pi, 1.8},
  };
}

void SweepPlan::validate() const {
  grid.validate();
  if (oracle_stride == 0) throw Error(ErrorCode::kInvalidInput, "oracle_stride must be >= 1");
  if (!(oracle_residual_tolerance > 0.0) || !std::isfinite(oracle_residual_tolerance))
    throw Error(ErrorCode::kInvalidInput, "oracle_residual_tolerance must be finite and > 0");
  require_non_negative(omega_s, "omega_s");
  require_finite(delta_c, "delta_c");
  require_finite(delta_m, "delta_m");
  require_finite(delta_s, "delta_s");
  for (std::size_t i = 0; i < scenarios.size(); ++i) {
    const Scenario& s = scenarios[i];
    if (s.label.empty()) throw Error(ErrorCode::kInvalidInput, "scenario label is empty");
    require_finite(s.theta, "theta");
    require_non_negative(s.omega_c, "omega_c");
    for (std::size_t j = 0; j < i; ++j) {
      if (scenarios[j].label == s.label)
        throw Error(ErrorCode::kInvalidInput, "duplicate scenario label '" + s.label + "'");
    }
  }
}

DriveConfig SweepPlan::drive_for(const Scenario& scenario) const {
  return DriveConfig{scenario.omega_c, omega_s, scenario.theta};
}

DetuningSet SweepPlan::detunings_at(double delta_p) const {
  return DetuningSet{delta_p, delta_c, delta_s, delta_m};
}

const char* flag_name(PointFlag flag) {
  switch (flag) {
    case PointFlag::kNone: return "";
    case PointFlag::kPole: return "pole";
    case PointFlag::kLocalFieldSingular: return "local_field_singular";
  }
  return "";
}

std::optional<PointFlag> parse_flag(std::string_view name) {
  for (PointFlag f : {PointFlag::kNone, PointFlag::kPole, PointFlag::kLocalFieldSingular})
    if (name == flag_name(f)) return f;
  return std::nullopt;
}

SpectrumRecord evaluate_record(const ResponseModel& model, const SweepPlan& plan,
                               const Scenario& scenario, double delta_p) {
  SpectrumRecord record;
  record.delta_p = delta_p;
  try {
    record.values = model.evaluate(plan.drive_for(scenario), plan.detunings_at(delta_p)).constitutive;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kSingularDenominator) {
      record.flag = PointFlag::kPole;
    } else if (e.code() == ErrorCode::kLocalFieldSingular) {
      record.flag = PointFlag::kLocalFieldSingular;
    } else {
      throw;
    }
    record.values = ChiralConstitutive{};
  }
  return record;
}

std::vector<SpectrumRecord> run_scenario(const ResponseModel& model, const SweepPlan& plan,
                                         const Scenario& scenario, unsigned jobs) {
  std::vector<SpectrumRecord> records(plan.grid.count);
  parallel_for(records.size(), jobs, [&](std::size_t i) {
    records[i] = evaluate_record(model, plan, scenario, plan.grid.at(i));
  });
  return records;
}

std::vector<ScenarioSpectrum> run_sweep(const SweepPlan& plan, unsigned jobs) {
  plan.validate();
  const ResponseModel model(plan.physics);
  std::vector<ScenarioSpectrum> out;
  out.reserve(plan.scenarios.size());
  for (const Scenario& s : plan.scenarios)
    out.push_back({s, run_scenario(model, plan, s, jobs)});
  return out;
}

double BandReport::total_width() const {
  double total = 0.0;
  for (const NegativeBand& b : bands) total += b.width;
  return total;
}

BandReport detect_negative_bands(std::span<const SpectrumRecord> records) {
  for (std::size_t i = 1; i < records.size(); ++i) {
    if (!(records[i].delta_p > records[i - 1].delta_p))
      throw Error(ErrorCode::kInvalidInput, "records must be sorted by increasing delta_p");
  }

  BandReport report;
  report.max_antisymmetry = max_antisymmetry(records);

  const auto negative = [&](std::size_t i) { return records[i].ok() && re_n(records[i]) < 0.0; };
  std::size_t i = 0;
  while (i < records.size()) {
    if (!negative(i)) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < records.size() && negative(j + 1)) ++j;

    NegativeBand band;
    band.first_index = i;
    band.last_index = j;
    if (i > 0 && records[i - 1].ok()) {
      band.lo = {crossing(records[i - 1], records[i]), true};
    } else {
      band.lo = {records[i].delta_p, false};
    }
    if (j + 1 < records.size() && records[j + 1].ok()) {
      band.hi = {crossing(records[j], records[j + 1]), true};
    } else {
      band.hi = {records[j].delta_p, false};
    }
    band.width = band.hi.position - band.lo.position;
    band.min_re_n = re_n(records[i]);
    band.min_re_n_at = records[i].delta_p;
    band.max_im_n = band.min_im_n = records[i].values.n.imag();
    for (std::size_t k = i; k <= j; ++k) {
      const Complex n = records[k].values.n;
      if (n.real() < band.min_re_n) {
        band.min_re_n = n.real();
        band.min_re_n_at = records[k].delta_p;
      }
      band.max_im_n = std::max(band.max_im_n, n.imag());
      band.min_im_n = std::min(band.min_im_n, n.imag());
    }
    report.bands.push_back(band);
    i = j + 1;
  }
  return report;
}

bool is_non_decreasing(std::span<const double> values) {
  return std::is_sorted(values.begin(), values.end());
}

std::optional<double> antisymmetry(const ChiralConstitutive& c) {
  const double scale = std::abs(c.xi_eh) + std::abs(c.xi_he);
  if (scale == 0.0) return std::nullopt;
  return std::abs(c.xi_eh + c.xi_he) / scale;
}

std::optional<double> max_antisymmetry(std::span<const SpectrumRecord> records, double lo,
                                       double hi) {
  std::optional<double> out;
  for (const SpectrumRecord& r : records) {
    if (!r.ok() || r.delta_p < lo || r.delta_p > hi) continue;
    if (const auto a = antisymmetry(r.values)) out = out ? std::max(*out, *a) : *a;
  }
  return out;
}

ScenarioSummary summarize_metrics(std::span<const SpectrumRecord> records,
                                  const BandReport& bands) {
  ScenarioSummary s;
  for (const SpectrumRecord& r : records) {
    if (!r.ok()) {
      ++s.flagged_points;
      continue;
    }
    ++s.valid_points;
    if (!s.min_re_n || re_n(r) < *s.min_re_n) {
      s.min_re_n = re_n(r);
      s.min_re_n_at = r.delta_p;
    }
  }
  s.band_count = bands.bands.size();
  s.total_band_width = bands.total_width();
  s.max_antisymmetry = bands.max_antisymmetry;

  for (const NegativeBand& b : bands.bands) {
    bool has_positive_mu = false;
    for (std::size_t k = b.first_index; k <= b.last_index && k < records.size(); ++k) {
      const ChiralConstitutive& c = records[k].values;
      const bool eps_neg = c.eps_r.real() < 0.0;
      const bool mu_neg = c.mu_r.real() < 0.0;
      if (eps_neg && mu_neg) ++s.census_in_bands.eps_neg_mu_neg;
      else if (eps_neg) ++s.census_in_bands.eps_neg_mu_nonneg;
      else if (mu_neg) ++s.census_in_bands.eps_nonneg_mu_neg;
      else ++s.census_in_bands.eps_nonneg_mu_nonneg;
      if (c.n.real() < 0.0 && c.mu_r.real() > 0.0) has_positive_mu = true;
    }
    if (!has_positive_mu) s.every_band_has_positive_mu = false;
  }
  return s;
}

std::optional<std::size_t> most_negative_scenario(std::span<const ScenarioSummary> summaries) {
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < summaries.size(); ++i) {
    if (!summaries[i].min_re_n) continue;
    if (!best || *summaries[i].min_re_n < *summaries[*best].min_re_n) best = i;
  }
  return best;
}

namespace {

struct CoefficientInfo {
  const char* name;
  const char* expression;
  const char* repair;
};

constexpr std::array<CoefficientInfo, 4> kCoefficients{{
    {"alpha_EE", "closed form for alpha_EE (A11 prefactor 2*Gamma_1)",
     "A11 with 2*Gamma_2 in place of 2*Gamma_1"},
    {"alpha_EH", "closed form for alpha_EH", ""},
    {"alpha_HE", "closed form for alpha_HE (loop phase factor e^{+i theta})",
     "loop phase e^{-i theta} in place of e^{+i theta}"},
    {"alpha_HH", "closed form for alpha_HH (two-term form)", ""},
}};

}  // namespace

OracleCheckReport run_oracle_check(const SweepPlan& plan, unsigned jobs) {
  plan.validate();
  const ResponseModel model(plan.physics);
  AlphaOptions repaired_options = plan.physics.alpha;
  repaired_options.he_loop_phase = HeLoopPhase::kConjugate;
  repaired_options.ee_prefactor = EePrefactor::kControlCoherence;

  OracleCheckReport report;
  report.residual_tolerance = plan.oracle_residual_tolerance;
  for (const Scenario& scenario : plan.scenarios) {
    ScenarioOracleTable table{scenario, {}};
    for (std::size_t i = 0; i < plan.grid.count; i += plan.oracle_stride) {
      OracleRow row;
      row.index = i;
      row.delta_p = plan.grid.at(i);
      table.rows.push_back(row);
    }
    const DriveConfig drive = plan.drive_for(scenario);
    parallel_for(table.rows.size(), jobs, [&](std::size_t k) {
      OracleRow& row = table.rows[k];
      const DetuningSet det = plan.detunings_at(row.delta_p);
      try {
        row.closed = model.reduced(drive, det, plan.physics.alpha);
        row.repaired = model.reduced(drive, det, repaired_options);
        const oracle::OracleAlphaSet o = model.oracle(drive, det, plan.oracle_frame);
        row.oracle = o.reduced;
        row.residual = o.max_residual;
      } catch (const Error& e) {
        row.excluded_reason = to_string(e.code());
        return;
      }
      row.evaluated = true;
      row.printed_vs_oracle = oracle::compare_alpha(row.oracle, row.closed);
      row.repaired_vs_oracle = oracle::compare_alpha(row.oracle, row.repaired);
    });

    std::array<ErrataFinding, 4> worst{};
    for (const OracleRow& row : table.rows) {
      if (!row.evaluated) {
        ++report.excluded_points;
        continue;
      }
      report.max_residual = std::max(report.max_residual, row.residual);
      if (!row.printed_vs_oracle.structural_zeros_match) report.structural_zeros_match = false;
      for (std::size_t c = 0; c < 4; ++c) {
        ErrataFinding& f = worst[c];
        if (row.printed_vs_oracle.deviation[c] > f.max_deviation) {
          f.max_deviation = row.printed_vs_oracle.deviation[c];
          f.at_delta_p = row.delta_p;
        }
        f.repaired_max_deviation =
            std::max(f.repaired_max_deviation, row.repaired_vs_oracle.deviation[c]);
      }
    }
    for (std::size_t c = 0; c < 4; ++c) {
      ErrataFinding f = worst[c];
      if (!(f.max_deviation > report.agreement_target)) continue;
      f.scenario = scenario.label;
      f.coefficient = kCoefficients[c].name;
      f.printed_expression = kCoefficients[c].expression;
      f.repair = kCoefficients[c].repair;
      report.findings.push_back(f);
    }
    report.tables.push_back(std::move(table));
  }
  return report;
}

}  // namespace chiral_nri::sweep
