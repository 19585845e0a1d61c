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

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "chiral_nri/run_config.hpp"
#include "chiral_nri/sweep.hpp"

namespace chiral_nri::output {

inline constexpr const char* kSpectrumHeader =
    "delta_p,re_xi_eh,im_xi_eh,re_xi_he,im_xi_he,re_eps,im_eps,re_mu,im_mu,re_n,im_n,flag";

/// printf("%.17g"); "nan"/"inf"/"-inf" for non-finite values.
std::string format_double(double value);

/// Header plus one row per record. Flagged rows leave the numeric fields empty.
void write_spectrum_csv(std::ostream& out, const std::vector<sweep::SpectrumRecord>& records);

/// Inverse of write_spectrum_csv. Throws Error(kIo) on malformed input.
std::vector<sweep::SpectrumRecord> read_spectrum_csv(std::istream& in);
std::vector<sweep::SpectrumRecord> read_spectrum_csv(const std::filesystem::path& path);

struct ScenarioResult {
  sweep::ScenarioSpectrum spectrum;
  sweep::BandReport bands;
  sweep::ScenarioSummary summary;
};

std::vector<ScenarioResult> analyze(std::vector<sweep::ScenarioSpectrum> spectra);

/// JSON summary: run parameters, per-scenario band reports and metrics,
/// cross-scenario comparisons.
std::string summary_json(const RunConfig& config, const std::vector<ScenarioResult>& results);

/// Band reports only, one entry per scenario.
std::string bands_json(const std::vector<ScenarioResult>& results);

/// Writes `<label>.csv` for every scenario and, if enabled, summary.json.
/// Returns the paths written, in write order.
std::vector<std::filesystem::path> write_sweep_outputs(const std::filesystem::path& dir,
                                                       const RunConfig& config,
                                                       const std::vector<ScenarioResult>& results);

/// Plot-ready panels: fig2_xi_eh, fig2_xi_he, fig4_eps, fig4_mu for the
/// reference scenario, fig3a_n and fig3b_n for the first two distinct theta
/// values. One CSV per panel plus an SVG when enabled.
std::vector<std::filesystem::path> write_figures(const std::filesystem::path& dir,
                                                 const RunConfig& config,
                                                 const std::vector<ScenarioResult>& results);

/// oracle_<label>.csv per scenario, errata.md and oracle_summary.json.
std::vector<std::filesystem::path> write_oracle_report(const std::filesystem::path& dir,
                                                       const RunConfig& config,
                                                       const sweep::OracleCheckReport& report);

}  // namespace chiral_nri::output
