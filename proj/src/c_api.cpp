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

#include "chiral_nri/chiral_nri.h"

#include <exception>
#include <filesystem>
#include <fstream>
#include <memory>
#include <new>
#include <string>

#include "chiral_nri/error.hpp"
#include "chiral_nri/output.hpp"
#include "chiral_nri/pipeline.hpp"
#include "chiral_nri/run_config.hpp"
#include "chiral_nri/sweep.hpp"

using namespace chiral_nri;

struct cnri_config {
  RunConfig config;
};

struct cnri_sweep {
  RunConfig config;
  std::vector<output::ScenarioResult> results;
};

struct cnri_oracle_report {
  RunConfig config;
  sweep::OracleCheckReport report;
};

namespace {

thread_local std::string last_error;

cnri_status status_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidInput: return CNRI_INVALID_ARGUMENT;
    case ErrorCode::kSingularDenominator: return CNRI_SINGULAR_DENOMINATOR;
    case ErrorCode::kLocalFieldSingular: return CNRI_LOCAL_FIELD_SINGULAR;
    case ErrorCode::kInvalidModel: return CNRI_INVALID_MODEL;
    case ErrorCode::kDegenerateKernel: return CNRI_DEGENERATE_KERNEL;
    case ErrorCode::kSingularShiftedGenerator: return CNRI_SINGULAR_SHIFTED_GENERATOR;
    case ErrorCode::kConfig: return CNRI_CONFIG_ERROR;
    case ErrorCode::kIo: return CNRI_IO_ERROR;
    case ErrorCode::kEmptyOutput: return CNRI_EMPTY_OUTPUT;
  }
  return CNRI_INTERNAL_ERROR;
}

cnri_status fail(cnri_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

template <class F>
cnri_status guarded(F&& body) {
  try {
    last_error.clear();
    body();
    return CNRI_OK;
  } catch (const Error& e) {
    return fail(status_for(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(CNRI_OUT_OF_MEMORY, "out of memory");
  } catch (const std::exception& e) {
    return fail(CNRI_INTERNAL_ERROR, e.what());
  } catch (...) {
    return fail(CNRI_INTERNAL_ERROR, "unknown exception");
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorCode::kInvalidInput, std::string(what) + " must not be null");
}

Complex to_cpp(cnri_complex z) { return {z.re, z.im}; }
cnri_complex to_c(Complex z) { return {z.real(), z.imag()}; }

cnri_alpha_set to_c(const AlphaSet& a) { return {to_c(a.ee), to_c(a.eh), to_c(a.he), to_c(a.hh)}; }

cnri_constitutive to_c(const ChiralConstitutive& c) {
  return {to_c(c.eps_r), to_c(c.mu_r), to_c(c.xi_eh), to_c(c.xi_he), to_c(c.n)};
}

PhysicsConfig physics_from(const cnri_rates* rates, const cnri_medium* medium) {
  require(rates, "rates");
  require(medium, "medium");
  PhysicsConfig p;
  p.rates = DecayRates{rates->gamma_scale, rates->gamma21, rates->gamma31,
                       rates->gamma42,     rates->gamma43, rates->gamma_c};
  p.medium.atom_density = medium->atom_density;
  p.medium.wavelength = medium->wavelength;
  p.medium.mapping = medium->paper_literal_mapping ? PolarizationMapping::kPaperLiteral
                                                   : PolarizationMapping::kParityConsistent;
  p.damping.gamma6_includes_dephasing = medium->gamma6_includes_dephasing != 0;
  return p;
}

DriveConfig drive_from(const cnri_drive* d) {
  require(d, "drive");
  return DriveConfig{d->omega_c, d->omega_s, d->theta};
}

DetuningSet detunings_from(const cnri_detunings* d) {
  require(d, "detunings");
  return DetuningSet{d->delta_p, d->delta_c, d->delta_s, d->delta_m};
}

cnri_flag to_c(sweep::PointFlag f) {
  switch (f) {
    case sweep::PointFlag::kNone: return CNRI_FLAG_NONE;
    case sweep::PointFlag::kPole: return CNRI_FLAG_POLE;
    case sweep::PointFlag::kLocalFieldSingular: return CNRI_FLAG_LOCAL_FIELD_SINGULAR;
  }
  return CNRI_FLAG_NONE;
}

const output::ScenarioResult& scenario_at(const cnri_sweep* s, size_t scenario) {
  require(s, "sweep");
  if (scenario >= s->results.size())
    throw Error(ErrorCode::kInvalidInput, "scenario index out of range");
  return s->results[scenario];
}

}  // namespace

extern "C" {

const char* cnri_version(void) { return "0.1.0"; }

const char* cnri_status_string(cnri_status status) {
  switch (status) {
    case CNRI_OK: return "ok";
    case CNRI_INVALID_ARGUMENT: return "invalid argument";
    case CNRI_SINGULAR_DENOMINATOR: return "singular closed-form denominator";
    case CNRI_LOCAL_FIELD_SINGULAR: return "singular local-field system";
    case CNRI_INVALID_MODEL: return "invalid level model";
    case CNRI_DEGENERATE_KERNEL: return "degenerate steady-state kernel";
    case CNRI_SINGULAR_SHIFTED_GENERATOR: return "singular first-order generator";
    case CNRI_CONFIG_ERROR: return "configuration error";
    case CNRI_IO_ERROR: return "i/o error";
    case CNRI_EMPTY_OUTPUT: return "empty output";
    case CNRI_OUT_OF_MEMORY: return "out of memory";
    case CNRI_INTERNAL_ERROR: return "internal error";
  }
  return "unknown status";
}

const char* cnri_last_error(void) { return last_error.c_str(); }

void cnri_default_rates(cnri_rates* out) {
  if (!out) return;
  const DecayRates r;
  *out = {r.gamma_scale, r.gamma21, r.gamma31, r.gamma42, r.gamma43, r.gamma_c};
}

void cnri_default_medium(cnri_medium* out) {
  if (!out) return;
  const MediumConfig m;
  *out = {m.atom_density, m.wavelength, 0, 0};
}

void cnri_default_drive(cnri_drive* out) {
  if (!out) return;
  const DriveConfig d;
  *out = {d.omega_c, d.omega_s, d.theta};
}

void cnri_default_detunings(cnri_detunings* out) {
  if (!out) return;
  const DetuningSet d;
  *out = {d.delta_p, d.delta_c, d.delta_s, d.delta_m};
}

cnri_status cnri_evaluate_point(const cnri_rates* rates, const cnri_medium* medium,
                                const cnri_drive* drive, const cnri_detunings* det,
                                cnri_alpha_set* alphas, cnri_constitutive* out) {
  return guarded([&] {
    require(out, "out");
    const ResponseModel model(physics_from(rates, medium));
    const PointEvaluation e = model.evaluate(drive_from(drive), detunings_from(det));
    if (alphas) *alphas = to_c(e.alphas);
    *out = to_c(e.constitutive);
  });
}

cnri_status cnri_oracle_alpha_set(const cnri_rates* rates, const cnri_medium* medium,
                                  const cnri_drive* drive, const cnri_detunings* det,
                                  int level_frame, cnri_alpha_set* out, double* residual) {
  return guarded([&] {
    require(out, "out");
    const ResponseModel model(physics_from(rates, medium));
    const oracle::OracleAlphaSet o =
        model.oracle(drive_from(drive), detunings_from(det),
                     level_frame ? oracle::FrameConvention::kLevelFrame
                                 : oracle::FrameConvention::kIndependentDetunings);
    *out = to_c(o.alphas);
    if (residual) *residual = o.max_residual;
  });
}

cnri_status cnri_refractive_index(cnri_complex eps_r, cnri_complex mu_r, cnri_complex xi_eh,
                                  cnri_complex xi_he, cnri_complex* n) {
  return guarded([&] {
    require(n, "n");
    *n = to_c(refractive_index(
        BianisotropicParameters{to_cpp(eps_r), to_cpp(mu_r), to_cpp(xi_eh), to_cpp(xi_he)}));
  });
}

cnri_status cnri_config_default(cnri_config** out) {
  return guarded([&] {
    require(out, "out");
    *out = new cnri_config{parse_run_config("", "<default>")};
  });
}

cnri_status cnri_config_load_file(const char* path, cnri_config** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = new cnri_config{load_run_config(path)};
  });
}

cnri_status cnri_config_load_string(const char* text, const char* source, cnri_config** out) {
  return guarded([&] {
    require(text, "text");
    require(out, "out");
    *out = new cnri_config{parse_run_config(text, source ? source : "<string>")};
  });
}

void cnri_config_free(cnri_config* config) { delete config; }

cnri_status cnri_config_set_output_dir(cnri_config* config, const char* dir) {
  return guarded([&] {
    require(config, "config");
    require(dir, "dir");
    if (!*dir) throw Error(ErrorCode::kInvalidInput, "output directory must not be empty");
    config->config.output.directory = dir;
  });
}

const char* cnri_config_output_dir(const cnri_config* config) {
  return config ? config->config.output.directory.c_str() : nullptr;
}

size_t cnri_config_scenario_count(const cnri_config* config) {
  return config ? config->config.plan.scenarios.size() : 0;
}

cnri_status cnri_sweep_run(const cnri_config* config, unsigned jobs, cnri_sweep** out) {
  return guarded([&] {
    require(config, "config");
    require(out, "out");
    auto s = std::make_unique<cnri_sweep>();
    s->config = config->config;
    s->results = output::analyze(sweep::run_sweep(s->config.plan, jobs == 0 ? 1 : jobs));
    *out = s.release();
  });
}

cnri_status cnri_sweep_load_csv(const cnri_config* config, const char* dir, cnri_sweep** out) {
  return guarded([&] {
    require(config, "config");
    require(dir, "dir");
    require(out, "out");
    auto s = std::make_unique<cnri_sweep>();
    s->config = config->config;
    std::vector<sweep::ScenarioSpectrum> spectra;
    for (const sweep::Scenario& sc : s->config.plan.scenarios) {
      spectra.push_back(
          {sc, output::read_spectrum_csv(std::filesystem::path(dir) / (sc.label + ".csv"))});
    }
    s->results = output::analyze(std::move(spectra));
    *out = s.release();
  });
}

void cnri_sweep_free(cnri_sweep* sweep) { delete sweep; }

size_t cnri_sweep_scenario_count(const cnri_sweep* sweep) {
  return sweep ? sweep->results.size() : 0;
}

const char* cnri_sweep_scenario_label(const cnri_sweep* sweep, size_t scenario) {
  if (!sweep || scenario >= sweep->results.size()) return nullptr;
  return sweep->results[scenario].spectrum.scenario.label.c_str();
}

size_t cnri_sweep_record_count(const cnri_sweep* sweep, size_t scenario) {
  if (!sweep || scenario >= sweep->results.size()) return 0;
  return sweep->results[scenario].spectrum.records.size();
}

cnri_status cnri_sweep_record(const cnri_sweep* sweep, size_t scenario, size_t index,
                              cnri_record* out) {
  return guarded([&] {
    require(out, "out");
    const auto& records = scenario_at(sweep, scenario).spectrum.records;
    if (index >= records.size()) throw Error(ErrorCode::kInvalidInput, "record index out of range");
    const sweep::SpectrumRecord& r = records[index];
    *out = {r.delta_p, to_c(r.flag), to_c(r.values)};
  });
}

size_t cnri_sweep_valid_count(const cnri_sweep* sweep) {
  if (!sweep) return 0;
  size_t n = 0;
  for (const auto& r : sweep->results) n += r.summary.valid_points;
  return n;
}

size_t cnri_sweep_band_count(const cnri_sweep* sweep, size_t scenario) {
  if (!sweep || scenario >= sweep->results.size()) return 0;
  return sweep->results[scenario].bands.bands.size();
}

cnri_status cnri_sweep_band(const cnri_sweep* sweep, size_t scenario, size_t index,
                            cnri_band* out) {
  return guarded([&] {
    require(out, "out");
    const auto& bands = scenario_at(sweep, scenario).bands.bands;
    if (index >= bands.size()) throw Error(ErrorCode::kInvalidInput, "band index out of range");
    const sweep::NegativeBand& b = bands[index];
    out->lo = b.lo.position;
    out->hi = b.hi.position;
    out->lo_bracketed = b.lo.bracketed ? 1 : 0;
    out->hi_bracketed = b.hi.bracketed ? 1 : 0;
    out->width = b.width;
    out->min_re_n = b.min_re_n;
    out->min_re_n_at = b.min_re_n_at;
    out->max_im_n = b.max_im_n;
    out->min_im_n = b.min_im_n;
    out->first_index = b.first_index;
    out->last_index = b.last_index;
  });
}

cnri_status cnri_sweep_write_data(const cnri_sweep* sweep, const char* dir) {
  return guarded([&] {
    require(sweep, "sweep");
    require(dir, "dir");
    output::write_sweep_outputs(dir, sweep->config, sweep->results);
  });
}

cnri_status cnri_sweep_write_bands(const cnri_sweep* sweep, const char* dir) {
  return guarded([&] {
    require(sweep, "sweep");
    require(dir, "dir");
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    const std::filesystem::path path = std::filesystem::path(dir) / "bands.json";
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
    out << output::bands_json(sweep->results);
    if (!out) throw Error(ErrorCode::kIo, "failed writing " + path.string());
  });
}

cnri_status cnri_sweep_write_figures(const cnri_sweep* sweep, const char* dir) {
  return guarded([&] {
    require(sweep, "sweep");
    require(dir, "dir");
    output::write_figures(dir, sweep->config, sweep->results);
  });
}

cnri_status cnri_oracle_run(const cnri_config* config, unsigned jobs, cnri_oracle_report** out) {
  return guarded([&] {
    require(config, "config");
    require(out, "out");
    auto r = std::make_unique<cnri_oracle_report>();
    r->config = config->config;
    r->report = sweep::run_oracle_check(r->config.plan, jobs == 0 ? 1 : jobs);
    *out = r.release();
  });
}

void cnri_oracle_free(cnri_oracle_report* report) { delete report; }

cnri_status cnri_oracle_write(const cnri_oracle_report* report, const char* dir) {
  return guarded([&] {
    require(report, "report");
    require(dir, "dir");
    output::write_oracle_report(dir, report->config, report->report);
  });
}

double cnri_oracle_max_residual(const cnri_oracle_report* report) {
  return report ? report->report.max_residual : 0.0;
}

int cnri_oracle_residuals_ok(const cnri_oracle_report* report) {
  return report && report->report.residuals_ok() ? 1 : 0;
}

size_t cnri_oracle_finding_count(const cnri_oracle_report* report) {
  return report ? report->report.findings.size() : 0;
}

size_t cnri_oracle_row_count(const cnri_oracle_report* report, size_t scenario) {
  if (!report || scenario >= report->report.tables.size()) return 0;
  return report->report.tables[scenario].rows.size();
}

}  // extern "C"
