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

#include <cstdio>
#include <cstdlib>
#include <memory>
#include <string>

#include "CLI11.hpp"
#include "chiral_nri/chiral_nri.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;
constexpr int kExitEmpty = 3;
constexpr int kExitResidual = 4;

struct Options {
  std::string config;
  std::string out;
  unsigned jobs = 1;
  std::string from_csv;
};

using ConfigPtr = std::unique_ptr<cnri_config, decltype(&cnri_config_free)>;
using SweepPtr = std::unique_ptr<cnri_sweep, decltype(&cnri_sweep_free)>;
using OraclePtr = std::unique_ptr<cnri_oracle_report, decltype(&cnri_oracle_free)>;

int report(cnri_status status) {
  std::fprintf(stderr, "chiral-nri: %s: %s\n", cnri_status_string(status), cnri_last_error());
  switch (status) {
    case CNRI_CONFIG_ERROR: return kExitConfig;
    case CNRI_EMPTY_OUTPUT: return kExitEmpty;
    default: return kExitFailure;
  }
}

// --out wins over CHIRAL_NRI_SEED_DIR, which wins over [output] directory.
std::string output_root(const Options& opt, const cnri_config* config) {
  if (!opt.out.empty()) return opt.out;
  if (const char* env = std::getenv("CHIRAL_NRI_SEED_DIR"); env && *env) return env;
  return cnri_config_output_dir(config);
}

int load(const Options& opt, ConfigPtr& config) {
  cnri_config* raw = nullptr;
  const cnri_status s = cnri_config_load_file(opt.config.c_str(), &raw);
  if (s != CNRI_OK) return report(s);
  config.reset(raw);
  return kExitOk;
}

int run_sweep(const Options& opt, const cnri_config* config, SweepPtr& sweep) {
  cnri_sweep* raw = nullptr;
  const cnri_status s = cnri_sweep_run(config, opt.jobs, &raw);
  if (s != CNRI_OK) return report(s);
  sweep.reset(raw);
  if (cnri_sweep_valid_count(raw) == 0) {
    std::fprintf(stderr, "chiral-nri: every grid point is flagged; nothing written\n");
    return kExitEmpty;
  }
  return kExitOk;
}

void print_bands(const cnri_sweep* sweep) {
  for (size_t i = 0; i < cnri_sweep_scenario_count(sweep); ++i) {
    const size_t n = cnri_sweep_band_count(sweep, i);
    std::printf("%s: %zu band(s)\n", cnri_sweep_scenario_label(sweep, i), n);
    for (size_t k = 0; k < n; ++k) {
      cnri_band b;
      if (cnri_sweep_band(sweep, i, k, &b) != CNRI_OK) continue;
      std::printf("  [%.6f, %.6f] width %.6f, min Re(n) %.6f at %.6f\n", b.lo, b.hi, b.width,
                  b.min_re_n, b.min_re_n_at);
    }
  }
}

int cmd_sweep(const Options& opt) {
  ConfigPtr config(nullptr, cnri_config_free);
  SweepPtr sweep(nullptr, cnri_sweep_free);
  if (int rc = load(opt, config)) return rc;
  if (int rc = run_sweep(opt, config.get(), sweep)) return rc;
  const std::string dir = output_root(opt, config.get());
  if (cnri_status s = cnri_sweep_write_data(sweep.get(), dir.c_str())) return report(s);
  std::printf("wrote %zu scenario(s) to %s\n", cnri_sweep_scenario_count(sweep.get()), dir.c_str());
  return kExitOk;
}

int cmd_bands(const Options& opt) {
  ConfigPtr config(nullptr, cnri_config_free);
  SweepPtr sweep(nullptr, cnri_sweep_free);
  if (int rc = load(opt, config)) return rc;
  if (opt.from_csv.empty()) {
    if (int rc = run_sweep(opt, config.get(), sweep)) return rc;
  } else {
    cnri_sweep* raw = nullptr;
    if (cnri_status s = cnri_sweep_load_csv(config.get(), opt.from_csv.c_str(), &raw))
      return report(s);
    sweep.reset(raw);
  }
  print_bands(sweep.get());
  const std::string dir = output_root(opt, config.get());
  if (cnri_status s = cnri_sweep_write_bands(sweep.get(), dir.c_str())) return report(s);
  return kExitOk;
}

int cmd_oracle_check(const Options& opt) {
  ConfigPtr config(nullptr, cnri_config_free);
  if (int rc = load(opt, config)) return rc;
  cnri_oracle_report* raw = nullptr;
  if (cnri_status s = cnri_oracle_run(config.get(), opt.jobs, &raw)) return report(s);
  OraclePtr oracle(raw, cnri_oracle_free);
  const std::string dir = output_root(opt, config.get());
  if (cnri_status s = cnri_oracle_write(oracle.get(), dir.c_str())) return report(s);
  std::printf("max residual %.3e, %zu finding(s), report in %s\n",
              cnri_oracle_max_residual(oracle.get()), cnri_oracle_finding_count(oracle.get()),
              dir.c_str());
  if (!cnri_oracle_residuals_ok(oracle.get())) {
    std::fprintf(stderr, "chiral-nri: oracle residual exceeds tolerance\n");
    return kExitResidual;
  }
  return kExitOk;
}

int cmd_figures(const Options& opt) {
  ConfigPtr config(nullptr, cnri_config_free);
  SweepPtr sweep(nullptr, cnri_sweep_free);
  if (int rc = load(opt, config)) return rc;
  if (int rc = run_sweep(opt, config.get(), sweep)) return rc;
  const std::string dir = output_root(opt, config.get());
  if (cnri_status s = cnri_sweep_write_figures(sweep.get(), dir.c_str())) return report(s);
  std::printf("wrote figures to %s\n", dir.c_str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Chiral negative-index response of a four-level closed-loop atomic medium"};
  app.require_subcommand(1);
  Options opt;

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", opt.config, "Run configuration file")->required();
    sub->add_option("--out", opt.out, "Output directory");
    sub->add_option("--jobs", opt.jobs, "Worker threads")->check(CLI::Range(1u, 1024u));
  };
  CLI::App* sweep = app.add_subcommand("sweep", "Write spectra CSVs and summary.json");
  CLI::App* bands = app.add_subcommand("bands", "Detect negative-index bands");
  CLI::App* oracle = app.add_subcommand("oracle-check", "Compare closed forms with the Liouville solve");
  CLI::App* figures = app.add_subcommand("figures", "Write plot-ready CSV and SVG panels");
  for (CLI::App* sub : {sweep, bands, oracle, figures}) add_common(sub);
  bands->add_option("--from-csv", opt.from_csv, "Read spectra from a previous sweep directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  if (sweep->parsed()) return cmd_sweep(opt);
  if (bands->parsed()) return cmd_bands(opt);
  if (oracle->parsed()) return cmd_oracle_check(opt);
  return cmd_figures(opt);
}
