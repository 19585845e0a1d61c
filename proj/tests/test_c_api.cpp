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

#include <cmath>
#include <complex>
#include <filesystem>
#include <fstream>
#include <string>

#include "chiral_nri/chiral_nri.h"
#include "doctest.h"

// Links only the shared library; nothing from the C++ core is visible here.

namespace fs = std::filesystem;

namespace {

std::complex<double> z(cnri_complex c) { return {c.re, c.im}; }

double rel(cnri_complex a, cnri_complex b) {
  const double scale = std::max(std::abs(z(a)), std::abs(z(b)));
  return scale == 0.0 ? 0.0 : std::abs(z(a) - z(b)) / scale;
}

struct Defaults {
  cnri_rates rates;
  cnri_medium medium;
  cnri_drive drive;
  cnri_detunings det;

  Defaults() {
    cnri_default_rates(&rates);
    cnri_default_medium(&medium);
    cnri_default_drive(&drive);
    cnri_default_detunings(&det);
  }
};

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("chiral_nri_test_c_api_" + name);
  fs::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("version and status strings") {
  CHECK(std::string(cnri_version()).size() > 0);
  for (int s = CNRI_OK; s <= CNRI_INTERNAL_ERROR; ++s) {
    CHECK(std::string(cnri_status_string(static_cast<cnri_status>(s))).size() > 0);
  }
  CHECK(std::string(cnri_status_string(static_cast<cnri_status>(99))).size() > 0);
}

TEST_CASE("defaults") {
  const Defaults d;
  CHECK(d.rates.gamma_scale == 1e8);
  CHECK(d.rates.gamma21 == 1.0 / (137.0 * 137.0));
  CHECK(d.medium.atom_density == 5e24);
  CHECK(d.medium.wavelength == 600e-9);
  CHECK(d.medium.paper_literal_mapping == 0);
  CHECK(d.drive.omega_s == 20.0);
  CHECK(d.det.delta_c == 0.001);
}

TEST_CASE("null arguments are rejected, not dereferenced") {
  const Defaults d;
  cnri_constitutive out;
  CHECK(cnri_evaluate_point(nullptr, &d.medium, &d.drive, &d.det, nullptr, &out) ==
        CNRI_INVALID_ARGUMENT);
  CHECK(std::string(cnri_last_error()).size() > 0);
  CHECK(cnri_evaluate_point(&d.rates, &d.medium, &d.drive, &d.det, nullptr, nullptr) ==
        CNRI_INVALID_ARGUMENT);
  CHECK(cnri_refractive_index({1, 0}, {1, 0}, {0, 0}, {0, 0}, nullptr) == CNRI_INVALID_ARGUMENT);
  CHECK(cnri_config_default(nullptr) == CNRI_INVALID_ARGUMENT);
  CHECK(cnri_config_load_file(nullptr, nullptr) == CNRI_INVALID_ARGUMENT);
  CHECK(cnri_sweep_run(nullptr, 1, nullptr) == CNRI_INVALID_ARGUMENT);
  CHECK(cnri_oracle_run(nullptr, 1, nullptr) == CNRI_INVALID_ARGUMENT);
  CHECK(cnri_sweep_scenario_count(nullptr) == 0);
  CHECK(cnri_sweep_record_count(nullptr, 0) == 0);
  CHECK(cnri_sweep_scenario_label(nullptr, 0) == nullptr);
  CHECK(cnri_config_output_dir(nullptr) == nullptr);
  CHECK(cnri_oracle_residuals_ok(nullptr) == 0);
  cnri_config_free(nullptr);
  cnri_sweep_free(nullptr);
  cnri_oracle_free(nullptr);
}

TEST_CASE("invalid parameters map to status codes") {
  Defaults d;
  cnri_constitutive out;
  d.rates.gamma43 = -1.0;
  CHECK(cnri_evaluate_point(&d.rates, &d.medium, &d.drive, &d.det, nullptr, &out) ==
        CNRI_INVALID_ARGUMENT);
  d = Defaults{};
  d.det.delta_p = NAN;
  CHECK(cnri_evaluate_point(&d.rates, &d.medium, &d.drive, &d.det, nullptr, &out) ==
        CNRI_INVALID_ARGUMENT);
  CHECK(std::string(cnri_last_error()).size() > 0);
}

TEST_CASE("a successful call clears the last error") {
  const Defaults d;
  cnri_constitutive out;
  CHECK(cnri_evaluate_point(nullptr, nullptr, nullptr, nullptr, nullptr, &out) != CNRI_OK);
  CHECK(cnri_evaluate_point(&d.rates, &d.medium, &d.drive, &d.det, nullptr, &out) == CNRI_OK);
  CHECK(std::string(cnri_last_error()).empty());
}

TEST_CASE("vacuum point") {
  Defaults d;
  d.medium.atom_density = 0.0;
  cnri_constitutive out;
  REQUIRE(cnri_evaluate_point(&d.rates, &d.medium, &d.drive, &d.det, nullptr, &out) == CNRI_OK);
  CHECK(out.n.re == 1.0);
  CHECK(out.n.im == 0.0);
  CHECK(out.eps_r.re == 1.0);
  CHECK(out.mu_r.re == 1.0);
  CHECK(out.xi_eh.re == 0.0);
}

TEST_CASE("evaluate_point is consistent with refractive_index and the oracle") {
  Defaults d;
  for (double dp : {-3.0, -0.4, 0.0, 0.7, 2.5}) {
    d.det.delta_p = dp;
    cnri_alpha_set closed;
    cnri_constitutive out;
    REQUIRE(cnri_evaluate_point(&d.rates, &d.medium, &d.drive, &d.det, &closed, &out) == CNRI_OK);
    cnri_complex n;
    REQUIRE(cnri_refractive_index(out.eps_r, out.mu_r, out.xi_eh, out.xi_he, &n) == CNRI_OK);
    CHECK(n.re == out.n.re);
    CHECK(n.im == out.n.im);

    // alpha_EH and alpha_HH agree with the Liouville solve as printed.
    cnri_alpha_set oracle;
    double residual = 1.0;
    REQUIRE(cnri_oracle_alpha_set(&d.rates, &d.medium, &d.drive, &d.det, 0, &oracle, &residual) ==
            CNRI_OK);
    CHECK(residual < 1e-10);
    CHECK(rel(closed.eh, oracle.eh) < 1e-10);
    CHECK(rel(closed.hh, oracle.hh) < 1e-10);
    CHECK(rel(closed.ee, oracle.ee) > 1e-6);
  }
}

TEST_CASE("config handles") {
  cnri_config* c = nullptr;
  REQUIRE(cnri_config_default(&c) == CNRI_OK);
  CHECK(cnri_config_scenario_count(c) == 6);
  CHECK(std::string(cnri_config_output_dir(c)) == "out");
  CHECK(cnri_config_set_output_dir(c, "elsewhere") == CNRI_OK);
  CHECK(std::string(cnri_config_output_dir(c)) == "elsewhere");
  CHECK(cnri_config_set_output_dir(c, nullptr) == CNRI_INVALID_ARGUMENT);
  cnri_config_free(c);

  c = nullptr;
  CHECK(cnri_config_load_string("[medium]\nbogus = 1\n", "inline", &c) == CNRI_CONFIG_ERROR);
  CHECK(c == nullptr);
  CHECK(std::string(cnri_last_error()).find("inline:2:") != std::string::npos);
  CHECK(cnri_config_load_file("/nonexistent/run.toml", &c) == CNRI_CONFIG_ERROR);
  CHECK(c == nullptr);
}

TEST_CASE("sweep handles") {
  cnri_config* c = nullptr;
  REQUIRE(cnri_config_load_string(
              "[sweep]\ndelta_p_start = -1\ndelta_p_stop = 1\ndelta_p_count = 201\n"
              "[[scenario]]\nlabel = \"s\"\ntheta_over_pi = 0.2\nomega_c = 1.3\n",
              "inline", &c) == CNRI_OK);
  cnri_sweep* s = nullptr;
  REQUIRE(cnri_sweep_run(c, 2, &s) == CNRI_OK);
  CHECK(cnri_sweep_scenario_count(s) == 1);
  CHECK(std::string(cnri_sweep_scenario_label(s, 0)) == "s");
  CHECK(cnri_sweep_scenario_label(s, 1) == nullptr);
  CHECK(cnri_sweep_record_count(s, 0) == 201);
  CHECK(cnri_sweep_valid_count(s) == 201);

  cnri_record r;
  REQUIRE(cnri_sweep_record(s, 0, 200, &r) == CNRI_OK);
  CHECK(r.delta_p == 1.0);
  CHECK(r.flag == CNRI_FLAG_NONE);
  CHECK(cnri_sweep_record(s, 0, 201, &r) == CNRI_INVALID_ARGUMENT);
  CHECK(cnri_sweep_record(s, 1, 0, &r) == CNRI_INVALID_ARGUMENT);

  REQUIRE(cnri_sweep_band_count(s, 0) >= 1);
  cnri_band b;
  REQUIRE(cnri_sweep_band(s, 0, 0, &b) == CNRI_OK);
  CHECK(b.lo < b.hi);
  CHECK(b.min_re_n < 0.0);
  CHECK(b.width == doctest::Approx(b.hi - b.lo));
  CHECK(cnri_sweep_band(s, 0, 99, &b) == CNRI_INVALID_ARGUMENT);

  const fs::path dir = scratch_dir("sweep");
  REQUIRE(cnri_sweep_write_data(s, dir.c_str()) == CNRI_OK);
  CHECK(fs::exists(dir / "s.csv"));
  CHECK(fs::exists(dir / "summary.json"));
  REQUIRE(cnri_sweep_write_bands(s, dir.c_str()) == CNRI_OK);
  CHECK(fs::exists(dir / "bands.json"));

  // Reloading the written CSV reproduces the sweep exactly.
  cnri_sweep* back = nullptr;
  REQUIRE(cnri_sweep_load_csv(c, dir.c_str(), &back) == CNRI_OK);
  REQUIRE(cnri_sweep_record_count(back, 0) == 201);
  for (size_t i = 0; i < 201; ++i) {
    cnri_record x, y;
    cnri_sweep_record(s, 0, i, &x);
    cnri_sweep_record(back, 0, i, &y);
    CHECK(x.values.n.re == y.values.n.re);
    CHECK(x.values.n.im == y.values.n.im);
  }
  cnri_band b2;
  REQUIRE(cnri_sweep_band(back, 0, 0, &b2) == CNRI_OK);
  CHECK(b2.lo == b.lo);
  CHECK(b2.hi == b.hi);
  cnri_sweep_free(back);

  CHECK(cnri_sweep_load_csv(c, "/nonexistent", &back) == CNRI_IO_ERROR);
  CHECK(cnri_sweep_write_data(s, "/proc/forbidden/out") == CNRI_IO_ERROR);

  cnri_sweep_free(s);
  cnri_config_free(c);
}

TEST_CASE("all points flagged") {
  cnri_config* c = nullptr;
  REQUIRE(cnri_config_load_string(
              "[numerics]\ndenominator_floor = 1e300\n[sweep]\ndelta_p_count = 11\n", "inline",
              &c) == CNRI_OK);
  cnri_sweep* s = nullptr;
  REQUIRE(cnri_sweep_run(c, 1, &s) == CNRI_OK);
  CHECK(cnri_sweep_valid_count(s) == 0);
  cnri_record r;
  REQUIRE(cnri_sweep_record(s, 0, 3, &r) == CNRI_OK);
  CHECK(r.flag == CNRI_FLAG_POLE);
  CHECK(r.values.n.re == 1.0);
  CHECK(cnri_sweep_band_count(s, 0) == 0);
  cnri_sweep_free(s);
  cnri_config_free(c);
}

TEST_CASE("oracle handles") {
  cnri_config* c = nullptr;
  REQUIRE(cnri_config_load_string("[sweep]\ndelta_p_count = 101\noracle_stride = 10\n", "inline",
                                  &c) == CNRI_OK);
  cnri_oracle_report* r = nullptr;
  REQUIRE(cnri_oracle_run(c, 3, &r) == CNRI_OK);
  CHECK(cnri_oracle_residuals_ok(r) == 1);
  CHECK(cnri_oracle_max_residual(r) < 1e-10);
  CHECK(cnri_oracle_row_count(r, 0) == 11);
  CHECK(cnri_oracle_row_count(r, 6) == 0);
  CHECK(cnri_oracle_finding_count(r) == 12);
  const fs::path dir = scratch_dir("oracle");
  REQUIRE(cnri_oracle_write(r, dir.c_str()) == CNRI_OK);
  CHECK(fs::exists(dir / "errata.md"));
  cnri_oracle_free(r);
  cnri_config_free(c);
}
