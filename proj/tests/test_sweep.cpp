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
#include <cstring>
#include <numbers>

#include "chiral_nri/error.hpp"
#include "chiral_nri/sweep.hpp"
#include "doctest.h"

using namespace chiral_nri;
using namespace chiral_nri::sweep;

namespace {

constexpr double kPi = std::numbers::pi;

bool same_bits(const SpectrumRecord& a, const SpectrumRecord& b) {
  return std::memcmp(&a.delta_p, &b.delta_p, sizeof(double)) == 0 && a.flag == b.flag &&
         std::memcmp(&a.values, &b.values, sizeof(ChiralConstitutive)) == 0;
}

std::vector<SpectrumRecord> synthetic(double lo, double hi, std::size_t count,
                                      double (*re_n)(double)) {
  DetuningGrid grid{lo, hi, count};
  std::vector<SpectrumRecord> out(count);
  for (std::size_t i = 0; i < count; ++i) {
    out[i].delta_p = grid.at(i);
    out[i].values.n = Complex(re_n(out[i].delta_p), 0.1);
  }
  return out;
}

Scenario fig3a_13() { return Scenario{"fig3a_omega_c_1.3", kPi / 5.0, 1.3}; }

}  // namespace

TEST_CASE("grid endpoints and spacing") {
  const DetuningGrid g;
  CHECK(g.count == 2001);
  CHECK(g.at(0) == -5.0);
  CHECK(g.at(2000) == 5.0);
  CHECK(g.at(1000) == 0.0);
  CHECK(g.at(1) - g.at(0) == doctest::Approx(0.005).epsilon(1e-12));
  for (std::size_t i = 1; i < g.count; ++i) CHECK(g.at(i) > g.at(i - 1));
}

TEST_CASE("invalid plans are rejected") {
  SweepPlan plan;
  plan.grid.count = 1;
  CHECK_THROWS_AS(plan.validate(), Error);
  plan.grid = DetuningGrid{1.0, 1.0, 10};
  CHECK_THROWS_AS(plan.validate(), Error);
  plan.grid = DetuningGrid{};
  plan.scenarios.push_back(plan.scenarios.front());
  CHECK_THROWS_AS(plan.validate(), Error);
}

TEST_CASE("default scenarios") {
  const std::vector<Scenario> s = default_scenarios();
  REQUIRE(s.size() == 6);
  CHECK(s[0].label == "fig3a_omega_c_0.4");
  CHECK(s[2].omega_c == 1.3);
  CHECK(s[2].theta == kPi / 5.0);
  CHECK(s[3].label == "fig3b_omega_c_1");
  CHECK(s[5].theta == 1.5 * kPi);
}

TEST_CASE("flag names round-trip") {
  for (PointFlag f : {PointFlag::kNone, PointFlag::kPole, PointFlag::kLocalFieldSingular})
    CHECK(parse_flag(flag_name(f)) == f);
  CHECK_FALSE(parse_flag("bogus").has_value());
}

TEST_CASE("vacuum sweep") {
  SweepPlan plan;
  plan.physics.medium.atom_density = 0.0;
  const std::vector<ScenarioSpectrum> out = run_sweep(plan);
  REQUIRE(out.size() == 6);
  for (const ScenarioSpectrum& s : out) {
    REQUIRE(s.records.size() == 2001);
    for (const SpectrumRecord& r : s.records) {
      CHECK(r.ok());
      CHECK(std::abs(r.values.n - 1.0) < 1e-12);
      CHECK(std::abs(r.values.eps_r - 1.0) < 1e-12);
      CHECK(std::abs(r.values.mu_r - 1.0) < 1e-12);
      CHECK(std::abs(r.values.xi_eh) < 1e-12);
      CHECK(std::abs(r.values.xi_he) < 1e-12);
    }
    const BandReport bands = detect_negative_bands(s.records);
    CHECK(bands.bands.empty());
    CHECK_FALSE(bands.max_antisymmetry.has_value());
    const ScenarioSummary sum = summarize_metrics(s.records, bands);
    CHECK(sum.min_re_n == 1.0);
    CHECK(sum.band_count == 0);
    CHECK_FALSE(sum.max_antisymmetry.has_value());
  }
}

TEST_CASE("negative band near the origin at theta = pi/5, Omega_c = 1.3") {
  SweepPlan plan;
  plan.scenarios = {fig3a_13()};
  const ResponseModel model(plan.physics);
  const std::vector<SpectrumRecord> records = run_scenario(model, plan, plan.scenarios[0]);
  bool found = false;
  for (const SpectrumRecord& r : records)
    found |= r.ok() && r.delta_p >= 0.0 && r.delta_p <= 2.0 && r.values.n.real() < 0.0;
  CHECK(found);
  const BandReport bands = detect_negative_bands(records);
  bool intersects = false;
  for (const NegativeBand& b : bands.bands) intersects |= b.lo.position <= 2.0 && b.hi.position >= 0.0;
  CHECK(intersects);
}

TEST_CASE("evaluation order and thread count do not change records") {
  SweepPlan plan;
  plan.grid.count = 401;
  const ResponseModel model(plan.physics);
  for (const Scenario& s : plan.scenarios) {
    const std::vector<SpectrumRecord> forward = run_scenario(model, plan, s, 1);
    const std::vector<SpectrumRecord> threaded = run_scenario(model, plan, s, 7);
    REQUIRE(forward.size() == threaded.size());
    for (std::size_t i = forward.size(); i-- > 0;) {
      const SpectrumRecord reversed = evaluate_record(model, plan, s, plan.grid.at(i));
      CHECK(same_bits(forward[i], reversed));
      CHECK(same_bits(forward[i], threaded[i]));
    }
  }
}

TEST_CASE("adding a scenario leaves the others untouched") {
  SweepPlan plan;
  plan.grid.count = 201;
  const std::vector<ScenarioSpectrum> base = run_sweep(plan);
  plan.scenarios.insert(plan.scenarios.begin() + 2, Scenario{"extra", 0.3, 2.0});
  const std::vector<ScenarioSpectrum> more = run_sweep(plan, 3);
  REQUIRE(more.size() == base.size() + 1);
  for (std::size_t k = 0; k < base.size(); ++k) {
    const ScenarioSpectrum& other = more[k < 2 ? k : k + 1];
    CHECK(other.scenario.label == base[k].scenario.label);
    for (std::size_t i = 0; i < base[k].records.size(); ++i)
      CHECK(same_bits(base[k].records[i], other.records[i]));
  }
}

TEST_CASE("poles are flagged, not emitted") {
  SweepPlan plan;
  plan.grid.count = 11;
  plan.physics.alpha.denominator_floor = 1e300;
  for (const ScenarioSpectrum& s : run_sweep(plan)) {
    for (const SpectrumRecord& r : s.records) {
      CHECK(r.flag == PointFlag::kPole);
      CHECK(r.values.n == Complex(1.0));
    }
    const ScenarioSummary sum = summarize_metrics(s.records, detect_negative_bands(s.records));
    CHECK(sum.valid_points == 0);
    CHECK(sum.flagged_points == 11);
    CHECK_FALSE(sum.min_re_n.has_value());
  }
}

TEST_CASE("no band when Re(n) stays positive") {
  const auto records = synthetic(-3.0, 3.0, 101, [](double x) { return x * x + 0.5; });
  CHECK(detect_negative_bands(records).bands.empty());
}

TEST_CASE("synthetic parabola gives one band at its roots") {
  const auto records = synthetic(-3.0, 3.0, 6001, [](double x) { return x * x - 1.0; });
  const BandReport r = detect_negative_bands(records);
  REQUIRE(r.bands.size() == 1);
  const double step = 6.0 / 6000.0;
  const NegativeBand& b = r.bands[0];
  CHECK(std::abs(b.lo.position + 1.0) < step);
  CHECK(std::abs(b.hi.position - 1.0) < step);
  CHECK(b.lo.bracketed);
  CHECK(b.hi.bracketed);
  CHECK(b.width == doctest::Approx(2.0).epsilon(1e-3));
  CHECK(b.min_re_n == doctest::Approx(-1.0));
  CHECK(b.min_re_n_at == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("flagged points split bands and edges at the grid end are unbracketed") {
  auto records = synthetic(-2.0, 2.0, 41, [](double) { return -1.0; });
  records[20].flag = PointFlag::kPole;
  const BandReport r = detect_negative_bands(records);
  REQUIRE(r.bands.size() == 2);
  CHECK_FALSE(r.bands[0].lo.bracketed);
  CHECK(r.bands[0].lo.position == -2.0);
  CHECK_FALSE(r.bands[0].hi.bracketed);
  CHECK(r.bands[0].last_index == 19);
  CHECK(r.bands[1].first_index == 21);
  CHECK(r.bands[1].hi.position == 2.0);
}

TEST_CASE("unsorted records are rejected") {
  auto records = synthetic(-1.0, 1.0, 5, [](double x) { return x; });
  std::swap(records[1], records[2]);
  CHECK_THROWS_AS(detect_negative_bands(records), Error);
}

TEST_CASE("reported edges are bracketed by a sign change") {
  SweepPlan plan;
  const ResponseModel model(plan.physics);
  for (const Scenario& s : plan.scenarios) {
    const std::vector<SpectrumRecord> records = run_scenario(model, plan, s, 4);
    const BandReport r = detect_negative_bands(records);
    double previous_hi = -INFINITY;
    for (const NegativeBand& b : r.bands) {
      CHECK(b.lo.position > previous_hi);
      previous_hi = b.hi.position;
      if (b.lo.bracketed) {
        const SpectrumRecord& out = records[b.first_index - 1];
        const SpectrumRecord& in = records[b.first_index];
        CHECK(out.values.n.real() >= 0.0);
        CHECK(in.values.n.real() < 0.0);
        CHECK(b.lo.position >= out.delta_p);
        CHECK(b.lo.position <= in.delta_p);
      }
      if (b.hi.bracketed) {
        const SpectrumRecord& in = records[b.last_index];
        const SpectrumRecord& out = records[b.last_index + 1];
        CHECK(in.values.n.real() < 0.0);
        CHECK(out.values.n.real() >= 0.0);
        CHECK(b.hi.position >= in.delta_p);
        CHECK(b.hi.position <= out.delta_p);
      }
    }
  }
}

TEST_CASE("monotonic comparison utility") {
  const std::vector<double> up{1.0, 1.0, 2.0};
  const std::vector<double> down{1.0, 3.0, 2.0};
  CHECK(is_non_decreasing(up));
  CHECK_FALSE(is_non_decreasing(down));
  CHECK(is_non_decreasing(std::vector<double>{}));
}

TEST_CASE("antisymmetry metric") {
  ChiralConstitutive c;
  CHECK_FALSE(antisymmetry(c).has_value());
  c.xi_eh = Complex(0.2, 0.3);
  c.xi_he = -c.xi_eh;
  CHECK(antisymmetry(c) == 0.0);
  c.xi_he = c.xi_eh;
  CHECK(antisymmetry(c) == doctest::Approx(1.0));
}

TEST_CASE("sign census covers every band point") {
  SweepPlan plan;
  const ResponseModel model(plan.physics);
  std::vector<ScenarioSummary> summaries;
  for (const Scenario& s : plan.scenarios) {
    const std::vector<SpectrumRecord> records = run_scenario(model, plan, s);
    const BandReport bands = detect_negative_bands(records);
    const ScenarioSummary sum = summarize_metrics(records, bands);
    std::size_t in_bands = 0;
    for (const NegativeBand& b : bands.bands) in_bands += b.last_index - b.first_index + 1;
    const SignCensus& c = sum.census_in_bands;
    CHECK(c.eps_neg_mu_neg + c.eps_neg_mu_nonneg + c.eps_nonneg_mu_neg + c.eps_nonneg_mu_nonneg ==
          in_bands);
    CHECK(sum.valid_points + sum.flagged_points == records.size());
    summaries.push_back(sum);
  }
  const auto best = most_negative_scenario(summaries);
  REQUIRE(best.has_value());
  for (const ScenarioSummary& s : summaries) CHECK(*summaries[*best].min_re_n <= *s.min_re_n);
}

TEST_CASE("oracle check over the default plan") {
  const SweepPlan plan;
  const OracleCheckReport r = run_oracle_check(plan, 4);
  REQUIRE(r.tables.size() == 6);
  for (const ScenarioOracleTable& t : r.tables) {
    CHECK(t.rows.size() == 41);
    CHECK(t.rows.front().index == 0);
    CHECK(t.rows.back().index == 2000);
  }
  CHECK(r.residuals_ok());
  CHECK(r.structural_zeros_match);
  CHECK(r.excluded_points == 0);
  for (const ErrataFinding& f : r.findings) {
    CHECK((f.coefficient == "alpha_EE" || f.coefficient == "alpha_HE"));
    CHECK_FALSE(f.repair.empty());
    CHECK(f.repaired_max_deviation < 1e-10);
    CHECK(f.max_deviation > r.agreement_target);
  }
  CHECK(r.findings.size() == 12);
}

TEST_CASE("oracle check without control has exact zero deviations") {
  SweepPlan plan;
  plan.scenarios = {Scenario{"dark", kPi / 5.0, 0.0}};
  const OracleCheckReport r = run_oracle_check(plan);
  CHECK(r.structural_zeros_match);
  CHECK(r.findings.empty());
  for (const OracleRow& row : r.tables[0].rows) {
    REQUIRE(row.evaluated);
    CHECK(row.printed_vs_oracle.deviation[0] == 0.0);
    CHECK(row.printed_vs_oracle.deviation[1] == 0.0);
    CHECK(row.printed_vs_oracle.deviation[2] == 0.0);
  }
}

TEST_CASE("oracle check is deterministic across thread counts") {
  SweepPlan plan;
  plan.grid.count = 201;
  plan.oracle_stride = 10;
  const OracleCheckReport a = run_oracle_check(plan, 1);
  const OracleCheckReport b = run_oracle_check(plan, 5);
  REQUIRE(a.tables.size() == b.tables.size());
  for (std::size_t t = 0; t < a.tables.size(); ++t)
    for (std::size_t i = 0; i < a.tables[t].rows.size(); ++i) {
      const OracleRow& x = a.tables[t].rows[i];
      const OracleRow& y = b.tables[t].rows[i];
      CHECK(std::memcmp(&x.oracle, &y.oracle, sizeof(ReducedResponse)) == 0);
      CHECK(std::memcmp(&x.closed, &y.closed, sizeof(ReducedResponse)) == 0);
    }
}
