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

#include "chiral_nri/output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>

#include "json.hpp"

#include "chiral_nri/error.hpp"

namespace chiral_nri::output {

namespace fs = std::filesystem;
using nlohmann::ordered_json;
using sweep::SpectrumRecord;

namespace {

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string general(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

ordered_json optional_number(const std::optional<double>& v) {
  return v ? ordered_json(*v) : ordered_json(nullptr);
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out << text;
  out.close();
  if (!out) throw Error(ErrorCode::kIo, "failed writing " + path.string());
}

void ensure_directory(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir))
    throw Error(ErrorCode::kIo, "cannot create output directory " + dir.string());
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = line.find(',', pos);
    fields.push_back(line.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return fields;
}

double parse_field(const std::string& s, std::size_t line) {
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size())
    throw Error(ErrorCode::kIo, "csv line " + std::to_string(line) + ": bad number '" + s + "'");
  return v;
}

ordered_json band_json(const sweep::NegativeBand& b) {
  return ordered_json{
      {"lo", b.lo.position},
      {"lo_bracketed", b.lo.bracketed},
      {"hi", b.hi.position},
      {"hi_bracketed", b.hi.bracketed},
      {"width", b.width},
      {"first_index", b.first_index},
      {"last_index", b.last_index},
      {"min_re_n", b.min_re_n},
      {"min_re_n_at", b.min_re_n_at},
      {"max_im_n", b.max_im_n},
      {"min_im_n", b.min_im_n},
  };
}

ordered_json band_report_json(const sweep::BandReport& r) {
  ordered_json bands = ordered_json::array();
  for (const sweep::NegativeBand& b : r.bands) bands.push_back(band_json(b));
  return ordered_json{{"bands", bands},
                      {"total_width", r.total_width()},
                      {"max_antisymmetry", optional_number(r.max_antisymmetry)}};
}

ordered_json summary_metrics_json(const sweep::ScenarioSummary& s) {
  return ordered_json{
      {"valid_points", s.valid_points},
      {"flagged_points", s.flagged_points},
      {"min_re_n", optional_number(s.min_re_n)},
      {"min_re_n_at", s.min_re_n ? ordered_json(s.min_re_n_at) : ordered_json(nullptr)},
      {"band_count", s.band_count},
      {"total_band_width", s.total_band_width},
      {"sign_census_in_bands",
       {{"eps_neg_mu_neg", s.census_in_bands.eps_neg_mu_neg},
        {"eps_neg_mu_nonneg", s.census_in_bands.eps_neg_mu_nonneg},
        {"eps_nonneg_mu_neg", s.census_in_bands.eps_nonneg_mu_neg},
        {"eps_nonneg_mu_nonneg", s.census_in_bands.eps_nonneg_mu_nonneg}}},
      {"every_band_has_positive_mu", s.every_band_has_positive_mu},
      {"max_antisymmetry", optional_number(s.max_antisymmetry)},
  };
}

// Scenarios grouped by theta, in order of first appearance.
std::vector<std::vector<std::size_t>> theta_groups(const std::vector<ScenarioResult>& results) {
  std::vector<std::vector<std::size_t>> groups;
  std::vector<double> thetas;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const double theta = results[i].spectrum.scenario.theta;
    const auto it = std::find(thetas.begin(), thetas.end(), theta);
    if (it == thetas.end()) {
      thetas.push_back(theta);
      groups.push_back({i});
    } else {
      groups[static_cast<std::size_t>(it - thetas.begin())].push_back(i);
    }
  }
  return groups;
}

// SVG line plot.

struct Series {
  std::string name;
  std::string colour;
  bool dashed = false;
  std::vector<std::optional<std::pair<double, double>>> points;  // nullopt breaks the line
};

std::string render_svg(const std::string& title, const std::string& y_label,
                       const std::vector<Series>& series) {
  constexpr double kWidth = 720, kHeight = 440;
  constexpr double kLeft = 70, kRight = 170, kTop = 40, kBottom = 50;
  constexpr double kPlotW = kWidth - kLeft - kRight, kPlotH = kHeight - kTop - kBottom;

  double xmin = INFINITY, xmax = -INFINITY, ymin = INFINITY, ymax = -INFINITY;
  for (const Series& s : series)
    for (const auto& p : s.points)
      if (p && std::isfinite(p->second)) {
        xmin = std::min(xmin, p->first);
        xmax = std::max(xmax, p->first);
        ymin = std::min(ymin, p->second);
        ymax = std::max(ymax, p->second);
      }
  if (!std::isfinite(xmin)) xmin = 0, xmax = 1, ymin = -1, ymax = 1;
  if (xmax == xmin) xmax = xmin + 1;
  if (ymax == ymin) ymin -= 1, ymax += 1;
  const double pad = 0.05 * (ymax - ymin);
  ymin -= pad;
  ymax += pad;

  const auto px = [&](double x) { return kLeft + (x - xmin) / (xmax - xmin) * kPlotW; };
  const auto py = [&](double y) { return kTop + (ymax - y) / (ymax - ymin) * kPlotH; };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << kLeft << "\" y=\"24\" font-family=\"sans-serif\" font-size=\"15\">"
      << title << "</text>\n";
  svg << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << kPlotW << "\" height=\""
      << kPlotH << "\" fill=\"none\" stroke=\"black\"/>\n";
  if (ymin < 0 && ymax > 0) {
    svg << "<line class=\"zero-axis\" x1=\"" << kLeft << "\" x2=\"" << kLeft + kPlotW
        << "\" y1=\"" << fixed(py(0), 2) << "\" y2=\"" << fixed(py(0), 2)
        << "\" stroke=\"#888888\" stroke-width=\"0.5\"/>\n";
  }
  for (int t = 0; t <= 4; ++t) {
    const double x = xmin + (xmax - xmin) * t / 4.0;
    const double y = ymin + (ymax - ymin) * t / 4.0;
    svg << "<text x=\"" << fixed(px(x), 2) << "\" y=\"" << kTop + kPlotH + 16
        << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">"
        << fixed(x, 2) << "</text>\n";
    svg << "<text x=\"" << kLeft - 6 << "\" y=\"" << fixed(py(y) + 4, 2)
        << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">"
        << general(y) << "</text>\n";
  }
  svg << "<text x=\"" << kLeft + kPlotW / 2 << "\" y=\"" << kHeight - 12
      << "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\">"
         "delta_p / gamma</text>\n";
  svg << "<text x=\"16\" y=\"" << kTop + kPlotH / 2
      << "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\" "
         "transform=\"rotate(-90 16 "
      << kTop + kPlotH / 2 << ")\">" << y_label << "</text>\n";

  for (std::size_t k = 0; k < series.size(); ++k) {
    const Series& s = series[k];
    const std::string style = "fill=\"none\" stroke=\"" + s.colour +
                              "\" stroke-width=\"1.5\"" +
                              (s.dashed ? " stroke-dasharray=\"6 4\"" : "");
    svg << "<g class=\"series\" data-name=\"" << s.name << "\">\n";
    std::string run;
    const auto flush = [&] {
      if (!run.empty()) svg << "<polyline " << style << " points=\"" << run << "\"/>\n";
      run.clear();
    };
    for (const auto& p : s.points) {
      if (!p || !std::isfinite(p->second)) {
        flush();
        continue;
      }
      if (!run.empty()) run += ' ';
      run += fixed(px(p->first), 2) + "," + fixed(py(p->second), 2);
    }
    flush();
    svg << "</g>\n";

    const double ly = kTop + 14 + 18.0 * static_cast<double>(k);
    svg << "<line x1=\"" << kLeft + kPlotW + 10 << "\" x2=\"" << kLeft + kPlotW + 40 << "\" y1=\""
        << ly << "\" y2=\"" << ly << "\" " << style << "/>\n";
    svg << "<text x=\"" << kLeft + kPlotW + 46 << "\" y=\"" << ly + 4
        << "\" font-family=\"sans-serif\" font-size=\"11\">" << s.name << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

constexpr const char* kColours[] = {"#000000", "#777777", "#bbbbbb"};

const char* colour(std::size_t k) { return kColours[k % 3]; }

using Component = Complex (*)(const ChiralConstitutive&);

struct Panel {
  std::string file;
  std::string title;
  std::string quantity;  // column prefix and y label
  Component component;
  std::vector<std::size_t> scenarios;
};

void write_panel(const fs::path& dir, const Panel& panel, const std::vector<ScenarioResult>& results,
                 bool svg, std::vector<fs::path>& written) {
  const auto& first = results[panel.scenarios.front()].spectrum.records;

  std::ostringstream csv;
  csv << "delta_p";
  for (std::size_t idx : panel.scenarios) {
    const std::string& label = results[idx].spectrum.scenario.label;
    csv << ",re_" << panel.quantity << '_' << label << ",im_" << panel.quantity << '_' << label;
  }
  csv << '\n';
  for (std::size_t i = 0; i < first.size(); ++i) {
    csv << format_double(first[i].delta_p);
    for (std::size_t idx : panel.scenarios) {
      const SpectrumRecord& r = results[idx].spectrum.records[i];
      if (r.ok()) {
        const Complex v = panel.component(r.values);
        csv << ',' << format_double(v.real()) << ',' << format_double(v.imag());
      } else {
        csv << ",,";
      }
    }
    csv << '\n';
  }
  const fs::path csv_path = dir / (panel.file + ".csv");
  write_text(csv_path, csv.str());
  written.push_back(csv_path);

  if (!svg) return;
  std::vector<Series> series;
  for (std::size_t k = 0; k < panel.scenarios.size(); ++k) {
    const ScenarioResult& res = results[panel.scenarios[k]];
    Series re{"Re " + res.spectrum.scenario.label, colour(k), false, {}};
    Series im{"Im " + res.spectrum.scenario.label, colour(k), true, {}};
    for (const SpectrumRecord& r : res.spectrum.records) {
      if (!r.ok()) {
        re.points.emplace_back();
        im.points.emplace_back();
        continue;
      }
      const Complex v = panel.component(r.values);
      re.points.emplace_back(std::pair{r.delta_p, v.real()});
      im.points.emplace_back(std::pair{r.delta_p, v.imag()});
    }
    series.push_back(std::move(re));
    series.push_back(std::move(im));
  }
  const fs::path svg_path = dir / (panel.file + ".svg");
  write_text(svg_path, render_svg(panel.title, panel.quantity, series));
  written.push_back(svg_path);
}

const char* kCoefficientNames[] = {"ee", "eh", "he", "hh"};

Complex coefficient(const ReducedResponse& r, std::size_t c) {
  switch (c) {
    case 0: return r.ee;
    case 1: return r.eh;
    case 2: return r.he;
    default: return r.hh;
  }
}

}  // namespace

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

void write_spectrum_csv(std::ostream& out, const std::vector<SpectrumRecord>& records) {
  out << kSpectrumHeader << '\n';
  for (const SpectrumRecord& r : records) {
    out << format_double(r.delta_p);
    if (r.ok()) {
      const ChiralConstitutive& c = r.values;
      for (const Complex& z : {c.xi_eh, c.xi_he, c.eps_r, c.mu_r, c.n})
        out << ',' << format_double(z.real()) << ',' << format_double(z.imag());
      out << ",\n";
    } else {
      out << ",,,,,,,,,," << ',' << sweep::flag_name(r.flag) << '\n';
    }
  }
}

std::vector<SpectrumRecord> read_spectrum_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kSpectrumHeader)
    throw Error(ErrorCode::kIo, "csv: missing or unexpected header");
  std::vector<SpectrumRecord> records;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const std::vector<std::string> f = split_csv(line);
    if (f.size() != 12)
      throw Error(ErrorCode::kIo, "csv line " + std::to_string(line_no) + ": expected 12 fields");
    SpectrumRecord r;
    r.delta_p = parse_field(f[0], line_no);
    const auto flag = sweep::parse_flag(f[11]);
    if (!flag) throw Error(ErrorCode::kIo, "csv line " + std::to_string(line_no) + ": unknown flag");
    r.flag = *flag;
    if (r.ok()) {
      const auto z = [&](std::size_t k) {
        return Complex(parse_field(f[k], line_no), parse_field(f[k + 1], line_no));
      };
      r.values = ChiralConstitutive{z(5), z(7), z(1), z(3), z(9)};
    }
    records.push_back(r);
  }
  return records;
}

std::vector<SpectrumRecord> read_spectrum_csv(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  return read_spectrum_csv(in);
}

std::vector<ScenarioResult> analyze(std::vector<sweep::ScenarioSpectrum> spectra) {
  std::vector<ScenarioResult> results;
  results.reserve(spectra.size());
  for (sweep::ScenarioSpectrum& s : spectra) {
    ScenarioResult r;
    r.bands = sweep::detect_negative_bands(s.records);
    r.summary = sweep::summarize_metrics(s.records, r.bands);
    r.spectrum = std::move(s);
    results.push_back(std::move(r));
  }
  return results;
}

std::string summary_json(const RunConfig& config, const std::vector<ScenarioResult>& results) {
  const sweep::SweepPlan& plan = config.plan;
  const PhysicsConfig& phys = plan.physics;
  ordered_json j;
  j["grid"] = {{"delta_p_start", plan.grid.start},
               {"delta_p_stop", plan.grid.stop},
               {"delta_p_count", plan.grid.count}};
  j["parameters"] = {
      {"atom_density", phys.medium.atom_density},
      {"wavelength_nm", phys.medium.wavelength * 1.0e9},
      {"gamma_scale", phys.rates.gamma_scale},
      {"gamma21", phys.rates.gamma21},
      {"gamma31", phys.rates.gamma31},
      {"gamma42", phys.rates.gamma42},
      {"gamma43", phys.rates.gamma43},
      {"gamma_c", phys.rates.gamma_c},
      {"paper_literal_mapping", phys.medium.mapping == PolarizationMapping::kPaperLiteral},
      {"gamma6_includes_dephasing", phys.damping.gamma6_includes_dephasing},
      {"omega_s", plan.omega_s},
      {"delta_c", plan.delta_c},
      {"delta_m", plan.delta_m},
      {"delta_s", plan.delta_s},
  };

  ordered_json scenarios = ordered_json::array();
  std::vector<sweep::ScenarioSummary> summaries;
  for (const ScenarioResult& r : results) {
    const sweep::Scenario& s = r.spectrum.scenario;
    scenarios.push_back({{"label", s.label},
                         {"csv", s.label + ".csv"},
                         {"theta", s.theta},
                         {"theta_over_pi", s.theta / std::numbers::pi},
                         {"omega_c", s.omega_c},
                         {"band_report", band_report_json(r.bands)},
                         {"metrics", summary_metrics_json(r.summary)}});
    summaries.push_back(r.summary);
  }
  j["scenarios"] = scenarios;

  ordered_json cross;
  const auto best = sweep::most_negative_scenario(summaries);
  cross["most_negative_min_re_n"] =
      best ? ordered_json(results[*best].spectrum.scenario.label) : ordered_json(nullptr);
  ordered_json groups = ordered_json::array();
  for (const std::vector<std::size_t>& group : theta_groups(results)) {
    std::vector<std::size_t> order = group;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return results[a].spectrum.scenario.omega_c < results[b].spectrum.scenario.omega_c;
    });
    ordered_json labels = ordered_json::array();
    std::vector<double> widths;
    std::vector<sweep::ScenarioSummary> group_summaries;
    for (std::size_t idx : order) {
      labels.push_back(results[idx].spectrum.scenario.label);
      widths.push_back(results[idx].summary.total_band_width);
      group_summaries.push_back(results[idx].summary);
    }
    const auto group_best = sweep::most_negative_scenario(group_summaries);
    groups.push_back(
        {{"theta_over_pi", results[group.front()].spectrum.scenario.theta / std::numbers::pi},
         {"scenarios_by_omega_c", labels},
         {"total_band_widths", widths},
         {"band_width_non_decreasing_in_omega_c", sweep::is_non_decreasing(widths)},
         {"most_negative_min_re_n",
          group_best ? ordered_json(results[order[*group_best]].spectrum.scenario.label)
                     : ordered_json(nullptr)}});
  }
  cross["theta_groups"] = groups;
  j["cross_scenario"] = cross;
  return j.dump(2) + "\n";
}

std::string bands_json(const std::vector<ScenarioResult>& results) {
  ordered_json j = ordered_json::array();
  for (const ScenarioResult& r : results)
    j.push_back({{"label", r.spectrum.scenario.label}, {"band_report", band_report_json(r.bands)}});
  return j.dump(2) + "\n";
}

std::vector<fs::path> write_sweep_outputs(const fs::path& dir, const RunConfig& config,
                                          const std::vector<ScenarioResult>& results) {
  ensure_directory(dir);
  std::vector<fs::path> written;
  for (const ScenarioResult& r : results) {
    std::ostringstream csv;
    write_spectrum_csv(csv, r.spectrum.records);
    const fs::path path = dir / (r.spectrum.scenario.label + ".csv");
    write_text(path, csv.str());
    written.push_back(path);
  }
  if (config.output.json) {
    const fs::path path = dir / "summary.json";
    write_text(path, summary_json(config, results));
    written.push_back(path);
  }
  return written;
}

std::vector<fs::path> write_figures(const fs::path& dir, const RunConfig& config,
                                    const std::vector<ScenarioResult>& results) {
  ensure_directory(dir);
  std::vector<fs::path> written;
  if (results.empty()) return written;

  std::size_t reference = 0;
  for (std::size_t i = 0; i < results.size(); ++i)
    if (results[i].spectrum.scenario.label == config.figure_reference) reference = i;

  const auto groups = theta_groups(results);
  std::vector<Panel> panels{
      {"fig2_xi_eh", "Chirality coefficient xi_EH", "xi_eh",
       [](const ChiralConstitutive& c) { return c.xi_eh; }, {reference}},
      {"fig2_xi_he", "Chirality coefficient xi_HE", "xi_he",
       [](const ChiralConstitutive& c) { return c.xi_he; }, {reference}},
  };
  const char* n_files[] = {"fig3a_n", "fig3b_n"};
  for (std::size_t g = 0; g < std::min<std::size_t>(groups.size(), 2); ++g) {
    const double theta_over_pi = results[groups[g].front()].spectrum.scenario.theta / std::numbers::pi;
    panels.push_back({n_files[g], "Refractive index, theta = " + fixed(theta_over_pi, 3) + " pi",
                      "n", [](const ChiralConstitutive& c) { return c.n; }, groups[g]});
  }
  panels.push_back({"fig4_eps", "Relative permittivity", "eps",
                    [](const ChiralConstitutive& c) { return c.eps_r; }, {reference}});
  panels.push_back({"fig4_mu", "Relative permeability", "mu",
                    [](const ChiralConstitutive& c) { return c.mu_r; }, {reference}});

  for (const Panel& p : panels) write_panel(dir, p, results, config.output.svg, written);
  return written;
}

std::vector<fs::path> write_oracle_report(const fs::path& dir, const RunConfig& config,
                                          const sweep::OracleCheckReport& report) {
  ensure_directory(dir);
  std::vector<fs::path> written;

  for (const sweep::ScenarioOracleTable& t : report.tables) {
    std::ostringstream csv;
    csv << "index,delta_p,status,residual,structural_zeros_match";
    for (const char* c : kCoefficientNames) {
      csv << ",re_" << c << "_closed,im_" << c << "_closed,re_" << c << "_oracle,im_" << c
          << "_oracle,dev_" << c << ",dev_" << c << "_repaired";
    }
    csv << '\n';
    for (const sweep::OracleRow& row : t.rows) {
      csv << row.index << ',' << format_double(row.delta_p) << ','
          << (row.evaluated ? "ok" : "excluded:" + row.excluded_reason);
      if (!row.evaluated) {
        csv << ",," << std::string(6 * 4, ',') << '\n';
        continue;
      }
      csv << ',' << format_double(row.residual) << ','
          << (row.printed_vs_oracle.structural_zeros_match ? "true" : "false");
      for (std::size_t c = 0; c < 4; ++c) {
        const Complex closed = coefficient(row.closed, c);
        const Complex oracle = coefficient(row.oracle, c);
        csv << ',' << format_double(closed.real()) << ',' << format_double(closed.imag()) << ','
            << format_double(oracle.real()) << ',' << format_double(oracle.imag()) << ','
            << format_double(row.printed_vs_oracle.deviation[c]) << ','
            << format_double(row.repaired_vs_oracle.deviation[c]);
      }
      csv << '\n';
    }
    const fs::path path = dir / ("oracle_" + t.scenario.label + ".csv");
    write_text(path, csv.str());
    written.push_back(path);
  }

  std::ostringstream md;
  md << "# Closed form vs Liouville oracle\n\n";
  md << "Oracle frame: "
     << (config.plan.oracle_frame == oracle::FrameConvention::kIndependentDetunings
             ? "independent detunings"
             : "level frame")
     << ". Agreement target " << general(report.agreement_target)
     << " relative, residual tolerance " << general(report.residual_tolerance) << ".\n\n";
  md << "- max residual: " << format_double(report.max_residual)
     << (report.residuals_ok() ? " (ok)" : " (EXCEEDS TOLERANCE)") << "\n";
  md << "- structural zeros match: " << (report.structural_zeros_match ? "yes" : "no") << "\n";
  md << "- excluded points: " << report.excluded_points << "\n\n";
  if (report.findings.empty()) {
    md << "No findings: every coefficient agrees within the target.\n";
  } else {
    md << "| scenario | coefficient | printed expression | max deviation | at delta_p | repair | "
          "repaired max deviation |\n";
    md << "|---|---|---|---|---|---|---|\n";
    for (const sweep::ErrataFinding& f : report.findings) {
      md << "| " << f.scenario << " | " << f.coefficient << " | " << f.printed_expression << " | "
         << format_double(f.max_deviation) << " | " << format_double(f.at_delta_p) << " | "
         << (f.repair.empty() ? "none known" : f.repair) << " | "
         << (f.repair.empty() ? "" : format_double(f.repaired_max_deviation)) << " |\n";
    }
  }
  const fs::path md_path = dir / "errata.md";
  write_text(md_path, md.str());
  written.push_back(md_path);

  ordered_json j;
  j["oracle_frame"] = config.plan.oracle_frame == oracle::FrameConvention::kIndependentDetunings
                          ? "independent"
                          : "level";
  j["residual_tolerance"] = report.residual_tolerance;
  j["agreement_target"] = report.agreement_target;
  j["max_residual"] = report.max_residual;
  j["residuals_ok"] = report.residuals_ok();
  j["structural_zeros_match"] = report.structural_zeros_match;
  j["excluded_points"] = report.excluded_points;
  ordered_json tables = ordered_json::array();
  for (const sweep::ScenarioOracleTable& t : report.tables)
    tables.push_back({{"label", t.scenario.label},
                      {"rows", t.rows.size()},
                      {"csv", "oracle_" + t.scenario.label + ".csv"}});
  j["tables"] = tables;
  ordered_json findings = ordered_json::array();
  for (const sweep::ErrataFinding& f : report.findings)
    findings.push_back({{"scenario", f.scenario},
                        {"coefficient", f.coefficient},
                        {"printed_expression", f.printed_expression},
                        {"max_deviation", f.max_deviation},
                        {"at_delta_p", f.at_delta_p},
                        {"repair", f.repair.empty() ? ordered_json(nullptr) : ordered_json(f.repair)},
                        {"repaired_max_deviation", f.repair.empty()
                                                       ? ordered_json(nullptr)
                                                       : ordered_json(f.repaired_max_deviation)}});
  j["findings"] = findings;
  const fs::path json_path = dir / "oracle_summary.json";
  write_text(json_path, j.dump(2) + "\n");
  written.push_back(json_path);
  return written;
}

}  // namespace chiral_nri::output
