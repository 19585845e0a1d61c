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

#include "chiral_nri/run_config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <set>
#include <sstream>
#include <variant>

#include "chiral_nri/error.hpp"

namespace chiral_nri {

namespace {

using StringList = std::vector<std::string>;
using NumberList = std::vector<double>;
using Value = std::variant<double, bool, std::string, StringList, NumberList>;

class ConfigParser {
 public:
  ConfigParser(std::string_view text, std::string source)
      : text_(text), source_(std::move(source)) {}

  RunConfig parse();

 private:
  [[noreturn]] void fail(int line, const std::string& message) const {
    throw Error(ErrorCode::kConfig, source_ + ":" + std::to_string(line) + ": " + message);
  }

  std::string qualified(const std::string& key) const {
    return section_.empty() ? key : section_ + "." + key;
  }

  Value parse_value(std::string_view text, int line) const;
  std::string parse_string(std::string_view text, std::size_t& pos, int line) const;
  double parse_number(std::string_view token, int line) const;

  void open_section(const std::string& name, int line);
  void assign(const std::string& key, const Value& value, int line);
  void finish_scenario();

  double number(const std::string& key, const Value& v, int line) const;
  bool boolean(const std::string& key, const Value& v, int line) const;
  std::string string(const std::string& key, const Value& v, int line) const;
  std::size_t count(const std::string& key, const Value& v, int line) const;
  double positive(const std::string& key, const Value& v, int line) const;
  double non_negative(const std::string& key, const Value& v, int line) const;

  std::string_view text_;
  std::string source_;
  RunConfig config_;
  std::string section_;
  std::set<std::string> seen_;
  bool scenarios_given_ = false;
  bool reference_given_ = false;
  int reference_line_ = 0;

  struct PendingScenario {
    int line = 0;
    std::optional<std::string> label;
    std::optional<double> theta_over_pi;
    std::optional<double> omega_c;
  };
  std::optional<PendingScenario> scenario_;
  std::set<std::string> scenario_keys_;
};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

// Drops a trailing '#' comment that is not inside a string.
std::string_view strip_comment(std::string_view line) {
  bool in_string = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (in_string && c == '\\') {
      ++i;
    } else if (c == '"') {
      in_string = !in_string;
    } else if (c == '#' && !in_string) {
      return line.substr(0, i);
    }
  }
  return line;
}

bool is_bare_key(std::string_view key) {
  if (key.empty()) return false;
  for (char c : key) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                    c == '_' || c == '-';
    if (!ok) return false;
  }
  return true;
}

std::string format_label_number(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

std::string ConfigParser::parse_string(std::string_view text, std::size_t& pos, int line) const {
  // text[pos] == '"'
  std::string out;
  for (++pos; pos < text.size(); ++pos) {
    const char c = text[pos];
    if (c == '"') {
      ++pos;
      return out;
    }
    if (c == '\\') {
      if (++pos >= text.size()) break;
      switch (text[pos]) {
        case '"': out += '"'; break;
        case '\\': out += '\\'; break;
        case 'n': out += '\n'; break;
        case 't': out += '\t'; break;
        default: fail(line, std::string("unsupported escape '\\") + text[pos] + "'");
      }
      continue;
    }
    out += c;
  }
  fail(line, "unterminated string");
}

double ConfigParser::parse_number(std::string_view token, int line) const {
  std::string_view digits = token;
  if (!digits.empty() && digits.front() == '+') digits.remove_prefix(1);
  double v = 0.0;
  const auto [end, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v);
  if (ec != std::errc() || end != digits.data() + digits.size() || digits.empty())
    fail(line, "invalid value '" + std::string(token) + "'");
  if (!std::isfinite(v)) fail(line, "value '" + std::string(token) + "' is not finite");
  return v;
}

Value ConfigParser::parse_value(std::string_view text, int line) const {
  if (text.empty()) fail(line, "missing value");
  if (text.front() == '"') {
    std::size_t pos = 0;
    std::string s = parse_string(text, pos, line);
    if (!trim(text.substr(pos)).empty()) fail(line, "unexpected text after string");
    return s;
  }
  if (text.front() == '[') {
    if (text.back() != ']') fail(line, "unterminated array");
    const std::string_view body = text.substr(1, text.size() - 2);
    StringList strings;
    NumberList numbers;
    std::size_t pos = 0;
    while (true) {
      while (pos < body.size() && (body[pos] == ' ' || body[pos] == '\t')) ++pos;
      if (pos >= body.size()) break;
      if (body[pos] == '"') {
        strings.push_back(parse_string(body, pos, line));
      } else {
        const std::size_t comma = body.find(',', pos);
        const std::string_view token =
            trim(body.substr(pos, comma == std::string_view::npos ? body.npos : comma - pos));
        numbers.push_back(parse_number(token, line));
        pos = comma == std::string_view::npos ? body.size() : comma;
      }
      while (pos < body.size() && (body[pos] == ' ' || body[pos] == '\t')) ++pos;
      if (pos >= body.size()) break;
      if (body[pos] != ',') fail(line, "expected ',' in array");
      ++pos;
    }
    if (!strings.empty() && !numbers.empty()) fail(line, "mixed-type array");
    if (!numbers.empty()) return numbers;
    return strings;
  }
  if (text == "true") return true;
  if (text == "false") return false;
  return parse_number(text, line);
}

double ConfigParser::number(const std::string& key, const Value& v, int line) const {
  if (const double* d = std::get_if<double>(&v)) return *d;
  fail(line, "key '" + qualified(key) + "' expects a number");
}

bool ConfigParser::boolean(const std::string& key, const Value& v, int line) const {
  if (const bool* b = std::get_if<bool>(&v)) return *b;
  fail(line, "key '" + qualified(key) + "' expects true or false");
}

std::string ConfigParser::string(const std::string& key, const Value& v, int line) const {
  if (const std::string* s = std::get_if<std::string>(&v)) return *s;
  fail(line, "key '" + qualified(key) + "' expects a string");
}

std::size_t ConfigParser::count(const std::string& key, const Value& v, int line) const {
  const double d = number(key, v, line);
  if (d < 0.0 || d != std::floor(d) || d > 1.0e9)
    fail(line, "key '" + qualified(key) + "' expects a non-negative integer");
  return static_cast<std::size_t>(d);
}

double ConfigParser::positive(const std::string& key, const Value& v, int line) const {
  const double d = number(key, v, line);
  if (!(d > 0.0)) fail(line, "key '" + qualified(key) + "' must be > 0");
  return d;
}

double ConfigParser::non_negative(const std::string& key, const Value& v, int line) const {
  const double d = number(key, v, line);
  if (d < 0.0) fail(line, "key '" + qualified(key) + "' must be >= 0");
  return d;
}

void ConfigParser::finish_scenario() {
  if (!scenario_) return;
  const PendingScenario& p = *scenario_;
  if (!p.theta_over_pi) fail(p.line, "scenario is missing 'theta_over_pi'");
  if (!p.omega_c) fail(p.line, "scenario is missing 'omega_c'");
  sweep::Scenario s;
  s.theta = *p.theta_over_pi * std::numbers::pi;
  s.omega_c = *p.omega_c;
  s.label = p.label ? *p.label
                    : "theta_" + format_label_number(*p.theta_over_pi) + "pi_omega_c_" +
                          format_label_number(*p.omega_c);
  for (const sweep::Scenario& other : config_.plan.scenarios) {
    if (other.label == s.label) fail(p.line, "duplicate scenario label '" + s.label + "'");
  }
  config_.plan.scenarios.push_back(std::move(s));
  scenario_.reset();
}

void ConfigParser::open_section(const std::string& name, int line) {
  finish_scenario();
  static const std::set<std::string> kSections{"medium", "drives", "sweep", "numerics", "output",
                                               "figures"};
  if (!kSections.count(name)) fail(line, "unknown section '[" + name + "]'");
  if (!seen_.insert("[" + name + "]").second) fail(line, "duplicate section '[" + name + "]'");
  section_ = name;
}

void ConfigParser::assign(const std::string& key, const Value& v, int line) {
  if (section_ == "scenario") {
    if (!scenario_keys_.insert(key).second) fail(line, "duplicate key 'scenario." + key + "'");
    PendingScenario& p = *scenario_;
    if (key == "label") {
      const std::string label = string(key, v, line);
      if (label.empty()) fail(line, "key 'scenario.label' must not be empty");
      if (label.find_first_of("/\\") != std::string::npos)
        fail(line, "key 'scenario.label' must not contain path separators");
      p.label = label;
    } else if (key == "theta_over_pi") {
      p.theta_over_pi = number(key, v, line);
    } else if (key == "omega_c") {
      p.omega_c = non_negative(key, v, line);
    } else {
      fail(line, "unknown key 'scenario." + key + "'");
    }
    return;
  }

  if (section_.empty()) fail(line, "key '" + key + "' outside of any section");
  if (!seen_.insert(qualified(key)).second) fail(line, "duplicate key '" + qualified(key) + "'");

  sweep::SweepPlan& plan = config_.plan;
  PhysicsConfig& phys = plan.physics;
  using Setter = std::function<void()>;
  std::map<std::string, Setter> setters;
  if (section_ == "medium") {
    setters = {
        {"atom_density", [&] { phys.medium.atom_density = non_negative(key, v, line); }},
        {"wavelength_nm", [&] { phys.medium.wavelength = positive(key, v, line) * 1.0e-9; }},
        {"gamma_scale", [&] { phys.rates.gamma_scale = positive(key, v, line); }},
        {"gamma21", [&] { phys.rates.gamma21 = positive(key, v, line); }},
        {"gamma31", [&] { phys.rates.gamma31 = non_negative(key, v, line); }},
        {"gamma42", [&] { phys.rates.gamma42 = non_negative(key, v, line); }},
        {"gamma43", [&] { phys.rates.gamma43 = positive(key, v, line); }},
        {"gamma_c", [&] { phys.rates.gamma_c = non_negative(key, v, line); }},
        {"paper_literal_mapping",
         [&] {
           phys.medium.mapping = boolean(key, v, line) ? PolarizationMapping::kPaperLiteral
                                                       : PolarizationMapping::kParityConsistent;
         }},
        {"gamma6_includes_dephasing",
         [&] { phys.damping.gamma6_includes_dephasing = boolean(key, v, line); }},
    };
  } else if (section_ == "drives") {
    setters = {
        {"omega_s", [&] { plan.omega_s = non_negative(key, v, line); }},
        {"delta_c", [&] { plan.delta_c = number(key, v, line); }},
        {"delta_m", [&] { plan.delta_m = number(key, v, line); }},
        {"delta_s", [&] { plan.delta_s = number(key, v, line); }},
    };
  } else if (section_ == "sweep") {
    setters = {
        {"delta_p_start", [&] { plan.grid.start = number(key, v, line); }},
        {"delta_p_stop", [&] { plan.grid.stop = number(key, v, line); }},
        {"delta_p_count",
         [&] {
           plan.grid.count = count(key, v, line);
           if (plan.grid.count < 2) fail(line, "key 'sweep.delta_p_count' must be >= 2");
         }},
        {"oracle_stride",
         [&] {
           plan.oracle_stride = count(key, v, line);
           if (plan.oracle_stride < 1) fail(line, "key 'sweep.oracle_stride' must be >= 1");
         }},
        {"oracle_frame",
         [&] {
           const std::string f = string(key, v, line);
           if (f == "independent") {
             plan.oracle_frame = oracle::FrameConvention::kIndependentDetunings;
           } else if (f == "level") {
             plan.oracle_frame = oracle::FrameConvention::kLevelFrame;
           } else {
             fail(line, "key 'sweep.oracle_frame' must be \"independent\" or \"level\"");
           }
         }},
    };
  } else if (section_ == "numerics") {
    setters = {
        {"denominator_floor", [&] { phys.alpha.denominator_floor = non_negative(key, v, line); }},
        {"local_field_singular_fraction",
         [&] { phys.local_field.singular_fraction = non_negative(key, v, line); }},
        {"oracle_residual_tolerance",
         [&] { plan.oracle_residual_tolerance = positive(key, v, line); }},
    };
  } else if (section_ == "output") {
    setters = {
        {"directory",
         [&] {
           config_.output.directory = string(key, v, line);
           if (config_.output.directory.empty())
             fail(line, "key 'output.directory' must not be empty");
         }},
        {"formats",
         [&] {
           const StringList* list = std::get_if<StringList>(&v);
           if (!list) fail(line, "key 'output.formats' expects an array of strings");
           config_.output.csv = config_.output.json = config_.output.svg = false;
           for (const std::string& f : *list) {
             if (f == "csv") config_.output.csv = true;
             else if (f == "json") config_.output.json = true;
             else if (f == "svg") config_.output.svg = true;
             else fail(line, "unknown output format '" + f + "' (expected csv, json or svg)");
           }
           if (!config_.output.csv) fail(line, "key 'output.formats' must include \"csv\"");
         }},
    };
  } else if (section_ == "figures") {
    setters = {
        {"reference",
         [&] {
           config_.figure_reference = string(key, v, line);
           reference_given_ = true;
           reference_line_ = line;
         }},
    };
  }

  const auto it = setters.find(key);
  if (it == setters.end()) fail(line, "unknown key '" + qualified(key) + "'");
  it->second();
}

RunConfig ConfigParser::parse() {
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text_.size()) {
    const std::size_t nl = text_.find('\n', pos);
    const std::string_view raw =
        text_.substr(pos, nl == std::string_view::npos ? text_.npos : nl - pos);
    pos = nl == std::string_view::npos ? text_.size() + 1 : nl + 1;
    ++line_no;

    const std::string_view line = trim(strip_comment(raw));
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.starts_with("[[")) {
        if (line != "[[scenario]]") fail(line_no, "unknown array table '" + std::string(line) + "'");
        finish_scenario();
        if (!scenarios_given_) config_.plan.scenarios.clear();
        scenarios_given_ = true;
        section_ = "scenario";
        scenario_ = PendingScenario{line_no, {}, {}, {}};
        scenario_keys_.clear();
        continue;
      }
      if (line.back() != ']') fail(line_no, "malformed section header");
      open_section(std::string(trim(line.substr(1, line.size() - 2))), line_no);
      continue;
    }

    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) fail(line_no, "expected 'key = value'");
    const std::string key(trim(line.substr(0, eq)));
    if (!is_bare_key(key)) fail(line_no, "invalid key '" + key + "'");
    assign(key, parse_value(trim(line.substr(eq + 1)), line_no), line_no);
  }
  finish_scenario();

  sweep::SweepPlan& plan = config_.plan;
  if (plan.scenarios.empty()) fail(line_no, "no scenarios defined");
  if (!(plan.grid.stop > plan.grid.start))
    fail(line_no, "sweep.delta_p_stop must be greater than sweep.delta_p_start");

  bool reference_found = false;
  for (const sweep::Scenario& s : plan.scenarios) reference_found |= s.label == config_.figure_reference;
  if (!reference_found) {
    if (reference_given_)
      fail(reference_line_, "figures.reference '" + config_.figure_reference +
                                "' does not name a scenario");
    config_.figure_reference = plan.scenarios.front().label;
  }

  try {
    plan.validate();
    ResponseModel check(plan.physics);
    (void)check;
  } catch (const Error& e) {
    fail(line_no, e.what());
  }
  return config_;
}

}  // namespace

RunConfig parse_run_config(std::string_view text, const std::string& source) {
  return ConfigParser(text, source).parse();
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kConfig, path.string() + ": cannot open config file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_run_config(buffer.str(), path.string());
}

}  // namespace chiral_nri
