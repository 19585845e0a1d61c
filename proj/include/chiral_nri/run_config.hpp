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
#include <string>
#include <string_view>

#include "chiral_nri/sweep.hpp"

namespace chiral_nri {

struct OutputConfig {
  std::string directory = "out";
  bool csv = true;
  bool json = true;
  bool svg = true;
};

/// Parsed run configuration. Rates and Rabi frequencies are stored in units of
/// gamma, the wavelength in metres (the file gives nm).
struct RunConfig {
  sweep::SweepPlan plan;
  OutputConfig output;
  /// Scenario used for the chirality and eps/mu figure panels.
  std::string figure_reference = "fig3a_omega_c_1.3";
};

/// Strict TOML-subset parser. Any unknown section or key, malformed value or
/// invalid parameter throws Error(kConfig) with "source:line: message".
RunConfig parse_run_config(std::string_view text, const std::string& source = "<config>");

RunConfig load_run_config(const std::filesystem::path& path);

}  // namespace chiral_nri
