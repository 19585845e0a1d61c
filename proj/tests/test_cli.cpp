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

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"

// End-to-end runs of the chiral-nri executable.

namespace fs = std::filesystem;

namespace {

const fs::path kRoot = fs::temp_directory_path() / "chiral_nri_test_cli";

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path fresh(const std::string& name) {
  const fs::path dir = kRoot / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

fs::path write_config(const std::string& name, const std::string& text) {
  fs::create_directories(kRoot);
  const fs::path p = kRoot / (name + ".toml");
  std::ofstream(p) << text;
  return p;
}

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

// Runs the CLI with `args`; `env` is prepended as shell assignments.
Run run(const std::string& args, const std::string& env = "") {
  fs::create_directories(kRoot);
  const fs::path out = kRoot / "stdout.txt";
  const fs::path err = kRoot / "stderr.txt";
  const std::string cmd = "env -u CHIRAL_NRI_SEED_DIR " + env + " '" CHIRAL_NRI_CLI "' " + args +
                          " >'" + out.string() + "' 2>'" + err.string() + "'";
  const int status = std::system(cmd.c_str());
  Run r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> v;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) v.push_back(l);
  return v;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> v;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) v.push_back(cell);
  if (!line.empty() && line.back() == ',') v.emplace_back();
  return v;
}

const std::string kScenarios =
    "[[scenario]]\nlabel = \"a\"\ntheta_over_pi = 0.2\nomega_c = 1.3\n"
    "[[scenario]]\nlabel = \"b\"\ntheta_over_pi = 1.5\nomega_c = 1\n";

const std::string kSmall = "[sweep]\ndelta_p_count = 201\n" + kScenarios;

}  // namespace

TEST_CASE("sweep on the default config") {
  const fs::path out = fresh("default");
  const Run r = run("sweep --config '" CHIRAL_NRI_SOURCE_DIR "/configs/default.toml' --out '" +
                    out.string() + "' --jobs 4");
  REQUIRE(r.code == 0);
  const auto rows = lines(slurp(out / "fig3a_omega_c_1.3.csv"));
  REQUIRE(rows.size() == 2002);
  CHECK(rows[0] ==
        "delta_p,re_xi_eh,im_xi_eh,re_xi_he,im_xi_he,re_eps,im_eps,re_mu,im_mu,re_n,im_n,flag");
  CHECK(split(rows[1]).size() == 12);
  CHECK(split(rows[1])[0] == "-5");
  CHECK(split(rows[2001])[0] == "5");
  CHECK(fs::exists(out / "summary.json"));
  for (const char* label : {"fig3a_omega_c_0.4", "fig3a_omega_c_0.8", "fig3b_omega_c_1",
                            "fig3b_omega_c_1.4", "fig3b_omega_c_1.8"}) {
    CHECK(fs::exists(out / (std::string(label) + ".csv")));
  }
}

TEST_CASE("numbers are printed with 17 significant digits") {
  const fs::path cfg = write_config("digits", kSmall);
  const fs::path out = fresh("digits");
  REQUIRE(run("sweep --config '" + cfg.string() + "' --out '" + out.string() + "'").code == 0);
  const auto rows = lines(slurp(out / "a.csv"));
  // -5 + 7 * 0.05 is not exactly representable.
  CHECK(split(rows[8])[0] == "-4.6500000000000004");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto cells = split(rows[i]);
    REQUIRE(cells.size() == 12);
    for (std::size_t k = 0; k < 11; ++k) {
      const std::string& c = cells[k];
      CHECK(std::strtod(c.c_str(), nullptr) == std::stod(c));
      std::string mantissa;
      for (char ch : c.substr(0, c.find('e')))
        if (ch >= '0' && ch <= '9') mantissa += ch;
      mantissa.erase(0, mantissa.find_first_not_of('0'));
      CHECK(mantissa.size() <= 17);
    }
  }
}

TEST_CASE("vacuum sweep gives n = 1 everywhere") {
  const fs::path cfg = write_config("vacuum", "[medium]\natom_density = 0\n" + kSmall);
  const fs::path out = fresh("vacuum");
  REQUIRE(run("sweep --config '" + cfg.string() + "' --out '" + out.string() + "'").code == 0);
  const auto rows = lines(slurp(out / "b.csv"));
  REQUIRE(rows.size() == 202);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto cells = split(rows[i]);
    CHECK(cells[9] == "1");
    CHECK(cells[10] == "0");
    CHECK(cells[11] == "");
  }
}

TEST_CASE("output root precedence") {
  const fs::path cfg_dir = fresh("precedence_config");
  const fs::path env_dir = fresh("precedence_env");
  const fs::path flag_dir = fresh("precedence_flag");
  const fs::path cfg = write_config(
      "precedence", "[output]\ndirectory = \"" + cfg_dir.string() + "\"\n" + kSmall);

  REQUIRE(run("sweep --config '" + cfg.string() + "'").code == 0);
  CHECK(fs::exists(cfg_dir / "a.csv"));

  const std::string env = "CHIRAL_NRI_SEED_DIR='" + env_dir.string() + "'";
  REQUIRE(run("sweep --config '" + cfg.string() + "'", env).code == 0);
  CHECK(fs::exists(env_dir / "a.csv"));

  REQUIRE(run("sweep --config '" + cfg.string() + "' --out '" + flag_dir.string() + "'", env)
              .code == 0);
  CHECK(fs::exists(flag_dir / "a.csv"));
}

TEST_CASE("the config file is left untouched") {
  const fs::path cfg = write_config("untouched", kSmall);
  const std::string before = slurp(cfg);
  const auto stamp = fs::last_write_time(cfg);
  const fs::path out = fresh("untouched");
  REQUIRE(run("figures --config '" + cfg.string() + "' --out '" + out.string() + "'").code == 0);
  CHECK(slurp(cfg) == before);
  CHECK(fs::last_write_time(cfg) == stamp);
}

TEST_CASE("config errors exit 2") {
  const fs::path bad = write_config("bad", "[medium]\natom_densty = 1\n");
  const Run r = run("sweep --config '" + bad.string() + "' --out '" + fresh("bad").string() + "'");
  CHECK(r.code == 2);
  CHECK(r.err.find("bad.toml:2:") != std::string::npos);
  CHECK(r.err.find("atom_densty") != std::string::npos);
  CHECK(fs::is_empty(kRoot / "bad"));

  CHECK(run("sweep --config /nonexistent.toml").code == 2);
  CHECK(run("sweep").code == 2);
  CHECK(run("").code == 2);
  CHECK(run("transmogrify --config x").code == 2);
  const fs::path good = write_config("good", kSmall);
  CHECK(run("sweep --config '" + good.string() + "' --jobs 0").code == 2);
  CHECK(run("sweep --config '" + good.string() + "' --frobnicate").code == 2);
}

TEST_CASE("every point flagged exits 3 and writes nothing") {
  const fs::path cfg = write_config("flagged", "[numerics]\ndenominator_floor = 1e300\n" + kSmall);
  const fs::path out = fresh("flagged");
  for (const char* cmd : {"sweep", "bands", "figures"}) {
    const Run r = run(std::string(cmd) + " --config '" + cfg.string() + "' --out '" +
                      out.string() + "'");
    CHECK(r.code == 3);
  }
  CHECK(fs::is_empty(out));
}

TEST_CASE("oracle-check exits 0, or 4 above the residual tolerance") {
  const fs::path cfg = write_config(
      "oracle", "[sweep]\ndelta_p_count = 201\noracle_stride = 20\n" + kScenarios);
  const fs::path out = fresh("oracle");
  const Run ok = run("oracle-check --config '" + cfg.string() + "' --out '" + out.string() +
                     "' --jobs 2");
  CHECK(ok.code == 0);
  CHECK(fs::exists(out / "errata.md"));
  CHECK(lines(slurp(out / "oracle_a.csv")).size() == 12);

  const fs::path strict = write_config(
      "oracle_strict", "[numerics]\noracle_residual_tolerance = 1e-300\n"
                       "[sweep]\ndelta_p_count = 201\noracle_stride = 20\n" + kScenarios);
  const Run r = run("oracle-check --config '" + strict.string() + "' --out '" +
                    fresh("oracle_strict").string() + "'");
  CHECK(r.code == 4);
  CHECK(r.err.find("residual") != std::string::npos);
}

TEST_CASE("bands from a fresh sweep and from CSV agree") {
  const fs::path cfg = write_config("bands", kSmall);
  const fs::path data = fresh("bands_data");
  const fs::path direct = fresh("bands_direct");
  const fs::path reread = fresh("bands_reread");
  REQUIRE(run("sweep --config '" + cfg.string() + "' --out '" + data.string() + "'").code == 0);
  const Run a = run("bands --config '" + cfg.string() + "' --out '" + direct.string() + "'");
  const Run b = run("bands --config '" + cfg.string() + "' --out '" + reread.string() +
                    "' --from-csv '" + data.string() + "'");
  REQUIRE(a.code == 0);
  REQUIRE(b.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.find("a: ") != std::string::npos);
  CHECK(slurp(direct / "bands.json") == slurp(reread / "bands.json"));

  CHECK(run("bands --config '" + cfg.string() + "' --out '" + reread.string() +
            "' --from-csv /nonexistent")
            .code == 1);
}

TEST_CASE("figures") {
  const fs::path cfg = write_config("figures", kSmall);
  const fs::path out = fresh("figures");
  REQUIRE(run("figures --config '" + cfg.string() + "' --out '" + out.string() + "'").code == 0);
  for (const char* panel : {"fig2_xi_eh", "fig2_xi_he", "fig3a_n", "fig3b_n", "fig4_eps", "fig4_mu"}) {
    CHECK(fs::exists(out / (std::string(panel) + ".csv")));
    CHECK(fs::exists(out / (std::string(panel) + ".svg")));
  }
}

TEST_CASE("runs are byte-identical across thread counts") {
  const fs::path cfg = write_config("threads", kSmall);
  const fs::path one = fresh("threads_1");
  const fs::path many = fresh("threads_8");
  REQUIRE(run("sweep --config '" + cfg.string() + "' --out '" + one.string() + "' --jobs 1").code ==
          0);
  REQUIRE(run("sweep --config '" + cfg.string() + "' --out '" + many.string() + "' --jobs 8")
              .code == 0);
  for (const char* f : {"a.csv", "b.csv", "summary.json"}) CHECK(slurp(one / f) == slurp(many / f));
}
