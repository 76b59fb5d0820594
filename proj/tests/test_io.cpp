// Copyright 2026 The pfvism authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "pfvism/io.hpp"

using namespace pfv;

namespace {

std::string tmp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(bool(in));
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST_CASE("double formatting round-trips") {
  for (double v : {0.0, 1.0, -76.81676, 1e-300, 0.1 + 0.2, -21.833031223118272, 3.0 / 7.0}) {
    CHECK(std::stod(format_double(v)) == v);
  }
}

TEST_CASE("config save/load is the identity") {
  FullConfig c;
  c.physics.gamma0 = 0.2;
  c.physics.eps_w = 78.5;
  c.run.nx = 48;
  c.run.ly = 13.25;
  c.run.epsilon = 0.1 + 0.2;  // not exactly representable in short decimal
  c.run.dt = 0.0125;
  c.run.tol = 0.0;
  c.run.max_steps = 1234;
  c.run.scheme = Scheme::etd4rk;
  c.run.coupling = Coupling::quadratic;
  c.run.nu_safety = 1.5;
  c.run.log_every = 7;
  c.run.initial.kind = InitialCondition::Kind::tight_boxes;
  c.run.initial.smoothing = 0.3;
  c.solute.kind = SoluteSpec::Kind::plates;
  c.solute.q1 = 0.2;
  c.solute.q2 = -0.1;
  c.solute.n_p = 5;

  const std::string path = tmp_path("pfvism_config_test.cfg");
  save_config(c, path);
  const FullConfig back = load_config(path);
  std::remove(path.c_str());

  CHECK(back.physics.gamma0 == c.physics.gamma0);
  CHECK(back.physics.eps_w == c.physics.eps_w);
  CHECK(back.run.nx == c.run.nx);
  CHECK(back.run.ly == c.run.ly);
  CHECK(back.run.epsilon == c.run.epsilon);
  CHECK(back.run.dt == c.run.dt);
  CHECK(back.run.tol == c.run.tol);
  CHECK(back.run.max_steps == c.run.max_steps);
  CHECK(back.run.scheme == c.run.scheme);
  CHECK(back.run.coupling == c.run.coupling);
  CHECK(back.run.nu_safety == c.run.nu_safety);
  CHECK(back.run.log_every == c.run.log_every);
  CHECK(back.run.initial.kind == c.run.initial.kind);
  CHECK(back.run.initial.smoothing == c.run.initial.smoothing);
  CHECK(back.solute.kind == c.solute.kind);
  CHECK(back.solute.q1 == c.solute.q1);
  CHECK(back.solute.q2 == c.solute.q2);
  CHECK(back.solute.n_p == c.solute.n_p);
  // A second format pass is byte-identical.
  CHECK(format_config_text(back) == format_config_text(c));
}

TEST_CASE("config parser rejects malformed input with line numbers") {
  CHECK_THROWS_AS(parse_config_text("[solver]\nbogus_key = 1\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config_text("[warp]\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config_text("dt = 0.1\n"), std::invalid_argument);  // key before section
  CHECK_THROWS_AS(parse_config_text("[solver]\ndt = fast\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config_text("[solver]\ndt 0.1\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config_text("[grid]\nnx = 32.5\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config_text("[solver]\nscheme = etd3rk\n"), std::invalid_argument);
  try {
    parse_config_text("[solver]\n# fine\n\nmystery = 1\n");
    FAIL("expected a throw");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("line 4") != std::string::npos);
  }
  // Comments, blank lines and padding are accepted.
  const FullConfig ok = parse_config_text("# header\n[solver]\n  dt   =  0.25  \n");
  CHECK(ok.run.dt == 0.25);
}

TEST_CASE("checkpoint round trip is bit exact") {
  const GridSpec grid{3.0, 4.0, 5.0, 6, 8, 10};
  Checkpoint cp;
  cp.phi = ScalarField3D(grid);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> uni(-2.0, 2.0);
  for (double& v : cp.phi.data) v = uni(rng);
  cp.epsilon = 0.125;
  cp.step = 42;
  cp.scheme = Scheme::etd4rk;

  const std::string path = tmp_path("pfvism_checkpoint_test.bin");
  write_checkpoint(cp, path);
  const Checkpoint back = read_checkpoint(path);
  CHECK(back.epsilon == cp.epsilon);
  CHECK(back.step == cp.step);
  CHECK(back.scheme == cp.scheme);
  CHECK(back.phi.grid.nx == grid.nx);
  CHECK(back.phi.grid.ly == grid.ly);
  REQUIRE(back.phi.data.size() == cp.phi.data.size());
  for (std::size_t m = 0; m < cp.phi.data.size(); ++m) {
    CHECK(back.phi.data[m] == cp.phi.data[m]);
  }

  SUBCASE("size mismatch against the sidecar throws") {
    std::ofstream truncate(path, std::ios::binary);
    truncate << "short";
    truncate.close();
    CHECK_THROWS_AS(read_checkpoint(path), std::runtime_error);
  }
  SUBCASE("missing sidecar throws") {
    std::remove((path + ".meta").c_str());
    CHECK_THROWS(read_checkpoint(path));
  }
  std::remove(path.c_str());
  std::remove((path + ".meta").c_str());
}

TEST_CASE("VTK export is deterministic and complete") {
  const GridSpec grid{2.0, 2.0, 2.0, 8, 8, 8};
  const ScalarField3D phi(grid, 0.75);
  const std::string path = tmp_path("pfvism_vtk_test.vtk");
  export_vtk(phi, path);
  const std::string first = slurp(path);

  std::istringstream in(first);
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(in, line)) lines.push_back(line);
  REQUIRE(lines.size() == 10 + 512);
  CHECK(lines[0] == "# vtk DataFile Version 3.0");
  CHECK(lines[3] == "DATASET STRUCTURED_POINTS");
  CHECK(lines[4] == "DIMENSIONS 8 8 8");
  CHECK(lines[6] == "SPACING 0.5 0.5 0.5");
  CHECK(lines[7] == "POINT_DATA 512");
  for (std::size_t m = 10; m < lines.size(); ++m) CHECK(lines[m] == "0.75");

  export_vtk(phi, path);
  CHECK(slurp(path) == first);
  std::remove(path.c_str());
}

TEST_CASE("CSV writers emit parse-back-lossless rows") {
  const std::string path = tmp_path("pfvism_csv_test.csv");
  std::vector<LogEntry> log(2);
  log[0] = {0, 0.0, {1.0 / 3.0, -0.1, 0.2, 1.0 / 3.0 + 0.1}};
  log[1] = {5, 0.25, {2.0, -1.0, 0.5, 1.5}};
  write_energy_log_csv(log, path);
  std::istringstream in(slurp(path));
  std::string line;
  std::getline(in, line);
  CHECK(line == "step,time,F_surf,F_vdw,F_ele,F_tot");
  for (const LogEntry& e : log) {
    REQUIRE(bool(std::getline(in, line)));
    std::istringstream row(line);
    std::string cell;
    std::getline(row, cell, ',');
    CHECK(std::stol(cell) == e.step);
    std::getline(row, cell, ',');
    CHECK(std::stod(cell) == e.time);
    std::getline(row, cell, ',');
    CHECK(std::stod(cell) == e.energy.f_surf);
    std::getline(row, cell, ',');
    CHECK(std::stod(cell) == e.energy.f_vdw);
    std::getline(row, cell, ',');
    CHECK(std::stod(cell) == e.energy.f_ele);
    std::getline(row, cell, ',');
    CHECK(std::stod(cell) == e.energy.f_tot);
  }
  std::remove(path.c_str());
}

TEST_CASE("rates report recovers synthetic convergence orders") {
  const double benchmark = -100.0;
  SchemeEnergies first{"ETD1RK", {}};
  SchemeEnergies fourth{"ETD4RK", {}};
  for (int k = 0; k < 4; ++k) {
    const double dt = 0.1 / (1 << k);
    first.by_dt.emplace_back(dt, benchmark + 2.0 * dt);
    fourth.by_dt.emplace_back(dt, benchmark + 3.0 * dt * dt * dt * dt);
  }
  const std::vector<RateRow> rows = rates_report({first, fourth}, benchmark);
  REQUIRE(rows.size() == 8);
  CHECK(std::isnan(rows[0].rate));
  CHECK(std::isnan(rows[4].rate));
  for (int k = 1; k < 4; ++k) {
    // The benchmark offset of ~100 kBT leaves ~1e-7 relative noise in the
    // smallest synthetic errors.
    CHECK(rows[k].rate == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(rows[4 + k].rate == doctest::Approx(4.0).epsilon(1e-6));
  }
  CHECK(rows[1].error == doctest::Approx(0.1).epsilon(1e-12));

  SUBCASE("published second-order energies") {
    // Final gradient-flow energies at halving step sizes, benchmark from the
    // same flow at a much finer step.
    SchemeEnergies etd2{"ETD2RK",
                        {{0.32, -646.0728},
                         {0.16, -651.7595},
                         {0.08, -653.6880},
                         {0.04, -654.3495},
                         {0.02, -654.5453},
                         {0.01, -654.5987},
                         {0.005, -654.6127}}};
    const std::vector<RateRow> r2 = rates_report({etd2}, -654.61761379);
    const double expected[] = {1.58, 1.62, 1.79, 1.89, 1.94, 1.95};
    for (int k = 0; k < 6; ++k) {
      CHECK(r2[k + 1].rate == doctest::Approx(expected[k]).epsilon(0.005));
    }
  }
  SUBCASE("rejects non-halving sequences and short tables") {
    SchemeEnergies bad{"ETD2RK", {{0.1, -99.0}, {0.05, -99.5}, {0.03, -99.8}}};
    CHECK_THROWS_AS(rates_report({bad}, benchmark), std::invalid_argument);
    SchemeEnergies tiny{"ETD2RK", {{0.1, -99.0}, {0.05, -99.5}}};
    CHECK_THROWS_AS(rates_report({tiny}, benchmark), std::invalid_argument);
  }

  const std::string path = tmp_path("pfvism_rates_test.csv");
  write_rates_csv(rows, path);
  std::istringstream in(slurp(path));
  std::string line;
  std::getline(in, line);
  CHECK(line == "scheme,dt,energy,error,rate");
  std::getline(in, line);
  CHECK(line.substr(0, 7) == "ETD1RK,");
  CHECK(line.back() == ',');  // NaN rate prints as empty cell
  std::remove(path.c_str());
}
