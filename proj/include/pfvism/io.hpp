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

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "pfvism/driver.hpp"
#include "pfvism/grid.hpp"
#include "pfvism/params.hpp"
#include "pfvism/pmf.hpp"

namespace pfv {

/// Everything a run needs, as stored in one configuration file with sections
/// [physics], [grid], [solver], [solute].  Keys are the struct field names;
/// the solver section additionally holds the initial-condition fields
/// initial_kind, sphere_radius, smoothing, checkpoint_path.
struct FullConfig {
  PhysicalParams physics;
  RunConfig run;
  SoluteSpec solute;
};

/// Parses a configuration file.  Unknown sections or keys, malformed lines,
/// and unparsable values all throw invalid_argument naming the offending line.
FullConfig load_config(const std::string& path);
FullConfig parse_config_text(const std::string& text);

/// Writes a configuration that load_config reads back to identical values.
void save_config(const FullConfig& config, const std::string& path);
std::string format_config_text(const FullConfig& config);

/// Shortest decimal form that round-trips a double (17 significant digits).
std::string format_double(double v);

/// CSV with header step,time,F_surf,F_vdw,F_ele,F_tot.
void write_energy_log_csv(const std::vector<LogEntry>& log, const std::string& path);

/// One row of the radial sweep table; epsilon = 0 rows come from the sharp
/// oracle.
struct RadialRow {
  double q = 0.0, epsilon = 0.0, r_min = 0.0;
  double f_surf = 0.0, f_vdw = 0.0, f_ele = 0.0, f_tot = 0.0;
};

/// CSV with header Q,epsilon,R_min,F_surf,F_vdW,F_elec,F_tot.
void write_radial_csv(const std::vector<RadialRow>& rows, const std::string& path);

/// CSV with header d,G_geo,G_vdW,G_ele,G_tot,branch,converged.
void write_pmf_csv(const std::vector<PmfPoint>& curve, const std::string& path);

struct Checkpoint {
  ScalarField3D phi;
  double epsilon = 0.5;
  long step = 0;
  Scheme scheme = Scheme::etd2rk;
};

/// Raw little-endian doubles in x-fastest order at `path`, plus a key=value
/// sidecar `path`.meta carrying the grid, epsilon, step, and scheme.
void write_checkpoint(const Checkpoint& cp, const std::string& path);

/// Throws runtime_error on a missing sidecar or a data size that contradicts
/// the recorded grid.
Checkpoint read_checkpoint(const std::string& path);

/// Legacy ASCII structured-points file with one scalar point field named
/// "phi"; byte-identical output for identical inputs.
void export_vtk(const ScalarField3D& phi, const std::string& path);

struct RateRow {
  std::string scheme;
  double dt = 0.0;
  double energy = 0.0;
  double error = 0.0;  // |energy - benchmark|
  double rate = 0.0;   // log2(error_prev / error); NaN on each scheme's first row
};

struct SchemeEnergies {
  std::string scheme;
  std::vector<std::pair<double, double>> by_dt;  // (dt, final energy), dt halving
};

/// Errors and successive-halving convergence rates against a benchmark
/// energy.  Requires at least 3 step sizes per scheme, each exactly half the
/// previous (1e-9 relative); throws otherwise.
std::vector<RateRow> rates_report(const std::vector<SchemeEnergies>& energies, double benchmark);

/// CSV with header scheme,dt,energy,error,rate (empty rate on first rows).
void write_rates_csv(const std::vector<RateRow>& rows, const std::string& path);

}  // namespace pfv
