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
#include <vector>

#include "pfvism/grid.hpp"

namespace pfv {

/// Units are fixed project-wide: energy in kBT, length in Angstrom, charge in e.
struct PhysicalParams {
  double gamma0 = 0.175;        // surface tension [kBT/A^2]
  double rho_w = 0.0333;        // bulk solvent density [A^-3]
  double eps_lj = 0.3;          // LJ well depth [kBT]
  double sigma_lj = 3.5;        // LJ zero-crossing distance [A]
  double r_cut_factor = 0.7;    // r_cut = r_cut_factor * sigma_lj
  double eps0 = 1.4321e-4;      // vacuum permittivity [e^2/(kBT A)]
  double eps_m = 1.0;           // relative solute permittivity
  double eps_w = 80.0;          // relative solvent permittivity

  double r_cut() const { return r_cut_factor * sigma_lj; }
};

PhysicalParams default_params();

/// tau0 = (1/(32 pi^2 eps0)) (1/eps_w - 1/eps_m); negative for water over vacuum.
double cfa_prefactor(const PhysicalParams& p);

struct SoluteAtom {
  Vec3 position{0.0, 0.0, 0.0};  // [A]
  double charge = 0.0;           // [e]
  double eps = 0.3;              // per-atom LJ depth [kBT]
  double sigma = 3.5;            // per-atom LJ size [A]
};

struct SoluteConfig {
  std::vector<SoluteAtom> atoms;
};

enum class Scheme { etd1rk, etd2rk, etd4rk };
enum class Coupling { quartic, quadratic };  // (phi^2-1)^2 vs (phi-1)^2

std::string to_string(Scheme s);
std::string to_string(Coupling c);
bool parse_scheme(const std::string& text, Scheme& out);
bool parse_coupling(const std::string& text, Coupling& out);

struct InitialCondition {
  enum class Kind { loose_box, tight_boxes, sphere, from_checkpoint };
  Kind kind = Kind::loose_box;
  double sphere_radius = 3.0;   // [A], sphere kind only
  double smoothing = -1.0;      // tanh transition width [A]; <0 means "use epsilon"
  std::string checkpoint_path;  // from_checkpoint kind only
};

std::string to_string(InitialCondition::Kind k);
bool parse_initial_kind(const std::string& text, InitialCondition::Kind& out);

/// Generator-style solute description as it appears in config files.
struct SoluteSpec {
  enum class Kind { none, single_ion, plates, single_plate };
  Kind kind = Kind::none;
  double charge = 0.0;  // single ion
  int n_p = 6;          // plate lattice size
  double d0 = 2.1945;   // atom-to-atom spacing [A]
  double d = 12.0;      // plate separation [A]
  double q1 = 0.0, q2 = 0.0;
};

struct RunConfig {
  double lx = 18.0, ly = 18.0, lz = 18.0;
  int nx = 64, ny = 64, nz = 64;
  double epsilon = 0.5;   // interface width [A]
  double dt = 0.05;
  long max_steps = 100000;
  double tol = 1e-3;      // stopping: |F(n+1)-F(n)|/dt < tol
  Scheme scheme = Scheme::etd2rk;
  Coupling coupling = Coupling::quartic;
  InitialCondition initial;
  double kappa = 18.0;     // double-well splitting constant, >= 18
  double mu = 4.0;         // coupling splitting constant, >= 4
  double nu_safety = 1.0;  // multiplier on the grid-max stabilization bound
  long log_every = 1;      // energy log cadence in steps

  GridSpec grid() const { return GridSpec{lx, ly, lz, nx, ny, nz}; }
};

/// Checks every RunConfig invariant; returns one message per violation.
std::vector<std::string> validate(const RunConfig& config);
std::vector<std::string> validate(const PhysicalParams& p);

}  // namespace pfv
