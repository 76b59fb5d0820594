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

#include "pfvism/grid.hpp"
#include "pfvism/params.hpp"

namespace pfv {

/// Static solute-generated fields sampled once per geometry; u_vdw is the
/// per-solvent-molecule LJ energy U_vdW(x) [kBT], u_ele the CFA energy
/// density [kBT/A^3].  nu bounds |rho_w*u_vdw + u_ele| over the grid.
struct PotentialField {
  ScalarField3D u_vdw;
  ScalarField3D u_ele;
  double nu = 0.0;
};

/// 4 eps [(sigma/r)^12 - (sigma/r)^6]; r must be positive.
double lj_pair(double r, double eps_i, double sigma_i);

/// lj_pair for r >= r_cut, constant plateau lj_pair(r_cut) below.
double lj_truncated(double r, double eps_i, double sigma_i, double r_cut);

/// Sum of truncated LJ potentials over all solute atoms.
double u_vdw_total(const Vec3& x, const SoluteConfig& solute, double r_cut);

/// CFA electrostatic energy density tau0*|E|^2 with per-atom field magnitude
/// Q_i * V(r)^2, V(r) = 1/max(r, r_cut).  An atom coinciding with x contributes
/// the zero vector (its direction is undefined there).
double u_ele_cfa(const Vec3& x, const SoluteConfig& solute, double r_cut, const PhysicalParams& p);

/// Evaluates both fields at every grid node and the stabilization bound nu.
PotentialField sample_on_grid(const SoluteConfig& solute, const GridSpec& grid,
                              const PhysicalParams& p, double nu_safety = 1.0);

}  // namespace pfv
