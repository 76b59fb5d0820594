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

#include <vector>

#include "pfvism/energy.hpp"
#include "pfvism/grid.hpp"
#include "pfvism/params.hpp"

namespace pfv {

/// Two n_p x n_p square atom lattices normal to the y axis, plane centers at
/// y = -d/2 and y = +d/2, centered on the x-z origin.  Plate I carries q1 per
/// atom, plate II q2.
SoluteConfig make_plates(int n_p, double d0, double d, double q1, double q2,
                         const PhysicalParams& p);

/// One n_p x n_p lattice in the y = 0 plane (reference state for separation
/// curves).
SoluteConfig make_single_plate(int n_p, double d0, double q, const PhysicalParams& p);

SoluteConfig make_single_ion(double q, const PhysicalParams& p);

/// Materializes a config-file solute description into atoms.
SoluteConfig build_solute(const SoluteSpec& spec, const PhysicalParams& p);

/// Smoothed characteristic function of an axis-aligned box: per-axis tanh
/// profiles of the given transition width, multiplied.  width <= 0 gives the
/// exact characteristic function.  Throws if the box exceeds the domain.
ScalarField3D box_initial(const GridSpec& grid, const Vec3& center, const Vec3& half_widths,
                          double width);

/// Single box |x| <= (n_p-1) d0 + sigma, |y| <= d/2 + sigma, |z| <= (n_p-1) d0 + sigma.
ScalarField3D loose_initial(const GridSpec& grid, int n_p, double d0, double d, double sigma,
                            double width);

/// Two boxes wrapping the plates separately with margin sigma.  If the boxes
/// would overlap (d < 2 sigma) the loose box is used instead and *fell_back is
/// set when provided.
ScalarField3D tight_initial(const GridSpec& grid, int n_p, double d0, double d, double sigma,
                            double width, bool* fell_back = nullptr);

/// tanh ball of the given radius about the origin.
ScalarField3D sphere_initial(const GridSpec& grid, double radius, double width);

struct LogEntry {
  long step = 0;
  double time = 0.0;
  EnergyBreakdown energy;
};

struct RunResult {
  ScalarField3D phi;
  std::vector<LogEntry> log;
  long steps = 0;
  bool converged = false;
  double wall_seconds = 0.0;
};

/// Gradient flow with the selected ETDRK scheme until |F(n+1) - F(n)| / dt
/// falls below config.tol (tol <= 0 disables the check, so exactly max_steps
/// steps run).  Non-finite fields abort with step index and max |phi|.
RunResult run_gradient_flow(const RunConfig& config, const PhysicalParams& p,
                            const SoluteConfig& solute, const ScalarField3D& initial);

/// h^3 times the node count with phi > 0.5.
double solvent_excluded_volume(const ScalarField3D& phi);

}  // namespace pfv
