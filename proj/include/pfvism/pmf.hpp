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

#include "pfvism/driver.hpp"
#include "pfvism/energy.hpp"
#include "pfvism/grid.hpp"
#include "pfvism/params.hpp"

namespace pfv {

/// Axis-aligned box region; the computational domain is the box with
/// lo = (-lx,-ly,-lz), hi = (lx,ly,lz).
struct BoxRegion {
  Vec3 lo{0.0, 0.0, 0.0};
  Vec3 hi{0.0, 0.0, 0.0};
};

BoxRegion domain_box(const GridSpec& grid);

/// One sample of a plate-separation free-energy curve.  branch records which
/// initial produced the equilibrium ("loose" or "tight").
struct PmfPoint {
  double d = 0.0;  // [A]
  double g_geo = 0.0, g_vdw = 0.0, g_ele = 0.0, g_tot = 0.0;  // [kBT]
  std::string branch;
  bool converged = false;
};

/// Single-plate equilibrium used as the d -> infinity reference; component
/// energies are doubled when assembling separation curves.
struct ReferenceState {
  ScalarField3D phi;
  EnergyBreakdown energy;
  bool converged = false;
};

/// Untruncated Lennard-Jones sum over cross-plate pairs, Lorentz-Berthelot
/// mixing (identical atoms reduce to 4 eps [(sigma/r)^12 - (sigma/r)^6]).
/// Throws on coincident atoms across plates.
double pair_lj_sum(const std::vector<SoluteAtom>& plate1, const std::vector<SoluteAtom>& plate2);

/// Vacuum-in-solute Coulomb cross sum (1/(4 pi eps_m eps0)) sum_i sum_j
/// Qi Qj / |xi - xj|.  Throws on coincident atoms across plates.
double pair_coulomb_sum(const std::vector<SoluteAtom>& plate1,
                        const std::vector<SoluteAtom>& plate2, const PhysicalParams& p);

/// rho_w times the integral of the solute vdW potential over the exterior of
/// the box.  Per atom: spherical quadrature around the atom (radial part
/// integrated in closed form from the ray-box exit distance) plus the exact
/// r^-12/r^-6 tail beyond the smallest atom-centered ball containing the box.
/// Validation-only: this term cancels in separation-curve differences.
/// Throws if an atom lies on or outside the boundary.
double exterior_vdw_correction(const SoluteConfig& solute, const BoxRegion& box,
                               const PhysicalParams& p, int angular_order = 128);

/// Exterior electrostatic cross term reduced by Green's identity to surface
/// integrals over the six box faces:
///   tau0 sum_i sum_j Qi Qj int_{dOmega}
///     n(x) . [ (x-xi)/|x-xi|^2 + (x-xj)/|x-xj|^2 ] / (|x-xi| |x-xj|) dS.
/// Tensor-product Gauss-Legendre rule per face.  Throws if an atom lies on or
/// outside the boundary.
double exterior_ele_correction(const std::vector<SoluteAtom>& plate1,
                               const std::vector<SoluteAtom>& plate2, const BoxRegion& box,
                               const PhysicalParams& p, int face_order = 64);

/// Volume-quadrature counterpart of one pair term,
///   2 int_{R^3 \ Omega} (x-xi).(x-xj) / (|x-xi|^3 |x-xj|^3) dx,
/// evaluated by atom-centered spherical quadrature with an analytic far tail.
/// Oracle for the surface reduction; not used in curve assembly.
double exterior_pair_integral_volume(const Vec3& xi, const Vec3& xj, const BoxRegion& box,
                                     int angular_order = 256);

/// Same pair term via the surface integral over the box faces (no tau0 or
/// charge factors).
double exterior_pair_integral_box(const Vec3& xi, const Vec3& xj, const BoxRegion& box,
                                  int face_order = 64);

/// Same surface integrand over a sphere of the given radius.  For xi = xj =
/// center this equals 8 pi / radius, twice the analytic exterior integral
/// 4 pi / radius; used to validate the quadrature.
double exterior_pair_integral_sphere(const Vec3& xi, const Vec3& xj, const Vec3& center,
                                     double radius, int order = 64);

/// Single-plate equilibrium on the same grid/epsilon/scheme as the two-plate
/// runs.
ReferenceState reference_state(const RunConfig& base, const PhysicalParams& p, int n_p, double d0,
                               double q);

/// Free-energy curve along the plate separation.  For each d: plates of
/// charges (q1, q2) equilibrate from the selected initial kind (loose_box or
/// tight_boxes), and components are referenced against single-plate
/// equilibria (one per distinct |q|, doubled when |q1| = |q2|):
///   G_geo = F_surf[phi_d] - ref_surf,
///   G_vdw = F_vdw[phi_d] - ref_vdw + pair_lj_sum,
///   G_ele = F_ele[phi_d] - ref_ele + exterior_ele_correction + pair_coulomb_sum.
/// Non-converged points are flagged and the curve continues.
std::vector<PmfPoint> pmf_curve(const std::vector<double>& d_values, const RunConfig& base,
                                const PhysicalParams& p, const SoluteSpec& plates,
                                InitialCondition::Kind branch);

/// Largest sampled d whose g_geo sits more than the threshold below the
/// value at the largest sampled d (the large-d plateau).  Returns 0 if no
/// sample qualifies.
double crossover_distance(const std::vector<PmfPoint>& curve, double threshold_kbt = 5.0);

}  // namespace pfv
