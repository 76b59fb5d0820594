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
#include "pfvism/potentials.hpp"
#include "pfvism/spectral.hpp"

namespace pfv {

/// Per-component free energy in kBT.
struct EnergyBreakdown {
  double f_surf = 0.0;
  double f_vdw = 0.0;
  double f_ele = 0.0;
  double f_tot = 0.0;
};

/// Double well W(phi) = 18 (phi^2 - phi)^2 and its derivative
/// W'(phi) = 36 (phi^2 - phi)(2 phi - 1).
double double_well(double phi);
double double_well_deriv(double phi);

/// Solvent-region coupling weight.  quartic: f = (phi^2 - 1)^2, f' = 4 phi (phi^2 - 1)
/// (f'(0) = f'(1) = 0, so interfacial forces localize).  quadratic: f = (phi - 1)^2,
/// f' = 2 (phi - 1) (f'(0) = -2, the non-localized legacy form).
double coupling(double phi, Coupling variant);
double coupling_deriv(double phi, Coupling variant);

/// Rectangle-rule quadrature of
///   f_surf = gamma0 * Int [eps |grad phi|^2 / 2 + W(phi)/eps]
///   f_vdw  = rho_w  * Int f(phi) u_vdw
///   f_ele  =          Int f(phi) u_ele
/// grad phi is computed spectrally through ws (must live on the same grid).
EnergyBreakdown total_energy(const ScalarField3D& phi, const PotentialField& pot,
                             const PhysicalParams& p, double epsilon, Coupling variant,
                             SpectralWorkspace& ws);

/// -dF/dphi = gamma0 (eps Lap phi - W'(phi)/eps) - f'(phi)(rho_w u_vdw + u_ele),
/// the gradient-flow right-hand side, with the Laplacian applied spectrally.
ScalarField3D variational_derivative(const ScalarField3D& phi, const PotentialField& pot,
                                     const PhysicalParams& p, double epsilon, Coupling variant,
                                     SpectralWorkspace& ws);

}  // namespace pfv
