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

#include <span>
#include <vector>

#include "pfvism/energy.hpp"
#include "pfvism/grid.hpp"
#include "pfvism/params.hpp"
#include "pfvism/potentials.hpp"
#include "pfvism/spectral.hpp"

namespace pfv {

/// Stabilized splitting of the gradient-flow right-hand side:
///   L(phi) = gamma0 (eps Lap phi - kappa phi / eps) - mu nu phi
///   N(phi) = -(gamma0/eps)(W'(phi) - kappa phi) - f'(phi)(rho_w u_vdw + u_ele) + mu nu phi
/// kappa >= 18 and mu >= 4 make N a bounded perturbation; L + N is the exact
/// right-hand side for any kappa, mu, nu.
struct SplitOperators {
  const PotentialField* pot = nullptr;
  double gamma0 = 0.175;
  double rho_w = 0.0333;
  double epsilon = 0.5;
  double kappa = 18.0;
  double mu = 4.0;
  Coupling variant = Coupling::quartic;

  double nu() const { return pot ? pot->nu : 0.0; }
};

/// Pointwise N(phi); no transforms involved.
ScalarField3D nonlinear_term(const ScalarField3D& phi, const SplitOperators& ops);

/// L(phi) with the Laplacian applied spectrally.
ScalarField3D linear_term(const ScalarField3D& phi, const SplitOperators& ops,
                          SpectralWorkspace& ws);

/// Scalar phi-function combinations of z = l*dt, each with the removable
/// singularity at z = 0 handled by a Taylor branch (|z| < 0.5; the direct
/// branch loses too many digits to cancellation below that):
///   phi1(z) = (e^z - 1)/z                               -> 1
///   g2(z)   = (e^z - 1 - z)/z^2                         -> 1/2
///   c1(z)   = (-4 - z + e^z (4 - 3z + z^2))/z^3         -> 1/6
///   c2(z)   = 2 (2 + z + e^z (z - 2))/z^3               -> 1/3
///   c3(z)   = (-4 - 3z - z^2 + e^z (4 - z))/z^3         -> 1/6
namespace etdfn {
double phi1(double z);
double g2(double z);
double c1(double z);
double c2(double z);
double c3(double z);
}  // namespace etdfn

/// Per-mode coefficient arrays for one (spectrum, dt) pair.
struct EtdCoefficients {
  double dt = 0.0;
  std::vector<double> exp_full;  // e^{l dt}
  std::vector<double> exp_half;  // e^{l dt/2}
  std::vector<double> p1_full;   // l^{-1}(e^{l dt} - 1)       = dt  * phi1(l dt)
  std::vector<double> p1_half;   // l^{-1}(e^{l dt/2} - 1)     = dt/2* phi1(l dt/2)
  std::vector<double> g2w;       // dt^{-1} l^{-2}(e^{l dt} - 1 - l dt) = dt * g2(l dt)
  std::vector<double> b1;        // dt * c1(l dt)   (weight of N(phi^n) in ETD4RK)
  std::vector<double> b2;        // dt * c2(l dt)   (weight of N(A) + N(B))
  std::vector<double> b3;        // dt * c3(l dt)   (weight of N(C))
};

/// Requires every l strictly negative and dt > 0.
EtdCoefficients build_coefficients(std::span<const double> l, double dt);

/// Per-mode step maps; usable on a single scalar mode for ODE-oracle tests.
/// phi_hat is updated in place; stage buffers are caller-provided.
namespace etdmap {
/// phi' = e^{z} phi + p1 nhat
void etd1rk(std::span<cplx> phi_hat, std::span<const cplx> nhat, const EtdCoefficients& c);
/// a (stage, input) together with nhat_n, nhat_a: phi' = a + g2w (nhat_a - nhat_n)
void etd2rk_final(std::span<cplx> phi_hat, std::span<const cplx> a, std::span<const cplx> nhat_n,
                  std::span<const cplx> nhat_a, const EtdCoefficients& c);
/// Cox-Matthews stages built from the half-step coefficients.
void etd4rk_stage_a(std::span<cplx> a, std::span<const cplx> phi_hat, std::span<const cplx> nhat_n,
                    const EtdCoefficients& c);
void etd4rk_stage_b(std::span<cplx> b, std::span<const cplx> phi_hat, std::span<const cplx> nhat_a,
                    const EtdCoefficients& c);
void etd4rk_stage_c(std::span<cplx> out, std::span<const cplx> a, std::span<const cplx> nhat_b,
                    std::span<const cplx> nhat_n, const EtdCoefficients& c);
void etd4rk_final(std::span<cplx> phi_hat, std::span<const cplx> nhat_n,
                  std::span<const cplx> nhat_a, std::span<const cplx> nhat_b,
                  std::span<const cplx> nhat_c, const EtdCoefficients& c);
}  // namespace etdmap

/// Owns the spectral state of one gradient-flow run and advances it with the
/// selected scheme.  The physical field is kept in sync after every step.
class EtdStepper {
 public:
  EtdStepper(SpectralWorkspace& ws, const SplitOperators& ops, double dt);

  void set_field(const ScalarField3D& phi);
  const ScalarField3D& field() const { return phi_; }
  double dt() const { return coeffs_.dt; }
  const SplitOperators& ops() const { return ops_; }

  void step(Scheme scheme);

 private:
  std::vector<cplx> transform_nonlinear(const ScalarField3D& phi);

  SpectralWorkspace& ws_;
  SplitOperators ops_;
  EtdCoefficients coeffs_;
  ScalarField3D phi_;
  std::vector<cplx> phi_hat_;
  ScalarField3D stage_;  // physical scratch for inverse-transformed stages
};

}  // namespace pfv
