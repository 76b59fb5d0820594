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

#include <complex>
#include <memory>
#include <span>
#include <vector>

#include "pfvism/grid.hpp"
#include "pfvism/params.hpp"

namespace pfv {

using cplx = std::complex<double>;

/// Periodic Laplacian spectrum lambda_ijk = -(pi i'/Lx)^2 - (pi j'/Ly)^2 - (pi k'/Lz)^2
/// over all Nx*Ny*Nz modes (mirrored indices above N/2), x-fastest ordering.
std::vector<double> laplacian_spectrum(const GridSpec& grid);

/// l = gamma*(epsilon*lambda - kappa/epsilon) - mu*nu, applied entrywise.
/// All entries are strictly negative for positive gamma, epsilon, kappa or nu.
std::vector<double> linear_spectrum(std::span<const double> lambda, double gamma,
                                    double epsilon, double kappa, double mu, double nu);

/// Real-to-complex FFT machinery on one grid.  Normalization convention:
/// forward is unscaled, inverse carries the 1/(Nx*Ny*Nz) factor, so
/// inverse(forward(x)) == x.  Spectral storage is Hermitian-reduced along x:
/// (Nx/2+1) * Ny * Nz coefficients, x-index fastest.
///
/// Plans own scratch state, so a workspace is single-owner mutable; the
/// eigenvalue array is immutable and shareable.
class SpectralWorkspace {
 public:
  explicit SpectralWorkspace(const GridSpec& grid);
  ~SpectralWorkspace();
  SpectralWorkspace(const SpectralWorkspace&) = delete;
  SpectralWorkspace& operator=(const SpectralWorkspace&) = delete;

  const GridSpec& grid() const { return grid_; }
  std::size_t spectral_size() const { return spectral_size_; }

  /// Laplacian eigenvalues on the reduced (r2c) mode layout.
  const std::vector<double>& eigenvalues() const { return lambda_; }

  void forward(std::span<const double> field, std::span<cplx> coeffs);
  void inverse(std::span<const cplx> coeffs, std::span<double> field);

  /// out = inverse(lambda .* forward(f))
  void laplacian(const ScalarField3D& f, ScalarField3D& out);

  /// Spectral partial derivatives of f along x, y, z.
  void gradient(const ScalarField3D& f, ScalarField3D& gx, ScalarField3D& gy, ScalarField3D& gz);

  /// Parseval sum: hx*hy*hz * sum |f|^2 computed from coefficients of forward(f),
  /// accounting for Hermitian-reduced storage.
  double norm_sq_physical(std::span<const cplx> coeffs) const;

 private:
  struct Plans;
  GridSpec grid_;
  std::size_t spectral_size_;
  std::vector<double> lambda_;                 // reduced layout
  std::vector<double> kx_, ky_, kz_;           // signed wavenumbers per axis (Nyquist zeroed)
  std::unique_ptr<Plans> plans_;
};

}  // namespace pfv
