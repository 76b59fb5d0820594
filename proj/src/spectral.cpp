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

#include "pfvism/spectral.hpp"

#include <fftw3.h>

#include <cassert>
#include <numbers>
#include <stdexcept>

namespace pfv {

namespace {

double axis_wavenumber(int idx, int n, double half_length) {
  const double pi = std::numbers::pi;
  return idx <= n / 2 ? pi * idx / half_length : pi * (n - idx) / half_length;
}

}  // namespace

std::vector<double> laplacian_spectrum(const GridSpec& g) {
  if (g.nx % 2 != 0 || g.ny % 2 != 0 || g.nz % 2 != 0) {
    throw std::invalid_argument("laplacian_spectrum: grid sizes must be even");
  }
  std::vector<double> lam(g.size());
  for (int k = 0; k < g.nz; ++k) {
    const double wz = axis_wavenumber(k, g.nz, g.lz);
    for (int j = 0; j < g.ny; ++j) {
      const double wy = axis_wavenumber(j, g.ny, g.ly);
      for (int i = 0; i < g.nx; ++i) {
        const double wx = axis_wavenumber(i, g.nx, g.lx);
        lam[g.index(i, j, k)] = -(wx * wx + wy * wy + wz * wz);
      }
    }
  }
  return lam;
}

std::vector<double> linear_spectrum(std::span<const double> lambda, double gamma,
                                    double epsilon, double kappa, double mu, double nu) {
  if (gamma <= 0.0 || epsilon <= 0.0) {
    throw std::invalid_argument("linear_spectrum: gamma and epsilon must be positive");
  }
  std::vector<double> l(lambda.size());
  for (std::size_t m = 0; m < lambda.size(); ++m) {
    l[m] = gamma * (epsilon * lambda[m] - kappa / epsilon) - mu * nu;
  }
  return l;
}

struct SpectralWorkspace::Plans {
  fftw_plan fwd = nullptr;
  fftw_plan inv = nullptr;
  double* real_buf = nullptr;
  fftw_complex* cplx_buf = nullptr;

  ~Plans() {
    if (fwd) fftw_destroy_plan(fwd);
    if (inv) fftw_destroy_plan(inv);
    if (real_buf) fftw_free(real_buf);
    if (cplx_buf) fftw_free(cplx_buf);
  }
};

SpectralWorkspace::SpectralWorkspace(const GridSpec& grid) : grid_(grid) {
  if (grid.nx % 2 != 0 || grid.ny % 2 != 0 || grid.nz % 2 != 0 || grid.nx < 2) {
    throw std::invalid_argument("SpectralWorkspace: grid sizes must be even");
  }
  const int nxh = grid.nx / 2 + 1;
  spectral_size_ = static_cast<std::size_t>(nxh) * grid.ny * grid.nz;

  kx_.resize(grid.nx);
  ky_.resize(grid.ny);
  kz_.resize(grid.nz);
  const double pi = std::numbers::pi;
  for (int i = 0; i < grid.nx; ++i) {
    kx_[i] = (i < grid.nx / 2) ? pi * i / grid.lx : (i == grid.nx / 2 ? 0.0 : -pi * (grid.nx - i) / grid.lx);
  }
  for (int j = 0; j < grid.ny; ++j) {
    ky_[j] = (j < grid.ny / 2) ? pi * j / grid.ly : (j == grid.ny / 2 ? 0.0 : -pi * (grid.ny - j) / grid.ly);
  }
  for (int k = 0; k < grid.nz; ++k) {
    kz_[k] = (k < grid.nz / 2) ? pi * k / grid.lz : (k == grid.nz / 2 ? 0.0 : -pi * (grid.nz - k) / grid.lz);
  }

  lambda_.resize(spectral_size_);
  std::size_t m = 0;
  for (int k = 0; k < grid.nz; ++k) {
    const double wz = axis_wavenumber(k, grid.nz, grid.lz);
    for (int j = 0; j < grid.ny; ++j) {
      const double wy = axis_wavenumber(j, grid.ny, grid.ly);
      for (int i = 0; i < nxh; ++i) {
        const double wx = axis_wavenumber(i, grid.nx, grid.lx);
        lambda_[m++] = -(wx * wx + wy * wy + wz * wz);
      }
    }
  }

  plans_ = std::make_unique<Plans>();
  plans_->real_buf = fftw_alloc_real(grid.size());
  plans_->cplx_buf = fftw_alloc_complex(spectral_size_);
  // x is the fastest-varying index, so the FFTW dimension order is (nz, ny, nx).
  // FFTW_ESTIMATE keeps plan selection deterministic across runs.
  plans_->fwd = fftw_plan_dft_r2c_3d(grid.nz, grid.ny, grid.nx, plans_->real_buf,
                                     plans_->cplx_buf, FFTW_ESTIMATE);
  plans_->inv = fftw_plan_dft_c2r_3d(grid.nz, grid.ny, grid.nx, plans_->cplx_buf,
                                     plans_->real_buf, FFTW_ESTIMATE);
  if (!plans_->fwd || !plans_->inv) throw std::runtime_error("SpectralWorkspace: FFT planning failed");
}

SpectralWorkspace::~SpectralWorkspace() = default;

void SpectralWorkspace::forward(std::span<const double> field, std::span<cplx> coeffs) {
  if (field.size() != grid_.size() || coeffs.size() != spectral_size_) {
    throw std::invalid_argument("forward: size mismatch");
  }
  std::copy(field.begin(), field.end(), plans_->real_buf);
  fftw_execute(plans_->fwd);
  auto* out = reinterpret_cast<const cplx*>(plans_->cplx_buf);
  std::copy(out, out + spectral_size_, coeffs.begin());
}

void SpectralWorkspace::inverse(std::span<const cplx> coeffs, std::span<double> field) {
  if (field.size() != grid_.size() || coeffs.size() != spectral_size_) {
    throw std::invalid_argument("inverse: size mismatch");
  }
  auto* in = reinterpret_cast<cplx*>(plans_->cplx_buf);
  std::copy(coeffs.begin(), coeffs.end(), in);
  fftw_execute(plans_->inv);  // c2r destroys its input buffer; coeffs stays intact
  const double scale = 1.0 / static_cast<double>(grid_.size());
  for (std::size_t m = 0; m < grid_.size(); ++m) field[m] = plans_->real_buf[m] * scale;
}

void SpectralWorkspace::laplacian(const ScalarField3D& f, ScalarField3D& out) {
  if (f.grid != grid_) throw std::invalid_argument("laplacian: grid mismatch");
  std::vector<cplx> coeffs(spectral_size_);
  forward(f.data, coeffs);
  for (std::size_t m = 0; m < spectral_size_; ++m) coeffs[m] *= lambda_[m];
  if (out.grid != grid_) out = ScalarField3D(grid_);
  inverse(coeffs, out.data);
}

void SpectralWorkspace::gradient(const ScalarField3D& f, ScalarField3D& gx, ScalarField3D& gy,
                                 ScalarField3D& gz) {
  if (f.grid != grid_) throw std::invalid_argument("gradient: grid mismatch");
  std::vector<cplx> coeffs(spectral_size_);
  std::vector<cplx> work(spectral_size_);
  forward(f.data, coeffs);
  const int nxh = grid_.nx / 2 + 1;

  auto apply = [&](int axis, ScalarField3D& g) {
    std::size_t m = 0;
    for (int k = 0; k < grid_.nz; ++k) {
      for (int j = 0; j < grid_.ny; ++j) {
        for (int i = 0; i < nxh; ++i, ++m) {
          const double w = axis == 0 ? (i == grid_.nx / 2 ? 0.0 : kx_[i]) : axis == 1 ? ky_[j] : kz_[k];
          work[m] = cplx(0.0, w) * coeffs[m];
        }
      }
    }
    if (g.grid != grid_) g = ScalarField3D(grid_);
    inverse(work, g.data);
  };
  apply(0, gx);
  apply(1, gy);
  apply(2, gz);
}

double SpectralWorkspace::norm_sq_physical(std::span<const cplx> coeffs) const {
  if (coeffs.size() != spectral_size_) throw std::invalid_argument("norm_sq_physical: size mismatch");
  const int nxh = grid_.nx / 2 + 1;
  double sum = 0.0;
  std::size_t m = 0;
  for (int k = 0; k < grid_.nz; ++k) {
    for (int j = 0; j < grid_.ny; ++j) {
      for (int i = 0; i < nxh; ++i, ++m) {
        const double weight = (i == 0 || i == grid_.nx / 2) ? 1.0 : 2.0;  // Hermitian mirror
        sum += weight * std::norm(coeffs[m]);
      }
    }
  }
  return grid_.cell_volume() * sum / static_cast<double>(grid_.size());
}

}  // namespace pfv
