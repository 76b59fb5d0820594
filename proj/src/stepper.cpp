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

#include "pfvism/stepper.hpp"

#include <cmath>
#include <stdexcept>

#include "pfvism/threading.hpp"

namespace pfv {

ScalarField3D nonlinear_term(const ScalarField3D& phi, const SplitOperators& ops) {
  if (!ops.pot || phi.grid != ops.pot->u_vdw.grid) {
    throw std::invalid_argument("nonlinear_term: grid mismatch");
  }
  const double nu = ops.nu();
  ScalarField3D out(phi.grid);
  parallel_for(phi.grid.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t m = begin; m < end; ++m) {
      const double v = phi.data[m];
      const double u = ops.rho_w * ops.pot->u_vdw.data[m] + ops.pot->u_ele.data[m];
      out.data[m] = -(ops.gamma0 / ops.epsilon) * (double_well_deriv(v) - ops.kappa * v) -
                    coupling_deriv(v, ops.variant) * u + ops.mu * nu * v;
    }
  });
  return out;
}

ScalarField3D linear_term(const ScalarField3D& phi, const SplitOperators& ops,
                          SpectralWorkspace& ws) {
  ScalarField3D lap;
  ws.laplacian(phi, lap);
  const double nu = ops.nu();
  ScalarField3D out(phi.grid);
  parallel_for(phi.grid.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t m = begin; m < end; ++m) {
      out.data[m] = ops.gamma0 * (ops.epsilon * lap.data[m] - ops.kappa * phi.data[m] / ops.epsilon) -
                    ops.mu * nu * phi.data[m];
    }
  });
  return out;
}

namespace etdfn {

namespace {

constexpr double kSeriesThreshold = 0.5;
constexpr int kSeriesTerms = 24;

double inv_factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return 1.0 / f;
}

// Sum of coef(m) z^{m-3} for m = 3..; coef supplied per function.
template <class Coef>
double series(double z, Coef&& coef) {
  double sum = 0.0;
  double zp = 1.0;
  for (int m = 3; m < 3 + kSeriesTerms; ++m) {
    sum += coef(m) * zp;
    zp *= z;
  }
  return sum;
}

}  // namespace

double phi1(double z) {
  if (std::abs(z) >= kSeriesThreshold) return std::expm1(z) / z;
  double sum = 0.0, zp = 1.0;
  for (int n = 0; n < kSeriesTerms; ++n) {
    sum += zp * inv_factorial(n + 1);
    zp *= z;
  }
  return sum;
}

double g2(double z) {
  if (std::abs(z) >= kSeriesThreshold) return (std::expm1(z) - z) / (z * z);
  double sum = 0.0, zp = 1.0;
  for (int n = 0; n < kSeriesTerms; ++n) {
    sum += zp * inv_factorial(n + 2);
    zp *= z;
  }
  return sum;
}

double c1(double z) {
  if (std::abs(z) >= kSeriesThreshold) {
    return (-4.0 - z + std::exp(z) * (4.0 - 3.0 * z + z * z)) / (z * z * z);
  }
  return series(z, [](int m) {
    return 4.0 * inv_factorial(m) - 3.0 * inv_factorial(m - 1) + inv_factorial(m - 2);
  });
}

double c2(double z) {
  if (std::abs(z) >= kSeriesThreshold) {
    return 2.0 * (2.0 + z + std::exp(z) * (z - 2.0)) / (z * z * z);
  }
  return 2.0 * series(z, [](int m) { return inv_factorial(m - 1) - 2.0 * inv_factorial(m); });
}

double c3(double z) {
  if (std::abs(z) >= kSeriesThreshold) {
    return (-4.0 - 3.0 * z - z * z + std::exp(z) * (4.0 - z)) / (z * z * z);
  }
  return series(z, [](int m) { return 4.0 * inv_factorial(m) - inv_factorial(m - 1); });
}

}  // namespace etdfn

EtdCoefficients build_coefficients(std::span<const double> l, double dt) {
  if (dt <= 0.0) throw std::invalid_argument("build_coefficients: dt must be positive");
  const std::size_t n = l.size();
  EtdCoefficients c;
  c.dt = dt;
  c.exp_full.resize(n);
  c.exp_half.resize(n);
  c.p1_full.resize(n);
  c.p1_half.resize(n);
  c.g2w.resize(n);
  c.b1.resize(n);
  c.b2.resize(n);
  c.b3.resize(n);
  for (std::size_t m = 0; m < n; ++m) {
    if (!(l[m] < 0.0)) throw std::invalid_argument("build_coefficients: spectrum must be negative");
  }
  parallel_for(n, [&](std::size_t begin, std::size_t end) {
    for (std::size_t m = begin; m < end; ++m) {
      const double z = l[m] * dt;
      c.exp_full[m] = std::exp(z);
      c.exp_half[m] = std::exp(0.5 * z);
      c.p1_full[m] = dt * etdfn::phi1(z);
      c.p1_half[m] = 0.5 * dt * etdfn::phi1(0.5 * z);
      c.g2w[m] = dt * etdfn::g2(z);
      c.b1[m] = dt * etdfn::c1(z);
      c.b2[m] = dt * etdfn::c2(z);
      c.b3[m] = dt * etdfn::c3(z);
    }
  });
  return c;
}

namespace etdmap {

void etd1rk(std::span<cplx> phi_hat, std::span<const cplx> nhat, const EtdCoefficients& c) {
  parallel_for(phi_hat.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t m = begin; m < end; ++m) {
      phi_hat[m] = c.exp_full[m] * phi_hat[m] + c.p1_full[m] * nhat[m];
    }
  });
}

void etd2rk_final(std::span<cplx> phi_hat, std::span<const cplx> a, std::span<const cplx> nhat_n,
                  std::span<const cplx> nhat_a, const EtdCoefficients& c) {
  parallel_for(phi_hat.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t m = begin; m < end; ++m) {
      phi_hat[m] = a[m] + c.g2w[m] * (nhat_a[m] - nhat_n[m]);
    }
  });
}

void etd4rk_stage_a(std::span<cplx> a, std::span<const cplx> phi_hat, std::span<const cplx> nhat_n,
                    const EtdCoefficients& c) {
  parallel_for(a.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t m = begin; m < end; ++m) {
      a[m] = c.exp_half[m] * phi_hat[m] + c.p1_half[m] * nhat_n[m];
    }
  });
}

void etd4rk_stage_b(std::span<cplx> b, std::span<const cplx> phi_hat, std::span<const cplx> nhat_a,
                    const EtdCoefficients& c) {
  parallel_for(b.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t m = begin; m < end; ++m) {
      b[m] = c.exp_half[m] * phi_hat[m] + c.p1_half[m] * nhat_a[m];
    }
  });
}

void etd4rk_stage_c(std::span<cplx> out, std::span<const cplx> a, std::span<const cplx> nhat_b,
                    std::span<const cplx> nhat_n, const EtdCoefficients& c) {
  parallel_for(out.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t m = begin; m < end; ++m) {
      out[m] = c.exp_half[m] * a[m] + c.p1_half[m] * (2.0 * nhat_b[m] - nhat_n[m]);
    }
  });
}

void etd4rk_final(std::span<cplx> phi_hat, std::span<const cplx> nhat_n,
                  std::span<const cplx> nhat_a, std::span<const cplx> nhat_b,
                  std::span<const cplx> nhat_c, const EtdCoefficients& c) {
  parallel_for(phi_hat.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t m = begin; m < end; ++m) {
      phi_hat[m] = c.exp_full[m] * phi_hat[m] + c.b1[m] * nhat_n[m] +
                   c.b2[m] * (nhat_a[m] + nhat_b[m]) + c.b3[m] * nhat_c[m];
    }
  });
}

}  // namespace etdmap

EtdStepper::EtdStepper(SpectralWorkspace& ws, const SplitOperators& ops, double dt)
    : ws_(ws), ops_(ops) {
  if (!ops_.pot) throw std::invalid_argument("EtdStepper: potentials required");
  const auto l = linear_spectrum(ws_.eigenvalues(), ops_.gamma0, ops_.epsilon, ops_.kappa,
                                 ops_.mu, ops_.nu());
  coeffs_ = build_coefficients(l, dt);
  phi_hat_.resize(ws_.spectral_size());
  phi_ = ScalarField3D(ws_.grid());
  stage_ = ScalarField3D(ws_.grid());
}

void EtdStepper::set_field(const ScalarField3D& phi) {
  if (phi.grid != ws_.grid()) throw std::invalid_argument("EtdStepper: grid mismatch");
  phi_ = phi;
  ws_.forward(phi_.data, phi_hat_);
}

std::vector<cplx> EtdStepper::transform_nonlinear(const ScalarField3D& phi) {
  ScalarField3D n = nonlinear_term(phi, ops_);
  std::vector<cplx> nhat(ws_.spectral_size());
  ws_.forward(n.data, nhat);
  return nhat;
}

void EtdStepper::step(Scheme scheme) {
  const auto nhat_n = transform_nonlinear(phi_);
  switch (scheme) {
    case Scheme::etd1rk: {
      etdmap::etd1rk(phi_hat_, nhat_n, coeffs_);
      break;
    }
    case Scheme::etd2rk: {
      std::vector<cplx> a = phi_hat_;
      etdmap::etd1rk(a, nhat_n, coeffs_);
      ws_.inverse(a, stage_.data);
      const auto nhat_a = transform_nonlinear(stage_);
      etdmap::etd2rk_final(phi_hat_, a, nhat_n, nhat_a, coeffs_);
      break;
    }
    case Scheme::etd4rk: {
      std::vector<cplx> a(ws_.spectral_size());
      etdmap::etd4rk_stage_a(a, phi_hat_, nhat_n, coeffs_);
      ws_.inverse(a, stage_.data);
      const auto nhat_a = transform_nonlinear(stage_);

      std::vector<cplx> b(ws_.spectral_size());
      etdmap::etd4rk_stage_b(b, phi_hat_, nhat_a, coeffs_);
      ws_.inverse(b, stage_.data);
      const auto nhat_b = transform_nonlinear(stage_);

      std::vector<cplx> cst(ws_.spectral_size());
      etdmap::etd4rk_stage_c(cst, a, nhat_b, nhat_n, coeffs_);
      ws_.inverse(cst, stage_.data);
      const auto nhat_c = transform_nonlinear(stage_);

      etdmap::etd4rk_final(phi_hat_, nhat_n, nhat_a, nhat_b, nhat_c, coeffs_);
      break;
    }
  }
  ws_.inverse(phi_hat_, phi_.data);
}

}  // namespace pfv
