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

#include "pfvism/radial.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "pfvism/potentials.hpp"

namespace pfv {

namespace {

constexpr double kPi = std::numbers::pi;

double ele_coef(double q, const PhysicalParams& p) {
  return q * q / (8.0 * kPi * p.eps0) * (1.0 / p.eps_w - 1.0 / p.eps_m);
}

double trapezoid(const std::vector<double>& y, double dr) {
  double s = 0.5 * (y.front() + y.back());
  for (std::size_t m = 1; m + 1 < y.size(); ++m) s += y[m];
  return s * dr;
}

// phi' by central differences, one-sided at the ends.
std::vector<double> derivative(const RadialField& phi) {
  const std::size_t n = phi.values.size();
  std::vector<double> d(n);
  d[0] = (phi.values[1] - phi.values[0]) / phi.dr;
  for (std::size_t m = 1; m + 1 < n; ++m) {
    d[m] = (phi.values[m + 1] - phi.values[m - 1]) / (2.0 * phi.dr);
  }
  d[n - 1] = (phi.values[n - 1] - phi.values[n - 2]) / phi.dr;
  return d;
}

// Thomas recurrence for a constant-pattern tridiagonal system; diag/upper/lower
// are per-row, solution overwrites rhs.
void thomas_solve(const std::vector<double>& lower, const std::vector<double>& diag,
                  const std::vector<double>& upper, std::vector<double>& rhs,
                  std::vector<double>& scratch) {
  const std::size_t n = diag.size();
  scratch.resize(n);
  double beta = diag[0];
  rhs[0] /= beta;
  for (std::size_t m = 1; m < n; ++m) {
    scratch[m] = upper[m - 1] / beta;
    beta = diag[m] - lower[m] * scratch[m];
    rhs[m] = (rhs[m] - lower[m] * rhs[m - 1]) / beta;
  }
  for (std::size_t m = n - 1; m-- > 0;) {
    rhs[m] -= scratch[m + 1] * rhs[m + 1];
  }
}

double sharp_f(double r, double q, const PhysicalParams& p, double* surf = nullptr,
               double* vdw = nullptr, double* ele = nullptr) {
  const double s3 = p.sigma_lj * p.sigma_lj * p.sigma_lj;
  const double s6 = s3 * s3;
  const double s12 = s6 * s6;
  const double r3 = r * r * r;
  const double r9 = r3 * r3 * r3;
  const double fs = 4.0 * kPi * p.gamma0 * r * r;
  const double fv = 16.0 * kPi * p.rho_w * p.eps_lj * (s12 / (9.0 * r9) - s6 / (3.0 * r3));
  const double fe = ele_coef(q, p) / r;
  if (surf) *surf = fs;
  if (vdw) *vdw = fv;
  if (ele) *ele = fe;
  return fs + fv + fe;
}

double sharp_df(double r, double q, const PhysicalParams& p) {
  const double s3 = p.sigma_lj * p.sigma_lj * p.sigma_lj;
  const double s6 = s3 * s3;
  const double s12 = s6 * s6;
  const double r4 = r * r * r * r;
  const double r10 = r4 * r4 * r * r;
  return 8.0 * kPi * p.gamma0 * r + 16.0 * kPi * p.rho_w * p.eps_lj * (-s12 / r10 + s6 / r4) -
         ele_coef(q, p) / (r * r);
}

}  // namespace

std::vector<double> radial_u_vdw(const RadialField& mesh_like, const PhysicalParams& p,
                                 double lj_cut_factor) {
  const double cut = lj_cut_factor * p.sigma_lj;
  std::vector<double> u(mesh_like.values.size());
  for (std::size_t m = 0; m < u.size(); ++m) {
    u[m] = lj_pair(std::max(mesh_like.r(m), cut), p.eps_lj, p.sigma_lj);
  }
  return u;
}

std::vector<double> radial_u_ele(const RadialField& mesh_like, double q, const PhysicalParams& p) {
  const double tau0 = cfa_prefactor(p);
  std::vector<double> u(mesh_like.values.size());
  for (std::size_t m = 0; m < u.size(); ++m) {
    const double rr = std::max(mesh_like.r(m), p.r_cut());
    u[m] = tau0 * q * q / (rr * rr * rr * rr);
  }
  return u;
}

EnergyBreakdown radial_energy(const RadialField& phi, double q, const PhysicalParams& p,
                              double epsilon, Coupling variant, double lj_cut_factor) {
  if (phi.values.size() < 3) throw std::invalid_argument("radial_energy: mesh too small");
  const std::size_t n = phi.values.size();
  const double dr = phi.dr;
  const double rmax = phi.r_max();
  const auto u_vdw = radial_u_vdw(phi, p, lj_cut_factor);
  const auto u_ele = radial_u_ele(phi, q, p);
  const auto dphi = derivative(phi);

  std::vector<double> surf(n), vdw(n), ele(n);
  for (std::size_t m = 0; m < n; ++m) {
    const double r2 = phi.r(m) * phi.r(m);
    const double f = coupling(phi.values[m], variant);
    surf[m] = (0.5 * epsilon * dphi[m] * dphi[m] + double_well(phi.values[m]) / epsilon) * r2;
    vdw[m] = f * u_vdw[m] * r2;
    ele[m] = f * u_ele[m] * r2;
  }

  const double s3 = p.sigma_lj * p.sigma_lj * p.sigma_lj;
  const double s6 = s3 * s3;
  const double rmax3 = rmax * rmax * rmax;
  const double rmax9 = rmax3 * rmax3 * rmax3;

  EnergyBreakdown e;
  e.f_surf = 4.0 * kPi * p.gamma0 * trapezoid(surf, dr);
  // Tails assume pure solvent (phi = 0, f = 1) beyond r_max.
  e.f_vdw = 4.0 * kPi * p.rho_w * trapezoid(vdw, dr) +
            16.0 * kPi * p.rho_w * p.eps_lj * (s6 * s6 / (9.0 * rmax9) - s6 / (3.0 * rmax3));
  e.f_ele = 4.0 * kPi * trapezoid(ele, dr) + ele_coef(q, p) / rmax;
  e.f_tot = e.f_surf + e.f_vdw + e.f_ele;
  return e;
}

std::vector<double> radial_residual(const RadialField& phi, double q, const PhysicalParams& p,
                                    double epsilon, Coupling variant, double lj_cut_factor) {
  const std::size_t n = phi.values.size();
  const double dr = phi.dr;
  const auto u_vdw = radial_u_vdw(phi, p, lj_cut_factor);
  const auto u_ele = radial_u_ele(phi, q, p);
  std::vector<double> res(n, 0.0);
  for (std::size_t m = 1; m + 1 < n; ++m) {
    const double v = phi.values[m];
    const double lap = (phi.values[m + 1] - 2.0 * v + phi.values[m - 1]) / (dr * dr) +
                       (phi.values[m + 1] - phi.values[m - 1]) / (dr * phi.r(m));
    const double u = p.rho_w * u_vdw[m] + u_ele[m];
    res[m] = p.gamma0 * (epsilon * lap - double_well_deriv(v) / epsilon) -
             coupling_deriv(v, variant) * u;
  }
  return res;
}

std::pair<RadialField, EnergyBreakdown> radial_flow(const RadialConfig& config, double q,
                                                    const PhysicalParams& p) {
  if (config.dr <= 0.0 || config.dt <= 0.0 || config.r_max <= config.dr) {
    throw std::invalid_argument("radial_flow: invalid mesh or step");
  }
  if (config.dr > config.epsilon / 10.0) {
    throw std::invalid_argument("radial_flow: dr must resolve epsilon (dr <= epsilon/10)");
  }
  const std::size_t n = static_cast<std::size_t>(std::llround(config.r_max / config.dr)) + 1;
  RadialField phi;
  phi.dr = config.dr;
  phi.values.resize(n);
  for (std::size_t m = 0; m < n; ++m) {
    phi.values[m] = 0.5 * (1.0 - std::tanh(3.0 * (phi.r(m) - config.r_init) / config.epsilon));
  }
  phi.values[n - 1] = 0.0;

  const auto u_vdw = radial_u_vdw(phi, p, config.lj_cut_factor);
  const auto u_ele = radial_u_ele(phi, q, p);
  std::vector<double> u(n);
  for (std::size_t m = 0; m < n; ++m) u[m] = p.rho_w * u_vdw[m] + u_ele[m];

  // (I - dt/2 A) phi^{n+1} = phi^n + dt/2 A phi^n + dt (explicit terms), where
  // A = gamma0 eps (d_rr + 2 d_r / r); r = 0 uses the even-extension limit
  // Lap -> 6 (phi_1 - phi_0) / dr^2, the outer boundary is pinned at 0.
  const double a = p.gamma0 * config.epsilon;
  const double c = 0.5 * config.dt * a / (config.dr * config.dr);
  std::vector<double> lower(n, 0.0), diag(n, 1.0), upper(n, 0.0);
  for (std::size_t m = 1; m + 1 < n; ++m) {
    const double g = config.dr / phi.r(m);
    lower[m] = -c * (1.0 - g);
    diag[m] = 1.0 + 2.0 * c;
    upper[m] = -c * (1.0 + g);
  }
  diag[0] = 1.0 + 6.0 * c;
  upper[0] = -6.0 * c;

  std::vector<double> rhs(n), scratch(n);
  const double gw = p.gamma0 / config.epsilon;

  // Single-pass trapezoid total energy reusing the precomputed potentials;
  // tails as in radial_energy.
  const double s3 = p.sigma_lj * p.sigma_lj * p.sigma_lj;
  const double s6 = s3 * s3;
  const double rmax = phi.r_max();
  const double rmax3 = rmax * rmax * rmax;
  const double tail = 16.0 * kPi * p.rho_w * p.eps_lj *
                          (s6 * s6 / (9.0 * rmax3 * rmax3 * rmax3) - s6 / (3.0 * rmax3)) +
                      ele_coef(q, p) / rmax;
  auto quick_energy = [&]() {
    double sum = 0.0;
    for (std::size_t m = 0; m < n; ++m) {
      const double v = phi.values[m];
      double d;
      if (m == 0) {
        d = (phi.values[1] - v) / config.dr;
      } else if (m + 1 == n) {
        d = (v - phi.values[n - 2]) / config.dr;
      } else {
        d = (phi.values[m + 1] - phi.values[m - 1]) / (2.0 * config.dr);
      }
      const double r2 = phi.r(m) * phi.r(m);
      const double density =
          p.gamma0 * (0.5 * config.epsilon * d * d + double_well(v) / config.epsilon) +
          coupling(v, config.coupling) * (p.rho_w * u_vdw[m] + u_ele[m]);
      sum += (m == 0 || m + 1 == n ? 0.5 : 1.0) * density * r2;
    }
    return 4.0 * kPi * sum * config.dr + tail;
  };
  double energy = quick_energy();

  for (long step = 0; step < config.max_steps; ++step) {
    for (std::size_t m = 1; m + 1 < n; ++m) {
      const double v = phi.values[m];
      const double lap = (phi.values[m + 1] - 2.0 * v + phi.values[m - 1]) / (config.dr * config.dr) +
                         (phi.values[m + 1] - phi.values[m - 1]) / (config.dr * phi.r(m));
      rhs[m] = v + 0.5 * config.dt * a * lap +
               config.dt * (-gw * double_well_deriv(v) -
                            coupling_deriv(v, config.coupling) * u[m]);
    }
    {
      const double v = phi.values[0];
      const double lap0 = 6.0 * (phi.values[1] - v) / (config.dr * config.dr);
      rhs[0] = v + 0.5 * config.dt * a * lap0 +
               config.dt * (-gw * double_well_deriv(v) -
                            coupling_deriv(v, config.coupling) * u[0]);
    }
    rhs[n - 1] = 0.0;
    thomas_solve(lower, diag, upper, rhs, scratch);
    phi.values.swap(rhs);

    for (double v : phi.values) {
      if (!std::isfinite(v)) throw std::runtime_error("radial_flow: non-finite field");
    }

    const double next = quick_energy();
    if (std::abs(next - energy) / config.dt < config.tol) {
      return {std::move(phi),
              radial_energy(phi, q, p, config.epsilon, config.coupling, config.lj_cut_factor)};
    }
    energy = next;
  }
  throw std::runtime_error("radial_flow: no convergence within max_steps");
}

SharpResult sharp_oracle(double q, const PhysicalParams& p) {
  double lo = 0.5 * p.sigma_lj;
  double hi = 3.0 * p.sigma_lj;
  // Golden section narrows the bracket, bisection on F' polishes.
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - gr * (hi - lo);
  double x2 = lo + gr * (hi - lo);
  double f1 = sharp_f(x1, q, p);
  double f2 = sharp_f(x2, q, p);
  for (int it = 0; it < 200 && hi - lo > 1e-8; ++it) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - gr * (hi - lo);
      f1 = sharp_f(x1, q, p);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + gr * (hi - lo);
      f2 = sharp_f(x2, q, p);
    }
  }
  double blo = std::max(0.5 * p.sigma_lj, lo - 1e-4);
  double bhi = std::min(3.0 * p.sigma_lj, hi + 1e-4);
  if (sharp_df(blo, q, p) >= 0.0 || sharp_df(bhi, q, p) <= 0.0) {
    throw std::runtime_error("sharp_oracle: no interior minimum in bracket");
  }
  double mid = 0.5 * (blo + bhi);
  for (int it = 0; it < 200; ++it) {
    const double d = sharp_df(mid, q, p);
    if (std::abs(d) < 1e-10) break;
    (d > 0.0 ? bhi : blo) = mid;
    mid = 0.5 * (blo + bhi);
  }
  SharpResult out;
  out.r_min = mid;
  out.f_tot = sharp_f(mid, q, p, &out.f_surf, &out.f_vdw, &out.f_ele);
  return out;
}

double interface_radius(const RadialField& phi) {
  int crossings = 0;
  double result = 0.0;
  for (std::size_t m = 0; m + 1 < phi.values.size(); ++m) {
    const double a = phi.values[m] - 0.5;
    const double b = phi.values[m + 1] - 0.5;
    if (a == 0.0 || a * b < 0.0) {
      ++crossings;
      result = phi.r(m) + phi.dr * a / (a - b);
    }
  }
  if (crossings != 1) {
    throw std::runtime_error("interface_radius: expected exactly one 0.5 crossing, found " +
                             std::to_string(crossings));
  }
  return result;
}

}  // namespace pfv
