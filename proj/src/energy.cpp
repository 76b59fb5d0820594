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

#include "pfvism/energy.hpp"

#include <stdexcept>

#include "pfvism/threading.hpp"

namespace pfv {

namespace {

// Chunked reduction with the same fixed chunk layout as parallel_for; partials
// are combined serially in chunk order, so the result is reproducible at a
// fixed thread count.
template <class Term>
double parallel_sum(std::size_t n, Term&& term) {
  const int nt = max_threads();
  const std::size_t chunk = (n + nt - 1) / nt;
  std::vector<double> partials((n + chunk - 1) / chunk, 0.0);
  parallel_for(n, [&](std::size_t begin, std::size_t end) {
    double s = 0.0;
    for (std::size_t m = begin; m < end; ++m) s += term(m);
    partials[begin / chunk] += s;
  });
  double total = 0.0;
  for (double s : partials) total += s;
  return total;
}

}  // namespace

double double_well(double phi) {
  const double q = phi * phi - phi;
  return 18.0 * q * q;
}

double double_well_deriv(double phi) {
  return 36.0 * (phi * phi - phi) * (2.0 * phi - 1.0);
}

double coupling(double phi, Coupling variant) {
  if (variant == Coupling::quartic) {
    const double q = phi * phi - 1.0;
    return q * q;
  }
  const double q = phi - 1.0;
  return q * q;
}

double coupling_deriv(double phi, Coupling variant) {
  if (variant == Coupling::quartic) return 4.0 * phi * (phi * phi - 1.0);
  return 2.0 * (phi - 1.0);
}

EnergyBreakdown total_energy(const ScalarField3D& phi, const PotentialField& pot,
                             const PhysicalParams& p, double epsilon, Coupling variant,
                             SpectralWorkspace& ws) {
  if (phi.grid != pot.u_vdw.grid || phi.grid != ws.grid()) {
    throw std::invalid_argument("total_energy: grid mismatch");
  }
  if (epsilon <= 0.0) throw std::invalid_argument("total_energy: epsilon must be positive");

  ScalarField3D gx, gy, gz;
  ws.gradient(phi, gx, gy, gz);

  const std::size_t n = phi.grid.size();
  const double surf_sum = parallel_sum(n, [&](std::size_t m) {
    const double g2 = gx.data[m] * gx.data[m] + gy.data[m] * gy.data[m] + gz.data[m] * gz.data[m];
    return 0.5 * epsilon * g2 + double_well(phi.data[m]) / epsilon;
  });
  const double vdw_sum = parallel_sum(n, [&](std::size_t m) {
    return coupling(phi.data[m], variant) * pot.u_vdw.data[m];
  });
  const double ele_sum = parallel_sum(n, [&](std::size_t m) {
    return coupling(phi.data[m], variant) * pot.u_ele.data[m];
  });

  const double dv = phi.grid.cell_volume();
  EnergyBreakdown e;
  e.f_surf = p.gamma0 * dv * surf_sum;
  e.f_vdw = p.rho_w * dv * vdw_sum;
  e.f_ele = dv * ele_sum;
  e.f_tot = e.f_surf + e.f_vdw + e.f_ele;
  return e;
}

ScalarField3D variational_derivative(const ScalarField3D& phi, const PotentialField& pot,
                                     const PhysicalParams& p, double epsilon, Coupling variant,
                                     SpectralWorkspace& ws) {
  if (phi.grid != pot.u_vdw.grid || phi.grid != ws.grid()) {
    throw std::invalid_argument("variational_derivative: grid mismatch");
  }
  ScalarField3D lap;
  ws.laplacian(phi, lap);

  ScalarField3D rhs(phi.grid);
  parallel_for(phi.grid.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t m = begin; m < end; ++m) {
      const double u = p.rho_w * pot.u_vdw.data[m] + pot.u_ele.data[m];
      rhs.data[m] = p.gamma0 * (epsilon * lap.data[m] - double_well_deriv(phi.data[m]) / epsilon) -
                    coupling_deriv(phi.data[m], variant) * u;
    }
  });
  return rhs;
}

}  // namespace pfv
