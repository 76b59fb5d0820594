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

#include "pfvism/potentials.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pfvism/threading.hpp"

namespace pfv {

double lj_pair(double r, double eps_i, double sigma_i) {
  if (r <= 0.0) throw std::invalid_argument("lj_pair: r must be positive");
  const double s = sigma_i / r;
  const double s6 = s * s * s * s * s * s;
  return 4.0 * eps_i * (s6 * s6 - s6);
}

double lj_truncated(double r, double eps_i, double sigma_i, double r_cut) {
  return lj_pair(std::max(r, r_cut), eps_i, sigma_i);
}

double u_vdw_total(const Vec3& x, const SoluteConfig& solute, double r_cut) {
  double sum = 0.0;
  for (const auto& a : solute.atoms) {
    sum += lj_truncated(norm(x - a.position), a.eps, a.sigma, r_cut);
  }
  return sum;
}

double u_ele_cfa(const Vec3& x, const SoluteConfig& solute, double r_cut, const PhysicalParams& p) {
  Vec3 field{0.0, 0.0, 0.0};
  for (const auto& a : solute.atoms) {
    const Vec3 dx = x - a.position;
    const double r = norm(dx);
    if (r == 0.0) continue;  // direction undefined at the atom center
    const double v = 1.0 / std::max(r, r_cut);
    field = field + (a.charge * v * v / r) * dx;
  }
  return cfa_prefactor(p) * dot(field, field);
}

PotentialField sample_on_grid(const SoluteConfig& solute, const GridSpec& grid,
                              const PhysicalParams& p, double nu_safety) {
  PotentialField out;
  out.u_vdw = ScalarField3D(grid);
  out.u_ele = ScalarField3D(grid);
  const double r_cut = p.r_cut();
  const std::size_t nxy = static_cast<std::size_t>(grid.nx) * grid.ny;

  parallel_for(grid.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t idx = begin; idx < end; ++idx) {
      const int i = static_cast<int>(idx % grid.nx);
      const int j = static_cast<int>((idx / grid.nx) % grid.ny);
      const int k = static_cast<int>(idx / nxy);
      const Vec3 x = grid.node(i, j, k);
      out.u_vdw.data[idx] = u_vdw_total(x, solute, r_cut);
      out.u_ele.data[idx] = u_ele_cfa(x, solute, r_cut, p);
    }
  });

  double nu = 0.0;
  for (std::size_t idx = 0; idx < grid.size(); ++idx) {
    nu = std::max(nu, std::abs(p.rho_w * out.u_vdw.data[idx] + out.u_ele.data[idx]));
  }
  out.nu = nu_safety * nu;
  return out;
}

}  // namespace pfv
