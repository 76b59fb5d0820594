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

#include <doctest.h>

#include <cmath>

#include "pfvism/potentials.hpp"

using namespace pfv;

namespace {
const PhysicalParams p = default_params();
}

TEST_CASE("lj pair basics") {
  CHECK(lj_pair(p.sigma_lj, p.eps_lj, p.sigma_lj) == doctest::Approx(0.0).epsilon(1e-14));
  const double r_min = std::pow(2.0, 1.0 / 6.0) * p.sigma_lj;
  CHECK(lj_pair(r_min, p.eps_lj, p.sigma_lj) == doctest::Approx(-p.eps_lj).epsilon(1e-14));
  CHECK(lj_pair(100.0, p.eps_lj, p.sigma_lj) < 0.0);
  CHECK(std::abs(lj_pair(100.0, p.eps_lj, p.sigma_lj)) < 1e-8);
}

TEST_CASE("lj truncation plateau") {
  const double r_cut = p.r_cut();
  // Frozen plateau value 4*0.3*((3.5/2.45)^12 - (3.5/2.45)^6).
  const double plateau = 76.49730726803378;
  CHECK(lj_truncated(r_cut, p.eps_lj, p.sigma_lj, r_cut) == doctest::Approx(plateau).epsilon(1e-14));
  CHECK(lj_truncated(0.0, p.eps_lj, p.sigma_lj, r_cut) == doctest::Approx(plateau).epsilon(1e-14));
  CHECK(lj_truncated(1.3, p.eps_lj, p.sigma_lj, r_cut) == doctest::Approx(plateau).epsilon(1e-14));
  CHECK(lj_truncated(3.0, p.eps_lj, p.sigma_lj, r_cut) ==
        doctest::Approx(lj_pair(3.0, p.eps_lj, p.sigma_lj)).epsilon(1e-14));
}

TEST_CASE("cfa density for a single ion") {
  SoluteConfig ion;
  ion.atoms.push_back({{0.0, 0.0, 0.0}, 1.0, p.eps_lj, p.sigma_lj});
  // Frozen: tau0 * (1/3^2)^2.
  CHECK(u_ele_cfa({3.0, 0.0, 0.0}, ion, p.r_cut(), p) ==
        doctest::Approx(-0.2695435953471392).epsilon(1e-14));
  // Plateau: constant density inside r_cut.
  const double inside = u_ele_cfa({1.0, 0.0, 0.0}, ion, p.r_cut(), p);
  CHECK(inside == doctest::Approx(u_ele_cfa({0.0, 0.0, 2.0}, ion, p.r_cut(), p)).epsilon(1e-14));
  CHECK(inside == doctest::Approx(cfa_prefactor(p) / std::pow(p.r_cut(), 4)).epsilon(1e-14));
  // Quadratic in the charge.
  ion.atoms[0].charge = 2.0;
  CHECK(u_ele_cfa({3.0, 0.0, 0.0}, ion, p.r_cut(), p) ==
        doctest::Approx(4.0 * -0.2695435953471392).epsilon(1e-13));
}

TEST_CASE("cfa fields superpose vectorially") {
  // Opposite charges at +/- a: on the perpendicular bisector plane the radial
  // components cancel only partially; at the midpoint the two field vectors
  // add, while for equal charges they cancel exactly.
  SoluteConfig pair;
  pair.atoms.push_back({{-2.0, 0.0, 0.0}, 1.0, p.eps_lj, p.sigma_lj});
  pair.atoms.push_back({{+2.0, 0.0, 0.0}, 1.0, p.eps_lj, p.sigma_lj});
  CHECK(u_ele_cfa({0.0, 0.0, 0.0}, pair, 0.5, p) == doctest::Approx(0.0).epsilon(1e-14));
  pair.atoms[1].charge = -1.0;
  const double single = 1.0 / 4.0;  // |Q|/r^2 with r = 2, well outside r_cut = 0.5
  const double expect = cfa_prefactor(p) * (2.0 * single) * (2.0 * single);
  CHECK(u_ele_cfa({0.0, 0.0, 0.0}, pair, 0.5, p) == doctest::Approx(expect).epsilon(1e-13));
}

TEST_CASE("grid sampling and stabilization bound") {
  SoluteConfig ion;
  ion.atoms.push_back({{0.0, 0.0, 0.0}, 1.5, p.eps_lj, p.sigma_lj});
  const GridSpec grid{8.0, 8.0, 8.0, 16, 16, 16};
  const PotentialField pot = sample_on_grid(ion, grid, p, 1.0);
  REQUIRE(pot.u_vdw.data.size() == grid.size());

  double nu = 0.0;
  for (int k = 0; k < grid.nz; ++k) {
    for (int j = 0; j < grid.ny; ++j) {
      for (int i = 0; i < grid.nx; ++i) {
        const Vec3 x = grid.node(i, j, k);
        CHECK(pot.u_vdw(i, j, k) ==
              doctest::Approx(u_vdw_total(x, ion, p.r_cut())).epsilon(1e-14));
        CHECK(pot.u_ele(i, j, k) ==
              doctest::Approx(u_ele_cfa(x, ion, p.r_cut(), p)).epsilon(1e-14));
        nu = std::max(nu, std::abs(p.rho_w * pot.u_vdw(i, j, k) + pot.u_ele(i, j, k)));
      }
    }
  }
  CHECK(pot.nu == doctest::Approx(nu).epsilon(1e-14));

  const PotentialField padded = sample_on_grid(ion, grid, p, 1.5);
  CHECK(padded.nu == doctest::Approx(1.5 * nu).epsilon(1e-14));
}
