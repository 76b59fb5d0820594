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

#include "pfvism/driver.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>
#include <string>

#include "pfvism/potentials.hpp"
#include "pfvism/spectral.hpp"
#include "pfvism/stepper.hpp"
#include "pfvism/threading.hpp"

namespace pfv {

namespace {

void append_lattice(SoluteConfig& solute, int n_p, double d0, double y, double q,
                    const PhysicalParams& p) {
  const double origin = -0.5 * (n_p - 1) * d0;
  for (int a = 0; a < n_p; ++a) {
    for (int b = 0; b < n_p; ++b) {
      SoluteAtom atom;
      atom.position = {origin + a * d0, y, origin + b * d0};
      atom.charge = q;
      atom.eps = p.eps_lj;
      atom.sigma = p.sigma_lj;
      solute.atoms.push_back(atom);
    }
  }
}

// 1 deep inside, 0 outside, tanh transition across |x - c| = w.
double axis_profile(double x, double c, double w, double width) {
  const double excess = std::abs(x - c) - w;
  if (width <= 0.0) return excess <= 0.0 ? 1.0 : 0.0;
  return 0.5 * (1.0 - std::tanh(3.0 * excess / width));
}

void check_box_fits(const GridSpec& grid, const Vec3& center, const Vec3& half_widths) {
  const Vec3 l{grid.lx, grid.ly, grid.lz};
  for (int a = 0; a < 3; ++a) {
    if (std::abs(center[a]) + half_widths[a] >= l[a]) {
      throw std::invalid_argument("box_initial: box exceeds the domain");
    }
  }
}

}  // namespace

SoluteConfig make_plates(int n_p, double d0, double d, double q1, double q2,
                         const PhysicalParams& p) {
  if (n_p < 1 || d <= 0.0) throw std::invalid_argument("make_plates: n_p >= 1 and d > 0 required");
  SoluteConfig solute;
  append_lattice(solute, n_p, d0, -0.5 * d, q1, p);
  append_lattice(solute, n_p, d0, +0.5 * d, q2, p);
  return solute;
}

SoluteConfig make_single_plate(int n_p, double d0, double q, const PhysicalParams& p) {
  if (n_p < 1) throw std::invalid_argument("make_single_plate: n_p >= 1 required");
  SoluteConfig solute;
  append_lattice(solute, n_p, d0, 0.0, q, p);
  return solute;
}

SoluteConfig make_single_ion(double q, const PhysicalParams& p) {
  SoluteConfig solute;
  SoluteAtom atom;
  atom.charge = q;
  atom.eps = p.eps_lj;
  atom.sigma = p.sigma_lj;
  solute.atoms.push_back(atom);
  return solute;
}

SoluteConfig build_solute(const SoluteSpec& spec, const PhysicalParams& p) {
  switch (spec.kind) {
    case SoluteSpec::Kind::none: return {};
    case SoluteSpec::Kind::single_ion: return make_single_ion(spec.charge, p);
    case SoluteSpec::Kind::plates: return make_plates(spec.n_p, spec.d0, spec.d, spec.q1, spec.q2, p);
    case SoluteSpec::Kind::single_plate: return make_single_plate(spec.n_p, spec.d0, spec.q1, p);
  }
  return {};
}

ScalarField3D box_initial(const GridSpec& grid, const Vec3& center, const Vec3& half_widths,
                          double width) {
  check_box_fits(grid, center, half_widths);
  ScalarField3D phi(grid);
  parallel_for(grid.size(), [&](std::size_t begin, std::size_t end) {
    const std::size_t nxy = static_cast<std::size_t>(grid.nx) * grid.ny;
    for (std::size_t idx = begin; idx < end; ++idx) {
      const int i = static_cast<int>(idx % grid.nx);
      const int j = static_cast<int>((idx / grid.nx) % grid.ny);
      const int k = static_cast<int>(idx / nxy);
      const Vec3 x = grid.node(i, j, k);
      phi.data[idx] = axis_profile(x[0], center[0], half_widths[0], width) *
                      axis_profile(x[1], center[1], half_widths[1], width) *
                      axis_profile(x[2], center[2], half_widths[2], width);
    }
  });
  return phi;
}

ScalarField3D loose_initial(const GridSpec& grid, int n_p, double d0, double d, double sigma,
                            double width) {
  const double wxz = (n_p - 1) * d0 + sigma;
  return box_initial(grid, {0.0, 0.0, 0.0}, {wxz, 0.5 * d + sigma, wxz}, width);
}

ScalarField3D tight_initial(const GridSpec& grid, int n_p, double d0, double d, double sigma,
                            double width, bool* fell_back) {
  if (fell_back) *fell_back = false;
  if (d < 2.0 * sigma) {
    if (fell_back) *fell_back = true;
    return loose_initial(grid, n_p, d0, d, sigma, width);
  }
  const double wxz = 0.5 * (n_p - 1) * d0 + sigma;
  ScalarField3D upper = box_initial(grid, {0.0, +0.5 * d, 0.0}, {wxz, sigma, wxz}, width);
  ScalarField3D lower = box_initial(grid, {0.0, -0.5 * d, 0.0}, {wxz, sigma, wxz}, width);
  for (std::size_t m = 0; m < upper.data.size(); ++m) {
    // Union of nearly disjoint smooth indicators; capped to stay within [0,1].
    upper.data[m] = std::min(1.0, upper.data[m] + lower.data[m]);
  }
  return upper;
}

ScalarField3D sphere_initial(const GridSpec& grid, double radius, double width) {
  ScalarField3D phi(grid);
  parallel_for(grid.size(), [&](std::size_t begin, std::size_t end) {
    const std::size_t nxy = static_cast<std::size_t>(grid.nx) * grid.ny;
    for (std::size_t idx = begin; idx < end; ++idx) {
      const int i = static_cast<int>(idx % grid.nx);
      const int j = static_cast<int>((idx / grid.nx) % grid.ny);
      const int k = static_cast<int>(idx / nxy);
      const double r = norm(grid.node(i, j, k));
      phi.data[idx] = width <= 0.0 ? (r <= radius ? 1.0 : 0.0)
                                   : 0.5 * (1.0 - std::tanh(3.0 * (r - radius) / width));
    }
  });
  return phi;
}

RunResult run_gradient_flow(const RunConfig& config, const PhysicalParams& p,
                            const SoluteConfig& solute, const ScalarField3D& initial) {
  const auto errors = validate(config);
  if (!errors.empty()) throw std::invalid_argument("run_gradient_flow: " + errors.front());
  if (initial.grid != config.grid()) {
    throw std::invalid_argument("run_gradient_flow: initial field grid mismatch");
  }
  const auto start = std::chrono::steady_clock::now();

  const PotentialField pot = sample_on_grid(solute, config.grid(), p, config.nu_safety);
  SpectralWorkspace ws(config.grid());
  SplitOperators ops;
  ops.pot = &pot;
  ops.gamma0 = p.gamma0;
  ops.rho_w = p.rho_w;
  ops.epsilon = config.epsilon;
  ops.kappa = config.kappa;
  ops.mu = config.mu;
  ops.variant = config.coupling;

  EtdStepper stepper(ws, ops, config.dt);
  stepper.set_field(initial);

  RunResult result;
  EnergyBreakdown energy = total_energy(initial, pot, p, config.epsilon, config.coupling, ws);
  result.log.push_back({0, 0.0, energy});

  for (long step = 1; step <= config.max_steps; ++step) {
    stepper.step(config.scheme);

    double max_abs = 0.0;
    bool finite = true;
    for (double v : stepper.field().data) {
      if (!std::isfinite(v)) finite = false;
      max_abs = std::max(max_abs, std::abs(v));
    }
    if (!finite) {
      throw std::runtime_error("run_gradient_flow: non-finite field at step " +
                               std::to_string(step) + ", max |phi| = " + std::to_string(max_abs));
    }

    const EnergyBreakdown next =
        total_energy(stepper.field(), pot, p, config.epsilon, config.coupling, ws);
    result.steps = step;
    if (config.log_every > 0 && step % config.log_every == 0) {
      result.log.push_back({step, step * config.dt, next});
    }
    if (config.tol > 0.0 && std::abs(next.f_tot - energy.f_tot) / config.dt < config.tol) {
      result.converged = true;
      energy = next;
      break;
    }
    energy = next;
  }

  result.phi = stepper.field();
  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

double solvent_excluded_volume(const ScalarField3D& phi) {
  std::size_t count = 0;
  for (double v : phi.data) {
    if (v > 0.5) ++count;
  }
  return phi.grid.cell_volume() * static_cast<double>(count);
}

}  // namespace pfv
