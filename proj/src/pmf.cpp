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

#include "pfvism/pmf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "pfvism/potentials.hpp"
#include "pfvism/spectral.hpp"

namespace pfv {

namespace {

constexpr double kPi = 3.14159265358979323846;

/// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration on P_n.
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.resize(n);
  weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    weights[i] = weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
}

void check_inside(const Vec3& x, const BoxRegion& box, const char* who) {
  for (int a = 0; a < 3; ++a) {
    if (!(x[a] > box.lo[a] && x[a] < box.hi[a])) {
      throw std::invalid_argument(std::string(who) + ": atom on or outside the box boundary");
    }
  }
}

/// Distance along the ray p + t w, t > 0, to the box boundary (p inside).
double ray_box_exit(const Vec3& p, const Vec3& w, const BoxRegion& box) {
  double t = std::numeric_limits<double>::infinity();
  for (int a = 0; a < 3; ++a) {
    if (w[a] > 0.0) {
      t = std::min(t, (box.hi[a] - p[a]) / w[a]);
    } else if (w[a] < 0.0) {
      t = std::min(t, (box.lo[a] - p[a]) / w[a]);
    }
  }
  return t;
}

/// int_a^b 4 eps [(sigma/r)^12 - (sigma/r)^6] r^2 dr; b may be infinite.
double lj_radial_integral(double eps, double sigma, double a, double b) {
  const double s3 = sigma * sigma * sigma;
  const double s6 = s3 * s3;
  const double s12 = s6 * s6;
  const double ia = s12 / (9.0 * std::pow(a, 9)) - s6 / (3.0 * a * a * a);
  const double ib = std::isinf(b) ? 0.0 : s12 / (9.0 * std::pow(b, 9)) - s6 / (3.0 * b * b * b);
  return 4.0 * eps * (ia - ib);
}

/// grad(1/|x-xi|) . grad(1/|x-xj|) = (x-xi).(x-xj) / (|x-xi|^3 |x-xj|^3).
double pair_density(const Vec3& x, const Vec3& xi, const Vec3& xj) {
  const Vec3 a = x - xi;
  const Vec3 b = x - xj;
  const double ra = norm(a), rb = norm(b);
  return dot(a, b) / (ra * ra * ra * rb * rb * rb);
}

/// Integrand of the Green's-identity surface form at x with outward normal n.
double pair_surface_kernel(const Vec3& x, const Vec3& n, const Vec3& xi, const Vec3& xj) {
  const Vec3 a = x - xi;
  const Vec3 b = x - xj;
  const double ra2 = dot(a, a), rb2 = dot(b, b);
  const double inv = 1.0 / std::sqrt(ra2 * rb2);
  return inv * (dot(n, a) / ra2 + dot(n, b) / rb2);
}

EnergyBreakdown scaled(const EnergyBreakdown& e, double s) {
  return {s * e.f_surf, s * e.f_vdw, s * e.f_ele, s * e.f_tot};
}

}  // namespace

BoxRegion domain_box(const GridSpec& grid) {
  return {{-grid.lx, -grid.ly, -grid.lz}, {grid.lx, grid.ly, grid.lz}};
}

double pair_lj_sum(const std::vector<SoluteAtom>& plate1, const std::vector<SoluteAtom>& plate2) {
  double sum = 0.0;
  for (const SoluteAtom& a : plate1) {
    for (const SoluteAtom& b : plate2) {
      const double r = norm(a.position - b.position);
      if (r < 1e-12) throw std::invalid_argument("pair_lj_sum: coincident atoms across plates");
      const double sigma = 0.5 * (a.sigma + b.sigma);
      const double eps = std::sqrt(a.eps * b.eps);
      const double s6 = std::pow(sigma / r, 6);
      sum += 4.0 * eps * (s6 * s6 - s6);
    }
  }
  return sum;
}

double pair_coulomb_sum(const std::vector<SoluteAtom>& plate1,
                        const std::vector<SoluteAtom>& plate2, const PhysicalParams& p) {
  double sum = 0.0;
  for (const SoluteAtom& a : plate1) {
    for (const SoluteAtom& b : plate2) {
      const double r = norm(a.position - b.position);
      if (r < 1e-12) throw std::invalid_argument("pair_coulomb_sum: coincident atoms across plates");
      sum += a.charge * b.charge / r;
    }
  }
  return sum / (4.0 * kPi * p.eps_m * p.eps0);
}

double exterior_vdw_correction(const SoluteConfig& solute, const BoxRegion& box,
                               const PhysicalParams& p, int angular_order) {
  std::vector<double> u_nodes, u_weights;
  gauss_legendre(angular_order, u_nodes, u_weights);
  const int n_phi = 2 * angular_order;
  const double dphi = 2.0 * kPi / n_phi;

  double total = 0.0;
  for (const SoluteAtom& atom : solute.atoms) {
    check_inside(atom.position, box, "exterior_vdw_correction");

    // Smallest atom-centered ball containing the box; its exterior is the
    // analytic tail.
    double r_far = 0.0;
    for (int cx = 0; cx < 2; ++cx) {
      for (int cy = 0; cy < 2; ++cy) {
        for (int cz = 0; cz < 2; ++cz) {
          const Vec3 corner{cx ? box.hi[0] : box.lo[0], cy ? box.hi[1] : box.lo[1],
                            cz ? box.hi[2] : box.lo[2]};
          r_far = std::max(r_far, norm(corner - atom.position));
        }
      }
    }

    double shell = 0.0;
    for (int iu = 0; iu < angular_order; ++iu) {
      const double u = u_nodes[iu];
      const double su = std::sqrt(1.0 - u * u);
      double row = 0.0;
      for (int ip = 0; ip < n_phi; ++ip) {
        const double phi = (ip + 0.5) * dphi;
        const Vec3 w{su * std::cos(phi), su * std::sin(phi), u};
        const double t = ray_box_exit(atom.position, w, box);
        row += lj_radial_integral(atom.eps, atom.sigma, t, r_far);
      }
      shell += u_weights[iu] * row * dphi;
    }
    total += shell + 4.0 * kPi *
                         lj_radial_integral(atom.eps, atom.sigma, r_far,
                                            std::numeric_limits<double>::infinity());
  }
  return p.rho_w * total;
}

double exterior_pair_integral_volume(const Vec3& xi, const Vec3& xj, const BoxRegion& box,
                                     int angular_order) {
  check_inside(xi, box, "exterior_pair_integral_volume");
  check_inside(xj, box, "exterior_pair_integral_volume");
  const Vec3 c = 0.5 * (xi + xj);

  std::vector<double> u_nodes, u_weights, r_nodes, r_weights;
  gauss_legendre(angular_order, u_nodes, u_weights);
  gauss_legendre(64, r_nodes, r_weights);
  const int n_phi = 2 * angular_order;
  const double dphi = 2.0 * kPi / n_phi;

  double total = 0.0;
  for (int iu = 0; iu < angular_order; ++iu) {
    const double u = u_nodes[iu];
    const double su = std::sqrt(1.0 - u * u);
    double row = 0.0;
    for (int ip = 0; ip < n_phi; ++ip) {
      const double phi = (ip + 0.5) * dphi;
      const Vec3 w{su * std::cos(phi), su * std::sin(phi), u};
      const double t = ray_box_exit(c, w, box);
      // Substitute rho = 1/r: int_t^inf F r^2 dr = int_0^{1/t} F rho^-4 drho,
      // with F rho^-4 bounded as rho -> 0 because F decays like r^-4.
      const double half = 0.5 / t;
      double ray = 0.0;
      for (std::size_t m = 0; m < r_nodes.size(); ++m) {
        const double rho = half * (r_nodes[m] + 1.0);
        const double r = 1.0 / rho;
        ray += r_weights[m] * pair_density(c + r * w, xi, xj) / (rho * rho * rho * rho);
      }
      row += half * ray;
    }
    total += u_weights[iu] * row * dphi;
  }
  return 2.0 * total;
}

double exterior_pair_integral_box(const Vec3& xi, const Vec3& xj, const BoxRegion& box,
                                  int face_order) {
  check_inside(xi, box, "exterior_pair_integral_box");
  check_inside(xj, box, "exterior_pair_integral_box");
  std::vector<double> nodes, weights;
  gauss_legendre(face_order, nodes, weights);

  double total = 0.0;
  for (int axis = 0; axis < 3; ++axis) {
    const int a1 = (axis + 1) % 3;
    const int a2 = (axis + 2) % 3;
    const double h1 = 0.5 * (box.hi[a1] - box.lo[a1]);
    const double h2 = 0.5 * (box.hi[a2] - box.lo[a2]);
    const double c1 = 0.5 * (box.hi[a1] + box.lo[a1]);
    const double c2 = 0.5 * (box.hi[a2] + box.lo[a2]);
    for (int side = 0; side < 2; ++side) {
      Vec3 n{0.0, 0.0, 0.0};
      n[axis] = side ? 1.0 : -1.0;
      Vec3 x;
      x[axis] = side ? box.hi[axis] : box.lo[axis];
      double face = 0.0;
      for (int m1 = 0; m1 < face_order; ++m1) {
        x[a1] = c1 + h1 * nodes[m1];
        double row = 0.0;
        for (int m2 = 0; m2 < face_order; ++m2) {
          x[a2] = c2 + h2 * nodes[m2];
          row += weights[m2] * pair_surface_kernel(x, n, xi, xj);
        }
        face += weights[m1] * row;
      }
      total += face * h1 * h2;
    }
  }
  return total;
}

double exterior_pair_integral_sphere(const Vec3& xi, const Vec3& xj, const Vec3& center,
                                     double radius, int order) {
  std::vector<double> u_nodes, u_weights;
  gauss_legendre(order, u_nodes, u_weights);
  const int n_phi = 2 * order;
  const double dphi = 2.0 * kPi / n_phi;

  double total = 0.0;
  for (int iu = 0; iu < order; ++iu) {
    const double u = u_nodes[iu];
    const double su = std::sqrt(1.0 - u * u);
    double row = 0.0;
    for (int ip = 0; ip < n_phi; ++ip) {
      const double phi = (ip + 0.5) * dphi;
      const Vec3 n{su * std::cos(phi), su * std::sin(phi), u};
      const Vec3 x = center + radius * n;
      row += pair_surface_kernel(x, n, xi, xj);
    }
    total += u_weights[iu] * row * dphi;
  }
  return total * radius * radius;
}

double exterior_ele_correction(const std::vector<SoluteAtom>& plate1,
                               const std::vector<SoluteAtom>& plate2, const BoxRegion& box,
                               const PhysicalParams& p, int face_order) {
  const double tau0 = cfa_prefactor(p);
  double sum = 0.0;
  for (const SoluteAtom& a : plate1) {
    for (const SoluteAtom& b : plate2) {
      if (a.charge == 0.0 || b.charge == 0.0) continue;
      sum += a.charge * b.charge *
             exterior_pair_integral_box(a.position, b.position, box, face_order);
    }
  }
  return tau0 * sum;
}

ReferenceState reference_state(const RunConfig& base, const PhysicalParams& p, int n_p, double d0,
                               double q) {
  const SoluteConfig solute = make_single_plate(n_p, d0, q, p);
  const double width = base.initial.smoothing < 0.0 ? base.epsilon : base.initial.smoothing;
  const double wxz = 0.5 * (n_p - 1) * d0 + p.sigma_lj;
  const ScalarField3D initial =
      box_initial(base.grid(), {0.0, 0.0, 0.0}, {wxz, p.sigma_lj, wxz}, width);
  const RunResult run = run_gradient_flow(base, p, solute, initial);

  ReferenceState ref;
  ref.phi = run.phi;
  ref.converged = run.converged;
  const PotentialField pot = sample_on_grid(solute, base.grid(), p, base.nu_safety);
  SpectralWorkspace ws(base.grid());
  ref.energy = total_energy(run.phi, pot, p, base.epsilon, base.coupling, ws);
  return ref;
}

std::vector<PmfPoint> pmf_curve(const std::vector<double>& d_values, const RunConfig& base,
                                const PhysicalParams& p, const SoluteSpec& plates,
                                InitialCondition::Kind branch) {
  if (branch != InitialCondition::Kind::loose_box && branch != InitialCondition::Kind::tight_boxes) {
    throw std::invalid_argument("pmf_curve: branch must be loose_box or tight_boxes");
  }

  // One single-plate reference per distinct |q|; doubled when |q1| = |q2|.
  const ReferenceState ref1 = reference_state(base, p, plates.n_p, plates.d0, plates.q1);
  EnergyBreakdown ref;
  if (std::abs(std::abs(plates.q1) - std::abs(plates.q2)) < 1e-12) {
    ref = scaled(ref1.energy, 2.0);
  } else {
    const ReferenceState ref2 = reference_state(base, p, plates.n_p, plates.d0, plates.q2);
    ref = {ref1.energy.f_surf + ref2.energy.f_surf, ref1.energy.f_vdw + ref2.energy.f_vdw,
           ref1.energy.f_ele + ref2.energy.f_ele, ref1.energy.f_tot + ref2.energy.f_tot};
  }

  const double width = base.initial.smoothing < 0.0 ? base.epsilon : base.initial.smoothing;
  const BoxRegion box = domain_box(base.grid());
  const std::size_t per_plate = static_cast<std::size_t>(plates.n_p) * plates.n_p;

  std::vector<PmfPoint> curve;
  curve.reserve(d_values.size());
  for (double d : d_values) {
    const SoluteConfig solute =
        make_plates(plates.n_p, plates.d0, d, plates.q1, plates.q2, p);
    const std::vector<SoluteAtom> plate1(solute.atoms.begin(),
                                         solute.atoms.begin() + per_plate);
    const std::vector<SoluteAtom> plate2(solute.atoms.begin() + per_plate, solute.atoms.end());

    bool fell_back = false;
    ScalarField3D initial =
        branch == InitialCondition::Kind::loose_box
            ? loose_initial(base.grid(), plates.n_p, plates.d0, d, p.sigma_lj, width)
            : tight_initial(base.grid(), plates.n_p, plates.d0, d, p.sigma_lj, width, &fell_back);

    const RunResult run = run_gradient_flow(base, p, solute, initial);
    const PotentialField pot = sample_on_grid(solute, base.grid(), p, base.nu_safety);
    SpectralWorkspace ws(base.grid());
    const EnergyBreakdown e = total_energy(run.phi, pot, p, base.epsilon, base.coupling, ws);

    PmfPoint point;
    point.d = d;
    point.branch =
        (branch == InitialCondition::Kind::tight_boxes && !fell_back) ? "tight" : "loose";
    point.converged = run.converged;
    point.g_geo = e.f_surf - ref.f_surf;
    point.g_vdw = e.f_vdw - ref.f_vdw + pair_lj_sum(plate1, plate2);
    point.g_ele = e.f_ele - ref.f_ele + exterior_ele_correction(plate1, plate2, box, p) +
                  pair_coulomb_sum(plate1, plate2, p);
    point.g_tot = point.g_geo + point.g_vdw + point.g_ele;
    curve.push_back(point);
  }
  return curve;
}

double crossover_distance(const std::vector<PmfPoint>& curve, double threshold_kbt) {
  if (curve.empty()) return 0.0;
  const PmfPoint* far = &curve.front();
  for (const PmfPoint& pt : curve) {
    if (pt.d > far->d) far = &pt;
  }
  double dc = 0.0;
  for (const PmfPoint& pt : curve) {
    if (pt.g_geo < far->g_geo - threshold_kbt) dc = std::max(dc, pt.d);
  }
  return dc;
}

}  // namespace pfv
