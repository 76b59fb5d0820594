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

// Acceptance suite: ten end-to-end criteria, one pass/fail line each.
// Exit status is the number of failed criteria.

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "pfvism/driver.hpp"
#include "pfvism/energy.hpp"
#include "pfvism/io.hpp"
#include "pfvism/pmf.hpp"
#include "pfvism/potentials.hpp"
#include "pfvism/radial.hpp"
#include "pfvism/spectral.hpp"
#include "pfvism/stepper.hpp"

using namespace pfv;

namespace {

const PhysicalParams phys = default_params();

struct Reporter {
  int failures = 0;

  void run(int number, const std::string& name, bool (*criterion)(std::string&)) {
    const auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = false;
    try {
      ok = criterion(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %2d [%s] %s (%.1f s)%s%s\n", number, ok ? "PASS" : "FAIL", name.c_str(),
                seconds, detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
  }
};

/// 64^3 two-plate benchmark system shared by criteria 5-8.
RunConfig benchmark_config() {
  RunConfig c;
  c.lx = c.ly = c.lz = 18.0;
  c.nx = c.ny = c.nz = 64;
  c.epsilon = 0.5;
  c.dt = 0.05;
  c.tol = 1e-3;
  return c;
}

RunResult run_plates(RunConfig config, double q1, double q2, bool tight = false) {
  const SoluteConfig solute = make_plates(6, 2.1945, 12.0, q1, q2, phys);
  const GridSpec grid = config.grid();
  const ScalarField3D initial =
      tight ? tight_initial(grid, 6, 2.1945, 12.0, phys.sigma_lj, config.epsilon)
            : loose_initial(grid, 6, 2.1945, 12.0, phys.sigma_lj, config.epsilon);
  return run_gradient_flow(config, phys, solute, initial);
}

/// Final free energy of the benchmark flow at t = 1 under a fixed step size.
double energy_at_t1(Scheme scheme, double dt) {
  RunConfig config = benchmark_config();
  config.scheme = scheme;
  config.dt = dt;
  config.tol = 0.0;  // fixed horizon, no early stop
  config.max_steps = std::lround(1.0 / dt);
  config.log_every = config.max_steps;
  const RunResult r = run_plates(config, 0.2, 0.2);
  return r.log.back().energy.f_tot;
}

bool criterion1(std::string& detail) {
  // Sharp-interface one-ion table, epsilon = 0 column.
  const struct {
    double q, r, f_surf, f_vdw, f_ele, f_tot;
  } table[] = {
      {0.0, 3.054, 20.511, -2.644, 0.000, 17.867},
      {0.5, 2.960, 19.267, -1.054, -23.173, -4.960},
      {1.0, 2.771, 16.886, 5.113, -99.012, -77.014},
      {1.5, 2.593, 14.782, 17.971, -238.105, -205.354},
      {2.0, 2.448, 13.178, 38.757, -448.317, -396.381},
  };
  const auto start = std::chrono::steady_clock::now();
  bool ok = true;
  std::ostringstream out;
  for (const auto& row : table) {
    const SharpResult got = sharp_oracle(row.q, phys);
    const bool row_ok = std::abs(got.r_min - row.r) <= 0.002 &&
                        std::abs(got.f_surf - row.f_surf) <= 0.02 &&
                        std::abs(got.f_vdw - row.f_vdw) <= 0.02 &&
                        std::abs(got.f_ele - row.f_ele) <= 0.02 &&
                        std::abs(got.f_tot - row.f_tot) <= 0.02;
    if (!row_ok) {
      ok = false;
      out << " Q=" << row.q << " R=" << got.r_min << " F=" << got.f_tot;
    }
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (seconds >= 1.0) {
    ok = false;
    out << " runtime " << seconds << " s exceeds 1 s";
  }
  detail = out.str();
  return ok;
}

bool criterion2(std::string& detail) {
  const struct {
    double q, epsilon, r, f;
  } table[] = {
      {0.0, 0.2, 3.06058, 17.98982}, {0.0, 0.05, 3.055, 17.887},
      {1.0, 0.2, 2.77930, -76.81676}, {1.0, 0.05, 2.77252, -76.9869},
      {2.0, 0.2, 2.456, -395.848},   {2.0, 0.05, 2.44947, -396.32242},
  };
  bool ok = true;
  std::ostringstream out;
  for (const auto& row : table) {
    RadialConfig config;
    config.epsilon = row.epsilon;
    config.dr = 1e-3;
    const auto [profile, energy] = radial_flow(config, row.q, phys);
    const double r = interface_radius(profile);
    if (std::abs(r - row.r) > 0.01 || std::abs(energy.f_tot - row.f) > 0.005 * std::abs(row.f)) {
      ok = false;
      out << " (Q=" << row.q << ",eps=" << row.epsilon << "): R=" << r << " F=" << energy.f_tot;
    }
  }
  detail = out.str();
  return ok;
}

bool criterion3(std::string& detail) {
  bool ok = true;
  std::ostringstream out;
  for (double q : {0.0, 1.0, 2.0}) {
    const double f0 = sharp_oracle(q, phys).f_tot;
    double prev = 1e300;
    for (double eps : {0.5, 0.2, 0.05, 0.02}) {
      RadialConfig config;
      config.epsilon = eps;
      config.dr = std::min(1e-3, eps / 40.0);
      const auto [profile, energy] = radial_flow(config, q, phys);
      const double gap = std::abs(energy.f_tot - f0);
      if (gap >= prev) {
        ok = false;
        out << " Q=" << q << ": |F(" << eps << ")-F(0)|=" << gap << " >= " << prev;
      }
      prev = gap;
    }
  }
  detail = out.str();
  return ok;
}

bool criterion4(std::string& detail) {
  RadialConfig config;
  config.epsilon = 0.1;

  config.coupling = Coupling::quadratic;
  const auto [phi_old, e_old] = radial_flow(config, 2.0, phys);
  double min_old = 1e300;
  for (double v : phi_old.values) min_old = std::min(min_old, v);

  config.coupling = Coupling::quartic;
  const auto [phi_new, e_new] = radial_flow(config, 2.0, phys);
  double min_new = 1e300;
  bool monotone = true;
  for (std::size_t m = 0; m < phi_new.values.size(); ++m) {
    min_new = std::min(min_new, phi_new.values[m]);
    if (m > 0 && phi_new.values[m] > phi_new.values[m - 1] + 1e-9) monotone = false;
  }

  const double r0 = interface_radius(phi_new);
  const std::vector<double> res =
      radial_residual(phi_new, 2.0, phys, config.epsilon, Coupling::quartic);
  double in_band = 0.0, out_band = 0.0;
  for (std::size_t m = 0; m < res.size(); ++m) {
    const double dist = std::abs(phi_new.r(m) - r0);
    (dist <= 10.0 * config.epsilon ? in_band : out_band) =
        std::max(dist <= 10.0 * config.epsilon ? in_band : out_band, std::abs(res[m]));
  }
  const bool localized = out_band < 1e-3 * in_band;

  std::ostringstream out;
  out << "min_old=" << min_old << " min_new=" << min_new << " out/in=" << out_band / in_band;
  detail = out.str();
  return min_old < -5e-3 && min_new > -1e-3 && monotone && localized;
}

bool criterion5(std::string& detail) {
  const double benchmark = energy_at_t1(Scheme::etd4rk, 1e-4);

  std::vector<SchemeEnergies> energies;
  const struct {
    Scheme scheme;
    const char* name;
    std::vector<double> dts;
    double required;
  } plans[] = {
      {Scheme::etd1rk, "ETD1RK", {0.05, 0.025, 0.0125, 0.00625, 0.003125}, 0.85},
      {Scheme::etd2rk, "ETD2RK", {0.05, 0.025, 0.0125, 0.00625, 0.003125}, 1.7},
      {Scheme::etd4rk, "ETD4RK", {0.025, 0.0125, 0.00625, 0.003125}, 3.3},
  };
  for (const auto& plan : plans) {
    SchemeEnergies s{plan.name, {}};
    for (double dt : plan.dts) s.by_dt.emplace_back(dt, energy_at_t1(plan.scheme, dt));
    energies.push_back(std::move(s));
  }
  const std::vector<RateRow> rows = rates_report(energies, benchmark);

  bool ok = true;
  std::ostringstream out;
  out << "benchmark F(1)=" << benchmark << ";";
  std::size_t at = 0;
  for (const auto& plan : plans) {
    at += plan.dts.size();
    const double r1 = rows[at - 2].rate;  // second-smallest step pair
    const double r2 = rows[at - 1].rate;  // smallest step pair
    out << " " << plan.name << " rates " << r1 << "," << r2;
    if (!(r1 >= plan.required && r2 >= plan.required)) ok = false;
  }
  detail = out.str();
  return ok;
}

bool criterion6(std::string& detail) {
  bool ok = true;
  std::ostringstream out;
  for (Scheme scheme : {Scheme::etd1rk, Scheme::etd2rk, Scheme::etd4rk}) {
    for (double dt : {1.0, 0.1, 0.01}) {
      RunConfig config = benchmark_config();
      config.scheme = scheme;
      config.dt = dt;
      config.max_steps = 20000;
      RunResult r;
      try {
        r = run_plates(config, 0.2, 0.2);
      } catch (const std::exception& e) {
        ok = false;
        out << " " << to_string(scheme) << " dt=" << dt << " aborted: " << e.what();
        continue;
      }
      bool finite = true;
      for (double v : r.phi.data) finite = finite && std::isfinite(v);
      if (!finite || !r.converged) {
        ok = false;
        out << " " << to_string(scheme) << " dt=" << dt << " finite=" << finite
            << " converged=" << r.converged;
      }
      if (scheme == Scheme::etd1rk) {
        for (std::size_t m = 1; m < r.log.size(); ++m) {
          if (r.log[m].energy.f_tot > r.log[m - 1].energy.f_tot + 1e-8) {
            ok = false;
            out << " ETD1RK dt=" << dt << " energy rises at step " << r.log[m].step;
            break;
          }
        }
      }
    }
  }
  detail = out.str();
  return ok;
}

bool criterion7(std::string& detail) {
  const RunConfig config = benchmark_config();
  const double v00 = solvent_excluded_volume(run_plates(config, 0.0, 0.0).phi);
  const double v11 = solvent_excluded_volume(run_plates(config, 0.1, 0.1).phi);
  const double v22 = solvent_excluded_volume(run_plates(config, 0.2, 0.2).phi);
  const double v_mixed = solvent_excluded_volume(run_plates(config, -0.1, 0.1).phi);
  std::ostringstream out;
  out << "V(0)=" << v00 << " V(0.1)=" << v11 << " V(0.2)=" << v22 << " V(-0.1,0.1)=" << v_mixed;
  detail = out.str();
  return v00 > v11 && v11 > v22 && v_mixed <= v11;
}

bool criterion8(std::string& detail) {
  const RunConfig base = benchmark_config();
  SoluteSpec plates;
  plates.kind = SoluteSpec::Kind::plates;

  plates.q1 = plates.q2 = 0.2;
  const PmfPoint loose =
      pmf_curve({12.0}, base, phys, plates, InitialCondition::Kind::loose_box).front();
  const PmfPoint tight =
      pmf_curve({12.0}, base, phys, plates, InitialCondition::Kind::tight_boxes).front();
  const double gap = std::abs(loose.g_tot - tight.g_tot);

  plates.q1 = plates.q2 = 0.0;
  const std::vector<double> ds{5.0, 6.0, 7.0, 8.0, 9.0, 10.0, 11.0, 12.0, 14.0, 16.0};
  const std::vector<PmfPoint> neutral =
      pmf_curve(ds, base, phys, plates, InitialCondition::Kind::loose_box);
  bool all_converged = loose.converged && tight.converged;
  for (const PmfPoint& pt : neutral) all_converged = all_converged && pt.converged;
  const double d_c = crossover_distance(neutral);

  std::ostringstream out;
  out << "loose-tight gap=" << gap << " kBT, neutral d_c=" << d_c;
  detail = out.str();
  return all_converged && gap > 1.0 && d_c >= 7.0 && d_c <= 11.0;
}

bool criterion9(std::string& detail) {
  const BoxRegion box{{-18.0, -18.0, -18.0}, {18.0, 18.0, 18.0}};
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> uni(-8.0, 8.0);
  bool ok = true;
  double worst = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    const Vec3 xi{uni(rng), uni(rng), uni(rng)};
    const Vec3 xj{uni(rng), uni(rng), uni(rng)};
    const double surface = exterior_pair_integral_box(xi, xj, box);
    const double volume = exterior_pair_integral_volume(xi, xj, box);
    const double rel = std::abs(surface - volume) / std::abs(surface);
    worst = std::max(worst, rel);
    if (rel > 1e-3) ok = false;
  }
  double sphere_err = 0.0;
  for (double radius : {2.0, 5.0, 12.0}) {
    const double got = exterior_pair_integral_sphere({0, 0, 0}, {0, 0, 0}, {0, 0, 0}, radius);
    sphere_err = std::max(sphere_err,
                          std::abs(got - 8.0 * M_PI / radius) / (8.0 * M_PI / radius));
  }
  if (sphere_err > 1e-10) ok = false;
  std::ostringstream out;
  out << "worst surface/volume rel err=" << worst << ", sphere identity rel err=" << sphere_err;
  detail = out.str();
  return ok;
}

using big = boost::multiprecision::cpp_bin_float_50;

bool criterion10(std::string& detail) {
  std::ostringstream out;
  bool ok = true;

  // (a) Energy-gradient finite-difference consistency at order 2.
  {
    const GridSpec grid{6.0, 6.0, 6.0, 16, 16, 16};
    SpectralWorkspace ws(grid);
    SoluteConfig ion;
    ion.atoms.push_back({{0.0, 0.0, 0.0}, 1.0, phys.eps_lj, phys.sigma_lj});
    const PotentialField pot = sample_on_grid(ion, grid, phys);
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    ScalarField3D phi(grid), delta(grid);
    for (double& v : phi.data) v = uni(rng);
    for (int k = 0; k < grid.nz; ++k)
      for (int j = 0; j < grid.ny; ++j)
        for (int i = 0; i < grid.nx; ++i) {
          const Vec3 x = grid.node(i, j, k);
          delta(i, j, k) = std::sin(M_PI * x[0] / grid.lx) * std::cos(M_PI * x[1] / grid.ly);
        }
    const ScalarField3D rhs = variational_derivative(phi, pot, phys, 0.5, Coupling::quartic, ws);
    double inner = 0.0;
    for (std::size_t m = 0; m < rhs.data.size(); ++m) inner -= rhs.data[m] * delta.data[m];
    inner *= grid.cell_volume();
    auto energy_at = [&](double h) {
      ScalarField3D shifted = phi;
      for (std::size_t m = 0; m < shifted.data.size(); ++m) shifted.data[m] += h * delta.data[m];
      return total_energy(shifted, pot, phys, 0.5, Coupling::quartic, ws).f_tot;
    };
    const double e1 = std::abs((energy_at(1e-3) - energy_at(-1e-3)) / 2e-3 - inner);
    const double e2 = std::abs((energy_at(5e-4) - energy_at(-5e-4)) / 1e-3 - inner);
    const double order = std::log2(e1 / e2);
    if (std::abs(order - 2.0) > 0.3) {
      ok = false;
      out << " gradient FD order " << order << ";";
    }
  }

  // (b) FFT round trip.
  {
    const GridSpec grid{5.0, 4.0, 3.0, 16, 12, 10};
    SpectralWorkspace ws(grid);
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    ScalarField3D f(grid);
    for (double& v : f.data) v = uni(rng);
    std::vector<cplx> hat(ws.spectral_size());
    ws.forward(f.data, hat);
    ScalarField3D back(grid);
    ws.inverse(hat, back.data);
    double err = 0.0;
    for (std::size_t m = 0; m < f.data.size(); ++m) {
      err = std::max(err, std::abs(back.data[m] - f.data[m]));
    }
    if (err >= 1e-12) {
      ok = false;
      out << " FFT round trip " << err << ";";
    }
  }

  // (c) Splitting exactness: L + N equals the full right-hand side.
  {
    const GridSpec grid{6.0, 6.0, 6.0, 16, 16, 16};
    SpectralWorkspace ws(grid);
    SoluteConfig ion;
    ion.atoms.push_back({{0.0, 0.0, 0.0}, 1.0, phys.eps_lj, phys.sigma_lj});
    const PotentialField pot = sample_on_grid(ion, grid, phys);
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> uni(-0.2, 1.2);
    ScalarField3D phi(grid);
    for (double& v : phi.data) v = uni(rng);
    SplitOperators ops;
    ops.pot = &pot;
    const ScalarField3D lin = linear_term(phi, ops, ws);
    const ScalarField3D non = nonlinear_term(phi, ops);
    const ScalarField3D rhs =
        variational_derivative(phi, pot, phys, ops.epsilon, ops.variant, ws);
    double err = 0.0;
    for (std::size_t m = 0; m < rhs.data.size(); ++m) {
      err = std::max(err, std::abs(lin.data[m] + non.data[m] - rhs.data[m]));
    }
    if (err >= 1e-10) {
      ok = false;
      out << " splitting exactness " << err << ";";
    }
  }

  // (d) phi-function coefficients against a 50-digit oracle.
  {
    double err = 0.0;
    for (double mag = 1e-10; mag <= 50.0; mag *= 2.0) {
      for (double z : {-mag, mag}) {
        const big zb(z);
        const big p1 = (exp(zb) - 1) / zb;
        const big g2 = (exp(zb) - 1 - zb) / (zb * zb);
        const big c1 = (-4 - zb + exp(zb) * (4 - 3 * zb + zb * zb)) / (zb * zb * zb);
        const big c2 = 2 * (2 + zb + exp(zb) * (zb - 2)) / (zb * zb * zb);
        const big c3 = (-4 - 3 * zb - zb * zb + exp(zb) * (4 - zb)) / (zb * zb * zb);
        err = std::max(err, double(abs((big(etdfn::phi1(z)) - p1) / p1)));
        err = std::max(err, double(abs((big(etdfn::g2(z)) - g2) / g2)));
        err = std::max(err, double(abs((big(etdfn::c1(z)) - c1) / c1)));
        err = std::max(err, double(abs((big(etdfn::c2(z)) - c2) / c2)));
        err = std::max(err, double(abs((big(etdfn::c3(z)) - c3) / c3)));
      }
    }
    if (err >= 1e-12) {
      ok = false;
      out << " phi functions " << err << ";";
    }
  }

  detail = out.str();
  return ok;
}

}  // namespace

int main() {
  Reporter reporter;
  reporter.run(1, "sharp-interface oracle matches the one-ion table", criterion1);
  reporter.run(2, "radial phase field matches the one-ion table", criterion2);
  reporter.run(3, "|F(eps) - F(0)| decreases strictly with eps", criterion3);
  reporter.run(4, "quartic coupling keeps phi monotone and forces local", criterion4);
  reporter.run(5, "ETDRK convergence rates on the two-plate benchmark", criterion5);
  reporter.run(6, "stability across step sizes 1, 0.1, 0.01", criterion6);
  reporter.run(7, "plate charging tightens the excluded volume", criterion7);
  reporter.run(8, "separation-curve branches split and cross over", criterion8);
  reporter.run(9, "surface and volume exterior quadratures agree", criterion9);
  reporter.run(10, "property suites (gradient, FFT, splitting, phi fns)", criterion10);
  std::printf("%d of 10 criteria failed\n", reporter.failures);
  return reporter.failures;
}
