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

#include <cstdio>
#include <exception>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pfvism/driver.hpp"
#include "pfvism/io.hpp"
#include "pfvism/pmf.hpp"
#include "pfvism/potentials.hpp"
#include "pfvism/radial.hpp"
#include "pfvism/spectral.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNumerical = 2;

void apply_two_plate_preset(pfv::FullConfig& config) {
  config.run.lx = config.run.ly = config.run.lz = 18.0;
  config.run.nx = config.run.ny = config.run.nz = 256;
  config.run.epsilon = 0.5;
  config.run.dt = 0.05;
  config.run.initial.kind = pfv::InitialCondition::Kind::loose_box;
  config.solute.kind = pfv::SoluteSpec::Kind::plates;
  config.solute.n_p = 6;
  config.solute.d0 = 2.1945;
  config.solute.d = 12.0;
  config.solute.q1 = config.solute.q2 = 0.2;
}

pfv::ScalarField3D build_initial(const pfv::FullConfig& config) {
  const pfv::RunConfig& r = config.run;
  const pfv::SoluteSpec& s = config.solute;
  const double width = r.initial.smoothing < 0.0 ? r.epsilon : r.initial.smoothing;
  switch (r.initial.kind) {
    case pfv::InitialCondition::Kind::loose_box:
      return pfv::loose_initial(r.grid(), s.n_p, s.d0, s.d, config.physics.sigma_lj, width);
    case pfv::InitialCondition::Kind::tight_boxes:
      return pfv::tight_initial(r.grid(), s.n_p, s.d0, s.d, config.physics.sigma_lj, width);
    case pfv::InitialCondition::Kind::sphere:
      return pfv::sphere_initial(r.grid(), r.initial.sphere_radius, width);
    case pfv::InitialCondition::Kind::from_checkpoint: {
      pfv::Checkpoint cp = pfv::read_checkpoint(r.initial.checkpoint_path);
      if (cp.phi.grid != r.grid()) {
        throw std::invalid_argument("checkpoint grid does not match the configured grid");
      }
      return cp.phi;
    }
  }
  throw std::invalid_argument("unknown initial kind");
}

/// "start:halve:count" -> count step sizes, each half the previous.
std::vector<double> parse_dt_list(const std::string& text) {
  const std::size_t c1 = text.find(':');
  const std::size_t c2 = text.find(':', c1 == std::string::npos ? c1 : c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos ||
      text.substr(c1 + 1, c2 - c1 - 1) != "halve") {
    throw CLI::ValidationError("--dt-list", "expected START:halve:COUNT");
  }
  const double start = std::stod(text.substr(0, c1));
  const int count = std::stoi(text.substr(c2 + 1));
  if (start <= 0.0 || count < 3) {
    throw CLI::ValidationError("--dt-list", "need START > 0 and COUNT >= 3");
  }
  std::vector<double> dts(count);
  for (int k = 0; k < count; ++k) dts[k] = start / static_cast<double>(1 << k);
  return dts;
}

int cmd_run(const std::string& config_path, bool preset, const std::string& out_prefix) {
  pfv::FullConfig config = pfv::load_config(config_path);
  if (preset) apply_two_plate_preset(config);

  const pfv::SoluteConfig solute = pfv::build_solute(config.solute, config.physics);
  const pfv::ScalarField3D initial = build_initial(config);
  const pfv::RunResult result =
      pfv::run_gradient_flow(config.run, config.physics, solute, initial);

  pfv::write_energy_log_csv(result.log, out_prefix + "_energy.csv");
  pfv::Checkpoint cp;
  cp.phi = result.phi;
  cp.epsilon = config.run.epsilon;
  cp.step = result.steps;
  cp.scheme = config.run.scheme;
  pfv::write_checkpoint(cp, out_prefix + "_phi.bin");

  const pfv::EnergyBreakdown e = result.log.back().energy;
  std::printf("steps %ld  converged %d  F_tot %s  volume %s\n", result.steps,
              result.converged ? 1 : 0, pfv::format_double(e.f_tot).c_str(),
              pfv::format_double(pfv::solvent_excluded_volume(result.phi)).c_str());
  return result.converged ? kExitOk : kExitNumerical;
}

int cmd_radial(const std::vector<double>& qs, const std::vector<double>& epsilons,
               pfv::RadialConfig base, const std::string& out) {
  const pfv::PhysicalParams p = pfv::default_params();
  std::vector<pfv::RadialRow> rows;
  for (double q : qs) {
    const pfv::SharpResult sharp = pfv::sharp_oracle(q, p);
    rows.push_back({q, 0.0, sharp.r_min, sharp.f_surf, sharp.f_vdw, sharp.f_ele, sharp.f_tot});
    for (double epsilon : epsilons) {
      pfv::RadialConfig config = base;
      config.epsilon = epsilon;
      const auto [phi, energy] = pfv::radial_flow(config, q, p);
      rows.push_back({q, epsilon, pfv::interface_radius(phi), energy.f_surf, energy.f_vdw,
                      energy.f_ele, energy.f_tot});
    }
  }
  pfv::write_radial_csv(rows, out);
  std::printf("wrote %zu rows to %s\n", rows.size(), out.c_str());
  return kExitOk;
}

int cmd_sharp(double q) {
  const pfv::SharpResult r = pfv::sharp_oracle(q, pfv::default_params());
  std::printf("R_min %s  F_surf %s  F_vdW %s  F_elec %s  F_tot %s\n",
              pfv::format_double(r.r_min).c_str(), pfv::format_double(r.f_surf).c_str(),
              pfv::format_double(r.f_vdw).c_str(), pfv::format_double(r.f_ele).c_str(),
              pfv::format_double(r.f_tot).c_str());
  return kExitOk;
}

double final_energy(const pfv::FullConfig& config, pfv::Scheme scheme, double dt, double t_end) {
  pfv::FullConfig c = config;
  c.run.scheme = scheme;
  c.run.dt = dt;
  c.run.tol = 0.0;  // fixed horizon
  c.run.max_steps = static_cast<long>(t_end / dt + 0.5);
  c.run.log_every = c.run.max_steps;
  const pfv::SoluteConfig solute = pfv::build_solute(c.solute, c.physics);
  const pfv::RunResult result =
      pfv::run_gradient_flow(c.run, c.physics, solute, build_initial(c));
  return result.log.back().energy.f_tot;
}

int cmd_rates(const std::string& scheme_arg, double t_end, const std::string& dt_list,
              double benchmark_dt, const std::string& config_path, bool preset,
              const std::string& out) {
  pfv::FullConfig config;
  if (!config_path.empty()) config = pfv::load_config(config_path);
  if (preset || config_path.empty()) {
    apply_two_plate_preset(config);
    if (config_path.empty()) config.run.nx = config.run.ny = config.run.nz = 64;
  }

  const std::vector<double> dts = parse_dt_list(dt_list);
  std::vector<pfv::Scheme> schemes;
  if (scheme_arg == "all") {
    schemes = {pfv::Scheme::etd1rk, pfv::Scheme::etd2rk, pfv::Scheme::etd4rk};
  } else {
    pfv::Scheme s;
    if (!pfv::parse_scheme(scheme_arg, s)) {
      throw CLI::ValidationError("--scheme", "expected etd1rk, etd2rk, etd4rk, or all");
    }
    schemes = {s};
  }

  const double benchmark = final_energy(config, pfv::Scheme::etd4rk, benchmark_dt, t_end);
  std::vector<pfv::SchemeEnergies> energies;
  for (pfv::Scheme s : schemes) {
    pfv::SchemeEnergies se;
    se.scheme = pfv::to_string(s);
    for (double dt : dts) se.by_dt.emplace_back(dt, final_energy(config, s, dt, t_end));
    energies.push_back(se);
  }
  const std::vector<pfv::RateRow> rows = pfv::rates_report(energies, benchmark);
  pfv::write_rates_csv(rows, out);
  std::printf("benchmark %s; wrote %zu rows to %s\n", pfv::format_double(benchmark).c_str(),
              rows.size(), out.c_str());
  return kExitOk;
}

int cmd_pmf(const std::string& config_path, bool preset, std::vector<double> d_values,
            const std::string& branch_arg, const std::string& out) {
  pfv::FullConfig config = pfv::load_config(config_path);
  if (preset) apply_two_plate_preset(config);
  if (config.solute.kind != pfv::SoluteSpec::Kind::plates) {
    throw std::invalid_argument("pmf requires a plates solute");
  }
  if (d_values.empty()) {
    for (double d = 4.0; d <= 24.0; d += 2.0) d_values.push_back(d);
  }
  pfv::InitialCondition::Kind branch;
  if (!pfv::parse_initial_kind(branch_arg, branch)) {
    throw CLI::ValidationError("--branch", "expected loose_box or tight_boxes");
  }
  const std::vector<pfv::PmfPoint> curve =
      pfv::pmf_curve(d_values, config.run, config.physics, config.solute, branch);
  pfv::write_pmf_csv(curve, out);
  bool all_converged = true;
  for (const pfv::PmfPoint& pt : curve) all_converged = all_converged && pt.converged;
  std::printf("wrote %zu points to %s; crossover %s A\n", curve.size(), out.c_str(),
              pfv::format_double(pfv::crossover_distance(curve)).c_str());
  return all_converged ? kExitOk : kExitNumerical;
}

int cmd_export(const std::string& checkpoint_path, const std::string& out) {
  const pfv::Checkpoint cp = pfv::read_checkpoint(checkpoint_path);
  pfv::export_vtk(cp.phi, out);
  std::printf("wrote %s\n", out.c_str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Diffuse-interface solvation free-energy minimizer"};
  app.require_subcommand(1);

  std::string config_path, out_prefix = "run", out_csv;
  bool preset = false;

  CLI::App* run = app.add_subcommand("run", "3D gradient flow from a config file");
  run->add_option("--config", config_path, "configuration file")->required();
  run->add_flag("--preset-paper-two-plate,--preset", preset,
                "override with the 256^3, L=18, eps=0.5, dt=0.05 two-plate setup");
  run->add_option("--out", out_prefix, "output prefix for the energy log and checkpoint");

  std::vector<double> qs{0.0, 0.5, 1.0, 1.5, 2.0};
  std::vector<double> radial_eps{0.2, 0.05};
  pfv::RadialConfig radial_base;
  CLI::App* radial = app.add_subcommand("radial", "one-ion radial sweep table");
  radial->add_option("--Q", qs, "ion charges [e]");
  radial->add_option("--epsilon", radial_eps, "interface widths [A]");
  radial->add_option("--dr", radial_base.dr, "radial mesh size [A]");
  radial->add_option("--dt", radial_base.dt, "time step");
  radial->add_option("--tol", radial_base.tol, "stopping tolerance on |dF|/dt");
  std::string radial_out = "radial.csv";
  radial->add_option("--out", radial_out, "output CSV");

  double sharp_q = 1.0;
  CLI::App* sharp = app.add_subcommand("sharp", "sharp-interface one-ion oracle");
  sharp->add_option("--Q", sharp_q, "ion charge [e]")->required();

  std::string rates_scheme = "all", dt_list = "1e-1:halve:7", rates_out = "rates.csv";
  double t_end = 1.0, benchmark_dt = 1e-4;
  CLI::App* rates = app.add_subcommand("rates", "fixed-horizon convergence study");
  rates->add_option("--scheme", rates_scheme, "etd1rk, etd2rk, etd4rk, or all");
  rates->add_option("--t-end", t_end, "integration horizon");
  rates->add_option("--dt-list", dt_list, "START:halve:COUNT");
  rates->add_option("--benchmark-dt", benchmark_dt, "benchmark step size (etd4rk)");
  rates->add_option("--config", config_path, "configuration file (default: 64^3 two-plate)");
  rates->add_flag("--preset-paper-two-plate,--preset", preset, "use the 256^3 preset");
  rates->add_option("--out", rates_out, "output CSV");

  std::vector<double> d_values;
  std::string branch = "loose_box", pmf_out = "pmf.csv";
  CLI::App* pmf = app.add_subcommand("pmf", "plate-separation free-energy curve");
  pmf->add_option("--config", config_path, "configuration file")->required();
  pmf->add_flag("--preset-paper-two-plate,--preset", preset, "use the 256^3 preset");
  pmf->add_option("--d", d_values, "separations [A] (default 4..24 step 2)");
  pmf->add_option("--branch", branch, "loose_box or tight_boxes");
  pmf->add_option("--out", pmf_out, "output CSV");

  std::string checkpoint_path, vtk_out = "phi.vtk";
  CLI::App* exp = app.add_subcommand("export", "checkpoint to legacy structured-points file");
  exp->add_option("--checkpoint", checkpoint_path, "checkpoint path")->required();
  exp->add_option("--out", vtk_out, "output file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (run->parsed()) return cmd_run(config_path, preset, out_prefix);
    if (radial->parsed()) return cmd_radial(qs, radial_eps, radial_base, radial_out);
    if (sharp->parsed()) return cmd_sharp(sharp_q);
    if (rates->parsed())
      return cmd_rates(rates_scheme, t_end, dt_list, benchmark_dt, config_path, preset, rates_out);
    if (pmf->parsed()) return cmd_pmf(config_path, preset, d_values, branch, pmf_out);
    if (exp->parsed()) return cmd_export(checkpoint_path, vtk_out);
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return kExitNumerical;
  }
  return kExitUsage;
}
