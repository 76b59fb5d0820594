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

#include "pfvism/io.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace pfv {

namespace {

std::string trim(const std::string& s) {
  const std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

[[noreturn]] void bad_line(int line_no, const std::string& line, const std::string& why) {
  throw std::invalid_argument("config line " + std::to_string(line_no) + ": " + why + ": " + line);
}

double parse_double(const std::string& v, int line_no, const std::string& line) {
  std::size_t used = 0;
  double out = 0.0;
  try {
    out = std::stod(v, &used);
  } catch (const std::exception&) {
    bad_line(line_no, line, "expected a number");
  }
  if (used != v.size()) bad_line(line_no, line, "trailing characters after number");
  return out;
}

long parse_long(const std::string& v, int line_no, const std::string& line) {
  std::size_t used = 0;
  long out = 0;
  try {
    out = std::stol(v, &used);
  } catch (const std::exception&) {
    bad_line(line_no, line, "expected an integer");
  }
  if (used != v.size()) bad_line(line_no, line, "trailing characters after integer");
  return out;
}

std::string to_string(SoluteSpec::Kind k) {
  switch (k) {
    case SoluteSpec::Kind::none: return "none";
    case SoluteSpec::Kind::single_ion: return "single_ion";
    case SoluteSpec::Kind::plates: return "plates";
    case SoluteSpec::Kind::single_plate: return "single_plate";
  }
  return "none";
}

bool parse_solute_kind(const std::string& text, SoluteSpec::Kind& out) {
  if (text == "none") out = SoluteSpec::Kind::none;
  else if (text == "single_ion") out = SoluteSpec::Kind::single_ion;
  else if (text == "plates") out = SoluteSpec::Kind::plates;
  else if (text == "single_plate") out = SoluteSpec::Kind::single_plate;
  else return false;
  return true;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed for " + path);
}

void append_le_double(std::string& buf, double v) {
  std::uint64_t bits;
  std::memcpy(&bits, &v, sizeof bits);
  if constexpr (std::endian::native == std::endian::big) {
    bits = __builtin_bswap64(bits);
  }
  char raw[8];
  std::memcpy(raw, &bits, 8);
  buf.append(raw, 8);
}

double read_le_double(const char* raw) {
  std::uint64_t bits;
  std::memcpy(&bits, raw, 8);
  if constexpr (std::endian::native == std::endian::big) {
    bits = __builtin_bswap64(bits);
  }
  double v;
  std::memcpy(&v, &bits, sizeof v);
  return v;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

FullConfig parse_config_text(const std::string& text) {
  FullConfig config;
  std::istringstream in(text);
  std::string line;
  std::string section;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (t.front() == '[') {
      if (t.back() != ']') bad_line(line_no, line, "unterminated section header");
      section = t.substr(1, t.size() - 2);
      if (section != "physics" && section != "grid" && section != "solver" &&
          section != "solute") {
        bad_line(line_no, line, "unknown section");
      }
      continue;
    }
    const std::size_t eq = t.find('=');
    if (eq == std::string::npos) bad_line(line_no, line, "expected key=value");
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    if (section.empty()) bad_line(line_no, line, "key before any section");

    if (section == "physics") {
      PhysicalParams& p = config.physics;
      if (key == "gamma0") p.gamma0 = parse_double(value, line_no, line);
      else if (key == "rho_w") p.rho_w = parse_double(value, line_no, line);
      else if (key == "eps_lj") p.eps_lj = parse_double(value, line_no, line);
      else if (key == "sigma_lj") p.sigma_lj = parse_double(value, line_no, line);
      else if (key == "r_cut_factor") p.r_cut_factor = parse_double(value, line_no, line);
      else if (key == "eps0") p.eps0 = parse_double(value, line_no, line);
      else if (key == "eps_m") p.eps_m = parse_double(value, line_no, line);
      else if (key == "eps_w") p.eps_w = parse_double(value, line_no, line);
      else bad_line(line_no, line, "unknown key in [physics]");
    } else if (section == "grid") {
      RunConfig& r = config.run;
      if (key == "lx") r.lx = parse_double(value, line_no, line);
      else if (key == "ly") r.ly = parse_double(value, line_no, line);
      else if (key == "lz") r.lz = parse_double(value, line_no, line);
      else if (key == "nx") r.nx = static_cast<int>(parse_long(value, line_no, line));
      else if (key == "ny") r.ny = static_cast<int>(parse_long(value, line_no, line));
      else if (key == "nz") r.nz = static_cast<int>(parse_long(value, line_no, line));
      else bad_line(line_no, line, "unknown key in [grid]");
    } else if (section == "solver") {
      RunConfig& r = config.run;
      if (key == "epsilon") r.epsilon = parse_double(value, line_no, line);
      else if (key == "dt") r.dt = parse_double(value, line_no, line);
      else if (key == "max_steps") r.max_steps = parse_long(value, line_no, line);
      else if (key == "tol") r.tol = parse_double(value, line_no, line);
      else if (key == "scheme") {
        if (!parse_scheme(value, r.scheme)) bad_line(line_no, line, "unknown scheme");
      } else if (key == "coupling") {
        if (!parse_coupling(value, r.coupling)) bad_line(line_no, line, "unknown coupling");
      } else if (key == "kappa") r.kappa = parse_double(value, line_no, line);
      else if (key == "mu") r.mu = parse_double(value, line_no, line);
      else if (key == "nu_safety") r.nu_safety = parse_double(value, line_no, line);
      else if (key == "log_every") r.log_every = parse_long(value, line_no, line);
      else if (key == "initial_kind") {
        if (!parse_initial_kind(value, r.initial.kind)) {
          bad_line(line_no, line, "unknown initial kind");
        }
      } else if (key == "sphere_radius") r.initial.sphere_radius = parse_double(value, line_no, line);
      else if (key == "smoothing") r.initial.smoothing = parse_double(value, line_no, line);
      else if (key == "checkpoint_path") r.initial.checkpoint_path = value;
      else bad_line(line_no, line, "unknown key in [solver]");
    } else {
      SoluteSpec& s = config.solute;
      if (key == "kind") {
        if (!parse_solute_kind(value, s.kind)) bad_line(line_no, line, "unknown solute kind");
      } else if (key == "charge") s.charge = parse_double(value, line_no, line);
      else if (key == "n_p") s.n_p = static_cast<int>(parse_long(value, line_no, line));
      else if (key == "d0") s.d0 = parse_double(value, line_no, line);
      else if (key == "d") s.d = parse_double(value, line_no, line);
      else if (key == "q1") s.q1 = parse_double(value, line_no, line);
      else if (key == "q2") s.q2 = parse_double(value, line_no, line);
      else bad_line(line_no, line, "unknown key in [solute]");
    }
  }
  return config;
}

FullConfig load_config(const std::string& path) { return parse_config_text(read_file(path)); }

std::string format_config_text(const FullConfig& config) {
  const PhysicalParams& p = config.physics;
  const RunConfig& r = config.run;
  const SoluteSpec& s = config.solute;
  std::ostringstream out;
  out << "[physics]\n"
      << "gamma0 = " << format_double(p.gamma0) << "\n"
      << "rho_w = " << format_double(p.rho_w) << "\n"
      << "eps_lj = " << format_double(p.eps_lj) << "\n"
      << "sigma_lj = " << format_double(p.sigma_lj) << "\n"
      << "r_cut_factor = " << format_double(p.r_cut_factor) << "\n"
      << "eps0 = " << format_double(p.eps0) << "\n"
      << "eps_m = " << format_double(p.eps_m) << "\n"
      << "eps_w = " << format_double(p.eps_w) << "\n\n"
      << "[grid]\n"
      << "lx = " << format_double(r.lx) << "\n"
      << "ly = " << format_double(r.ly) << "\n"
      << "lz = " << format_double(r.lz) << "\n"
      << "nx = " << r.nx << "\n"
      << "ny = " << r.ny << "\n"
      << "nz = " << r.nz << "\n\n"
      << "[solver]\n"
      << "epsilon = " << format_double(r.epsilon) << "\n"
      << "dt = " << format_double(r.dt) << "\n"
      << "max_steps = " << r.max_steps << "\n"
      << "tol = " << format_double(r.tol) << "\n"
      << "scheme = " << to_string(r.scheme) << "\n"
      << "coupling = " << to_string(r.coupling) << "\n"
      << "kappa = " << format_double(r.kappa) << "\n"
      << "mu = " << format_double(r.mu) << "\n"
      << "nu_safety = " << format_double(r.nu_safety) << "\n"
      << "log_every = " << r.log_every << "\n"
      << "initial_kind = " << to_string(r.initial.kind) << "\n"
      << "sphere_radius = " << format_double(r.initial.sphere_radius) << "\n"
      << "smoothing = " << format_double(r.initial.smoothing) << "\n";
  if (!r.initial.checkpoint_path.empty()) {
    out << "checkpoint_path = " << r.initial.checkpoint_path << "\n";
  }
  out << "\n[solute]\n"
      << "kind = " << to_string(s.kind) << "\n"
      << "charge = " << format_double(s.charge) << "\n"
      << "n_p = " << s.n_p << "\n"
      << "d0 = " << format_double(s.d0) << "\n"
      << "d = " << format_double(s.d) << "\n"
      << "q1 = " << format_double(s.q1) << "\n"
      << "q2 = " << format_double(s.q2) << "\n";
  return out.str();
}

void save_config(const FullConfig& config, const std::string& path) {
  write_file(path, format_config_text(config));
}

void write_energy_log_csv(const std::vector<LogEntry>& log, const std::string& path) {
  std::ostringstream out;
  out << "step,time,F_surf,F_vdw,F_ele,F_tot\n";
  for (const LogEntry& e : log) {
    out << e.step << ',' << format_double(e.time) << ',' << format_double(e.energy.f_surf) << ','
        << format_double(e.energy.f_vdw) << ',' << format_double(e.energy.f_ele) << ','
        << format_double(e.energy.f_tot) << '\n';
  }
  write_file(path, out.str());
}

void write_radial_csv(const std::vector<RadialRow>& rows, const std::string& path) {
  std::ostringstream out;
  out << "Q,epsilon,R_min,F_surf,F_vdW,F_elec,F_tot\n";
  for (const RadialRow& r : rows) {
    out << format_double(r.q) << ',' << format_double(r.epsilon) << ',' << format_double(r.r_min)
        << ',' << format_double(r.f_surf) << ',' << format_double(r.f_vdw) << ','
        << format_double(r.f_ele) << ',' << format_double(r.f_tot) << '\n';
  }
  write_file(path, out.str());
}

void write_pmf_csv(const std::vector<PmfPoint>& curve, const std::string& path) {
  std::ostringstream out;
  out << "d,G_geo,G_vdW,G_ele,G_tot,branch,converged\n";
  for (const PmfPoint& pt : curve) {
    out << format_double(pt.d) << ',' << format_double(pt.g_geo) << ',' << format_double(pt.g_vdw)
        << ',' << format_double(pt.g_ele) << ',' << format_double(pt.g_tot) << ',' << pt.branch
        << ',' << (pt.converged ? 1 : 0) << '\n';
  }
  write_file(path, out.str());
}

void write_checkpoint(const Checkpoint& cp, const std::string& path) {
  std::string raw;
  raw.reserve(cp.phi.data.size() * 8);
  for (double v : cp.phi.data) append_le_double(raw, v);
  write_file(path, raw);

  const GridSpec& g = cp.phi.grid;
  std::ostringstream meta;
  meta << "lx = " << format_double(g.lx) << "\n"
       << "ly = " << format_double(g.ly) << "\n"
       << "lz = " << format_double(g.lz) << "\n"
       << "nx = " << g.nx << "\n"
       << "ny = " << g.ny << "\n"
       << "nz = " << g.nz << "\n"
       << "epsilon = " << format_double(cp.epsilon) << "\n"
       << "step = " << cp.step << "\n"
       << "scheme = " << to_string(cp.scheme) << "\n";
  write_file(path + ".meta", meta.str());
}

Checkpoint read_checkpoint(const std::string& path) {
  const std::string meta_text = read_file(path + ".meta");
  Checkpoint cp;
  GridSpec g;
  std::istringstream meta(meta_text);
  std::string line;
  int line_no = 0;
  while (std::getline(meta, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty()) continue;
    const std::size_t eq = t.find('=');
    if (eq == std::string::npos) bad_line(line_no, line, "expected key=value in checkpoint sidecar");
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    if (key == "lx") g.lx = parse_double(value, line_no, line);
    else if (key == "ly") g.ly = parse_double(value, line_no, line);
    else if (key == "lz") g.lz = parse_double(value, line_no, line);
    else if (key == "nx") g.nx = static_cast<int>(parse_long(value, line_no, line));
    else if (key == "ny") g.ny = static_cast<int>(parse_long(value, line_no, line));
    else if (key == "nz") g.nz = static_cast<int>(parse_long(value, line_no, line));
    else if (key == "epsilon") cp.epsilon = parse_double(value, line_no, line);
    else if (key == "step") cp.step = parse_long(value, line_no, line);
    else if (key == "scheme") {
      if (!parse_scheme(value, cp.scheme)) bad_line(line_no, line, "unknown scheme in sidecar");
    } else bad_line(line_no, line, "unknown key in checkpoint sidecar");
  }
  if (g.nx <= 0 || g.ny <= 0 || g.nz <= 0) {
    throw std::runtime_error("checkpoint sidecar missing grid dimensions: " + path + ".meta");
  }

  const std::string raw = read_file(path);
  if (raw.size() != g.size() * 8) {
    throw std::runtime_error("checkpoint size mismatch: " + path + " holds " +
                             std::to_string(raw.size()) + " bytes, metadata implies " +
                             std::to_string(g.size() * 8));
  }
  cp.phi = ScalarField3D(g);
  for (std::size_t m = 0; m < cp.phi.data.size(); ++m) {
    cp.phi.data[m] = read_le_double(raw.data() + m * 8);
  }
  return cp;
}

void export_vtk(const ScalarField3D& phi, const std::string& path) {
  const GridSpec& g = phi.grid;
  std::ostringstream out;
  out << "# vtk DataFile Version 3.0\n"
      << "phi\n"
      << "ASCII\n"
      << "DATASET STRUCTURED_POINTS\n"
      << "DIMENSIONS " << g.nx << ' ' << g.ny << ' ' << g.nz << "\n"
      << "ORIGIN " << format_double(-g.lx) << ' ' << format_double(-g.ly) << ' '
      << format_double(-g.lz) << "\n"
      << "SPACING " << format_double(g.hx()) << ' ' << format_double(g.hy()) << ' '
      << format_double(g.hz()) << "\n"
      << "POINT_DATA " << g.size() << "\n"
      << "SCALARS phi double 1\n"
      << "LOOKUP_TABLE default\n";
  for (double v : phi.data) out << format_double(v) << '\n';
  write_file(path, out.str());
}

std::vector<RateRow> rates_report(const std::vector<SchemeEnergies>& energies, double benchmark) {
  std::vector<RateRow> rows;
  for (const SchemeEnergies& s : energies) {
    if (s.by_dt.size() < 3) {
      throw std::invalid_argument("rates_report: scheme " + s.scheme +
                                  " needs at least 3 step sizes");
    }
    double prev_error = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t k = 0; k < s.by_dt.size(); ++k) {
      const auto [dt, energy] = s.by_dt[k];
      if (k > 0) {
        const double expected = 0.5 * s.by_dt[k - 1].first;
        if (std::abs(dt - expected) > 1e-9 * expected) {
          throw std::invalid_argument("rates_report: scheme " + s.scheme +
                                      " step sizes are not a halving sequence");
        }
      }
      RateRow row;
      row.scheme = s.scheme;
      row.dt = dt;
      row.energy = energy;
      row.error = std::abs(energy - benchmark);
      row.rate = k == 0 ? std::numeric_limits<double>::quiet_NaN()
                        : std::log2(prev_error / row.error);
      prev_error = row.error;
      rows.push_back(row);
    }
  }
  return rows;
}

void write_rates_csv(const std::vector<RateRow>& rows, const std::string& path) {
  std::ostringstream out;
  out << "scheme,dt,energy,error,rate\n";
  for (const RateRow& r : rows) {
    out << r.scheme << ',' << format_double(r.dt) << ',' << format_double(r.energy) << ','
        << format_double(r.error) << ',';
    if (!std::isnan(r.rate)) out << format_double(r.rate);
    out << '\n';
  }
  write_file(path, out.str());
}

}  // namespace pfv
