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

#include "pfvism/params.hpp"

#include <cmath>
#include <numbers>

namespace pfv {

PhysicalParams default_params() { return PhysicalParams{}; }

double cfa_prefactor(const PhysicalParams& p) {
  const double pi = std::numbers::pi;
  return 1.0 / (32.0 * pi * pi * p.eps0) * (1.0 / p.eps_w - 1.0 / p.eps_m);
}

std::string to_string(Scheme s) {
  switch (s) {
    case Scheme::etd1rk: return "ETD1RK";
    case Scheme::etd2rk: return "ETD2RK";
    case Scheme::etd4rk: return "ETD4RK";
  }
  return "?";
}

std::string to_string(Coupling c) {
  return c == Coupling::quartic ? "f_new" : "f_old";
}

bool parse_scheme(const std::string& text, Scheme& out) {
  if (text == "ETD1RK" || text == "etd1rk") { out = Scheme::etd1rk; return true; }
  if (text == "ETD2RK" || text == "etd2rk") { out = Scheme::etd2rk; return true; }
  if (text == "ETD4RK" || text == "etd4rk") { out = Scheme::etd4rk; return true; }
  return false;
}

bool parse_coupling(const std::string& text, Coupling& out) {
  if (text == "f_new" || text == "quartic") { out = Coupling::quartic; return true; }
  if (text == "f_old" || text == "quadratic") { out = Coupling::quadratic; return true; }
  return false;
}

std::string to_string(InitialCondition::Kind k) {
  switch (k) {
    case InitialCondition::Kind::loose_box: return "loose";
    case InitialCondition::Kind::tight_boxes: return "tight";
    case InitialCondition::Kind::sphere: return "sphere";
    case InitialCondition::Kind::from_checkpoint: return "checkpoint";
  }
  return "?";
}

bool parse_initial_kind(const std::string& text, InitialCondition::Kind& out) {
  using K = InitialCondition::Kind;
  if (text == "loose" || text == "loose_box") { out = K::loose_box; return true; }
  if (text == "tight" || text == "tight_boxes") { out = K::tight_boxes; return true; }
  if (text == "sphere") { out = K::sphere; return true; }
  if (text == "checkpoint") { out = K::from_checkpoint; return true; }
  return false;
}

std::vector<std::string> validate(const RunConfig& c) {
  std::vector<std::string> errors;
  auto check = [&](bool ok, const std::string& msg) {
    if (!ok) errors.push_back(msg);
  };
  check(c.lx > 0 && c.ly > 0 && c.lz > 0, "domain half-lengths must be positive");
  for (int n : {c.nx, c.ny, c.nz}) {
    if (n < 8) { errors.push_back("grid size must be at least 8"); break; }
  }
  for (int n : {c.nx, c.ny, c.nz}) {
    if (n % 2 != 0) { errors.push_back("grid size must be even"); break; }
  }
  check(c.epsilon > 0, "interface width must be positive");
  check(c.dt > 0, "time step must be positive");
  check(c.max_steps > 0, "max steps must be positive");
  check(std::isfinite(c.tol), "stopping tolerance must be finite (<= 0 disables stopping)");
  check(c.kappa >= 18.0, "kappa must be at least 18");
  check(c.mu >= 4.0, "mu must be at least 4");
  check(c.nu_safety >= 1.0, "nu safety factor must be at least 1");
  check(c.log_every > 0, "log cadence must be positive");
  return errors;
}

std::vector<std::string> validate(const PhysicalParams& p) {
  std::vector<std::string> errors;
  auto check = [&](bool ok, const std::string& msg) {
    if (!ok) errors.push_back(msg);
  };
  check(p.gamma0 > 0, "gamma0 must be positive");
  check(p.rho_w > 0, "rho_w must be positive");
  check(p.eps_lj > 0, "eps_lj must be positive");
  check(p.sigma_lj > 0, "sigma_lj must be positive");
  check(p.r_cut_factor > 0, "r_cut_factor must be positive");
  check(p.eps0 > 0, "eps0 must be positive");
  check(p.eps_m >= 1.0, "eps_m must be at least 1");
  check(p.eps_w > p.eps_m, "eps_w must exceed eps_m");
  return errors;
}

}  // namespace pfv
