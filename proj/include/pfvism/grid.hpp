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

#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

namespace pfv {

using Vec3 = std::array<double, 3>;

inline Vec3 operator+(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
inline Vec3 operator-(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
inline Vec3 operator*(double s, const Vec3& a) { return {s * a[0], s * a[1], s * a[2]}; }
inline double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

/// Uniform periodic grid over [-Lx,Lx] x [-Ly,Ly] x [-Lz,Lz].
/// Node (i,j,k) sits at (-Lx + i*hx, ...); fields are stored x-fastest.
struct GridSpec {
  double lx = 0.0, ly = 0.0, lz = 0.0;  // half-lengths [A]
  int nx = 0, ny = 0, nz = 0;

  double hx() const { return 2.0 * lx / nx; }
  double hy() const { return 2.0 * ly / ny; }
  double hz() const { return 2.0 * lz / nz; }
  double cell_volume() const { return hx() * hy() * hz(); }
  double domain_volume() const { return 8.0 * lx * ly * lz; }

  std::size_t size() const {
    return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny) * static_cast<std::size_t>(nz);
  }
  std::size_t index(int i, int j, int k) const {
    return static_cast<std::size_t>(i) + static_cast<std::size_t>(nx) * (static_cast<std::size_t>(j) + static_cast<std::size_t>(ny) * static_cast<std::size_t>(k));
  }
  Vec3 node(int i, int j, int k) const { return {-lx + i * hx(), -ly + j * hy(), -lz + k * hz()}; }

  bool operator==(const GridSpec&) const = default;
};

struct ScalarField3D {
  GridSpec grid;
  std::vector<double> data;

  ScalarField3D() = default;
  explicit ScalarField3D(const GridSpec& g, double fill = 0.0) : grid(g), data(g.size(), fill) {}

  double& operator()(int i, int j, int k) { return data[grid.index(i, j, k)]; }
  double operator()(int i, int j, int k) const { return data[grid.index(i, j, k)]; }
};

}  // namespace pfv
