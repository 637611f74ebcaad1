// Two-chart parametrization of the sphere. Chart A holds the coordinate
// z = x + iy on the square [-(1+eps), 1+eps]^2, chart B the coordinate
// w = 1/z on the same square. A sample is owned by chart A when |z| <= 1 and
// by chart B when |w| < 1, so the owned sets partition the sphere. Samples
// outside the owned disk stay on the grid for finite-difference stencils.
//
// Both charts are positively oriented (w = 1/z is holomorphic) and the
// complex structure acts by J d/dx = d/dy in each.
#pragma once

#include <cstddef>
#include <vector>

#include "hpn/quat.hpp"

namespace hpn {

struct ChartGrid {
  int n_side = 128;
  double eps = 0.1;

  ChartGrid() = default;
  explicit ChartGrid(int n, double overlap = 0.1) : n_side(n), eps(overlap) {}

  double lo() const { return -(1.0 + eps); }
  double h() const { return 2.0 * (1.0 + eps) / (n_side - 1); }
  double coord(int i) const { return lo() + i * h(); }
  std::size_t samples() const { return static_cast<std::size_t>(n_side) * n_side; }
  std::size_t index(int i, int j) const { return static_cast<std::size_t>(j) * n_side + i; }
  Cd zeta(int i, int j) const { return {coord(i), coord(j)}; }

  bool owned(int chart, int i, int j) const {
    const double r2 = coord(i) * coord(i) + coord(j) * coord(j);
    return chart == 0 ? (r2 <= 1.0) : (r2 < 1.0);
  }
  // quadrature weight; the owned flags are a partition of unity over S^2
  double weight(int chart, int i, int j) const { return owned(chart, i, j) ? h() * h() : 0.0; }

  // sample nearest to the chart-A origin (deterministic tie-break: low index)
  int center_index() const;
};

inline constexpr int kMaxGridComps = 64;

// Flat grid of quaternion blocks, sample-major: block s at data + s*comps.
struct QGrid {
  int comps = 0;
  std::vector<Quat> q;

  QGrid() = default;
  QGrid(const ChartGrid& g, int c) : comps(c), q(g.samples() * static_cast<std::size_t>(c)) {}
  Quat* at(std::size_t s) { return q.data() + s * static_cast<std::size_t>(comps); }
  const Quat* at(std::size_t s) const { return q.data() + s * static_cast<std::size_t>(comps); }
  double* raw() { return reinterpret_cast<double*>(q.data()); }
  const double* raw() const { return reinterpret_cast<const double*>(q.data()); }
  std::size_t doubles() const { return q.size() * 4; }
  bool empty() const { return q.empty(); }
};

// Fourth-order first derivative along x or y (centered inside, one-sided in
// the two-cell boundary band of the square).
void deriv_x(const ChartGrid& g, const QGrid& in, QGrid& out);
void deriv_y(const ChartGrid& g, const QGrid& in, QGrid& out);

// Bicubic (cubic-Lagrange) interpolation of a grid at a chart point.
void interpolate(const ChartGrid& g, const QGrid& in, double x, double y, Quat* out);

// Trapezoidal circulation of the 1-form (fx, fy) around each grid cell,
// divided by the cell area: a second-order discrete exterior derivative.
// Output comps match the input; cell (i, j) is stored at sample (i, j),
// rows/cols n_side-1.
void cell_circulation(const ChartGrid& g, const QGrid& fx, const QGrid& fy, QGrid& out);

// Least-squares potential of a closed 1-form on the full chart square:
// minimizes sum over grid edges of |u_j - u_i - integral of omega|^2 with
// fourth-order edge quadrature; the normal equations (a Neumann Laplacian)
// are solved exactly by a cosine-basis diagonalization. The mean-zero
// solution is returned; callers fix the constant.
struct PotentialResult {
  QGrid u;
  double fit_residual_max = 0;  // max edge mismatch after the solve
};
PotentialResult integrate_one_form(const ChartGrid& g, const QGrid& fx, const QGrid& fy);

// Circulation of (fx, fy) along the square ring `margin` cells in from the
// grid boundary (trapezoid rule); a monodromy check.
void ring_circulation(const ChartGrid& g, const QGrid& fx, const QGrid& fy, int margin,
                      Quat* out);

}  // namespace hpn
