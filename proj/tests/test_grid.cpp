#include <doctest.h>

#include <cmath>

#include "hpn/chart_grid.hpp"
#include "hpn/rng.hpp"

using namespace hpn;

namespace {

// scalar test field and exact gradient
double fval(double x, double y) { return std::sin(1.3 * x) * std::cos(0.9 * y) + 0.2 * x * y; }
double fdx(double x, double y) { return 1.3 * std::cos(1.3 * x) * std::cos(0.9 * y) + 0.2 * y; }
double fdy(double x, double y) { return -0.9 * std::sin(1.3 * x) * std::sin(0.9 * y) + 0.2 * x; }

QGrid fill_scalar(const ChartGrid& g, double (*fn)(double, double)) {
  QGrid out(g, 1);
  for (int j = 0; j < g.n_side; ++j)
    for (int i = 0; i < g.n_side; ++i) out.at(g.index(i, j))[0] = {fn(g.coord(i), g.coord(j)), 0, 0, 0};
  return out;
}

double max_err(const ChartGrid& g, const QGrid& got, double (*fn)(double, double)) {
  double worst = 0;
  for (int j = 0; j < g.n_side; ++j)
    for (int i = 0; i < g.n_side; ++i)
      worst = std::max(worst, std::abs(got.at(g.index(i, j))[0].w - fn(g.coord(i), g.coord(j))));
  return worst;
}

}  // namespace

TEST_SUITE("grid") {

TEST_CASE("ownership partitions the sphere") {
  ChartGrid g(64);
  for (int j = 0; j < g.n_side; ++j)
    for (int i = 0; i < g.n_side; ++i) {
      const double r2 = std::norm(g.zeta(i, j));
      const bool a = g.owned(0, i, j), b = g.owned(1, i, j);
      // the same square parametrizes both charts; a point of the sphere with
      // 1/(1+eps) <= |z| <= 1+eps appears in both squares and exactly one
      // owns it
      if (r2 <= 1.0) CHECK(a);
      if (r2 < 1.0) CHECK(b == (r2 < 1.0));
      CHECK((g.weight(0, i, j) == 0.0 || g.weight(0, i, j) == g.h() * g.h()));
    }
}

TEST_CASE("derivative stencils are fourth order") {
  double e1, e2;
  {
    ChartGrid g(64);
    QGrid f = fill_scalar(g, fval), dx, dy;
    deriv_x(g, f, dx);
    deriv_y(g, f, dy);
    e1 = std::max(max_err(g, dx, fdx), max_err(g, dy, fdy));
  }
  {
    ChartGrid g(128);
    QGrid f = fill_scalar(g, fval), dx, dy;
    deriv_x(g, f, dx);
    deriv_y(g, f, dy);
    e2 = std::max(max_err(g, dx, fdx), max_err(g, dy, fdy));
  }
  CHECK(e1 < 1e-5);
  const double order = std::log2(e1 / e2);
  CHECK(order > 3.4);
}

TEST_CASE("interpolation reproduces smooth data") {
  ChartGrid g(96);
  QGrid f = fill_scalar(g, fval);
  Rng rng(3);
  for (int t = 0; t < 50; ++t) {
    const double x = 1.8 * rng.uniform() - 0.9;
    const double y = 1.8 * rng.uniform() - 0.9;
    Quat v;
    interpolate(g, f, x, y, &v);
    CHECK(std::abs(v.w - fval(x, y)) < 2e-7);
  }
}

TEST_CASE("cell circulation of a gradient vanishes at second order") {
  ChartGrid g(64);
  QGrid fx = fill_scalar(g, fdx), fy = fill_scalar(g, fdy), circ;
  cell_circulation(g, fx, fy, circ);
  double worst = 0;
  for (int j = 0; j + 1 < g.n_side; ++j)
    for (int i = 0; i + 1 < g.n_side; ++i)
      worst = std::max(worst, circ.at(g.index(i, j))[0].norm());
  CHECK(worst < 2e-4);

  ChartGrid g2(128);
  QGrid fx2 = fill_scalar(g2, fdx), fy2 = fill_scalar(g2, fdy), circ2;
  cell_circulation(g2, fx2, fy2, circ2);
  double worst2 = 0;
  for (int j = 0; j + 1 < g2.n_side; ++j)
    for (int i = 0; i + 1 < g2.n_side; ++i)
      worst2 = std::max(worst2, circ2.at(g2.index(i, j))[0].norm());
  const double order = std::log2(worst / worst2);
  CHECK(order > 1.6);
  CHECK(order < 2.6);
}

TEST_CASE("potential reconstruction recovers an exact primitive") {
  ChartGrid g(96);
  QGrid fx = fill_scalar(g, fdx), fy = fill_scalar(g, fdy);
  PotentialResult pr = integrate_one_form(g, fx, fy);
  // compare to f up to a constant
  const std::size_t s0 = g.index(g.center_index(), g.center_index());
  const double shift = fval(g.coord(g.center_index()), g.coord(g.center_index())) - pr.u.at(s0)[0].w;
  double worst = 0;
  for (int j = 0; j < g.n_side; ++j)
    for (int i = 0; i < g.n_side; ++i)
      worst = std::max(worst, std::abs(pr.u.at(g.index(i, j))[0].w + shift - fval(g.coord(i), g.coord(j))));
  CHECK(worst < 5e-7);
  CHECK(pr.fit_residual_max < 5e-7);
}

TEST_CASE("potential reconstruction converges at fourth order") {
  double errs[2];
  int idx = 0;
  for (int n : {48, 96}) {
    ChartGrid g(n);
    QGrid fx = fill_scalar(g, fdx), fy = fill_scalar(g, fdy);
    PotentialResult pr = integrate_one_form(g, fx, fy);
    const std::size_t s0 = g.index(g.center_index(), g.center_index());
    const double shift = fval(g.coord(g.center_index()), g.coord(g.center_index())) - pr.u.at(s0)[0].w;
    double worst = 0;
    for (int j = 0; j < g.n_side; ++j)
      for (int i = 0; i < g.n_side; ++i)
        worst = std::max(worst, std::abs(pr.u.at(g.index(i, j))[0].w + shift - fval(g.coord(i), g.coord(j))));
    errs[idx++] = worst;
  }
  CHECK(std::log2(errs[0] / errs[1]) > 3.0);
}

TEST_CASE("ring circulation of a gradient is small") {
  ChartGrid g(96);
  QGrid fx = fill_scalar(g, fdx), fy = fill_scalar(g, fdy);
  Quat circ;
  ring_circulation(g, fx, fy, 3, &circ);
  CHECK(circ.norm() < 1e-4);
}

}  // TEST_SUITE
