#include "hpn/chart_grid.hpp"

#include <algorithm>
#include <cmath>

#include "hpn/simd.hpp"

namespace hpn {

int ChartGrid::center_index() const {
  int best = 0;
  double bv = std::abs(coord(0));
  for (int i = 1; i < n_side; ++i) {
    const double v = std::abs(coord(i));
    if (v < bv) {
      bv = v;
      best = i;
    }
  }
  return best;
}

namespace {

// f' stencils, error O(h^4)
constexpr double kC[5] = {1.0 / 12, -8.0 / 12, 0.0, 8.0 / 12, -1.0 / 12};          // offsets -2..2
constexpr double kF[5] = {-25.0 / 12, 48.0 / 12, -36.0 / 12, 16.0 / 12, -3.0 / 12};  // offsets 0..4
constexpr double kB1[5] = {-3.0 / 12, -10.0 / 12, 18.0 / 12, -6.0 / 12, 1.0 / 12};   // offsets -1..3

void deriv_axis(const ChartGrid& g, const QGrid& in, QGrid& out, bool along_x) {
  const int n = g.n_side;
  const int c = in.comps;
  out.comps = c;
  out.q.assign(in.q.size(), Quat{});
  const double invh = 1.0 / g.h();
  const std::size_t line_doc = static_cast<std::size_t>(c) * 4;  // doubles per sample
  const std::size_t stride = along_x ? line_doc : line_doc * static_cast<std::size_t>(n);
  double* o = out.raw();
  const double* a = in.raw();
  const std::size_t total = in.doubles();

  // interior: shifted whole-array saxpy, then fix the boundary bands
  for (int s = -2; s <= 2; ++s) {
    const double w = kC[s + 2] * invh;
    if (w == 0.0) continue;
    const std::size_t off = static_cast<std::size_t>(std::abs(s)) * stride;
    if (s < 0)
      simd::saxpy(w, a, o + off, total - off);
    else
      simd::saxpy(w, a + off, o, total - off);
  }

  auto fix_sample = [&](int i, int j) {
    const std::size_t s0 = g.index(i, j);
    const int pos = along_x ? i : j;
    const long step = along_x ? 1 : n;
    const bool low = pos <= 1;
    const double* coef = (pos == 0 || pos == n - 1) ? kF : kB1;
    const long base = (pos == 0 || pos == n - 1) ? 0 : -1;
    Quat acc[kMaxGridComps];
    for (int t = 0; t < c; ++t) acc[t] = Quat{};
    for (int t = 0; t < 5; ++t) {
      const long off = low ? (base + t) * step : -(base + t) * step;
      const Quat* src = in.at(static_cast<std::size_t>(static_cast<long>(s0) + off));
      const double w = (low ? coef[t] : -coef[t]) * invh;
      for (int q = 0; q < c; ++q) acc[q] += src[q] * w;
    }
    Quat* dst = out.at(s0);
    for (int q = 0; q < c; ++q) dst[q] = acc[q];
  };

  if (along_x) {
    for (int j = 0; j < n; ++j) {
      fix_sample(0, j);
      fix_sample(1, j);
      fix_sample(n - 2, j);
      fix_sample(n - 1, j);
    }
  } else {
    for (int i = 0; i < n; ++i) {
      fix_sample(i, 0);
      fix_sample(i, 1);
      fix_sample(i, n - 2);
      fix_sample(i, n - 1);
    }
  }
}

}  // namespace

void deriv_x(const ChartGrid& g, const QGrid& in, QGrid& out) { deriv_axis(g, in, out, true); }
void deriv_y(const ChartGrid& g, const QGrid& in, QGrid& out) { deriv_axis(g, in, out, false); }

void interpolate(const ChartGrid& g, const QGrid& in, double x, double y, Quat* out) {
  const int n = g.n_side;
  const double fx = (x - g.lo()) / g.h();
  const double fy = (y - g.lo()) / g.h();
  int i0 = static_cast<int>(std::floor(fx)) - 1;
  int j0 = static_cast<int>(std::floor(fy)) - 1;
  i0 = std::clamp(i0, 0, n - 4);
  j0 = std::clamp(j0, 0, n - 4);
  const double tx = fx - (i0 + 1), ty = fy - (j0 + 1);

  auto lagrange = [](double t, double* w) {
    // nodes at -1, 0, 1, 2
    w[0] = -t * (t - 1) * (t - 2) / 6.0;
    w[1] = (t + 1) * (t - 1) * (t - 2) / 2.0;
    w[2] = -(t + 1) * t * (t - 2) / 2.0;
    w[3] = (t + 1) * t * (t - 1) / 6.0;
  };
  double wx[4], wy[4];
  lagrange(tx, wx);
  lagrange(ty, wy);

  const int c = in.comps;
  for (int q = 0; q < c; ++q) out[q] = Quat{};
  for (int b = 0; b < 4; ++b)
    for (int a = 0; a < 4; ++a) {
      const double w = wx[a] * wy[b];
      const Quat* src = in.at(g.index(i0 + a, j0 + b));
      for (int q = 0; q < c; ++q) out[q] += src[q] * w;
    }
}

void cell_circulation(const ChartGrid& g, const QGrid& fx, const QGrid& fy, QGrid& out) {
  const int n = g.n_side;
  const int c = fx.comps;
  out.comps = c;
  out.q.assign(g.samples() * static_cast<std::size_t>(c), Quat{});
  const double half_over_area = 0.5 / g.h();  // (h/2) / h^2
  for (int j = 0; j + 1 < n; ++j)
    for (int i = 0; i + 1 < n; ++i) {
      const Quat* x00 = fx.at(g.index(i, j));
      const Quat* x01 = fx.at(g.index(i, j + 1));
      const Quat* x10 = fx.at(g.index(i + 1, j));
      const Quat* x11 = fx.at(g.index(i + 1, j + 1));
      const Quat* y00 = fy.at(g.index(i, j));
      const Quat* y01 = fy.at(g.index(i, j + 1));
      const Quat* y10 = fy.at(g.index(i + 1, j));
      const Quat* y11 = fy.at(g.index(i + 1, j + 1));
      Quat* o = out.at(g.index(i, j));
      for (int q = 0; q < c; ++q) {
        // bottom + right - top - left, trapezoid each edge
        Quat circ = (x00[q] + x10[q]) + (y10[q] + y11[q]) - (x01[q] + x11[q]) - (y00[q] + y01[q]);
        o[q] = circ * half_over_area;
      }
    }
}

namespace {

// one-dimensional DCT-II basis matrix (orthonormal): C[k][i] = n_k cos(pi k (i+1/2) / N)
struct CosBasis {
  int n;
  std::vector<double> c;  // k * n + i
  explicit CosBasis(int n_) : n(n_), c(static_cast<std::size_t>(n_) * n_) {
    const double pi = 3.14159265358979323846264338328;
    for (int k = 0; k < n; ++k) {
      const double nk = std::sqrt((k == 0 ? 1.0 : 2.0) / n);
      for (int i = 0; i < n; ++i)
        c[static_cast<std::size_t>(k) * n + i] = nk * std::cos(pi * k * (i + 0.5) / n);
    }
  }
};

// u (doubles, layout [j][i][slot]) -> per-slot 2D cosine transform, in place.
void cos2d(const CosBasis& basis, std::vector<double>& u, int slots, bool forward) {
  const int n = basis.n;
  std::vector<double> tmp(static_cast<std::size_t>(n) * n);
  for (int slot = 0; slot < slots; ++slot) {
    // gather
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i)
        tmp[static_cast<std::size_t>(j) * n + i] =
            u[(static_cast<std::size_t>(j) * n + i) * slots + slot];
    std::vector<double> t2(static_cast<std::size_t>(n) * n, 0.0);
    // transform rows: t2[j][k] = sum_i B(k,i) tmp[j][i]  (forward) or B^T
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        double s = 0;
        const double* row = &basis.c[static_cast<std::size_t>(k) * n];
        const double* src = &tmp[static_cast<std::size_t>(j) * n];
        if (forward)
          for (int i = 0; i < n; ++i) s += row[i] * src[i];
        else
          for (int i = 0; i < n; ++i) s += basis.c[static_cast<std::size_t>(i) * n + k] * src[i];
        t2[static_cast<std::size_t>(j) * n + k] = s;
      }
    // transform columns
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) {
        double s = 0;
        if (forward)
          for (int j = 0; j < n; ++j) s += basis.c[static_cast<std::size_t>(k) * n + j] * t2[static_cast<std::size_t>(j) * n + i];
        else
          for (int j = 0; j < n; ++j) s += basis.c[static_cast<std::size_t>(j) * n + k] * t2[static_cast<std::size_t>(j) * n + i];
        tmp[static_cast<std::size_t>(k) * n + i] = s;
      }
    // scatter
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i)
        u[(static_cast<std::size_t>(j) * n + i) * slots + slot] =
            tmp[static_cast<std::size_t>(j) * n + i];
  }
}

// fourth-order edge integral of g along the x-edge (i, j)-(i+1, j)
inline Quat edge_integral(const QGrid& f, int comp, const ChartGrid& g, int i, int j, bool xdir) {
  const int n = g.n_side;
  const double h = g.h();
  auto v = [&](int a, int b) { return f.at(g.index(a, b))[comp]; };
  const int pos = xdir ? i : j;
  Quat s;
  if (pos >= 1 && pos + 2 < n) {
    const Quat f0 = xdir ? v(i - 1, j) : v(i, j - 1);
    const Quat f1 = v(i, j);
    const Quat f2 = xdir ? v(i + 1, j) : v(i, j + 1);
    const Quat f3 = xdir ? v(i + 2, j) : v(i, j + 2);
    s = (-f0 + f1 * 13.0 + f2 * 13.0 - f3) * (h / 24.0);
  } else if (pos == 0) {
    const Quat f0 = v(i, j);
    const Quat f1 = xdir ? v(i + 1, j) : v(i, j + 1);
    const Quat f2 = xdir ? v(i + 2, j) : v(i, j + 2);
    const Quat f3 = xdir ? v(i + 3, j) : v(i, j + 3);
    s = (f0 * 9.0 + f1 * 19.0 - f2 * 5.0 + f3) * (h / 24.0);
  } else {  // pos + 2 == n, mirrored closed formula
    const Quat f0 = xdir ? v(i + 1, j) : v(i, j + 1);
    const Quat f1 = v(i, j);
    const Quat f2 = xdir ? v(i - 1, j) : v(i, j - 1);
    const Quat f3 = xdir ? v(i - 2, j) : v(i, j - 2);
    s = (f0 * 9.0 + f1 * 19.0 - f2 * 5.0 + f3) * (h / 24.0);
  }
  return s;
}

}  // namespace

PotentialResult integrate_one_form(const ChartGrid& g, const QGrid& fx, const QGrid& fy) {
  const int n = g.n_side;
  const int c = fx.comps;
  PotentialResult out;
  out.u = QGrid(g, c);
  const int slots = 4 * c;

  // right-hand side: discrete divergence of the edge integrals
  std::vector<double> rhs(g.samples() * static_cast<std::size_t>(slots), 0.0);
  std::vector<Quat> ex(g.samples() * static_cast<std::size_t>(c));
  std::vector<Quat> ey(g.samples() * static_cast<std::size_t>(c));
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      for (int q = 0; q < c; ++q) {
        if (i + 1 < n) ex[g.index(i, j) * static_cast<std::size_t>(c) + q] = edge_integral(fx, q, g, i, j, true);
        if (j + 1 < n) ey[g.index(i, j) * static_cast<std::size_t>(c) + q] = edge_integral(fy, q, g, i, j, false);
      }
  auto add_q = [&](std::size_t s, int q, const Quat& v, double sign) {
    double* dst = &rhs[(s * static_cast<std::size_t>(c) + q) * 4];
    dst[0] += sign * v.w;
    dst[1] += sign * v.x;
    dst[2] += sign * v.y;
    dst[3] += sign * v.z;
  };
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      for (int q = 0; q < c; ++q) {
        const std::size_t s = g.index(i, j);
        if (i + 1 < n) add_q(s, q, ex[s * static_cast<std::size_t>(c) + q], -1.0);
        if (i > 0) add_q(s, q, ex[g.index(i - 1, j) * static_cast<std::size_t>(c) + q], 1.0);
        if (j + 1 < n) add_q(s, q, ey[s * static_cast<std::size_t>(c) + q], -1.0);
        if (j > 0) add_q(s, q, ey[g.index(i, j - 1) * static_cast<std::size_t>(c) + q], 1.0);
      }
  static thread_local int cached_n = -1;
  static thread_local CosBasis* cached_basis = nullptr;
  if (cached_n != n) {
    delete cached_basis;
    cached_basis = new CosBasis(n);
    cached_n = n;
  }
  const CosBasis& basis = *cached_basis;

  cos2d(basis, rhs, slots, true);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const double li = 2.0 - 2.0 * std::cos(3.14159265358979323846 * i / n);
      const double lj = 2.0 - 2.0 * std::cos(3.14159265358979323846 * j / n);
      const double lam = li + lj;
      double* v = &rhs[(static_cast<std::size_t>(j) * n + i) * slots];
      if (i == 0 && j == 0) {
        for (int t = 0; t < slots; ++t) v[t] = 0.0;
      } else {
        for (int t = 0; t < slots; ++t) v[t] /= lam;
      }
    }
  cos2d(basis, rhs, slots, false);

  std::copy(rhs.begin(), rhs.end(), out.u.raw());

  // fit residual: worst edge mismatch
  double worst = 0;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      for (int q = 0; q < c; ++q) {
        const std::size_t s = g.index(i, j);
        if (i + 1 < n) {
          const Quat d = out.u.at(g.index(i + 1, j))[q] - out.u.at(s)[q] -
                         ex[s * static_cast<std::size_t>(c) + q];
          worst = std::max(worst, d.norm());
        }
        if (j + 1 < n) {
          const Quat d = out.u.at(g.index(i, j + 1))[q] - out.u.at(s)[q] -
                         ey[s * static_cast<std::size_t>(c) + q];
          worst = std::max(worst, d.norm());
        }
      }
  out.fit_residual_max = worst;
  return out;
}

void ring_circulation(const ChartGrid& g, const QGrid& fx, const QGrid& fy, int margin,
                      Quat* out) {
  const int n = g.n_side;
  const int a = margin, b = n - 1 - margin;
  const int c = fx.comps;
  const double h2 = g.h() / 2.0;
  for (int q = 0; q < c; ++q) out[q] = Quat{};
  auto add = [&](const QGrid& f, int i0, int j0, int i1, int j1, double sign) {
    const Quat* v0 = f.at(g.index(i0, j0));
    const Quat* v1 = f.at(g.index(i1, j1));
    for (int q = 0; q < c; ++q) out[q] += (v0[q] + v1[q]) * (sign * h2);
  };
  for (int i = a; i < b; ++i) add(fx, i, a, i + 1, a, 1.0);     // bottom, +x
  for (int j = a; j < b; ++j) add(fy, b, j, b, j + 1, 1.0);     // right, +y
  for (int i = a; i < b; ++i) add(fx, i, b, i + 1, b, -1.0);    // top, -x
  for (int j = a; j < b; ++j) add(fy, a, j, a, j + 1, -1.0);    // left, -y
}

}  // namespace hpn
