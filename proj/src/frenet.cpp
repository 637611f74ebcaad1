#include "hpn/frenet.hpp"

#include <algorithm>
#include <cmath>

#include "hpn/errors.hpp"
#include "hpn/linalg.hpp"
#include "hpn/simd.hpp"

namespace hpn {

void FrenetReport::set(const std::string& k, double v) {
  for (auto& [key, val] : values)
    if (key == k) {
      val = std::max(val, v);  // reports aggregate maxima over charts
      return;
    }
  values.emplace_back(k, v);
}

double FrenetReport::get(const std::string& k) const {
  for (const auto& [key, val] : values)
    if (key == k) return val;
  return -1.0;
}

namespace {

HVec load_vec(const Quat* p, int dim) {
  HVec v(dim);
  for (int i = 0; i < dim; ++i) v[i] = p[i];
  return v;
}
void store_vec(Quat* p, const HVec& v) {
  for (int i = 0; i < v.n; ++i) p[i] = v[i];
}
HMat load_mat(const Quat* p, int dim) {
  HMat m(dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) m.at(i, j) = p[i * dim + j];
  return m;
}
void store_mat(Quat* p, const HMat& m) {
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j) p[i * m.n + j] = m.at(i, j);
}

using Cols = std::vector<HVec>;  // a "tall" quaternionic matrix by columns

HMat gram(const Cols& a, const Cols& b) {
  HMat g(static_cast<int>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      g.at(static_cast<int>(i), static_cast<int>(j)) = hermitian(a[i], b[j]);
  return g;
}

Cols mul_cols(const Cols& u, const HMat& m) {
  Cols out(static_cast<std::size_t>(m.n), HVec(u[0].n));
  for (int b = 0; b < m.n; ++b)
    for (std::size_t a = 0; a < u.size(); ++a)
      out[static_cast<std::size_t>(b)] += u[a] * m.at(static_cast<int>(a), b);
  return out;
}

HMat outer_sum(const Cols& w, const Cols& v) {
  const int dim = w[0].n;
  HMat m(dim);
  for (std::size_t a = 0; a < w.size(); ++a)
    for (int i = 0; i < dim; ++i) {
      const Quat wi = w[a][i];
      for (int j = 0; j < dim; ++j) m.at(i, j) += wi * v[a][j].conj();
    }
  return m;
}

// Orthogonal projector P = U (U^*U)^{-1} U^* together with its chart
// derivatives from column derivative data. The result only depends on the
// span family, so per-sample column scaling is harmless.
struct ProjD {
  HMat p, px, py;
};

ProjD span_projector_d(const Cols& u, const Cols& ux, const Cols& uy) {
  ProjD out;
  HMat g = gram(u, u);
  HMat ginv(g.n);
  if (!hmat_inverse(g, ginv))
    throw PreconditionError("span projector: Gram matrix is singular (rank defect)");
  const Cols ug = mul_cols(u, ginv);
  out.p = outer_sum(ug, u);
  for (int dir = 0; dir < 2; ++dir) {
    const Cols& du = dir == 0 ? ux : uy;
    HMat dg = gram(du, u) + gram(u, du);
    HMat mid = ginv * dg * ginv;
    HMat dp = outer_sum(mul_cols(du, ginv), u) - outer_sum(mul_cols(u, mid), u) +
              outer_sum(ug, du);
    (dir == 0 ? out.px : out.py) = dp;
  }
  return out;
}

// right-multiplication by i on every entry (the chart-B/y-derivative twist
// for holomorphic data)
HVec times_i(const HVec& v) {
  HVec r(v.n);
  for (int l = 0; l < v.n; ++l) r[l] = v[l] * Quat::i();
  return r;
}

// Per-sample solver for right-linear constraints M u_a = v_a sharing the
// coefficient matrix; used for S and its derivative right-hand sides.
struct EndoSystem {
  int dim = 0;
  linalg::Lu lu;

  static void right_block(const Quat& u, double* b, int stride) {
    b[0 * stride + 0] = u.w; b[0 * stride + 1] = -u.x; b[0 * stride + 2] = -u.y; b[0 * stride + 3] = -u.z;
    b[1 * stride + 0] = u.x; b[1 * stride + 1] =  u.w; b[1 * stride + 2] =  u.z; b[1 * stride + 3] = -u.y;
    b[2 * stride + 0] = u.y; b[2 * stride + 1] = -u.z; b[2 * stride + 2] =  u.w; b[2 * stride + 3] =  u.x;
    b[3 * stride + 0] = u.z; b[3 * stride + 1] =  u.y; b[3 * stride + 2] = -u.x; b[3 * stride + 3] =  u.w;
  }

  static EndoSystem build(const Cols& u) {
    EndoSystem s;
    s.dim = u[0].n;
    const int rn = 4 * s.dim;
    linalg::Mat a(rn, rn);
    for (int p = 0; p < s.dim; ++p)
      for (int l = 0; l < s.dim; ++l)
        right_block(u[static_cast<std::size_t>(p)][l], &a.at(4 * p, 4 * l), rn);
    s.lu = linalg::lu_factor(std::move(a));
    if (!s.lu.ok) throw PreconditionError("canonical structure solve: basis not quaternionic");
    return s;
  }

  HMat solve(const Cols& v) const {
    const int rn = 4 * dim;
    std::vector<double> b(static_cast<std::size_t>(rn) * dim);
    for (int a = 0; a < dim; ++a)
      for (int i = 0; i < dim; ++i) {
        const Quat& q = v[static_cast<std::size_t>(a)][i];
        b[(4 * a + 0) * static_cast<std::size_t>(dim) + i] = q.w;
        b[(4 * a + 1) * static_cast<std::size_t>(dim) + i] = q.x;
        b[(4 * a + 2) * static_cast<std::size_t>(dim) + i] = q.y;
        b[(4 * a + 3) * static_cast<std::size_t>(dim) + i] = q.z;
      }
    linalg::lu_apply(lu, b, dim);
    HMat m(dim);
    for (int i = 0; i < dim; ++i)
      for (int l = 0; l < dim; ++l)
        m.at(i, l) = {b[(4 * l + 0) * static_cast<std::size_t>(dim) + i],
                      b[(4 * l + 1) * static_cast<std::size_t>(dim) + i],
                      b[(4 * l + 2) * static_cast<std::size_t>(dim) + i],
                      b[(4 * l + 3) * static_cast<std::size_t>(dim) + i]};
    return m;
  }
};

CVec eval_coords(const RationalCurve& c, Cd z, int order) {
  CVec v(static_cast<std::size_t>(c.dim_c()));
  for (int l = 0; l < c.dim_c(); ++l) {
    Poly p = c.coords[static_cast<std::size_t>(l)];
    for (int o = 0; o < order; ++o) p = p.derivative();
    v[static_cast<std::size_t>(l)] = p.eval(z);
  }
  return v;
}

}  // namespace

CurveField twistor_project(const CurveOsculation& osc, const ChartGrid& grid,
                           const TwistorOptions& opt) {
  const int n = osc.chart[0].n;
  const int dim = n + 1;
  if (dim > kMaxDim) throw PreconditionError("ambient dimension too large");

  QuaternionicLocus locus = quaternionic_locus(osc, opt.locus_grid, opt.locus_threshold);
  if (!locus.dips.empty() || locus.min_margin < opt.locus_threshold)
    throw PreconditionError(
        "twistor projection: osculating space meets a quaternionic subspace (margin " +
        std::to_string(locus.min_margin) + ")");

  CurveField f;
  f.n = n;
  f.dim = dim;
  f.grid = grid;
  f.provenance = Provenance::twistor;
  f.exact_first = true;
  f.exact_second = opt.need_d2;
  f.meta.set("provenance", "twistor");
  f.meta.set_i("curve_n", n);
  f.meta.set_i("curve_degree", osc.chart[0].common_degree());
  f.meta.set_f("locus_margin", locus.min_margin);

  const int d2c = dim * dim;
  for (int ch = 0; ch < 2; ++ch) {
    ChartData& cd = f.chart[ch];
    cd.psi = QGrid(grid, dim);
    cd.dpsi_x = QGrid(grid, dim);
    cd.dpsi_y = QGrid(grid, dim);
    cd.S = QGrid(grid, d2c);
    cd.dS_x = QGrid(grid, d2c);
    cd.dS_y = QGrid(grid, d2c);
    cd.P.assign(static_cast<std::size_t>(n), QGrid(grid, d2c));
    cd.dP_x.assign(static_cast<std::size_t>(n), QGrid(grid, d2c));
    cd.dP_y.assign(static_cast<std::size_t>(n), QGrid(grid, d2c));
    if (opt.need_d2) {
      cd.d2psi_xx = QGrid(grid, dim);
      cd.d2psi_xy = QGrid(grid, dim);
      cd.d2psi_yy = QGrid(grid, dim);
      cd.d2S_xx = QGrid(grid, d2c);
      cd.d2S_xy = QGrid(grid, d2c);
      cd.d2S_yy = QGrid(grid, d2c);
    }

    const RationalCurve& curve = osc.chart[ch];
    for (int j = 0; j < grid.n_side; ++j)
      for (int i = 0; i < grid.n_side; ++i) {
        const std::size_t s = grid.index(i, j);
        const Cd z = grid.zeta(i, j);

        const HVec psi = lift_complex(eval_coords(curve, z, 0));
        const HVec psix = lift_complex(eval_coords(curve, z, 1));
        const HVec psixx = lift_complex(eval_coords(curve, z, 2));
        store_vec(cd.psi.at(s), psi);
        store_vec(cd.dpsi_x.at(s), psix);
        store_vec(cd.dpsi_y.at(s), times_i(psix));
        if (opt.need_d2) {
          store_vec(cd.d2psi_xx.at(s), psixx);
          store_vec(cd.d2psi_xy.at(s), times_i(psixx));
          store_vec(cd.d2psi_yy.at(s), -psixx);
        }

        // flag projectors with exact derivatives
        for (int k = 0; k < n; ++k) {
          Cols u, ux, uy;
          if (k == 0) {
            u = {psi};
            ux = {psix};
          } else {
            PluckerBasis pb =
                plucker_basis(osc.levels[ch][static_cast<std::size_t>(k)], z, curve.dim_c());
            for (int a = 0; a <= k; ++a) {
              HVec va = lift_complex(pb.rows[static_cast<std::size_t>(a)]);
              HVec vda = lift_complex(pb.rows_d[static_cast<std::size_t>(a)]);
              const double sc = 1.0 / std::max(va.norm(), 1e-300);
              u.push_back(va * sc);
              ux.push_back(vda * sc);
            }
          }
          for (const HVec& d : ux) uy.push_back(times_i(d));
          ProjD pd = span_projector_d(u, ux, uy);
          store_mat(cd.P[static_cast<std::size_t>(k)].at(s), pd.p);
          store_mat(cd.dP_x[static_cast<std::size_t>(k)].at(s), pd.px);
          store_mat(cd.dP_y[static_cast<std::size_t>(k)].at(s), pd.py);
        }

        // canonical structure from the top osculating space: S u = u i
        PluckerBasis pb =
            plucker_basis(osc.levels[ch][static_cast<std::size_t>(n)], z, curve.dim_c());
        Cols u, ux, uxx;
        for (int a = 0; a <= n; ++a) {
          HVec va = lift_complex(pb.rows[static_cast<std::size_t>(a)]);
          HVec vda = lift_complex(pb.rows_d[static_cast<std::size_t>(a)]);
          HVec vdda = lift_complex(pb.rows_dd[static_cast<std::size_t>(a)]);
          const double sc = 1.0 / std::max(va.norm(), 1e-300);
          u.push_back(va * sc);
          ux.push_back(vda * sc);
          uxx.push_back(vdda * sc);
        }
        EndoSystem sys = EndoSystem::build(u);

        Cols rhs(static_cast<std::size_t>(dim));
        for (int a = 0; a < dim; ++a) rhs[static_cast<std::size_t>(a)] = times_i(u[static_cast<std::size_t>(a)]);
        const HMat S = sys.solve(rhs);
        store_mat(cd.S.at(s), S);

        for (int a = 0; a < dim; ++a)
          rhs[static_cast<std::size_t>(a)] =
              times_i(ux[static_cast<std::size_t>(a)]) - S * ux[static_cast<std::size_t>(a)];
        const HMat Sx = sys.solve(rhs);
        store_mat(cd.dS_x.at(s), Sx);

        Cols uy(static_cast<std::size_t>(dim));
        for (int a = 0; a < dim; ++a) uy[static_cast<std::size_t>(a)] = times_i(ux[static_cast<std::size_t>(a)]);
        for (int a = 0; a < dim; ++a)
          rhs[static_cast<std::size_t>(a)] =
              times_i(uy[static_cast<std::size_t>(a)]) - S * uy[static_cast<std::size_t>(a)];
        const HMat Sy = sys.solve(rhs);
        store_mat(cd.dS_y.at(s), Sy);

        if (opt.need_d2) {
          // differentiate S u = u i twice; the mixed and yy data follow from
          // holomorphy: d_xy u = (d_xx u) i, d_yy u = -d_xx u
          auto solve_d2 = [&](const Cols& dda, const Cols& dua, const Cols& dub,
                              const HMat& Sa, const HMat& Sb) {
            Cols r(static_cast<std::size_t>(dim));
            for (int a = 0; a < dim; ++a) {
              const std::size_t ai = static_cast<std::size_t>(a);
              r[ai] = times_i(dda[ai]) - S * dda[ai] - Sa * dub[ai] - Sb * dua[ai];
            }
            return sys.solve(r);
          };
          Cols uxy(static_cast<std::size_t>(dim)), uyy(static_cast<std::size_t>(dim));
          for (int a = 0; a < dim; ++a) {
            uxy[static_cast<std::size_t>(a)] = times_i(uxx[static_cast<std::size_t>(a)]);
            uyy[static_cast<std::size_t>(a)] = -uxx[static_cast<std::size_t>(a)];
          }
          store_mat(cd.d2S_xx.at(s), solve_d2(uxx, ux, ux, Sx, Sx));
          store_mat(cd.d2S_xy.at(s), solve_d2(uxy, ux, uy, Sx, Sy));
          store_mat(cd.d2S_yy.at(s), solve_d2(uyy, uy, uy, Sy, Sy));
        }
      }
  }
  return f;
}

CurveField twistor_project(const RationalCurve& curve, const ChartGrid& grid,
                           const TwistorOptions& opt) {
  CurveOsculation osc = osculate_curve(curve, curve.n, curve.n, opt.gap_tol);
  return twistor_project(osc, grid, opt);
}

namespace {

double max_block_norm(const ChartGrid& g, int chart, const QGrid& a, int skip_cells = 0) {
  double best = 0;
  for (int j = 0; j < g.n_side; ++j)
    for (int i = 0; i < g.n_side; ++i) {
      if (!g.owned(chart, i, j)) continue;
      if (skip_cells > 0 &&
          (i < skip_cells || j < skip_cells || i >= g.n_side - skip_cells ||
           j >= g.n_side - skip_cells))
        continue;
      const std::size_t s = g.index(i, j);
      best = std::max(best, std::sqrt(simd::qnorm2(a.at(s), static_cast<std::size_t>(a.comps))));
    }
  return best;
}

double l2_block_norm(const ChartGrid& g, int chart, const QGrid& a) {
  double sum = 0;
  for (int j = 0; j < g.n_side; ++j)
    for (int i = 0; i < g.n_side; ++i) {
      if (!g.owned(chart, i, j)) continue;
      const std::size_t s = g.index(i, j);
      sum += g.weight(chart, i, j) * simd::qnorm2(a.at(s), static_cast<std::size_t>(a.comps));
    }
  return std::sqrt(sum);
}

void sub_grid(QGrid& a, const QGrid& b) { simd::saxpy(-1.0, b.raw(), a.raw(), a.doubles()); }

void add_identity(QGrid& a, int dim) {
  for (std::size_t s = 0; s < a.q.size() / static_cast<std::size_t>(a.comps); ++s) {
    Quat* m = a.at(s);
    for (int i = 0; i < dim; ++i) m[i * dim + i].w += 1.0;
  }
}

QGrid gemm(const QGrid& a, const QGrid& b, int dim, std::size_t count) {
  QGrid c;
  c.comps = a.comps;
  c.q.resize(a.q.size());
  simd::qgemm(a.q.data(), b.q.data(), c.q.data(), dim, count);
  return c;
}

}  // namespace

FrenetReport canonical_residuals(const CurveField& f) {
  FrenetReport rep;
  const int dim = f.dim;
  const std::size_t ns = f.samples();

  for (int ch = 0; ch < 2; ++ch) {
    const ChartData& cd = f.chart[ch];

    QGrid s2 = gemm(cd.S, cd.S, dim, ns);
    add_identity(s2, dim);
    rep.set("s2_max", max_block_norm(f.grid, ch, s2));

    for (int k = 0; k < f.n; ++k) {
      const QGrid& p = cd.P[static_cast<std::size_t>(k)];
      QGrid sp = gemm(cd.S, p, dim, ns);
      QGrid psp = gemm(p, sp, dim, ns);
      sub_grid(sp, psp);
      rep.set("flag_stab_max", max_block_norm(f.grid, ch, sp));

      QGrid pp = gemm(p, p, dim, ns);
      sub_grid(pp, p);
      double defect = max_block_norm(f.grid, ch, pp);
      for (std::size_t s = 0; s < ns; ++s) {
        double tr = 0;
        const Quat* m = p.at(s);
        for (int i = 0; i < dim; ++i) tr += m[i * dim + i].w;
        defect = std::max(defect, std::abs(tr - (k + 1)));
      }
      rep.set("proj_defect_max", defect);

      // delta_k = (1 - P) dP P, stencil route (and exact route when stored)
      for (int route = 0; route < 2; ++route) {
        QGrid dx, dy;
        if (route == 0) {
          deriv_x(f.grid, p, dx);
          deriv_y(f.grid, p, dy);
        } else {
          if (!f.exact_first || cd.dP_x.empty()) break;
          dx = cd.dP_x[static_cast<std::size_t>(k)];
          dy = cd.dP_y[static_cast<std::size_t>(k)];
        }
        QGrid dxp = gemm(dx, p, dim, ns);
        QGrid tmp = gemm(p, dxp, dim, ns);
        sub_grid(dxp, tmp);  // delta_x
        QGrid dyp = gemm(dy, p, dim, ns);
        tmp = gemm(p, dyp, dim, ns);
        sub_grid(dyp, tmp);  // delta_y

        QGrid sdx = gemm(cd.S, dxp, dim, ns);
        QGrid r1 = dyp;
        sub_grid(r1, sdx);  // *delta = S delta
        QGrid dxs = gemm(dxp, cd.S, dim, ns);
        QGrid dxsp = gemm(dxs, p, dim, ns);
        QGrid r2 = dyp;
        sub_grid(r2, dxsp);  // *delta = delta S (restricted to V_k)

        const char* suffix = route == 0 ? "fd" : "exact";
        rep.set(std::string("eq3_") + suffix + "_max",
                std::max(max_block_norm(f.grid, ch, r1), max_block_norm(f.grid, ch, r2)));
        if (route == 0) {
          rep.set("eq3_fd_l2", std::max(l2_block_norm(f.grid, ch, r1), l2_block_norm(f.grid, ch, r2)));
          rep.set("delta_scale_max", max_block_norm(f.grid, ch, dxp));
        }
      }
    }

    if (f.n >= 1) {
      const QGrid& p0 = cd.P[0];
      const QGrid& ptop = cd.P[static_cast<std::size_t>(f.n - 1)];
      for (int route = 0; route < 2; ++route) {
        HopfGrids h;
        if (route == 0) {
          if (cd.dS_x.empty() || !f.exact_first) continue;
          h = hopf_from_exact(f, ch);
        } else {
          h = hopf_stencil(f, ch);
        }
        const char* suffix = route == 0 ? "" : "_fd";
        double rq = 0, ra = 0;
        for (const QGrid* qc : {&h.Qx, &h.Qy}) {
          QGrid qp = gemm(*qc, ptop, dim, ns);
          rq = std::max(rq, max_block_norm(f.grid, ch, qp));
        }
        for (const QGrid* ac : {&h.Ax, &h.Ay}) {
          QGrid pa = gemm(p0, *ac, dim, ns);
          QGrid r = *ac;
          sub_grid(r, pa);
          ra = std::max(ra, max_block_norm(f.grid, ch, r));
        }
        rep.set(std::string("eq5_Q") + suffix + "_max", rq);
        rep.set(std::string("eq5_A") + suffix + "_max", ra);
      }
    }
  }
  return rep;
}

WeierstrassReport weierstrass_points_poly(const CurveOsculation& osc) {
  WeierstrassReport rep;
  const int n = osc.chart[0].n;

  // multiplicities of the level contents at finite points (chart A data
  // covers the full affine chart) and at infinity (chart B content at w = 0)
  std::vector<std::vector<std::pair<Cd, int>>> finite_roots(static_cast<std::size_t>(n) + 1);
  std::vector<int> inf_ord(static_cast<std::size_t>(n) + 1, 0);
  for (int j = 0; j <= n; ++j) {
    const Poly& ca = osc.levels[0][static_cast<std::size_t>(j)].content;
    if (ca.degree() > 0) finite_roots[static_cast<std::size_t>(j)] = roots_clustered(ca);
    const Poly& cb = osc.levels[1][static_cast<std::size_t>(j)].content;
    const int o = order_at_zero(cb);
    inf_ord[static_cast<std::size_t>(j)] = std::max(o, 0);
  }
  auto mult_at = [&](int j, Cd z) -> int {
    if (j < 0) return 0;
    for (const auto& [root, m] : finite_roots[static_cast<std::size_t>(j)])
      if (std::abs(root - z) < 1e-4) return m;
    return 0;
  };

  for (int k = 0; k + 1 <= n; ++k) {
    for (const auto& [root, mk1] : finite_roots[static_cast<std::size_t>(k + 1)]) {
      const int ord = mk1 - 2 * mult_at(k, root) + mult_at(k - 1, root);
      if (ord <= 0) continue;
      WeierstrassEntry e;
      if (std::abs(root) <= 1.0) {
        e.chart = 0;
        e.point = root;
      } else {
        e.chart = 1;
        e.point = Cd(1.0) / root;
      }
      e.level = k;
      e.order = ord;
      rep.entries.push_back(e);
      rep.total_order += ord;
    }
    const int oi = inf_ord[static_cast<std::size_t>(k + 1)] -
                   2 * inf_ord[static_cast<std::size_t>(k)] +
                   (k >= 1 ? inf_ord[static_cast<std::size_t>(k - 1)] : 0);
    if (oi > 0) {
      rep.entries.push_back({1, Cd(0), k, oi});
      rep.total_order += oi;
    }
  }
  return rep;
}

WeierstrassReport weierstrass_points_grid(const CurveField& f, double dip_tol) {
  WeierstrassReport rep;
  const int dim = f.dim;
  const std::size_t ns = f.samples();
  for (int ch = 0; ch < 2; ++ch) {
    const ChartData& cd = f.chart[ch];
    for (int k = 0; k < f.n; ++k) {
      const QGrid& p = cd.P[static_cast<std::size_t>(k)];
      QGrid dx;
      deriv_x(f.grid, p, dx);
      QGrid dxp = gemm(dx, p, dim, ns);
      QGrid tmp = gemm(p, dxp, dim, ns);
      sub_grid(dxp, tmp);
      // dip scan with 2-cell clustering
      std::vector<std::pair<int, int>> hits;
      for (int j = 0; j < f.grid.n_side; ++j)
        for (int i = 0; i < f.grid.n_side; ++i) {
          if (!f.grid.owned(ch, i, j)) continue;
          const double v =
              std::sqrt(simd::qnorm2(dxp.at(f.grid.index(i, j)), static_cast<std::size_t>(dxp.comps)));
          if (v >= dip_tol) continue;
          bool close = false;
          for (auto& [pi, pj] : hits)
            if (std::abs(pi - i) <= 2 && std::abs(pj - j) <= 2) close = true;
          if (!close) hits.emplace_back(i, j);
        }
      for (auto& [i, j] : hits) {
        rep.entries.push_back({ch, f.grid.zeta(i, j), k, 1});
        rep.total_order += 1;
      }
    }
  }
  return rep;
}

DegreeCheck degree_check(const CurveOsculation& osc) {
  const int n = osc.chart[0].n;
  auto big_c = [&](int j) -> int {
    if (j < 0 || j == 0) return 0;
    const Poly& ca = osc.levels[0][static_cast<std::size_t>(j)].content;
    const Poly& cb = osc.levels[1][static_cast<std::size_t>(j)].content;
    const int da = std::max(ca.degree(), 0);
    const int ob = std::max(order_at_zero(cb), 0);
    return da + ob;
  };
  DegreeCheck out;
  out.ord_total = big_c(n) - big_c(n - 1);
  out.deg_kr_plus = -2 * (n + 1) - out.ord_total;
  out.negative = out.deg_kr_plus < 0;
  return out;
}

std::vector<std::vector<HVec>> frenet_flag_at(const CurveField& f, int chart, int i, int j) {
  const ChartData& cd = f.chart[chart];
  QGrid d1x, d1y;
  deriv_x(f.grid, cd.psi, d1x);
  deriv_y(f.grid, cd.psi, d1y);
  const std::size_t s = f.grid.index(i, j);
  std::vector<HVec> gens = {load_vec(cd.psi.at(s), f.dim)};
  if (f.n >= 1) {
    gens.push_back(load_vec(d1x.at(s), f.dim));
    gens.push_back(load_vec(d1y.at(s), f.dim));
  }
  if (f.n >= 2) {
    QGrid d2x, d2xy, d2y;
    deriv_x(f.grid, d1x, d2x);
    deriv_y(f.grid, d1x, d2xy);
    deriv_y(f.grid, d1y, d2y);
    gens.push_back(load_vec(d2x.at(s), f.dim));
    gens.push_back(load_vec(d2xy.at(s), f.dim));
    gens.push_back(load_vec(d2y.at(s), f.dim));
  }
  std::vector<std::vector<HVec>> flag;
  // V_k = span of the lift and derivatives up to order k
  const int counts[3] = {1, 3, 6};
  for (int k = 0; k < f.n; ++k) {
    std::vector<HVec> sub(gens.begin(), gens.begin() + counts[std::min(k, 2)]);
    SpanResult sr = right_span(sub, 1e-7);
    flag.push_back(std::move(sr.basis));
  }
  return flag;
}

DeltaAtSample delta_maps(const CurveField& f, int chart, int i, int j) {
  DeltaAtSample out;
  const ChartData& cd = f.chart[chart];
  const std::size_t s = f.grid.index(i, j);
  const HMat S = load_mat(cd.S.at(s), f.dim);
  for (int k = 0; k < f.n; ++k) {
    const QGrid& p = cd.P[static_cast<std::size_t>(k)];
    QGrid dx, dy;
    deriv_x(f.grid, p, dx);
    deriv_y(f.grid, p, dy);
    const HMat pk = load_mat(p.at(s), f.dim);
    const HMat id = HMat::identity(f.dim);
    const HMat comp = id - pk;
    const HMat deltax = comp * load_mat(dx.at(s), f.dim) * pk;
    const HMat deltay = comp * load_mat(dy.at(s), f.dim) * pk;
    const double r1 = (deltay - S * deltax).fro_norm();
    const double r2 = ((deltay - deltax * S) * pk).fro_norm();
    out.delta_x.push_back(deltax);
    out.delta_y.push_back(deltay);
    out.eq3_residual.push_back(std::max(r1, r2));
  }
  return out;
}

}  // namespace hpn
