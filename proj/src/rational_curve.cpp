#include "hpn/rational_curve.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "hpn/errors.hpp"

namespace hpn {

int RationalCurve::common_degree() const {
  int d = 0;
  for (const Poly& p : coords) d = std::max(d, p.degree());
  return d;
}

void RationalCurve::remove_content(double gap_tol) {
  Poly g = approx_gcd_many(coords, gap_tol);
  if (g.is_zero()) throw PreconditionError("rational curve: all coordinates vanish");
  if (g.degree() <= 0) return;
  for (Poly& p : coords) p = deconv_ls(p, g);
}

RationalCurve RationalCurve::chart_b_curve() const {
  RationalCurve r;
  r.n = n;
  const int d = common_degree();
  for (const Poly& p : coords) r.coords.push_back(reverse_poly(p, d));
  return r;
}

RationalCurve RationalCurve::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open curve file: " + path);
  std::string tag, ver;
  in >> tag >> ver;
  if (tag != "hpn-curve" || ver != "v1") throw IoError("bad curve header in " + path);
  RationalCurve c;
  std::string key;
  in >> key >> c.n;
  if (key != "n" || c.n < 1) throw IoError("bad curve dimension in " + path);
  c.coords.resize(static_cast<std::size_t>(2 * c.n + 2));
  for (int l = 0; l < 2 * c.n + 2; ++l) {
    int idx = 0, count = 0;
    in >> key >> idx >> count;
    if (key != "coord" || idx != l || count < 0) throw IoError("bad coord block in " + path);
    std::vector<Cd> coeffs(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) {
      double re = 0, im = 0;
      in >> re >> im;
      coeffs[static_cast<std::size_t>(k)] = {re, im};
    }
    if (!in) throw IoError("truncated curve file: " + path);
    c.coords[static_cast<std::size_t>(l)] = Poly(std::move(coeffs));
  }
  return c;
}

void RationalCurve::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write curve file: " + path);
  out << "hpn-curve v1\n";
  out << "n " << n << "\n";
  char buf[64];
  for (int l = 0; l < dim_c(); ++l) {
    const Poly& p = coords[static_cast<std::size_t>(l)];
    out << "coord " << l << " " << p.c.size() << "\n";
    for (const Cd& v : p.c) {
      std::snprintf(buf, sizeof buf, "%.17g %.17g\n", v.real(), v.imag());
      out << buf;
    }
  }
  if (!out) throw IoError("write failed: " + path);
}

namespace {

std::vector<std::vector<Poly>> derivative_rows(const RationalCurve& c, int k) {
  std::vector<std::vector<Poly>> rows(static_cast<std::size_t>(k) + 1);
  rows[0] = c.coords;
  for (int r = 1; r <= k; ++r) {
    rows[static_cast<std::size_t>(r)].reserve(c.coords.size());
    for (const Poly& p : rows[static_cast<std::size_t>(r - 1)])
      rows[static_cast<std::size_t>(r)].push_back(p.derivative());
  }
  return rows;
}

OscLevel build_level(const RationalCurve& c, int k, double gap_tol) {
  OscLevel lvl;
  lvl.k = k;
  lvl.idx = subsets(c.dim_c(), k + 1);
  std::vector<Poly> raw = polynomial_minors(derivative_rows(c, k));
  double fam = 0;
  for (const Poly& p : raw) fam = std::max(fam, p.max_coeff());
  if (fam == 0) {
    lvl.degenerate = true;
    return lvl;
  }
  for (Poly& p : raw) p.scale(1.0 / fam);
  for (Poly& p : raw) p.trim(1e-13);

  lvl.content = approx_gcd_many(raw, gap_tol);
  if (lvl.content.degree() > 0) {
    for (Poly& p : raw) p = deconv_ls(p, lvl.content);
  }
  double fam2 = 0;
  for (const Poly& p : raw) fam2 = std::max(fam2, p.max_coeff());
  for (Poly& p : raw) p.scale(1.0 / fam2);
  lvl.minors = std::move(raw);
  for (const Poly& p : lvl.minors) lvl.minors_d.push_back(p.derivative());
  for (const Poly& p : lvl.minors_d) lvl.minors_dd.push_back(p.derivative());
  return lvl;
}

}  // namespace

CurveOsculation osculate_curve(const RationalCurve& c_in, int kmax, int need_rank_upto,
                               double gap_tol) {
  CurveOsculation osc;
  osc.chart[0] = c_in;
  osc.chart[0].remove_content(gap_tol);
  osc.chart[1] = osc.chart[0].chart_b_curve();
  for (int chart = 0; chart < 2; ++chart) {
    for (int k = 0; k <= kmax; ++k) {
      OscLevel lvl = build_level(osc.chart[chart], k, gap_tol);
      if (lvl.degenerate && k <= need_rank_upto)
        throw PreconditionError("curve is degenerate: osculating minors vanish at level " +
                                std::to_string(k));
      osc.levels[chart].push_back(std::move(lvl));
    }
  }
  return osc;
}

PluckerBasis plucker_basis(const OscLevel& lvl, Cd zeta, int dim_c) {
  PluckerBasis out;
  out.k = lvl.k;
  const int k1 = lvl.k + 1;
  const std::size_t nm = lvl.idx.size();
  std::vector<Cd> mv(nm), md(nm), mdd(nm);
  double scale = 0;
  for (std::size_t t = 0; t < nm; ++t) {
    mv[t] = lvl.minors[t].eval(zeta);
    md[t] = lvl.minors_d[t].eval(zeta);
    mdd[t] = lvl.minors_dd[t].eval(zeta);
    scale = std::max(scale, std::abs(mv[t]));
  }
  std::size_t pivot = 0;
  for (std::size_t t = 1; t < nm; ++t)
    if (std::abs(mv[t]) > std::abs(mv[pivot])) pivot = t;
  out.pivot_abs = scale > 0 ? std::abs(mv[pivot]) : 0.0;

  // pack subsets as bitmasks for lookup
  auto mask_of = [](const std::vector<int>& s) {
    unsigned m = 0;
    for (int i : s) m |= 1u << i;
    return m;
  };
  std::vector<unsigned> masks(nm);
  for (std::size_t t = 0; t < nm; ++t) masks[t] = mask_of(lvl.idx[t]);
  auto find_mask = [&](unsigned m) -> std::size_t {
    for (std::size_t t = 0; t < nm; ++t)
      if (masks[t] == m) return t;
    return nm;
  };

  const std::vector<int>& istar = lvl.idx[pivot];
  out.rows.assign(static_cast<std::size_t>(k1), CVec(static_cast<std::size_t>(dim_c), Cd(0)));
  out.rows_d.assign(static_cast<std::size_t>(k1), CVec(static_cast<std::size_t>(dim_c), Cd(0)));
  out.rows_dd.assign(static_cast<std::size_t>(k1), CVec(static_cast<std::size_t>(dim_c), Cd(0)));
  const unsigned istar_mask = mask_of(istar);

  for (int r = 0; r < k1; ++r) {
    const int ir = istar[static_cast<std::size_t>(r)];
    for (int j = 0; j < dim_c; ++j) {
      if (j == ir) {
        out.rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)] = mv[pivot];
        out.rows_d[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)] = md[pivot];
        out.rows_dd[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)] = mdd[pivot];
        continue;
      }
      if (istar_mask & (1u << j)) continue;  // repeated column, minor vanishes
      const unsigned m = (istar_mask & ~(1u << ir)) | (1u << j);
      const std::size_t t = find_mask(m);
      if (t == nm) continue;
      // sign from moving j into sorted position among I* \ {ir}
      int pos = 0;
      for (int other : istar)
        if (other != ir && other < j) ++pos;
      const double sign = ((pos - r) % 2 == 0) ? 1.0 : -1.0;
      out.rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)] = sign * mv[t];
      out.rows_d[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)] = sign * md[t];
      out.rows_dd[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)] = sign * mdd[t];
    }
  }
  return out;
}

CVec evaluate_curve(const CurveOsculation& osc, int chart, Cd zeta) {
  const RationalCurve& c = osc.chart[chart];
  CVec v(static_cast<std::size_t>(c.dim_c()));
  for (int l = 0; l < c.dim_c(); ++l) v[static_cast<std::size_t>(l)] = c.coords[static_cast<std::size_t>(l)].eval(zeta);
  const double nv = cvec_norm(v);
  if (nv == 0) throw PreconditionError("curve evaluates to zero after content removal");
  for (Cd& x : v) x /= nv;
  return v;
}

Cd cvec_dot(const CVec& a, const CVec& b) {
  Cd s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

double cvec_norm(const CVec& a) {
  double s = 0;
  for (const Cd& v : a) s += std::norm(v);
  return std::sqrt(s);
}

std::vector<CVec> cvec_orthonormalize(const std::vector<CVec>& vs, double tol) {
  std::vector<CVec> basis;
  double maxn = 0;
  for (const auto& v : vs) maxn = std::max(maxn, cvec_norm(v));
  for (const auto& v : vs) {
    CVec b = v;
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& u : basis) {
        const Cd c = cvec_dot(u, b);
        for (std::size_t i = 0; i < b.size(); ++i) b[i] -= c * u[i];
      }
    const double nb = cvec_norm(b);
    if (nb > tol * maxn) {
      for (Cd& x : b) x /= nb;
      basis.push_back(std::move(b));
    }
  }
  return basis;
}

Cd cvec_det(std::vector<CVec> cols) {
  const std::size_t n = cols.size();
  Cd det = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(cols[k][i]) > std::abs(cols[k][p])) p = i;
    if (p != k) {
      for (auto& col : cols) std::swap(col[k], col[p]);
      det = -det;
    }
    const Cd piv = cols[k][k];
    if (piv == Cd(0)) return 0;
    det *= piv;
    for (std::size_t j = k + 1; j < n; ++j) {
      const Cd f = cols[j][k] / piv;
      if (f == Cd(0)) continue;
      for (std::size_t i = k; i < n; ++i) cols[j][i] -= f * cols[k][i];
    }
  }
  return det;
}

ComplexFlag osculating_space(const CurveOsculation& osc, int k, int chart, Cd zeta) {
  ComplexFlag flag;
  flag.point = zeta;
  flag.chart = chart;
  for (int j = 0; j <= k; ++j) {
    const OscLevel& lvl = osc.levels[chart].at(static_cast<std::size_t>(j));
    if (lvl.degenerate)
      throw PreconditionError("degenerate curve: osculating space undefined at level " +
                              std::to_string(j));
    PluckerBasis pb = plucker_basis(lvl, zeta, osc.chart[chart].dim_c());
    flag.spaces.push_back(cvec_orthonormalize(pb.rows));
    if (static_cast<int>(flag.spaces.back().size()) != j + 1)
      throw PreconditionError("osculating space rank defect at level " + std::to_string(j));
  }
  return flag;
}

QuaternionicLocus quaternionic_locus(const CurveOsculation& osc, int grid_n,
                                     double dip_threshold) {
  QuaternionicLocus out;
  const int n = osc.chart[0].n;
  const int dim = osc.chart[0].dim_c();
  for (int chart = 0; chart < 2; ++chart) {
    const OscLevel& lvl = osc.levels[chart].at(static_cast<std::size_t>(n));
    for (int jj = 0; jj < grid_n; ++jj)
      for (int ii = 0; ii < grid_n; ++ii) {
        const double x = -1.0 + 2.0 * ii / (grid_n - 1);
        const double y = -1.0 + 2.0 * jj / (grid_n - 1);
        if (x * x + y * y > 1.0) continue;
        const Cd zeta(x, y);
        PluckerBasis pb = plucker_basis(lvl, zeta, dim);
        std::vector<CVec> on = cvec_orthonormalize(pb.rows);
        if (static_cast<int>(on.size()) != n + 1) {
          out.min_margin = 0;
          out.dips.emplace_back(chart, zeta);
          continue;
        }
        std::vector<CVec> cols = on;
        for (const CVec& v : on) cols.push_back(sigma_involution(v));
        const double margin = std::abs(cvec_det(cols));
        out.min_margin = std::min(out.min_margin, margin);
        if (margin < dip_threshold) out.dips.emplace_back(chart, zeta);
      }
  }
  return out;
}

}  // namespace hpn
