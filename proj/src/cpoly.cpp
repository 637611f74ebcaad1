#include "hpn/cpoly.hpp"

#include <algorithm>
#include <cmath>

#include "hpn/linalg.hpp"

namespace hpn {

void Poly::trim(double tol) {
  double m = 0;
  for (const Cd& v : c) m = std::max(m, std::abs(v));
  const double cut = tol * m;
  while (!c.empty() && std::abs(c.back()) <= cut) c.pop_back();
}

Cd Poly::eval(Cd z) const {
  Cd s = 0;
  for (std::size_t i = c.size(); i-- > 0;) s = s * z + c[i];
  return s;
}

Poly Poly::derivative() const {
  if (c.size() <= 1) return {};
  Poly d;
  d.c.resize(c.size() - 1);
  for (std::size_t k = 1; k < c.size(); ++k) d.c[k - 1] = c[k] * static_cast<double>(k);
  return d;
}

double Poly::max_coeff() const {
  double m = 0;
  for (const Cd& v : c) m = std::max(m, std::abs(v));
  return m;
}

void Poly::scale(double s) {
  for (Cd& v : c) v *= s;
}

Poly operator+(const Poly& a, const Poly& b) {
  Poly r;
  r.c.resize(std::max(a.c.size(), b.c.size()));
  for (std::size_t i = 0; i < r.c.size(); ++i) {
    if (i < a.c.size()) r.c[i] += a.c[i];
    if (i < b.c.size()) r.c[i] += b.c[i];
  }
  r.trim();
  return r;
}

Poly operator-(const Poly& a, const Poly& b) {
  Poly r;
  r.c.resize(std::max(a.c.size(), b.c.size()));
  for (std::size_t i = 0; i < r.c.size(); ++i) {
    if (i < a.c.size()) r.c[i] += a.c[i];
    if (i < b.c.size()) r.c[i] -= b.c[i];
  }
  r.trim();
  return r;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  Poly r;
  r.c.assign(a.c.size() + b.c.size() - 1, Cd(0));
  for (std::size_t i = 0; i < a.c.size(); ++i)
    for (std::size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
  r.trim();
  return r;
}

Poly& Poly::operator*=(Cd s) {
  for (Cd& v : c) v *= s;
  trim();
  return *this;
}

Poly reverse_poly(const Poly& p, int d) {
  Poly r;
  r.c.assign(static_cast<std::size_t>(d) + 1, Cd(0));
  for (std::size_t k = 0; k < p.c.size(); ++k) r.c[static_cast<std::size_t>(d) - k] = p.c[k];
  r.trim();
  return r;
}

int order_at_zero(const Poly& p, double tol) {
  if (p.is_zero()) return -1;
  const double cut = tol * p.max_coeff();
  for (std::size_t k = 0; k < p.c.size(); ++k)
    if (std::abs(p.c[k]) > cut) return static_cast<int>(k);
  return -1;
}

namespace {

// Real embedding of a complex matrix doubles every singular value's
// multiplicity; rank and null vectors carry over.
linalg::Mat sylvester_real(const Poly& p, const Poly& q, int drop) {
  const int dp = p.degree(), dq = q.degree();
  const int rows = (dq - drop) + (dp - drop);
  const int cols = dp + dq - drop;
  linalg::Mat m(2 * rows, 2 * cols);
  auto put = [&](int r, int cidx, Cd v) {
    m.at(2 * r, 2 * cidx) = v.real();
    m.at(2 * r, 2 * cidx + 1) = -v.imag();
    m.at(2 * r + 1, 2 * cidx) = v.imag();
    m.at(2 * r + 1, 2 * cidx + 1) = v.real();
  };
  int r = 0;
  for (int s = 0; s < dq - drop; ++s, ++r)
    for (int k = 0; k <= dp; ++k) put(r, s + k, p.c[static_cast<std::size_t>(k)]);
  for (int s = 0; s < dp - drop; ++s, ++r)
    for (int k = 0; k <= dq; ++k) put(r, s + k, q.c[static_cast<std::size_t>(k)]);
  return m;
}

}  // namespace

Poly deconv_ls(const Poly& p, const Poly& d) {
  const int dg = p.degree() - d.degree();
  if (dg < 0 || d.is_zero()) return {};
  // conv(d, g) = p as a linear system in g
  linalg::Mat a(2 * (p.degree() + 1), 2 * (dg + 1));
  for (int k = 0; k <= d.degree(); ++k)
    for (int j = 0; j <= dg; ++j) {
      const Cd v = d.c[static_cast<std::size_t>(k)];
      const int r = k + j;
      a.at(2 * r, 2 * j) += v.real();
      a.at(2 * r, 2 * j + 1) += -v.imag();
      a.at(2 * r + 1, 2 * j) += v.imag();
      a.at(2 * r + 1, 2 * j + 1) += v.real();
    }
  std::vector<double> b(2 * static_cast<std::size_t>(p.degree() + 1));
  for (int k = 0; k <= p.degree(); ++k) {
    b[2 * static_cast<std::size_t>(k)] = p.c[static_cast<std::size_t>(k)].real();
    b[2 * static_cast<std::size_t>(k) + 1] = p.c[static_cast<std::size_t>(k)].imag();
  }
  std::vector<double> x = linalg::lstsq(a, b);
  std::vector<Cd> g(static_cast<std::size_t>(dg) + 1);
  for (int j = 0; j <= dg; ++j)
    g[static_cast<std::size_t>(j)] = {x[2 * static_cast<std::size_t>(j)],
                                      x[2 * static_cast<std::size_t>(j) + 1]};
  return Poly(std::move(g));
}

Poly approx_gcd(const Poly& p_in, const Poly& q_in, double gap_tol) {
  if (p_in.is_zero()) return q_in;
  if (q_in.is_zero()) return p_in;
  Poly p = p_in, q = q_in;
  // normalize scale so the gap threshold is meaningful
  if (p.max_coeff() > 0) p.scale(1.0 / p.max_coeff());
  if (q.max_coeff() > 0) q.scale(1.0 / q.max_coeff());
  if (p.degree() == 0 || q.degree() == 0) return Poly::constant(1.0);

  linalg::Svd svd = jacobi_svd(sylvester_real(p, q, 0));
  const double smax = svd.sigma.empty() ? 0.0 : svd.sigma[0];
  int nullity = 0;
  for (double s : svd.sigma)
    if (s <= gap_tol * smax) ++nullity;
  const int r = nullity / 2;  // complex nullity
  if (r == 0) return Poly::constant(1.0);
  if (r == std::min(p.degree(), q.degree())) {
    // one divides the other (up to scale)
    const Poly& g = (p.degree() <= q.degree()) ? p : q;
    Poly out = g;
    out.scale(1.0 / out.max_coeff());
    return out;
  }

  // S_{r-1} has a one-dimensional null space spanned by the cofactors
  // (u, v) = (q/g, -p/g) * const.
  linalg::Svd sub = jacobi_svd(sylvester_real(p, q, r - 1));
  const int cols = sub.v.rows;
  std::vector<Cd> null_c(static_cast<std::size_t>(cols) / 2);
  const int last = static_cast<int>(sub.sigma.size()) - 1;
  for (int i = 0; i < cols / 2; ++i)
    null_c[static_cast<std::size_t>(i)] = {sub.v.at(2 * i, last), sub.v.at(2 * i + 1, last)};
  // split into u (first dq-(r-1) coeffs) and ignore v
  const int ulen = q.degree() - (r - 1);
  Poly u(std::vector<Cd>(null_c.begin(), null_c.begin() + ulen));
  Poly g = deconv_ls(q, u);
  if (g.is_zero() || g.degree() != r) {
    // fall back to the v cofactor against p
    Poly v(std::vector<Cd>(null_c.begin() + ulen, null_c.end()));
    g = deconv_ls(p, v);
  }
  if (g.is_zero()) return Poly::constant(1.0);
  g.scale(1.0 / g.max_coeff());
  return g;
}

Poly approx_gcd_many(const std::vector<Poly>& ps, double gap_tol) {
  Poly g = Poly::zero();
  for (const Poly& p : ps) {
    if (p.is_zero()) continue;
    g = g.is_zero() ? p : approx_gcd(g, p, gap_tol);
    if (g.degree() == 0) return Poly::constant(1.0);
  }
  if (g.is_zero()) return g;
  Poly out = g;
  out.scale(1.0 / out.max_coeff());
  return out;
}

std::vector<std::pair<Cd, int>> roots_clustered(const Poly& p_in, double cluster_radius) {
  std::vector<std::pair<Cd, int>> out;
  Poly p = p_in;
  p.trim(1e-12);
  const int d = p.degree();
  if (d <= 0) return out;
  // monic
  std::vector<Cd> a(p.c);
  for (Cd& v : a) v /= p.c.back();

  // Durand-Kerner with deterministic start
  std::vector<Cd> z(static_cast<std::size_t>(d));
  double radius = 0;
  for (int k = 0; k < d; ++k) radius = std::max(radius, std::pow(std::abs(a[static_cast<std::size_t>(k)]), 1.0 / (d - k)));
  radius = std::max(radius, 0.5);
  const Cd seed(0.4, 0.9);
  Cd acc = 1;
  for (int i = 0; i < d; ++i) {
    acc *= seed;
    z[static_cast<std::size_t>(i)] = acc * radius;
  }
  auto evalm = [&](Cd x) {
    Cd s = 1;
    for (int k = d - 1; k >= 0; --k) s = s * x + a[static_cast<std::size_t>(k)];
    return s;
  };
  for (int it = 0; it < 400; ++it) {
    double moved = 0;
    for (int i = 0; i < d; ++i) {
      Cd denom = 1;
      for (int j = 0; j < d; ++j)
        if (j != i) denom *= (z[static_cast<std::size_t>(i)] - z[static_cast<std::size_t>(j)]);
      if (std::abs(denom) < 1e-300) continue;
      const Cd delta = evalm(z[static_cast<std::size_t>(i)]) / denom;
      z[static_cast<std::size_t>(i)] -= delta;
      moved = std::max(moved, std::abs(delta));
    }
    if (moved < 1e-14 * std::max(1.0, radius)) break;
  }

  std::vector<bool> used(static_cast<std::size_t>(d), false);
  for (int i = 0; i < d; ++i) {
    if (used[static_cast<std::size_t>(i)]) continue;
    Cd center = z[static_cast<std::size_t>(i)];
    int mult = 1;
    used[static_cast<std::size_t>(i)] = true;
    for (int j = i + 1; j < d; ++j) {
      if (used[static_cast<std::size_t>(j)]) continue;
      if (std::abs(z[static_cast<std::size_t>(j)] - center) < cluster_radius) {
        center = (center * static_cast<double>(mult) + z[static_cast<std::size_t>(j)]) / static_cast<double>(mult + 1);
        ++mult;
        used[static_cast<std::size_t>(j)] = true;
      }
    }
    out.emplace_back(center, mult);
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& l, const auto& r) {
    if (l.first.real() != r.first.real()) return l.first.real() < r.first.real();
    return l.first.imag() < r.first.imag();
  });
  return out;
}

std::vector<std::vector<int>> subsets(int m, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) cur[static_cast<std::size_t>(i)] = i;
  while (true) {
    out.push_back(cur);
    int i = k - 1;
    while (i >= 0 && cur[static_cast<std::size_t>(i)] == m - k + i) --i;
    if (i < 0) break;
    ++cur[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) cur[static_cast<std::size_t>(j)] = cur[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

namespace {

Poly poly_det(const std::vector<std::vector<Poly>>& rows, std::vector<int> cols) {
  const std::size_t k = cols.size();
  if (k == 1) return rows[0][static_cast<std::size_t>(cols[0])];
  Poly det;
  double sign = 1.0;
  for (std::size_t j = 0; j < k; ++j) {
    std::vector<std::vector<Poly>> sub(rows.begin() + 1, rows.end());
    std::vector<int> subcols;
    for (std::size_t l = 0; l < k; ++l)
      if (l != j) subcols.push_back(cols[l]);
    Poly term = rows[0][static_cast<std::size_t>(cols[j])] * poly_det(sub, subcols);
    term *= Cd(sign);
    det = det + term;
    sign = -sign;
  }
  return det;
}

}  // namespace

std::vector<Poly> polynomial_minors(const std::vector<std::vector<Poly>>& rows) {
  const int k1 = static_cast<int>(rows.size());
  const int m = static_cast<int>(rows[0].size());
  std::vector<Poly> out;
  for (const auto& idx : subsets(m, k1)) out.push_back(poly_det(rows, idx));
  return out;
}

}  // namespace hpn
