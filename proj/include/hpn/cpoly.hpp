// Complex polynomials in one variable with exact coefficient arithmetic, plus
// the approximate-GCD machinery used to deflate osculating minors. The GCD
// degree is read off the singular value gap of the Sylvester matrix (gap
// threshold 1e-7 by default); exact integer or rational input produces a gap
// many orders wider, so the threshold is not delicate there.
#pragma once

#include <complex>
#include <vector>

#include "hpn/quat.hpp"

namespace hpn {

struct Poly {
  std::vector<Cd> c;  // c[k] z^k, highest trimmed

  Poly() = default;
  explicit Poly(std::vector<Cd> coeffs) : c(std::move(coeffs)) { trim(); }
  static Poly constant(Cd v) { return Poly({v}); }
  static Poly zero() { return {}; }

  void trim(double tol = 0.0);
  bool is_zero() const { return c.empty(); }
  int degree() const { return static_cast<int>(c.size()) - 1; }  // -1 for zero
  Cd eval(Cd z) const;
  Poly derivative() const;
  double max_coeff() const;
  void scale(double s);

  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly& operator*=(Cd s);
};

// w^d p(1/w): coefficient reversal padded to degree d
Poly reverse_poly(const Poly& p, int d);

// order of vanishing at 0, relative to the largest coefficient
int order_at_zero(const Poly& p, double tol = 1e-9);

// gcd via Sylvester singular value gap + subresultant null vector; monic-ish
// output normalized to max coefficient 1. gcd(p, 0) = p.
Poly approx_gcd(const Poly& p, const Poly& q, double gap_tol = 1e-7);
Poly approx_gcd_many(const std::vector<Poly>& ps, double gap_tol = 1e-7);

// least-squares deconvolution: g with p ~= d * g (exact when divisible)
Poly deconv_ls(const Poly& p, const Poly& d);

// Durand-Kerner roots clustered into (root, multiplicity) pairs.
std::vector<std::pair<Cd, int>> roots_clustered(const Poly& p, double cluster_radius = 1e-4);

// all k-element subsets of {0..m-1} in lexicographic order
std::vector<std::vector<int>> subsets(int m, int k);

// Minors: given rows r_0..r_k of polynomials (each a vector of m polys),
// returns the (k+1)x(k+1) minors det over the column subsets, in the order
// produced by subsets(m, k+1).
std::vector<Poly> polynomial_minors(const std::vector<std::vector<Poly>>& rows);

}  // namespace hpn
