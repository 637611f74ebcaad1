// Right H-module linear algebra on H^{n+1}: vectors take scalars on the
// right, endomorphisms are quaternion matrices acting from the left (exactly
// the right-linear maps). The Hermitian form conjugates the LEFT slot,
//   <a, b> = sum_i conj(a_i) b_i,
// so <a, b q> = <a, b> q and <a q, b> = conj(q) <a, b>.
#pragma once

#include <array>
#include <complex>
#include <vector>

#include "hpn/quat.hpp"

namespace hpn {

inline constexpr int kMaxDim = 6;

struct HVec {
  int n = 0;
  std::array<Quat, kMaxDim> e{};

  HVec() = default;
  explicit HVec(int dim) : n(dim) {}

  Quat& operator[](int i) { return e[static_cast<std::size_t>(i)]; }
  const Quat& operator[](int i) const { return e[static_cast<std::size_t>(i)]; }

  static HVec unit(int dim, int i) {
    HVec v(dim);
    v[i] = Quat::one();
    return v;
  }

  double norm2() const {
    double s = 0;
    for (int i = 0; i < n; ++i) s += e[i].norm2();
    return s;
  }
  double norm() const { return std::sqrt(norm2()); }

  HVec& operator+=(const HVec& o) {
    for (int i = 0; i < n; ++i) e[i] += o.e[i];
    return *this;
  }
  HVec& operator-=(const HVec& o) {
    for (int i = 0; i < n; ++i) e[i] -= o.e[i];
    return *this;
  }
  friend HVec operator+(HVec a, const HVec& b) { return a += b; }
  friend HVec operator-(HVec a, const HVec& b) { return a -= b; }
  friend HVec operator-(const HVec& a) {
    HVec r(a.n);
    for (int i = 0; i < a.n; ++i) r[i] = -a[i];
    return r;
  }
  // right scalar action
  friend HVec operator*(HVec v, const Quat& q) {
    for (int i = 0; i < v.n; ++i) v[i] = v[i] * q;
    return v;
  }
  friend HVec operator*(HVec v, double s) {
    for (int i = 0; i < v.n; ++i) v[i] *= s;
    return v;
  }
};

// <a, b> = sum conj(a_i) b_i
Quat hermitian(const HVec& a, const HVec& b);

struct HMat {
  int n = 0;  // square, n x n
  std::array<Quat, kMaxDim * kMaxDim> e{};

  HMat() = default;
  explicit HMat(int dim) : n(dim) {}

  Quat& at(int i, int j) { return e[static_cast<std::size_t>(i) * kMaxDim + j]; }
  const Quat& at(int i, int j) const { return e[static_cast<std::size_t>(i) * kMaxDim + j]; }

  static HMat identity(int dim) {
    HMat m(dim);
    for (int i = 0; i < dim; ++i) m.at(i, i) = Quat::one();
    return m;
  }
  static HMat zero(int dim) { return HMat(dim); }

  // outer product u * q * <rho, .>  (matrix v -> u q <rho, v>)
  static HMat outer(const HVec& u, const Quat& q, const HVec& rho);

  HMat& operator+=(const HMat& o);
  HMat& operator-=(const HMat& o);
  friend HMat operator+(HMat a, const HMat& b) { return a += b; }
  friend HMat operator-(HMat a, const HMat& b) { return a -= b; }
  friend HMat operator-(const HMat& a);
  friend HMat operator*(HMat a, double s);
  friend HMat operator*(double s, HMat a) { return a * s; }

  HVec operator*(const HVec& v) const;
  HMat operator*(const HMat& o) const;

  // Hermitian adjoint: (M^*)_ij = conj(M_ji); <Mu, v> = <u, M^* v>.
  HMat adjoint() const;

  double fro_norm2() const;
  double fro_norm() const { return std::sqrt(fro_norm2()); }

  // real trace / 4 = sum of real parts of the diagonal
  double re_trace() const;
};

// Gram-Schmidt over H (right module). Returns the orthonormal vectors that
// survive the tolerance test against the running span; rank = count.
struct SpanResult {
  std::vector<HVec> basis;
  int rank = 0;
};
SpanResult right_span(const std::vector<HVec>& vectors, double tol = 1e-9);

// Right-linear M with M u_l = v_l for every pair. The rows of M decouple into
// real linear systems sharing one coefficient matrix built from the right
// multiplication operators R(u). Square systems go through LU, overdetermined
// ones through SVD least squares. max_residual reports max ||M u - v||.
struct EndoSolve {
  HMat m;
  double max_residual = 0;
  bool ok = false;
};
EndoSolve solve_endomorphism(const std::vector<std::pair<HVec, HVec>>& pairs, int dim);

// Orthogonal projector onto the quaternionic span of the given vectors
// (columns need not be orthonormal): P = U (U^*U)^{-1} U^*.
HMat span_projector(const std::vector<HVec>& span_vectors);

// Inverse of the (small) Gram-type quaternion matrix via its real embedding.
bool hmat_inverse(const HMat& m, HMat& out);

// ---- complex <-> quaternionic identification ------------------------------
// iota: C^{2n+2} -> H^{n+1}, (z_1..z_{2n+2}) -> (z_l + j z_{l+n+1})_l, with
// complex scalars acting by right multiplication by span{1, i}. The induced
// antiholomorphic involution sigma satisfies iota(v) j = iota(sigma(v)).
using CVec = std::vector<std::complex<double>>;

HVec lift_complex(const CVec& v);
CVec unlift_quaternionic(const HVec& q);  // inverse of lift_complex
CVec sigma_involution(const CVec& v);     // sigma(v1, v2) = (-conj(v2), conj(v1))

// distance between the quaternionic lines spanned by unit vectors a, b
// (sine of the principal angle)
double line_distance(const HVec& a, const HVec& b);

}  // namespace hpn
