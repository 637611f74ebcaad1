#include "hpn/hquat.hpp"

#include <cmath>
#include <ostream>

#include "hpn/linalg.hpp"

namespace hpn {

std::ostream& operator<<(std::ostream& os, const Quat& q) {
  return os << "(" << q.w << "," << q.x << "," << q.y << "," << q.z << ")";
}

Quat hermitian(const HVec& a, const HVec& b) {
  Quat s;
  for (int i = 0; i < a.n; ++i) s += a[i].conj() * b[i];
  return s;
}

HMat HMat::outer(const HVec& u, const Quat& q, const HVec& rho) {
  HMat m(u.n);
  for (int i = 0; i < u.n; ++i) {
    const Quat uq = u[i] * q;
    for (int j = 0; j < u.n; ++j) m.at(i, j) = uq * rho[j].conj();
  }
  return m;
}

HMat& HMat::operator+=(const HMat& o) {
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) at(i, j) += o.at(i, j);
  return *this;
}

HMat& HMat::operator-=(const HMat& o) {
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) at(i, j) -= o.at(i, j);
  return *this;
}

HMat operator-(const HMat& a) {
  HMat r(a.n);
  for (int i = 0; i < a.n; ++i)
    for (int j = 0; j < a.n; ++j) r.at(i, j) = -a.at(i, j);
  return r;
}

HMat operator*(HMat a, double s) {
  for (int i = 0; i < a.n; ++i)
    for (int j = 0; j < a.n; ++j) a.at(i, j) *= s;
  return a;
}

HVec HMat::operator*(const HVec& v) const {
  HVec r(n);
  for (int i = 0; i < n; ++i) {
    Quat s;
    for (int l = 0; l < n; ++l) s += at(i, l) * v[l];
    r[i] = s;
  }
  return r;
}

HMat HMat::operator*(const HMat& o) const {
  HMat r(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Quat s;
      for (int l = 0; l < n; ++l) s += at(i, l) * o.at(l, j);
      r.at(i, j) = s;
    }
  return r;
}

HMat HMat::adjoint() const {
  HMat r(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r.at(i, j) = at(j, i).conj();
  return r;
}

double HMat::fro_norm2() const {
  double s = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) s += at(i, j).norm2();
  return s;
}

double HMat::re_trace() const {
  double s = 0;
  for (int i = 0; i < n; ++i) s += at(i, i).re();
  return s;
}

SpanResult right_span(const std::vector<HVec>& vectors, double tol) {
  SpanResult out;
  if (vectors.empty()) return out;
  double max_norm = 0;
  for (const auto& v : vectors) max_norm = std::max(max_norm, v.norm());
  if (max_norm == 0) return out;

  for (const auto& v : vectors) {
    HVec b = v;
    // re-orthogonalized once; classical GS alone loses orthogonality
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& u : out.basis) b -= u * hermitian(u, b);
    const double nb = b.norm();
    if (nb > tol * max_norm) {
      out.basis.push_back(b * (1.0 / nb));
      ++out.rank;
    }
  }
  return out;
}

namespace {

// Right multiplication operator as a real 4x4: vec(q u) = R(u) vec(q),
// coordinates ordered (w, x, y, z).
void right_mult_block(const Quat& u, double* block, int stride) {
  block[0 * stride + 0] = u.w; block[0 * stride + 1] = -u.x; block[0 * stride + 2] = -u.y; block[0 * stride + 3] = -u.z;
  block[1 * stride + 0] = u.x; block[1 * stride + 1] =  u.w; block[1 * stride + 2] =  u.z; block[1 * stride + 3] = -u.y;
  block[2 * stride + 0] = u.y; block[2 * stride + 1] = -u.z; block[2 * stride + 2] =  u.w; block[2 * stride + 3] =  u.x;
  block[3 * stride + 0] = u.z; block[3 * stride + 1] =  u.y; block[3 * stride + 2] = -u.x; block[3 * stride + 3] =  u.w;
}

// Left multiplication operator: vec(q u) with q fixed... vec(m v) = L(m) vec(v).
void left_mult_block(const Quat& m, double* block, int stride) {
  block[0 * stride + 0] = m.w; block[0 * stride + 1] = -m.x; block[0 * stride + 2] = -m.y; block[0 * stride + 3] = -m.z;
  block[1 * stride + 0] = m.x; block[1 * stride + 1] =  m.w; block[1 * stride + 2] = -m.z; block[1 * stride + 3] =  m.y;
  block[2 * stride + 0] = m.y; block[2 * stride + 1] =  m.z; block[2 * stride + 2] =  m.w; block[2 * stride + 3] = -m.x;
  block[3 * stride + 0] = m.z; block[3 * stride + 1] = -m.y; block[3 * stride + 2] =  m.x; block[3 * stride + 3] =  m.w;
}

}  // namespace

EndoSolve solve_endomorphism(const std::vector<std::pair<HVec, HVec>>& pairs, int dim) {
  EndoSolve out;
  out.m = HMat(dim);
  const int npairs = static_cast<int>(pairs.size());
  if (npairs < dim) return out;  // underdetermined as a right-linear problem

  // Row i of M solves A x_i = b_i with the shared matrix
  //   A[(4a..4a+3), (4l..4l+3)] = R(u_{a,l}).
  const int rows = 4 * npairs, cols = 4 * dim;
  linalg::Mat a(rows, cols);
  for (int p = 0; p < npairs; ++p)
    for (int l = 0; l < dim; ++l)
      right_mult_block(pairs[static_cast<std::size_t>(p)].first[l],
                       &a.at(4 * p, 4 * l), cols);

  if (rows == cols) {
    // one LU, dim right-hand sides
    std::vector<double> b(static_cast<std::size_t>(rows) * dim);
    for (int p = 0; p < npairs; ++p)
      for (int i = 0; i < dim; ++i) {
        const Quat& v = pairs[static_cast<std::size_t>(p)].second[i];
        b[(4 * p + 0) * static_cast<std::size_t>(dim) + i] = v.w;
        b[(4 * p + 1) * static_cast<std::size_t>(dim) + i] = v.x;
        b[(4 * p + 2) * static_cast<std::size_t>(dim) + i] = v.y;
        b[(4 * p + 3) * static_cast<std::size_t>(dim) + i] = v.z;
      }
    if (!lu_solve(a, b, dim)) return out;
    for (int i = 0; i < dim; ++i)
      for (int l = 0; l < dim; ++l)
        out.m.at(i, l) = {b[(4 * l + 0) * static_cast<std::size_t>(dim) + i],
                          b[(4 * l + 1) * static_cast<std::size_t>(dim) + i],
                          b[(4 * l + 2) * static_cast<std::size_t>(dim) + i],
                          b[(4 * l + 3) * static_cast<std::size_t>(dim) + i]};
  } else {
    for (int i = 0; i < dim; ++i) {
      std::vector<double> b(rows);
      for (int p = 0; p < npairs; ++p) {
        const Quat& v = pairs[static_cast<std::size_t>(p)].second[i];
        b[4 * p + 0] = v.w;
        b[4 * p + 1] = v.x;
        b[4 * p + 2] = v.y;
        b[4 * p + 3] = v.z;
      }
      std::vector<double> x = linalg::lstsq(a, b);
      for (int l = 0; l < dim; ++l)
        out.m.at(i, l) = {x[4 * l + 0], x[4 * l + 1], x[4 * l + 2], x[4 * l + 3]};
    }
  }

  out.ok = true;
  for (const auto& [u, v] : pairs) {
    const HVec r = out.m * u - v;
    out.max_residual = std::max(out.max_residual, r.norm());
  }
  return out;
}

bool hmat_inverse(const HMat& m, HMat& out) {
  const int dim = m.n;
  const int rn = 4 * dim;
  linalg::Mat a(rn, rn);
  for (int i = 0; i < dim; ++i)
    for (int l = 0; l < dim; ++l) left_mult_block(m.at(i, l), &a.at(4 * i, 4 * l), rn);
  std::vector<double> b(static_cast<std::size_t>(rn) * rn, 0.0);
  for (int i = 0; i < rn; ++i) b[static_cast<std::size_t>(i) * rn + i] = 1.0;
  if (!lu_solve(a, b, rn)) return false;
  // Columns of the real inverse at quaternion slots (w-slot of column block)
  // give the quaternion entries of M^{-1}.
  out = HMat(dim);
  for (int i = 0; i < dim; ++i)
    for (int l = 0; l < dim; ++l)
      out.at(i, l) = {b[(4 * i + 0) * static_cast<std::size_t>(rn) + 4 * l],
                      b[(4 * i + 1) * static_cast<std::size_t>(rn) + 4 * l],
                      b[(4 * i + 2) * static_cast<std::size_t>(rn) + 4 * l],
                      b[(4 * i + 3) * static_cast<std::size_t>(rn) + 4 * l]};
  return true;
}

HMat span_projector(const std::vector<HVec>& span_vectors) {
  const int dim = span_vectors.empty() ? 0 : span_vectors[0].n;
  const int k = static_cast<int>(span_vectors.size());
  HMat gram(k);
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) gram.at(a, b) = hermitian(span_vectors[a], span_vectors[b]);
  HMat ginv(k);
  if (!hmat_inverse(gram, ginv)) return HMat(dim);
  HMat p(dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      Quat s;
      for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b)
          s += span_vectors[a][i] * ginv.at(a, b) * span_vectors[b][j].conj();
      p.at(i, j) = s;
    }
  return p;
}

HVec lift_complex(const CVec& v) {
  const int dim = static_cast<int>(v.size()) / 2;
  HVec q(dim);
  for (int l = 0; l < dim; ++l) {
    const auto& z1 = v[static_cast<std::size_t>(l)];
    const auto& z2 = v[static_cast<std::size_t>(l + dim)];
    // z1 + j z2 = Re z1 + (Im z1) i + (Re z2) j - (Im z2) k
    q[l] = {z1.real(), z1.imag(), z2.real(), -z2.imag()};
  }
  return q;
}

CVec unlift_quaternionic(const HVec& q) {
  CVec v(2 * static_cast<std::size_t>(q.n));
  for (int l = 0; l < q.n; ++l) {
    v[static_cast<std::size_t>(l)] = {q[l].w, q[l].x};
    v[static_cast<std::size_t>(l + q.n)] = {q[l].y, -q[l].z};
  }
  return v;
}

CVec sigma_involution(const CVec& v) {
  const std::size_t dim = v.size() / 2;
  CVec s(v.size());
  for (std::size_t l = 0; l < dim; ++l) {
    s[l] = -std::conj(v[l + dim]);
    s[l + dim] = std::conj(v[l]);
  }
  return s;
}

double line_distance(const HVec& a, const HVec& b) {
  const double na = a.norm(), nb = b.norm();
  if (na == 0 || nb == 0) return 1.0;
  const HVec au = a * (1.0 / na);
  const HVec bu = b * (1.0 / nb);
  const HVec r = au - bu * hermitian(bu, au);
  return r.norm();
}

}  // namespace hpn
