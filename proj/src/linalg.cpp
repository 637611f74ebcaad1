#include "hpn/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace hpn::linalg {

Lu lu_factor(Mat a) {
  Lu out;
  const int n = a.rows;
  if (n != a.cols) return out;
  out.piv.resize(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    int p = k;
    double best = std::abs(a.at(k, k));
    for (int i = k + 1; i < n; ++i) {
      double v = std::abs(a.at(i, k));
      if (v > best) {
        best = v;
        p = i;
      }
    }
    if (best == 0.0) return out;
    out.piv[static_cast<std::size_t>(k)] = p;
    if (p != k)
      for (int j = 0; j < n; ++j) std::swap(a.at(k, j), a.at(p, j));
    const double inv = 1.0 / a.at(k, k);
    for (int i = k + 1; i < n; ++i) {
      const double f = a.at(i, k) * inv;
      a.at(i, k) = f;
      if (f == 0.0) continue;
      for (int j = k + 1; j < n; ++j) a.at(i, j) -= f * a.at(k, j);
    }
  }
  out.a = std::move(a);
  out.ok = true;
  return out;
}

void lu_apply(const Lu& lu, std::vector<double>& b, int nrhs) {
  const int n = lu.a.rows;
  for (int k = 0; k < n; ++k) {
    const int p = lu.piv[static_cast<std::size_t>(k)];
    if (p != k)
      for (int j = 0; j < nrhs; ++j) std::swap(b[k * nrhs + j], b[p * nrhs + j]);
    for (int i = k + 1; i < n; ++i) {
      const double f = lu.a.at(i, k);
      if (f == 0.0) continue;
      for (int j = 0; j < nrhs; ++j) b[i * nrhs + j] -= f * b[k * nrhs + j];
    }
  }
  for (int j = 0; j < nrhs; ++j)
    for (int i = n - 1; i >= 0; --i) {
      double s = b[i * nrhs + j];
      for (int l = i + 1; l < n; ++l) s -= lu.a.at(i, l) * b[l * nrhs + j];
      b[i * nrhs + j] = s / lu.a.at(i, i);
    }
}

bool lu_solve(Mat a, std::vector<double>& b, int nrhs) {
  const int n = a.rows;
  if (n != a.cols || static_cast<int>(b.size()) != n * nrhs) return false;
  Lu lu = lu_factor(std::move(a));
  if (!lu.ok) return false;
  lu_apply(lu, b, nrhs);
  return true;
}

Svd jacobi_svd(const Mat& a_in) {
  // Work on W = A (or A^T when rows < cols) and orthogonalize column pairs.
  const bool transposed = a_in.rows < a_in.cols;
  Mat w = a_in;
  if (transposed) {
    w = Mat(a_in.cols, a_in.rows);
    for (int i = 0; i < a_in.rows; ++i)
      for (int j = 0; j < a_in.cols; ++j) w.at(j, i) = a_in.at(i, j);
  }
  const int m = w.rows, n = w.cols;
  Mat v(n, n);
  for (int i = 0; i < n; ++i) v.at(i, i) = 1.0;

  const double eps = 1e-15;
  for (int sweep = 0; sweep < 60; ++sweep) {
    bool rotated = false;
    for (int p = 0; p < n - 1; ++p)
      for (int q = p + 1; q < n; ++q) {
        double app = 0, aqq = 0, apq = 0;
        for (int i = 0; i < m; ++i) {
          app += w.at(i, p) * w.at(i, p);
          aqq += w.at(i, q) * w.at(i, q);
          apq += w.at(i, p) * w.at(i, q);
        }
        if (std::abs(apq) <= eps * std::sqrt(app * aqq) || apq == 0.0) continue;
        rotated = true;
        const double tau = (aqq - app) / (2.0 * apq);
        const double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (int i = 0; i < m; ++i) {
          const double wp = w.at(i, p), wq = w.at(i, q);
          w.at(i, p) = c * wp - s * wq;
          w.at(i, q) = s * wp + c * wq;
        }
        for (int i = 0; i < n; ++i) {
          const double vp = v.at(i, p), vq = v.at(i, q);
          v.at(i, p) = c * vp - s * vq;
          v.at(i, q) = s * vp + c * vq;
        }
      }
    if (!rotated) break;
  }

  Svd out;
  out.sigma.resize(n);
  Mat u(m, n);
  for (int j = 0; j < n; ++j) {
    double s2 = 0;
    for (int i = 0; i < m; ++i) s2 += w.at(i, j) * w.at(i, j);
    const double s = std::sqrt(s2);
    out.sigma[j] = s;
    if (s > 0)
      for (int i = 0; i < m; ++i) u.at(i, j) = w.at(i, j) / s;
  }
  // sort descending
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](int i, int j) { return out.sigma[i] > out.sigma[j]; });
  Mat us(m, n), vs(n, n);
  std::vector<double> ss(n);
  for (int j = 0; j < n; ++j) {
    ss[j] = out.sigma[idx[j]];
    for (int i = 0; i < m; ++i) us.at(i, j) = u.at(i, idx[j]);
    for (int i = 0; i < n; ++i) vs.at(i, j) = v.at(i, idx[j]);
  }
  out.sigma = std::move(ss);
  if (transposed) {
    out.u = std::move(vs);
    out.v = std::move(us);
  } else {
    out.u = std::move(us);
    out.v = std::move(vs);
  }
  return out;
}

std::vector<double> lstsq(const Mat& a, const std::vector<double>& b, double rcond) {
  Svd s = jacobi_svd(a);
  const int k = static_cast<int>(s.sigma.size());
  const double cutoff = s.sigma.empty() ? 0.0 : rcond * s.sigma[0];
  std::vector<double> x(a.cols, 0.0);
  for (int j = 0; j < k; ++j) {
    if (s.sigma[j] <= cutoff || s.sigma[j] == 0.0) continue;
    double uj_b = 0;
    for (int i = 0; i < a.rows; ++i) uj_b += s.u.at(i, j) * b[i];
    const double f = uj_b / s.sigma[j];
    for (int i = 0; i < a.cols; ++i) x[i] += f * s.v.at(i, j);
  }
  return x;
}

int rank(const Svd& s, double tol_rel) {
  if (s.sigma.empty() || s.sigma[0] == 0.0) return 0;
  int r = 0;
  for (double v : s.sigma)
    if (v > tol_rel * s.sigma[0]) ++r;
  return r;
}

}  // namespace hpn::linalg
