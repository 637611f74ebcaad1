// Small dense real linear algebra: LU with partial pivoting, one-sided Jacobi
// SVD, and least squares through either. Problem sizes here stay below ~100,
// so simplicity and determinism win over BLAS.
#pragma once

#include <vector>

namespace hpn::linalg {

struct Mat {
  int rows = 0, cols = 0;
  std::vector<double> a;  // row-major

  Mat() = default;
  Mat(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0.0) {}
  double& at(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
  double at(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }
};

// Solves A X = B in place for square A; B holds nrhs columns (row-major).
// Returns false if A is numerically singular.
bool lu_solve(Mat a, std::vector<double>& b, int nrhs);

// Factored form for repeated solves against one matrix.
struct Lu {
  Mat a;
  std::vector<int> piv;
  bool ok = false;
};
Lu lu_factor(Mat a);
void lu_apply(const Lu& lu, std::vector<double>& b, int nrhs);

// One-sided Jacobi SVD of A (any shape): A = U diag(sigma) V^T with singular
// values sorted descending. U is rows x min(r,c), V is cols x min(r,c).
struct Svd {
  Mat u, v;
  std::vector<double> sigma;
};
Svd jacobi_svd(const Mat& a);

// Minimum-norm least squares via the SVD; singular values below
// rcond * sigma_max are treated as zero.
std::vector<double> lstsq(const Mat& a, const std::vector<double>& b, double rcond = 1e-13);

int rank(const Svd& s, double tol_rel);

}  // namespace hpn::linalg
