#include <doctest.h>

#include <cmath>

#include "hpn/linalg.hpp"
#include "hpn/rng.hpp"

using namespace hpn;
using linalg::Mat;

TEST_SUITE("linalg") {

TEST_CASE("lu solves a random system") {
  Rng rng(5);
  const int n = 12;
  Mat a(n, n);
  std::vector<double> xref(n), b(n, 0.0);
  for (int i = 0; i < n; ++i) {
    xref[i] = rng.gaussian();
    for (int j = 0; j < n; ++j) a.at(i, j) = rng.gaussian();
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) b[i] += a.at(i, j) * xref[j];
  CHECK(linalg::lu_solve(a, b, 1));
  for (int i = 0; i < n; ++i) CHECK(b[i] == doctest::Approx(xref[i]).epsilon(1e-10));
}

TEST_CASE("jacobi svd reconstructs and sorts") {
  Rng rng(6);
  Mat a(9, 5);
  for (double& v : a.a) v = rng.gaussian();
  auto svd = linalg::jacobi_svd(a);
  for (std::size_t i = 1; i < svd.sigma.size(); ++i) CHECK(svd.sigma[i - 1] >= svd.sigma[i]);
  // A v_j = sigma_j u_j
  for (int j = 0; j < 5; ++j) {
    for (int i = 0; i < 9; ++i) {
      double av = 0;
      for (int l = 0; l < 5; ++l) av += a.at(i, l) * svd.v.at(l, j);
      CHECK(av == doctest::Approx(svd.sigma[j] * svd.u.at(i, j)).epsilon(1e-9));
    }
  }
}

TEST_CASE("svd detects rank deficiency") {
  Mat a(6, 4);
  Rng rng(8);
  // rank 2: columns 2,3 are combinations of 0,1
  for (int i = 0; i < 6; ++i) {
    a.at(i, 0) = rng.gaussian();
    a.at(i, 1) = rng.gaussian();
    a.at(i, 2) = 2 * a.at(i, 0) - a.at(i, 1);
    a.at(i, 3) = a.at(i, 0) + 3 * a.at(i, 1);
  }
  auto svd = linalg::jacobi_svd(a);
  CHECK(linalg::rank(svd, 1e-10) == 2);
}

TEST_CASE("least squares minimizes the residual") {
  Rng rng(9);
  Mat a(10, 3);
  std::vector<double> b(10);
  for (double& v : a.a) v = rng.gaussian();
  for (double& v : b) v = rng.gaussian();
  auto x = linalg::lstsq(a, b);
  // residual orthogonal to the column space
  for (int j = 0; j < 3; ++j) {
    double dot = 0;
    for (int i = 0; i < 10; ++i) {
      double r = b[i];
      for (int l = 0; l < 3; ++l) r -= a.at(i, l) * x[l];
      dot += a.at(i, j) * r;
    }
    CHECK(std::abs(dot) < 1e-10);
  }
}

}  // TEST_SUITE
