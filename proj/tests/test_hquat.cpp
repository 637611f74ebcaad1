#include <doctest.h>

#include <cmath>

#include "hpn/hquat.hpp"
#include "hpn/linalg.hpp"
#include "hpn/rng.hpp"

using namespace hpn;

namespace {

HVec random_hvec(Rng& rng, int dim) {
  HVec v(dim);
  for (int i = 0; i < dim; ++i) v[i] = rng.gaussian_quat();
  return v;
}

// independent oracle for quaternionic rank: real rank of the 4(dim) x 4k
// matrix whose column blocks are v, v i, v j, v k
int real_rank_oracle(const std::vector<HVec>& vs) {
  if (vs.empty()) return 0;
  const int dim = vs[0].n;
  linalg::Mat m(4 * dim, 4 * static_cast<int>(vs.size()));
  for (std::size_t a = 0; a < vs.size(); ++a) {
    const Quat units[4] = {Quat::one(), Quat::i(), Quat::j(), Quat::k()};
    for (int u = 0; u < 4; ++u)
      for (int l = 0; l < dim; ++l) {
        const Quat q = vs[a][l] * units[u];
        m.at(4 * l + 0, 4 * static_cast<int>(a) + u) = q.w;
        m.at(4 * l + 1, 4 * static_cast<int>(a) + u) = q.x;
        m.at(4 * l + 2, 4 * static_cast<int>(a) + u) = q.y;
        m.at(4 * l + 3, 4 * static_cast<int>(a) + u) = q.z;
      }
  }
  return linalg::rank(linalg::jacobi_svd(m), 1e-10) / 4;
}

}  // namespace

TEST_SUITE("hquat") {

TEST_CASE("hermitian form basics") {
  const HVec e1 = HVec::unit(3, 0), e2 = HVec::unit(3, 1);
  CHECK((hermitian(e1, e1) - Quat::one()).norm() < 1e-15);
  CHECK(hermitian(e1, e2).norm() < 1e-15);
  // <e1 j, e1> = conj(j) = -j
  CHECK((hermitian(e1 * Quat::j(), e1) + Quat::j()).norm() < 1e-15);
}

TEST_CASE("hermitian form is right-sesquilinear") {
  Rng rng(31);
  for (int t = 0; t < 50; ++t) {
    const HVec a = random_hvec(rng, 3), b = random_hvec(rng, 3);
    const Quat q = rng.gaussian_quat();
    CHECK((hermitian(a, b * q) - hermitian(a, b) * q).norm() < 1e-12);
    CHECK((hermitian(a * q, b) - q.conj() * hermitian(a, b)).norm() < 1e-12);
  }
}

TEST_CASE("right scalar action is associative") {
  Rng rng(32);
  const HVec v = random_hvec(rng, 4);
  const Quat p = rng.gaussian_quat(), q = rng.gaussian_quat();
  HVec lhs = (v * q) * p;
  HVec rhs = v * (q * p);
  CHECK((lhs - rhs).norm() < 1e-12);
}

TEST_CASE("right_span collapses a quaternionic line") {
  const HVec e1 = HVec::unit(3, 0);
  auto sr = right_span({e1, e1 * Quat::i()});
  CHECK(sr.rank == 1);
  sr = right_span({e1, HVec::unit(3, 1)});
  CHECK(sr.rank == 2);
}

TEST_CASE("right_span rank matches the real-rank oracle") {
  Rng rng(33);
  for (int t = 0; t < 10; ++t) {
    std::vector<HVec> vs;
    for (int a = 0; a < 5; ++a) vs.push_back(random_hvec(rng, 3));
    auto sr = right_span(vs);
    CHECK(sr.rank == real_rank_oracle(vs));
    CHECK(sr.rank == 3);
  }
}

TEST_CASE("right_span is idempotent") {
  Rng rng(34);
  std::vector<HVec> vs;
  for (int a = 0; a < 3; ++a) vs.push_back(random_hvec(rng, 4));
  auto sr = right_span(vs);
  auto sr2 = right_span(sr.basis);
  CHECK(sr2.rank == sr.rank);
  // mutual projection residual
  for (const HVec& b : sr2.basis) {
    HVec r = b;
    for (const HVec& u : sr.basis) r -= u * hermitian(u, b);
    CHECK(r.norm() < 1e-10);
  }
}

TEST_CASE("solve_endomorphism reproduces prescribed images") {
  Rng rng(35);
  const int dim = 3;
  std::vector<std::pair<HVec, HVec>> pairs;
  for (int a = 0; a < dim; ++a) pairs.emplace_back(random_hvec(rng, dim), random_hvec(rng, dim));
  auto es = solve_endomorphism(pairs, dim);
  REQUIRE(es.ok);
  CHECK(es.max_residual < 1e-12);
  // right-linearity on random vectors
  for (int t = 0; t < 100; ++t) {
    const HVec v = random_hvec(rng, dim);
    const Quat q = rng.gaussian_quat();
    const HVec lhs = es.m * (v * q);
    const HVec rhs = (es.m * v) * q;
    CHECK((lhs - rhs).norm() < 1e-10 * (1 + lhs.norm()));
  }
}

TEST_CASE("solve_endomorphism identity case") {
  const int dim = 2;
  std::vector<std::pair<HVec, HVec>> pairs;
  for (int a = 0; a < dim; ++a) pairs.emplace_back(HVec::unit(dim, a), HVec::unit(dim, a));
  auto es = solve_endomorphism(pairs, dim);
  REQUIRE(es.ok);
  CHECK((es.m - HMat::identity(dim)).fro_norm() < 1e-13);
}

TEST_CASE("solve_endomorphism builds a complex structure on H") {
  // n = 0: pairs (e1, e1 i) force left multiplication by i, M^2 = -1
  std::vector<std::pair<HVec, HVec>> pairs;
  pairs.emplace_back(HVec::unit(1, 0), HVec::unit(1, 0) * Quat::i());
  auto es = solve_endomorphism(pairs, 1);
  REQUIRE(es.ok);
  const HMat m2 = es.m * es.m;
  CHECK((m2 + HMat::identity(1)).fro_norm() < 1e-13);
}

TEST_CASE("underdetermined span is rejected") {
  Rng rng(36);
  std::vector<std::pair<HVec, HVec>> pairs;
  pairs.emplace_back(random_hvec(rng, 3), random_hvec(rng, 3));
  auto es = solve_endomorphism(pairs, 3);
  CHECK_FALSE(es.ok);
}

TEST_CASE("complex identification") {
  // n = 1: iota pairs coordinate l with coordinate l + 2
  CVec v(4, Cd(0));
  v[0] = Cd(1, 0);
  HVec q = lift_complex(v);
  CHECK((q[0] - Quat::one()).norm() < 1e-15);
  v.assign(4, Cd(0));
  v[2] = Cd(1, 0);
  q = lift_complex(v);
  CHECK((q[0] - Quat::j()).norm() < 1e-15);

  // iota intertwines multiplication by i with right multiplication by i
  Rng rng(37);
  for (int t = 0; t < 100; ++t) {
    CVec w(6);
    for (auto& c : w) c = rng.gaussian_complex();
    CVec wi = w;
    for (auto& c : wi) c *= Cd(0, 1);
    CHECK((lift_complex(wi) - lift_complex(w) * Quat::i()).norm() < 1e-13);
  }
}

TEST_CASE("sigma involution realizes right multiplication by j") {
  Rng rng(38);
  for (int t = 0; t < 100; ++t) {
    CVec w(6);
    for (auto& c : w) c = rng.gaussian_complex();
    const HVec lhs = lift_complex(w) * Quat::j();
    const HVec rhs = lift_complex(sigma_involution(w));
    CHECK((lhs - rhs).norm() < 1e-13);
  }
}

TEST_CASE("unlift inverts lift") {
  Rng rng(39);
  CVec w(8);
  for (auto& c : w) c = rng.gaussian_complex();
  const CVec back = unlift_quaternionic(lift_complex(w));
  for (std::size_t i = 0; i < w.size(); ++i) CHECK(std::abs(back[i] - w[i]) < 1e-15);
}

TEST_CASE("span projector projects") {
  Rng rng(40);
  std::vector<HVec> vs = {random_hvec(rng, 3), random_hvec(rng, 3)};
  const HMat p = span_projector(vs);
  CHECK((p * p - p).fro_norm() < 1e-11);
  CHECK((p.adjoint() - p).fro_norm() < 1e-11);
  for (const HVec& v : vs) CHECK((p * v - v).norm() < 1e-11);
}

TEST_CASE("line distance") {
  const HVec e1 = HVec::unit(2, 0), e2 = HVec::unit(2, 1);
  CHECK(line_distance(e1, e1 * Quat::j()) < 1e-15);
  CHECK(line_distance(e1, e2) == doctest::Approx(1.0));
}

}  // TEST_SUITE
