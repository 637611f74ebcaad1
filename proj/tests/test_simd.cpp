// Equivalence of the scalar reference kernels and the AVX2 variants: both
// paths avoid FMA and share the association order, so results must match
// bitwise on every input.
#include <doctest.h>

#include <vector>

#include "hpn/rng.hpp"
#include "hpn/simd.hpp"

using namespace hpn;

namespace {

std::vector<Quat> random_quats(Rng& rng, std::size_t m) {
  std::vector<Quat> v(m);
  for (Quat& q : v) q = rng.gaussian_quat();
  return v;
}

bool bits_equal(const std::vector<Quat>& a, const std::vector<Quat>& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!(a[i] == b[i])) return false;
  return true;
}

}  // namespace

TEST_SUITE("simd") {

TEST_CASE("backend is selected") {
  CHECK((simd::active() == simd::Backend::scalar || simd::active() == simd::Backend::avx2));
}

TEST_CASE("qmul matches scalar bitwise") {
  if (!simd::detail::avx2_supported()) return;
  Rng rng(101);
  for (std::size_t m : {1u, 4u, 37u, 256u}) {
    auto a = random_quats(rng, m), b = random_quats(rng, m);
    std::vector<Quat> r1(m), r2(m);
    simd::detail::scalar_table().qmul(a.data(), b.data(), r1.data(), m);
    simd::detail::avx2_table().qmul(a.data(), b.data(), r2.data(), m);
    CHECK(bits_equal(r1, r2));
  }
}

TEST_CASE("qmul_acc and qconj_mul match bitwise") {
  if (!simd::detail::avx2_supported()) return;
  Rng rng(103);
  const std::size_t m = 123;
  auto a = random_quats(rng, m), b = random_quats(rng, m), acc = random_quats(rng, m);
  auto acc2 = acc;
  simd::detail::scalar_table().qmul_acc(a.data(), b.data(), acc.data(), m);
  simd::detail::avx2_table().qmul_acc(a.data(), b.data(), acc2.data(), m);
  CHECK(bits_equal(acc, acc2));

  std::vector<Quat> r1(m), r2(m);
  simd::detail::scalar_table().qconj_mul(a.data(), b.data(), r1.data(), m);
  simd::detail::avx2_table().qconj_mul(a.data(), b.data(), r2.data(), m);
  CHECK(bits_equal(r1, r2));
}

TEST_CASE("saxpy, sscale, qnorm2 match bitwise") {
  if (!simd::detail::avx2_supported()) return;
  Rng rng(107);
  const std::size_t m = 1001;
  std::vector<double> x(m), y1(m), y2(m);
  for (std::size_t i = 0; i < m; ++i) {
    x[i] = rng.gaussian();
    y1[i] = rng.gaussian();
    y2[i] = y1[i];
  }
  simd::detail::scalar_table().saxpy(1.7, x.data(), y1.data(), m);
  simd::detail::avx2_table().saxpy(1.7, x.data(), y2.data(), m);
  CHECK(y1 == y2);
  simd::detail::scalar_table().sscale(-0.3, x.data(), y1.data(), m);
  simd::detail::avx2_table().sscale(-0.3, x.data(), y2.data(), m);
  CHECK(y1 == y2);

  auto q = random_quats(rng, 517);
  CHECK(simd::detail::scalar_table().qnorm2(q.data(), q.size()) ==
        simd::detail::avx2_table().qnorm2(q.data(), q.size()));
}

TEST_CASE("qgemm matches bitwise") {
  if (!simd::detail::avx2_supported()) return;
  Rng rng(109);
  for (int n : {1, 2, 3, 4}) {
    const std::size_t count = 57;
    const std::size_t blk = static_cast<std::size_t>(n) * n;
    auto a = random_quats(rng, count * blk), b = random_quats(rng, count * blk);
    std::vector<Quat> c1(count * blk), c2(count * blk);
    simd::detail::scalar_table().qgemm(a.data(), b.data(), c1.data(), n, count);
    simd::detail::avx2_table().qgemm(a.data(), b.data(), c2.data(), n, count);
    CHECK(bits_equal(c1, c2));
  }
}

TEST_CASE("qmul agrees with the Quat operator") {
  Rng rng(113);
  const std::size_t m = 64;
  auto a = random_quats(rng, m), b = random_quats(rng, m);
  std::vector<Quat> r(m);
  simd::qmul(a.data(), b.data(), r.data(), m);
  for (std::size_t i = 0; i < m; ++i) CHECK((r[i] == a[i] * b[i]));
}

}  // TEST_SUITE
