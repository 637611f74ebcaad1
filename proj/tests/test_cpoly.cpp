#include <doctest.h>

#include <cmath>

#include "hpn/cpoly.hpp"
#include "hpn/rng.hpp"

using namespace hpn;

namespace {
Poly from_roots(const std::vector<Cd>& roots) {
  Poly p = Poly::constant(1.0);
  for (Cd r : roots) p = p * Poly({-r, Cd(1)});
  return p;
}
}  // namespace

TEST_SUITE("cpoly") {

TEST_CASE("arithmetic and evaluation") {
  Poly p({Cd(1), Cd(0), Cd(1)});  // 1 + z^2
  Poly q({Cd(0), Cd(1)});         // z
  Poly r = p * q + Poly::constant(2.0);
  CHECK(std::abs(r.eval(Cd(2, 0)) - Cd(12, 0)) < 1e-14);  // 2 + z + z^3 at 2
  CHECK(r.degree() == 3);
  Poly d = r.derivative();  // 1 + 3z^2
  CHECK(std::abs(d.eval(Cd(2, 0)) - Cd(13, 0)) < 1e-14);
}

TEST_CASE("reversal") {
  Poly p({Cd(1), Cd(2), Cd(3)});
  Poly r = reverse_poly(p, 4);  // w^4 p(1/w) = w^2(3 + 2w + w^2)
  CHECK(r.degree() == 4);
  CHECK(order_at_zero(r) == 2);
  const Cd w(0.5, 0.25);
  CHECK(std::abs(r.eval(w) - std::pow(w, 4) * p.eval(Cd(1) / w)) < 1e-13);
}

TEST_CASE("gcd of polynomials with a known common factor") {
  const Poly g = from_roots({Cd(0.5, 0.2), Cd(-0.3, 0.0)});
  const Poly a = g * from_roots({Cd(1, 1)});
  const Poly b = g * from_roots({Cd(-1, 0.5), Cd(0.1, -0.7)});
  Poly got = approx_gcd(a, b);
  REQUIRE(got.degree() == 2);
  // same roots
  for (Cd r : {Cd(0.5, 0.2), Cd(-0.3, 0.0)})
    CHECK(std::abs(got.eval(r)) < 1e-8 * got.max_coeff());
}

TEST_CASE("coprime polynomials have trivial gcd") {
  Rng rng(41);
  for (int t = 0; t < 5; ++t) {
    std::vector<Cd> c1(5), c2(6);
    for (auto& c : c1) c = rng.gaussian_complex();
    for (auto& c : c2) c = rng.gaussian_complex();
    CHECK(approx_gcd(Poly(std::move(c1)), Poly(std::move(c2))).degree() == 0);
  }
}

TEST_CASE("gcd of a family") {
  const Poly g = from_roots({Cd(0.4, -0.1)});
  std::vector<Poly> fam = {g * from_roots({Cd(1)}), g * from_roots({Cd(2)}),
                           g * from_roots({Cd(0, 1), Cd(3)})};
  Poly got = approx_gcd_many(fam);
  REQUIRE(got.degree() == 1);
  CHECK(std::abs(got.eval(Cd(0.4, -0.1))) < 1e-9);
}

TEST_CASE("deconvolution undoes multiplication") {
  Rng rng(42);
  std::vector<Cd> gc(4), dc(3);
  for (auto& c : gc) c = rng.gaussian_complex();
  for (auto& c : dc) c = rng.gaussian_complex();
  const Poly g(std::move(gc)), d(std::move(dc));
  const Poly p = d * g;
  const Poly back = deconv_ls(p, d);
  REQUIRE(back.degree() == g.degree());
  for (int k = 0; k <= g.degree(); ++k)
    CHECK(std::abs(back.c[static_cast<std::size_t>(k)] - g.c[static_cast<std::size_t>(k)]) < 1e-10);
}

TEST_CASE("clustered roots with multiplicity") {
  // (z - 0.5)^3 (z + 1)
  const Poly p = from_roots({Cd(0.5), Cd(0.5), Cd(0.5), Cd(-1)});
  auto roots = roots_clustered(p, 1e-3);
  REQUIRE(roots.size() == 2);
  bool found3 = false, found1 = false;
  for (auto& [r, m] : roots) {
    if (std::abs(r - Cd(0.5)) < 1e-3 && m == 3) found3 = true;
    if (std::abs(r - Cd(-1)) < 1e-6 && m == 1) found1 = true;
  }
  CHECK(found3);
  CHECK(found1);
}

TEST_CASE("minors of a polynomial matrix") {
  // rows (1, z, z^2), (0, 1, 2z): 2x2 minors are (1, 2z, z^2)
  std::vector<std::vector<Poly>> rows(2);
  rows[0] = {Poly::constant(1.0), Poly({Cd(0), Cd(1)}), Poly({Cd(0), Cd(0), Cd(1)})};
  rows[1] = {Poly::zero(), Poly::constant(1.0), Poly({Cd(0), Cd(2)})};
  auto minors = polynomial_minors(rows);
  REQUIRE(minors.size() == 3);
  CHECK(minors[0].degree() == 0);
  CHECK(std::abs(minors[1].eval(Cd(3)) - Cd(6)) < 1e-14);
  CHECK(std::abs(minors[2].eval(Cd(3)) - Cd(9)) < 1e-14);
}

TEST_CASE("subsets are lexicographic") {
  auto s = subsets(4, 2);
  REQUIRE(s.size() == 6);
  CHECK(s[0] == std::vector<int>{0, 1});
  CHECK(s[5] == std::vector<int>{2, 3});
}

}  // TEST_SUITE
