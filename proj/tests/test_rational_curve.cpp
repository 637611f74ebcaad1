#include <doctest.h>

#include <cmath>
#include <cstdio>

#include "hpn/errors.hpp"
#include "hpn/rational_curve.hpp"
#include "hpn/rng.hpp"

using namespace hpn;

namespace {

Poly mono(int k) {
  std::vector<Cd> c(static_cast<std::size_t>(k) + 1, Cd(0));
  c.back() = Cd(1);
  return Poly(std::move(c));
}

RationalCurve rational_normal_cubic() {
  RationalCurve c;
  c.n = 1;
  c.coords = {mono(0), mono(1), mono(2), mono(3)};
  return c;
}

double span_distance(const std::vector<CVec>& a, const std::vector<CVec>& b) {
  // max over a-basis of distance to span(b)
  double worst = 0;
  for (const CVec& v : a) {
    CVec r = v;
    for (const CVec& u : b) {
      const Cd c = cvec_dot(u, r);
      for (std::size_t i = 0; i < r.size(); ++i) r[i] -= c * u[i];
    }
    worst = std::max(worst, cvec_norm(r));
  }
  return worst;
}

}  // namespace

TEST_SUITE("rational") {

TEST_CASE("evaluation in both charts") {
  RationalCurve c;
  c.n = 1;
  c.coords = {mono(0), mono(1), Poly::zero(), Poly::zero()};  // (1, z, 0, 0)
  auto osc = osculate_curve(c, 1, 1);
  // chart B at w = 0.5 is the direction of (0.5, 1, 0, 0)
  CVec v = evaluate_curve(osc, 1, Cd(0.5));
  const double scale = 1.0 / std::sqrt(1.25);
  CHECK(std::abs(v[0] - Cd(0.5) * scale) < 1e-14);
  CHECK(std::abs(v[1] - Cd(1.0) * scale) < 1e-14);

  v = evaluate_curve(osc, 0, Cd(0));
  CHECK(std::abs(v[0] - Cd(1)) < 1e-14);
  CHECK(std::abs(v[1]) < 1e-14);
}

TEST_CASE("full flag of the rational normal curve") {
  auto osc = osculate_curve(rational_normal_cubic(), 3, 3);
  ComplexFlag flag = osculating_space(osc, 3, 0, Cd(1.0));
  CHECK(flag.spaces[3].size() == 4);
  // W_0 at z = 1 is the direction of (1,1,1,1)
  CVec h = evaluate_curve(osc, 0, Cd(1.0));
  CHECK(span_distance({h}, flag.spaces[0]) < 1e-12);
  // no ramification anywhere
  for (int chart = 0; chart < 2; ++chart)
    for (int k = 0; k <= 3; ++k) {
      CHECK(osc.levels[chart][static_cast<std::size_t>(k)].content.degree() <= 0);
    }
}

TEST_CASE("cusp tangent is deflated exactly") {
  // h = (1, z^2, z^3, 0): the limit of tangents through the cusp at 0 is
  // span{e1, e2}. Oracle: spans of (h, h') at small z converge to it.
  RationalCurve c;
  c.n = 1;
  c.coords = {mono(0), mono(2), mono(3), Poly::zero()};
  auto osc = osculate_curve(c, 1, 1);
  ComplexFlag flag = osculating_space(osc, 1, 0, Cd(0));
  REQUIRE(flag.spaces[1].size() == 2);
  CVec e1(4, Cd(0)), e2(4, Cd(0));
  e1[0] = 1;
  e2[1] = 1;
  CHECK(span_distance({e1, e2}, flag.spaces[1]) < 1e-10);

  // numerical-limit oracle
  for (int t = 0; t < 8; ++t) {
    const double th = 6.2831853071795864769 * t / 8.0;
    const Cd z = 1e-3 * Cd(std::cos(th), std::sin(th));
    CVec h(4), hd(4);
    for (int l = 0; l < 4; ++l) {
      h[static_cast<std::size_t>(l)] = c.coords[static_cast<std::size_t>(l)].eval(z);
      hd[static_cast<std::size_t>(l)] = c.coords[static_cast<std::size_t>(l)].derivative().eval(z);
    }
    auto on = cvec_orthonormalize({h, hd});
    REQUIRE(on.size() == 2);
    CHECK(span_distance(on, flag.spaces[1]) < 5e-3);
  }
  // and the content records the cusp
  CHECK(osc.levels[0][1].content.degree() == 1);
}

TEST_CASE("degenerate level is detected") {
  RationalCurve c;
  c.n = 1;
  c.coords = {mono(0), mono(2), mono(3), Poly::zero()};
  CHECK_THROWS_AS(osculate_curve(c, 3, 3), PreconditionError);
}

TEST_CASE("osculating spaces are lift independent") {
  Rng rng(55);
  RationalCurve c;
  c.n = 1;
  c.coords = {mono(0), mono(1), mono(2), mono(3)};
  RationalCurve scaled = c;
  const Poly f({Cd(0.5, 1.0), Cd(1.0, -0.25)});
  for (Poly& p : scaled.coords) p = p * f;
  auto osc1 = osculate_curve(c, 1, 1);
  auto osc2 = osculate_curve(scaled, 1, 1);
  for (const Cd z : {Cd(0.3, 0.2), Cd(-0.7, 0.1)}) {
    auto f1 = osculating_space(osc1, 1, 0, z);
    auto f2 = osculating_space(osc2, 1, 0, z);
    CHECK(span_distance(f1.spaces[1], f2.spaces[1]) < 1e-9);
  }
}

TEST_CASE("quaternionic locus classifies the spec curves") {
  // (1, z, 0, 0): admissible everywhere
  RationalCurve a;
  a.n = 1;
  a.coords = {mono(0), mono(1), Poly::zero(), Poly::zero()};
  auto osc_a = osculate_curve(a, 1, 1);
  auto la = quaternionic_locus(osc_a, 24);
  CHECK(la.dips.empty());
  CHECK(la.min_margin > 0.3);

  // (1, 0, z, 0): W_1 is quaternionic everywhere
  RationalCurve b;
  b.n = 1;
  b.coords = {mono(0), Poly::zero(), mono(1), Poly::zero()};
  auto osc_b = osculate_curve(b, 1, 1);
  auto lb = quaternionic_locus(osc_b, 24);
  CHECK(lb.min_margin < 1e-10);
  CHECK(!lb.dips.empty());
}

TEST_CASE("locus margin agrees with a rank oracle at random points") {
  // oracle: real rank of [W_1 basis | j W_1 basis]
  RationalCurve c = rational_normal_cubic();
  auto osc = osculate_curve(c, 1, 1);
  auto locus = quaternionic_locus(osc, 32);
  CHECK(locus.dips.empty());
  Rng rng(66);
  for (int t = 0; t < 50; ++t) {
    const Cd z(2 * rng.uniform() - 1, 2 * rng.uniform() - 1);
    auto flag = osculating_space(osc, 1, 0, z);
    std::vector<CVec> all = flag.spaces[1];
    for (const CVec& v : flag.spaces[1]) all.push_back(sigma_involution(v));
    auto on = cvec_orthonormalize(all, 1e-8);
    CHECK(on.size() == 4);
  }
}

TEST_CASE("curve file round trip is exact") {
  Rng rng(77);
  RationalCurve c;
  c.n = 1;
  for (int l = 0; l < 4; ++l) {
    std::vector<Cd> coeffs(4);
    for (auto& v : coeffs) v = rng.gaussian_complex();
    c.coords.push_back(Poly(std::move(coeffs)));
  }
  const std::string path = "/tmp/hpn_curve_test.txt";
  c.save(path);
  RationalCurve back = RationalCurve::load(path);
  REQUIRE(back.n == c.n);
  for (int l = 0; l < 4; ++l) {
    REQUIRE(back.coords[static_cast<std::size_t>(l)].c.size() ==
            c.coords[static_cast<std::size_t>(l)].c.size());
    for (std::size_t k = 0; k < c.coords[static_cast<std::size_t>(l)].c.size(); ++k)
      CHECK(back.coords[static_cast<std::size_t>(l)].c[k] == c.coords[static_cast<std::size_t>(l)].c[k]);
  }
  std::remove(path.c_str());
}

}  // TEST_SUITE
