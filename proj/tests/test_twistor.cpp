#include "branchfall/corpus.hpp"
#include "branchfall/error.hpp"
#include "branchfall/twistor.hpp"

#include <doctest.h>

#include <Eigen/Geometry>

#include <random>

using namespace branchfall;

namespace {

Vec4 random_unit(std::mt19937& rng) {
  std::normal_distribution<double> n(0, 1);
  return Vec4(n(rng), n(rng), n(rng), n(rng)).normalized();
}

Bivector random_plane(std::mt19937& rng) {
  Vec4 u = random_unit(rng), v = random_unit(rng);
  v = (v - v.dot(u) * u).normalized();
  return wedge(u, v);
}

Vec4 J(const Vec4& v) { return Vec4(-v(1), v(0), -v(3), v(2)); }

// winding of p around |z| = r, a direct argument-principle count
int winding(const std::vector<cplx>& p, double r) {
  auto eval = [&](cplx z) {
    cplx s = 0;
    for (std::size_t i = p.size(); i-- > 0;) s = s * z + p[i];
    return s;
  };
  const int m = 20000;
  double turn = 0;
  cplx prev = eval(r);
  for (int i = 1; i <= m; ++i) {
    const cplx cur = eval(std::polar(r, 2 * M_PI * i / m));
    turn += std::arg(cur / prev);
    prev = cur;
  }
  return static_cast<int>(std::lround(turn / (2 * M_PI)));
}

RationalFunction ratio(Poly n, Poly d) { return {std::move(n), std::move(d)}; }
Poly zpow(int m, ExactComplex c = ExactComplex(1)) { return Poly::monomial(std::move(c), m); }

cplx cross_ratio(cplx a, cplx b, cplx c, cplx d) { return (a - c) * (b - d) / ((a - d) * (b - c)); }
cplx stereo(const Vec3& j) { return cplx(j(1), j(2)) / (1 - j(0)); }

}  // namespace

TEST_CASE("planes and sphere pairs") {
  const Vec4 e1(1, 0, 0, 0), e2(0, 1, 0, 0), e3(0, 0, 1, 0), e4(0, 0, 0, 1);
  auto s = plane_to_spheres(wedge(e1, e2));
  CHECK((s.jplus - Vec3(1, 0, 0)).norm() < 1e-15);
  CHECK((s.jminus - Vec3(1, 0, 0)).norm() < 1e-15);
  auto r = plane_to_spheres(wedge(e2, e1));
  CHECK((r.jplus + s.jplus).norm() < 1e-15);
  CHECK((r.jminus + s.jminus).norm() < 1e-15);

  Bivector sd = (wedge(e1, e2) + wedge(e3, e4)) / std::sqrt(2.0);
  CHECK_THROWS_AS(plane_to_spheres(sd), Error);
  CHECK_THROWS_AS(plane_to_spheres(2 * wedge(e1, e2)), Error);

  std::mt19937 rng(4);
  for (int k = 0; k < 200; ++k) {
    const Bivector P = random_plane(rng);
    auto p = plane_to_spheres(P);
    CHECK(std::abs(p.jplus.norm() - 1) < 1e-12);
    CHECK(std::abs(p.jminus.norm() - 1) < 1e-12);
    CHECK((spheres_to_plane(p) - P).norm() < 1e-10);
  }
  // complex lines all share the self-dual half
  Vec3 first_minus;
  for (int k = 0; k < 10; ++k) {
    const Vec4 v = random_unit(rng);
    auto p = plane_to_spheres(wedge(v, J(v)));
    CHECK((p.jplus - Vec3(1, 0, 0)).norm() < 1e-12);
    if (k == 0) first_minus = p.jminus;
    else CHECK((p.jminus - first_minus).norm() > 1e-6);
  }
}

TEST_CASE("tangent spheres along surfaces") {
  std::mt19937 rng(8);
  std::uniform_real_distribution<double> u(-0.6, 0.6);
  for (int k = 0; k < 50; ++k) {
    const cplx z(u(rng), u(rng));
    auto s = tangent_spheres(corpus::cusp_family().at(Rational(1, 10)), z == cplx(0) ? cplx(0.1) : z);
    CHECK((s.jplus - Vec3(1, 0, 0)).norm() < 1e-10);
  }
  // both sphere maps of a minimal disk are Mobius images of its Gauss maps
  auto fam = corpus::minimal_family();
  auto spec = fam.at(Rational(1, 10));
  auto g = gauss_maps(*disk_to_weierstrass(spec));
  const cplx z[4] = {cplx(0.3, 0.1), cplx(-0.2, 0.4), cplx(0.5, -0.3), cplx(-0.1, -0.6)};
  Vec3 jp[4], jm[4];
  for (int i = 0; i < 4; ++i) {
    auto s = tangent_spheres(spec, z[i]);
    jp[i] = s.jplus, jm[i] = s.jminus;
  }
  auto matches = [](cplx a, cplx b) { return std::abs(a - b) < 1e-8 || std::abs(a - std::conj(b)) < 1e-8; };
  CHECK(matches(cross_ratio(g.plus(z[0]), g.plus(z[1]), g.plus(z[2]), g.plus(z[3])),
                cross_ratio(stereo(jp[0]), stereo(jp[1]), stereo(jp[2]), stereo(jp[3]))));
  CHECK(matches(cross_ratio(g.minus(z[0]), g.minus(z[1]), g.minus(z[2]), g.minus(z[3])),
                cross_ratio(stereo(jm[0]), stereo(jm[1]), stereo(jm[2]), stereo(jm[3]))));
}

TEST_CASE("lift area") {
  auto flat = lift_area(corpus::plane(), 0.5);
  CHECK(flat.lift_area == 0);
  CHECK(flat.area > 0);

  auto g = lift_area(corpus::graph(), 0.3);
  CHECK(g.lift_area > 0);
  CHECK(g.lift_area <= g.bound * (1 + 1e-12));

  // bounded along the minimal family
  auto fam = corpus::minimal_family();
  double lo = 1e300, hi = 0;
  for (int n : {100, 1000, 10000}) {
    auto l = lift_area(fam.at(Rational(1, n)), 0.05);
    CHECK(std::isfinite(l.lift_area));
    CHECK(l.lift_area <= l.bound * (1 + 1e-12));
    lo = std::min(lo, l.lift_area), hi = std::max(hi, l.lift_area);
  }
  CHECK(hi - lo < 1e-3 * hi);
}

TEST_CASE("roots in a disk against the argument principle") {
  std::mt19937 rng(12);
  std::uniform_real_distribution<double> u(-1, 1), rad(0.1, 2);
  for (int k = 0; k < 100; ++k) {
    std::vector<cplx> p(2 + k % 8);
    for (auto& c : p) c = cplx(u(rng), u(rng));
    const double r = rad(rng);
    CHECK(roots_in_disk(p, r) == winding(p, r));
  }
  CHECK(roots_in_disk({0, 0, 1}, 1e-300) == 2);
  CHECK(roots_in_disk({3}, 1) == 0);
}

TEST_CASE("pulled-back sphere area") {
  // z^k covers |w| <= delta^k k times: k * delta^{2k} / (1 + delta^{2k})
  for (int k : {1, 2, 3}) {
    const double d = 0.7, x = std::pow(d, 2 * k);
    CHECK(normalized_area(ratio(zpow(k), zpow(0)), d) == doctest::Approx(k * x / (1 + x)).epsilon(1e-10));
  }
  // the same average by counting preimages of many sphere points
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> h(-1, 1), phi(0, 2 * M_PI);
  std::vector<cplx> ws;
  for (int i = 0; i < 20000; ++i) {
    const double y = h(rng);
    ws.push_back(std::polar(std::sqrt((1 + y) / (1 - y)), phi(rng)));
  }
  const auto g = ratio(zpow(2) - zpow(0, ExactComplex(Rational(1, 10))), zpow(1));
  CHECK(mean_preimages(g, 0.5, ws) == doctest::Approx(normalized_area(g, 0.5)).epsilon(0.03));
  CHECK(mean_preimages(ratio({}, zpow(0)), 0.5, ws) == 0);
  CHECK(mean_preimages(ratio(zpow(0), {}), 0.5, ws) == 0);
}

TEST_CASE("vertical defects") {
  // roots of w z^3 - z + t: exactly one stays near t
  auto plus = vertical_defect(
      [](const Rational& t) { return ratio(zpow(1) - zpow(0, ExactComplex(t)), zpow(3)); }, ratio(zpow(0), zpow(2)));
  CHECK(plus.method == "roots");
  CHECK(plus.converged);
  CHECK(plus.defect == doctest::Approx(1).epsilon(1e-6));
  CHECK(plus.area_defect == doctest::Approx(1).epsilon(1e-3));

  // 3z^2 - 2wz + t: one root escapes toward 0 with t
  auto cusp = vertical_defect(
      [](const Rational& t) { return ratio(zpow(2, 3) + zpow(0, ExactComplex(t)), zpow(1, 2)); },
      ratio(zpow(1, 3), zpow(0, 2)));
  CHECK(cusp.defect == doctest::Approx(1).epsilon(1e-6));
  CHECK(cusp.area_defect == doctest::Approx(1).epsilon(1e-3));

  auto same = vertical_defect([](const Rational&) { return ratio(zpow(2), zpow(0)); }, ratio(zpow(2), zpow(0)));
  CHECK(same.defect == 0);
  CHECK(std::abs(same.area_defect) < 1e-12);

  DefectOptions big;
  big.max_root_degree = 1;
  auto quad = vertical_defect(
      [](const Rational& t) { return ratio(zpow(1) - zpow(0, ExactComplex(t)), zpow(3)); }, ratio(zpow(0), zpow(2)),
      big);
  CHECK(quad.method == "quadrature");
  CHECK(quad.defect == doctest::Approx(1).epsilon(1e-3));
}

TEST_CASE("current class") {
  auto c = current_class(0, 1);
  CHECK(c.kT == -1);
  CHECK(c.kN == 1);
  c = current_class(1.0000001, 0.9999);
  CHECK(c.kT == -2);
  CHECK(c.kN == 0);
  c = current_class(0, 0);
  CHECK(c.kT == 0);
  CHECK(c.kN == 0);
  CHECK_THROWS_AS(current_class(0.5, 0), Error);
}

TEST_CASE("twistor fallouts of the corpus") {
  auto cusp = twistor_fallout(corpus::cusp_family());
  CHECK(cusp.current.plus == 0);
  CHECK(cusp.current.minus == 1);
  CHECK(cusp.current.kT == -1);
  CHECK(cusp.current.kN == 1);

  auto minimal = twistor_fallout(corpus::minimal_family());
  CHECK(minimal.current.plus == 1);
  CHECK(minimal.current.minus == 1);
  CHECK(minimal.current.kT == -2);
  CHECK(minimal.current.kN == 0);
  CHECK(minimal.plus.warnings.empty());

  // reversal swaps the two factors
  auto rev = twistor_fallout(reverse_orientation(corpus::cusp_family()));
  CHECK(rev.current.plus == 1);
  CHECK(rev.current.minus == 0);
  CHECK(rev.current.kT == -1);
  CHECK(rev.current.kN == -1);

  // holomorphic families never move the self-dual lift
  FamilySpec hol;
  hol.w1 = {{{ExactComplex(1)}, 0, 3, 0}};
  hol.w2 = {{{ExactComplex(1)}, 0, 4, 0}, {{ExactComplex(0), ExactComplex(1)}, 0, 2, 0}};
  auto h = twistor_fallout(hol);
  CHECK(h.current.plus == 0);
  CHECK(h.current.kT + h.current.kN == 0);

  CHECK_THROWS_AS(twistor_fallout(FamilySpec::constant(corpus::writhe20(), {Rational(1, 10)})), Error);
}
