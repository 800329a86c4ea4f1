#include "branchfall/corpus.hpp"
#include "branchfall/disk_eval.hpp"
#include "branchfall/error.hpp"
#include "branchfall/surface.hpp"

#include <doctest.h>

#include <random>

using namespace branchfall;

namespace {

Poly zpow(int m, ExactComplex c = ExactComplex(1)) { return Poly::monomial(std::move(c), m); }

std::vector<cplx> sample_points(double radius, int n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(0, 1);
  std::vector<cplx> out;
  for (int i = 0; i < n; ++i) out.push_back(std::polar(radius * std::sqrt(u(rng)), 2 * M_PI * u(rng)));
  return out;
}

}  // namespace

TEST_CASE("eval_disk on the corpus") {
  Vec4 p = eval_disk(corpus::cusp(), 1.0);
  CHECK((p - Vec4(1, 0, 1, 0)).norm() < 1e-15);
  p = eval_disk(corpus::minimal_limit(), 1.0);
  CHECK((p - Vec4(0.5, 0, 0.05, 0)).norm() < 1e-15);
  CHECK(eval_disk(corpus::writhe20(), 0.0).norm() == 0);
  CHECK_THROWS_AS(eval_disk(corpus::cusp(), 1.5), Error);
}

TEST_CASE("scaled evaluation matches direct evaluation and survives tiny radii") {
  auto spec = corpus::writhe20();
  DiskEvaluator<long double> ev(spec);
  for (double r : {0.9, 0.5}) {
    for (double phi : {0.1, 2.0}) {
      Vec4 direct = eval_disk(spec, std::polar(r, phi));
      auto scaled = ev.scaled(r, phi);
      for (int i = 0; i < 4; ++i) CHECK(std::abs(double(scaled(i)) * std::pow(r, 3) - direct(i)) < 1e-14);
    }
  }
  // r^110 underflows double at r = 1e-3 but the ratio F / r^N stays O(1)
  auto s = ev.scaled(1e-3L, 0.3L);
  CHECK(std::abs(double(s(0)) - std::cos(0.9)) < 1e-12);
  CHECK(std::abs(double(s(2))) < 1e-140);
  CHECK(std::abs(double(s(2))) > 0);
}

TEST_CASE("analytic derivatives") {
  auto j = eval_derivatives(corpus::cusp(), 0.0);
  CHECK(j.Fx.norm() == 0);
  CHECK(j.Fy.norm() == 0);
  j = eval_derivatives(corpus::plane(), cplx(0.3, -0.2));
  CHECK((j.Fx - Vec4(1, 0, 0, 0)).norm() == 0);
  CHECK((j.Fy - Vec4(0, 1, 0, 0)).norm() == 0);

  // central differences as an independent check on a non-holomorphic spec
  auto spec = corpus::minimal_family().at(Rational(1, 10));
  cplx z(0.31, 0.17);
  double h = 1e-5;
  auto jet = eval_derivatives(spec, z);
  Vec4 fx = (eval_disk(spec, z + h) - eval_disk(spec, z - h)) / (2 * h);
  Vec4 fy = (eval_disk(spec, z + cplx(0, h)) - eval_disk(spec, z - cplx(0, h))) / (2 * h);
  CHECK((fx - jet.Fx).norm() < 1e-9);
  CHECK((fy - jet.Fy).norm() < 1e-9);
  Vec4 fxx = (eval_disk(spec, z + h) - 2 * eval_disk(spec, z) + eval_disk(spec, z - h)) / (h * h);
  CHECK((fxx - jet.Fxx).norm() < 1e-4);
  Vec4 fxy = (eval_derivatives(spec, z + cplx(0, h)).Fx - eval_derivatives(spec, z - cplx(0, h)).Fx) / (2 * h);
  CHECK((fxy - jet.Fxy).norm() < 1e-8);

  // the family is immersed at z = t
  CHECK(immersed_at(spec, cplx(0.1, 0)));
}

TEST_CASE("branching data") {
  auto b = branching_data(corpus::cusp());
  CHECK(b.order == 2);
  CHECK((b.plane.e1 - Vec4(1, 0, 0, 0)).norm() < 1e-15);
  CHECK((b.plane.e2 - Vec4(0, 1, 0, 0)).norm() < 1e-15);
  CHECK(det4(b.plane.e1, b.plane.e2, b.plane.e3, b.plane.e4) == doctest::Approx(1));
  CHECK(branching_data(corpus::writhe20()).order == 3);
  CHECK(branching_data(corpus::minimal_limit()).order == 3);

  BranchedDiskSpec anti{{{{ExactComplex(1)}, 0, 2}}, {}, 1.0};
  try {
    branching_data(anti);
    FAIL("expected not_branched");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::not_branched);
  }

  // leading vector: F(z) / z^N -> (a, b) along rays
  for (const auto& spec : {corpus::cusp(), corpus::minimal_limit(), corpus::writhe20()}) {
    auto bd = branching_data(spec);
    for (int k = 0; k < 8; ++k) {
      cplx z = std::polar(1e-4, 2 * M_PI * k / 8 + 0.1);
      Vec4 f = eval_disk(spec, z);
      cplx zn = std::pow(z, bd.order);
      cplx w1(f(0), f(1)), w2(f(2), f(3));
      CHECK(std::abs(w1 / zn - bd.leading[0]) < 1e-3);
      CHECK(std::abs(w2 / zn - bd.leading[1]) < 1e-3);
    }
  }
}

TEST_CASE("spec validation") {
  BranchedDiskSpec dup{{{{ExactComplex(1)}, 1, 0}, {{ExactComplex(2)}, 1, 0}}, {}, 1.0};
  CHECK_THROWS_AS(dup.validate(), Error);
  BranchedDiskSpec zero{{{{ExactComplex(0)}, 1, 0}}, {}, 1.0};
  CHECK_THROWS_AS(zero.validate(), Error);
  BranchedDiskSpec constant{{{{ExactComplex(1)}, 0, 0}}, {}, 1.0};
  CHECK_THROWS_AS(constant.validate(), Error);
  CHECK_THROWS_AS(BranchedDiskSpec{}.validate(), Error);
}

TEST_CASE("Weierstrass construction") {
  auto spec = corpus::minimal_limit();
  // (z^3/3 + zbar^6/6, z^4/4 - zbar^5/5)
  REQUIRE(spec.w1.size() == 2);
  REQUIRE(spec.w2.size() == 2);
  CHECK(spec.w1[0].coeff.value == ExactComplex(Rational(1, 3)));
  CHECK((spec.w1[0].j == 3 && spec.w1[0].k == 0));
  CHECK(spec.w1[1].coeff.value == ExactComplex(Rational(1, 6)));
  CHECK((spec.w1[1].j == 0 && spec.w1[1].k == 6));
  CHECK(spec.w2[0].coeff.value == ExactComplex(Rational(1, 4)));
  CHECK(spec.w2[1].coeff.value == ExactComplex(Rational(-1, 5)));
  CHECK((spec.w2[1].j == 0 && spec.w2[1].k == 5));

  auto flat = weierstrass_to_disk({zpow(0), {}, {}, {}});
  REQUIRE(flat.w1.size() == 1);
  CHECK(flat.w2.empty());

  WeierstrassData bad{zpow(1), zpow(1), zpow(1), zpow(2)};
  CHECK_THROWS_WITH_AS(bad.validate(), doctest::Contains("z^2"), Error);

  auto back = disk_to_weierstrass(spec);
  REQUIRE(back.has_value());
  CHECK(back->f4p == corpus::minimal_limit_data().f4p);
  CHECK_FALSE(disk_to_weierstrass(corpus::writhe20()).has_value());
}

TEST_CASE("Weierstrass family instantiation agrees with direct data") {
  auto fam = corpus::minimal_family();
  auto wf = corpus::minimal_family_data();
  for (const auto& t : fam.parameter_values) {
    auto direct = weierstrass_to_disk(wf.at(t));
    auto inst = fam.at(t);
    for (auto z : sample_points(0.9, 20, 3)) CHECK((eval_disk(direct, z) - eval_disk(inst, z)).norm() < 1e-14);
  }
  CHECK((eval_disk(fam.limit(), 0.7) - eval_disk(corpus::minimal_limit(), 0.7)).norm() < 1e-15);
}

TEST_CASE("Gauss maps") {
  auto g = gauss_maps(corpus::minimal_limit_data());
  CHECK(g.plus.num == zpow(0));
  CHECK(g.plus.den == zpow(2));
  CHECK(g.minus.num == zpow(0));
  CHECK(g.minus.den == zpow(1));

  auto fam = corpus::minimal_family_data();
  for (int n : {3, 10, 100}) {
    Rational t(1, n);
    auto gm = gauss_maps(fam.at(t));
    // (z - 1/n) / z^3 and (z + 1/n) / z^2, coefficient by coefficient
    CHECK(gm.plus.num == Poly({ExactComplex(-t), ExactComplex(1)}));
    CHECK(gm.plus.den == zpow(3));
    CHECK(gm.minus.num == Poly({ExactComplex(t), ExactComplex(1)}));
    CHECK(gm.minus.den == zpow(2));
  }

  // f'1 = 1, f'2 = 1, f'3 = 1, f'4 = -1 satisfies the identity; gamma_+ = 1
  auto c = gauss_maps({zpow(0), zpow(0), zpow(0), zpow(0, -1)});
  CHECK(c.plus.is_constant());
  CHECK(c.plus.num == zpow(0));

  // holomorphic curve: gamma_+ is the constant infinity
  auto hol = disk_to_weierstrass(corpus::cusp_family().at(Rational(1, 10)));
  REQUIRE(hol.has_value());
  auto gh = gauss_maps(*hol);
  CHECK(gh.plus.is_infinite_constant());
  CHECK(gh.minus.den.degree() == 2);
}

TEST_CASE("Weierstrass disks are conformal and minimal") {
  auto fam = corpus::minimal_family();
  for (const auto& t : fam.parameter_values) {
    auto spec = fam.at(t);
    for (auto z : sample_points(0.9, 50, 7)) {
      if (!immersed_at(spec, z, 1e-6)) continue;
      auto j = eval_derivatives(spec, z);
      double scale = j.Fx.squaredNorm();
      CHECK(std::abs(j.Fx.squaredNorm() - j.Fy.squaredNorm()) < 1e-9 * scale);
      CHECK(std::abs(j.Fx.dot(j.Fy)) < 1e-9 * scale);
      auto B = second_fundamental_form(spec, z);
      CHECK((B.b11 + B.b22).norm() < 1e-8 * (1 + B.b11.norm()));
    }
  }
}

TEST_CASE("second fundamental form") {
  auto flat = second_fundamental_form(corpus::plane(), cplx(0.2, 0.1));
  CHECK(flat.b11.norm() == 0);
  CHECK(flat.b12.norm() == 0);
  auto g = second_fundamental_form(corpus::graph(), 0.0);
  CHECK(g.b11.norm() == doctest::Approx(2));
  CHECK(g.b12.norm() == doctest::Approx(2));
  CHECK((g.b11 + g.b22).norm() < 1e-14);
  auto& f = g.frame;
  CHECK(det4(f.e1, f.e2, f.e3, f.e4) == doctest::Approx(1));
  CHECK_THROWS_AS(second_fundamental_form(corpus::cusp(), 0.0), Error);
}

TEST_CASE("orientation reversal") {
  auto spec = corpus::minimal_limit();
  auto rev = reverse_orientation(spec);
  auto bd = branching_data(rev);
  CHECK(bd.order == 3);
  // the reflection (w1, w2) -> (w1, conj w2)
  for (auto z : sample_points(0.8, 10, 1)) {
    Vec4 a = eval_disk(spec, z), b = eval_disk(rev, z);
    CHECK((Vec4(a(0), a(1), a(2), -a(3)) - b).norm() < 1e-15);
  }
  auto wr = reverse_orientation(corpus::minimal_limit_data());
  CHECK((eval_disk(weierstrass_to_disk(wr), 0.4) - eval_disk(rev, 0.4)).norm() < 1e-15);
  auto w20 = reverse_orientation(corpus::writhe20());
  Vec4 a = eval_disk(corpus::writhe20(), cplx(0.3, 0.4)), b = eval_disk(w20, cplx(0.3, 0.4));
  CHECK(std::abs(a(3) + b(3)) < 1e-15);
}
