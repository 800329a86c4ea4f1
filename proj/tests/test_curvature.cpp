#include "branchfall/corpus.hpp"
#include "branchfall/curvature.hpp"
#include "branchfall/error.hpp"
#include "branchfall/surface.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace branchfall;

namespace {

Rational small_rational(std::mt19937& rng) {
  std::uniform_int_distribution<int> num(-9, 9), den(1, 6);
  int a = num(rng);
  if (a == 0) a = 1;
  return Rational(a, den(rng));
}

Poly random_poly(std::mt19937& rng, int degree) {
  Poly p;
  for (int m = 0; m <= degree; ++m)
    p = p + Poly::monomial(ExactComplex(small_rational(rng), small_rational(rng)), m);
  return p;
}

BranchedDiskSpec random_holomorphic(std::mt19937& rng) {
  std::uniform_int_distribution<int> deg(1, 5);
  BranchedDiskSpec s;
  for (auto* w : {&s.w1, &s.w2}) {
    const int top = deg(rng);
    for (int j = 1; j <= top; ++j) w->push_back({{ExactComplex(small_rational(rng), small_rational(rng))}, j, 0});
  }
  return s;
}

// f1' f2' + f3' f4' = pq rs - pr qs = 0 by construction
WeierstrassData random_weierstrass(std::mt19937& rng) {
  std::uniform_int_distribution<int> deg(0, 2);
  Poly p = random_poly(rng, deg(rng)), q = random_poly(rng, deg(rng));
  Poly r = random_poly(rng, deg(rng)), s = random_poly(rng, deg(rng));
  return {p * q, r * s, p * r, -(q * s)};
}

std::vector<cplx> disk_points(std::mt19937& rng, double radius, int n) {
  std::uniform_real_distribution<double> u(0, 1);
  std::vector<cplx> out;
  for (int i = 0; i < n; ++i) out.push_back(std::polar(radius * std::sqrt(u(rng)), 2 * M_PI * u(rng)));
  return out;
}

}  // namespace

TEST_CASE("densities of the graph of z^2 match the closed form") {
  // Gauss curvature of a complex graph (z, f): -2|f''|^2 / (1 + |f'|^2)^3
  std::mt19937 rng(21);
  for (auto z : disk_points(rng, 0.9, 200)) {
    const double K = -8.0 / std::pow(1 + 4 * std::norm(z), 3);
    auto d = curvature_densities(corpus::graph(), z);
    CHECK(d.omega_T == doctest::Approx(K).epsilon(1e-12));
    CHECK(d.omega_N == doctest::Approx(-K).epsilon(1e-12));
  }
  auto flat = curvature_densities(corpus::plane(), cplx(0.3, 0.2));
  CHECK(flat.omega_T == 0);
  CHECK(flat.omega_N == 0);
}

TEST_CASE("complex curves: tangent and normal densities cancel") {
  std::mt19937 rng(1);
  int checked = 0;
  for (int k = 0; k < 20; ++k) {
    auto spec = random_holomorphic(rng);
    for (auto z : disk_points(rng, 0.95, 1000)) {
      if (!immersed_at(spec, z, 1e-6)) continue;
      auto d = curvature_densities(spec, z);
      CHECK(std::abs(d.omega_T + d.omega_N) <= 1e-8 * (1 + std::abs(d.omega_T)));
      ++checked;
    }
  }
  CHECK(checked > 19000);
}

TEST_CASE("minimal surfaces: tangent density is non-positive") {
  std::mt19937 rng(2);
  int checked = 0;
  for (int k = 0; k < 20; ++k) {
    auto data = random_weierstrass(rng);
    data.validate();
    auto spec = weierstrass_to_disk(data);
    for (auto z : disk_points(rng, 0.95, 1000)) {
      if (!immersed_at(spec, z, 1e-6)) continue;
      auto d = curvature_densities(spec, z);
      CHECK(d.omega_T <= 1e-12 * (1 + std::abs(d.omega_N)));
      ++checked;
    }
  }
  CHECK(checked > 19000);
}

TEST_CASE("region integrals") {
  // graph of z^2: region |z|^2 + |z|^4 <= eps^2, dA = (1 + 4r^2) r dr dtheta,
  // (1/2pi) int -8 r / (1 + 4r^2)^2 dr = -(1 - 1/(1 + 4 s)), s = r^2 at the edge
  const double eps = 0.3;
  const double s = (-1 + std::sqrt(1 + 4 * eps * eps)) / 2;  // |z|^2 on the boundary
  const double exact = -(1 - 1 / (1 + 4 * s));
  auto r = integrate_region(corpus::graph(), eps);
  CHECK(r.omega_T == doctest::Approx(exact).epsilon(1e-10));
  CHECK(r.omega_N == doctest::Approx(-exact).epsilon(1e-10));
  CHECK(r.area > 0);
  CHECK(integrate_region(corpus::plane(), 0.5).omega_T == 0);
  CHECK(r.patch_centers.empty());

  // the minimal family has two nearly branched spots near +-t
  auto near = integrate_region(corpus::minimal_family().at(Rational(1, 1000)), 0.01);
  REQUIRE(near.patch_centers.size() == 2);
  for (auto c : near.patch_centers) CHECK(std::abs(std::abs(c) - 1e-3) < 1e-4);
}

TEST_CASE("boundary identities") {
  auto spec = corpus::minimal_family().at(Rational(1, 100));
  QuadratureOptions coarse, fine;
  coarse.boundary_samples = 256;
  fine.boundary_samples = 1024;
  auto gc = gauss_bonnet_check(spec, 0.1, coarse);
  auto gf = gauss_bonnet_check(spec, 0.1, fine);
  CHECK(std::abs(gf.residual) < 1e-3);
  CHECK(gf.branching == 0);
  // second order in the boundary grid
  CHECK(std::abs(gc.residual) > 8 * std::abs(gf.residual));

  auto branched = gauss_bonnet_check(corpus::minimal_limit(), 0.1, fine);
  CHECK(branched.branching == 2);
  CHECK(std::abs(branched.residual) < 1e-3);

  const Vec4 X(0, 0, 1, 0);
  auto nc = normal_stokes_check(spec, 0.1, X, coarse);
  auto nf = normal_stokes_check(spec, 0.1, X, fine);
  CHECK(std::abs(nf.residual) < 1e-3);
  CHECK(std::abs(nc.residual) > 8 * std::abs(nf.residual));
  int sum = 0;
  for (const auto& z : nf.zeros) sum += z.index;
  CHECK(sum == nf.index_sum);
}

TEST_CASE("fallout extrapolation") {
  const std::vector<double> eps{0.01, 0.005, 0.0025};
  const std::vector<Rational> ts{Rational(1, 1000), Rational(1, 3000), Rational(1, 10000)};

  auto cusp = integrate_fallout(corpus::cusp_family(), eps, ts);
  CHECK(cusp.converged);
  CHECK(cusp.kT == doctest::Approx(-1).epsilon(0.1));
  CHECK(cusp.kN == doctest::Approx(1).epsilon(0.1));
  CHECK(cusp.epsilon_power == doctest::Approx(1.0));

  auto minimal = integrate_fallout(corpus::minimal_family(), eps, ts);
  CHECK(minimal.converged);
  CHECK(std::abs(minimal.kT + 2) < 0.1);
  CHECK(std::abs(minimal.kN) < 0.1);
  CHECK(std::abs(minimal.kN + minimal.kT) > 0.5);
  CHECK(std::abs(minimal.kN - minimal.kT) > 0.5);

  auto trivial = integrate_fallout(FamilySpec::constant(corpus::graph(), ts), eps, ts);
  CHECK(std::abs(trivial.kT) < 1e-6);
  CHECK(std::abs(trivial.kN) < 1e-6);

  auto csv = fallout_csv(cusp);
  CHECK(csv.rfind("epsilon,t,omega_T", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 10);

  CHECK_THROWS_AS(integrate_fallout(corpus::cusp_family(), {}, ts), Error);
  CHECK_THROWS_AS(integrate_fallout(corpus::cusp_family(), eps, {Rational(0)}), Error);
}
