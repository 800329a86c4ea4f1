#include "branchfall/corpus.hpp"
#include "branchfall/error.hpp"
#include "branchfall/kernels.hpp"
#include "branchfall/link.hpp"

#include <Eigen/Geometry>
#include <doctest.h>

#include <random>

using namespace branchfall;

namespace {

Polyline<double> circle(const Vec3& c, const Vec3& u, const Vec3& v, double r, int n) {
  Polyline<double> p;
  for (int i = 0; i < n; ++i) {
    double t = 2 * M_PI * i / n;
    p.push_back(c + r * (std::cos(t) * u + std::sin(t) * v));
  }
  return p;
}

// Independent oracle: midpoint rule for the Gauss integral
// (1/4pi) sum (ra - rb) . (dra x drb) / |ra - rb|^3.
double midpoint_gauss(const Polyline<double>& a, const Polyline<double>& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    Vec3 da = a[(i + 1) % a.size()] - a[i], ma = 0.5 * (a[(i + 1) % a.size()] + a[i]);
    for (std::size_t j = 0; j < b.size(); ++j) {
      Vec3 db = b[(j + 1) % b.size()] - b[j], mb = 0.5 * (b[(j + 1) % b.size()] + b[j]);
      Vec3 r = ma - mb;
      s += r.dot(da.cross(db)) / std::pow(r.norm(), 3);
    }
  }
  return s / (4 * M_PI);
}

std::vector<Polyline<double>> projected(const BranchedDiskSpec& spec, double eps, int samples = 4096) {
  SliceOptions opt;
  opt.samples = samples;
  auto link = slice_sphere(spec, eps, opt);
  return stereographic(link, link.frame.e4).curves;
}

}  // namespace

TEST_CASE("linking numbers of simple links") {
  auto a = circle({0, 0, 0}, {1, 0, 0}, {0, 1, 0}, 1, 200);
  auto far = circle({5, 0, 0}, {1, 0, 0}, {0, 1, 0}, 1, 200);
  CHECK(linking_number(a, far).value == 0);

  auto hopf = circle({1, 0, 0}, {1, 0, 0}, {0, 0, 1}, 1, 200);
  double oracle = midpoint_gauss(a, hopf);
  CHECK(std::abs(std::abs(oracle) - 1) < 0.01);
  auto lk = linking_number(a, hopf);
  CHECK(lk.value == std::lround(oracle));
  CHECK(std::abs(lk.gauss - oracle) < 0.01);
  CHECK(linking_number(hopf, a).value == lk.value);  // symmetric

  // reversing one orientation flips the sign
  Polyline<double> rev(hopf.rbegin(), hopf.rend());
  CHECK(linking_number(a, rev).value == -lk.value);

  // the three Gauss sums agree
  double exact = kernels::gauss_linking_exact(a, hopf);
  CHECK(std::abs(kernels::gauss_linking_serial(a, hopf) - exact) < 1e-3);
  CHECK(kernels::gauss_linking_serial(a, hopf) == kernels::gauss_linking_parallel(a, hopf));

  // too coarse for the clearance
  auto close = circle({0, 0, 0.05}, {1, 0, 0}, {0, 1, 0}, 1, 200);
  CHECK_THROWS_AS(linking_number(a, close), Error);
}

TEST_CASE("Hopf fibres") {
  // fibres of the Hopf map through two points of S^2, projected from (0,0,0,1)
  auto fibre = [](cplx p, cplx q) {
    std::vector<Vec4> pts;
    for (int i = 0; i < 400; ++i) {
      cplx e = std::polar(1.0, 2 * M_PI * i / 400);
      cplx a = p * e, b = q * e;
      pts.push_back(Vec4(a.real(), a.imag(), b.real(), b.imag()).normalized());
    }
    return pts;
  };
  Frame f{Vec4::UnitX(), Vec4::UnitY(), Vec4(0, 0, 1, 0), Vec4(0, 0, 0, 1), 1};
  auto c1 = stereographic_t<double>(fibre(1.0, 0.0), f);
  auto c2 = stereographic_t<double>(fibre(std::sqrt(0.5), std::sqrt(0.5)), f);
  double oracle = midpoint_gauss(c1, c2);
  auto lk = linking_number(c1, c2);
  CHECK(std::abs(lk.value) == 1);
  CHECK(lk.value == std::lround(oracle));
  CHECK(lk.crossings == lk.value);
}

TEST_CASE("slicing and the graph regime") {
  auto link = slice_sphere(corpus::plane(), 0.3);
  REQUIRE(link.components.size() == 1);
  for (const auto& p : link.components[0].points) CHECK(std::abs(p.norm() - 1) < 1e-12);
  auto proj = stereographic(link, link.frame.e4).curves[0];
  for (const auto& p : proj) CHECK(std::abs(p.norm() - 1) < 1e-9);  // planar unit circle
  for (const auto& p : proj) CHECK(std::abs(p(2)) < 1e-12);

  // |z - 2 z^3| turns over at r = 1/sqrt(6) on the real ray
  BranchedDiskSpec fold{{{{ExactComplex(1)}, 1, 0}, {{ExactComplex(-2)}, 3, 0}}, {}, 1.0};
  double turn = 1 / std::sqrt(6.0) - 2 * std::pow(1 / std::sqrt(6.0), 3);
  try {
    slice_sphere(fold, 0.5);
    FAIL("expected a graph-regime error");
  } catch (const GraphRegimeError& e) {
    CHECK(e.largest_admissible() <= turn * 1.0001);
    CHECK(e.largest_admissible() > 0.9 * turn);
  }
  CHECK_NOTHROW(slice_sphere(fold, 0.2));
  CHECK(graph_regime_limit(fold) == doctest::Approx(turn).epsilon(0.02));
  CHECK_THROWS_AS(slice_sphere(corpus::cusp(), 3.0), Error);  // never reached
  SliceOptions few;
  few.samples = 100;
  CHECK_THROWS_AS(slice_sphere(corpus::cusp(), 0.3, few), Error);  // below 64 N

  // the framing is tangent to the sphere and never tangent to the curve
  auto cusp = slice_sphere(corpus::cusp(), 0.3);
  const auto& pts = cusp.components[0].points;
  for (std::size_t i = 0; i < pts.size(); i += 97) {
    const Vec4& x = cusp.framing[0][i];
    CHECK(std::abs(x.dot(pts[i])) < 1e-12);
    CHECK(std::abs(x.norm() - 1) < 1e-12);
  }
}

TEST_CASE("stereographic pole checks") {
  Frame f{Vec4::UnitX(), Vec4::UnitY(), Vec4(0, 0, 1, 0), Vec4(0, 0, 0, 1), 1};
  std::vector<Vec4> through{Vec4(1, 0, 0, 0), Vec4(0, 0, 0, 1), Vec4(0, 1, 0, 0)};
  try {
    stereographic_t<double>(through, f);
    FAIL("expected pole error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::pole);
  }
  auto pf = pole_frame(Vec4(0.1, 0.2, -0.3, 0.9).normalized());
  CHECK(det4(pf.e1, pf.e2, pf.e3, pf.e4) == doctest::Approx(1));

  // linking survives a change of pole
  auto sl = self_linking(corpus::cusp(), 0.3);
  SliceOptions opt;
  opt.samples = sl.samples;
  auto link = slice_sphere(corpus::cusp(), 0.3, opt);
  auto pushed = link;
  for (std::size_t i = 0; i < pushed.components[0].points.size(); ++i) {
    auto& p = pushed.components[0].points[i];
    p = (p + sl.deltas.back() * link.framing[0][i]).normalized();
  }
  for (Vec4 pole : {link.frame.e4, Vec4(0.1, -0.1, 0.2, 0.97).normalized()}) {
    auto a = stereographic(link, pole).curves[0];
    auto b = stereographic(pushed, pole).curves[0];
    CHECK(linking_number(a, b).value == 3);
  }
}

TEST_CASE("braids of the corpus") {
  auto plane = link_braid(corpus::plane(), 0.3);
  CHECK(plane.word.strands == 1);
  CHECK(plane.word.letters.empty());

  auto cusp = link_braid(corpus::cusp(), 0.3);
  CHECK(cusp.word.strands == 2);
  CHECK(exponent_sum(cusp.word) == 3);
  CHECK(cusp.word.free_reduced() == torus_braid(2, 3));

  auto lim = link_braid(corpus::minimal_limit(), 0.2);
  CHECK(lim.word.strands == 3);
  CHECK(exponent_sum(lim.word) == 8);
  CHECK(permutation_and_components(lim.word).components == 1);

  for (auto [p, q] : {std::pair{2, 5}, {3, 4}, {3, 5}, {4, 5}}) {
    auto w = link_braid(corpus::torus_singularity(p, q), 0.3).word;
    CHECK(w.strands == p);
    CHECK(exponent_sum(w) == (p - 1) * q);
  }

  auto rev = link_braid(reverse_orientation(corpus::minimal_limit()), 0.2);
  CHECK(exponent_sum(rev.word) == -8);
}

TEST_CASE("braid extraction on polylines") {
  auto curves = projected(corpus::cusp(), 0.3);
  CHECK(exponent_sum(extract_braid(curves, Axis{})) == 3);
  std::mt19937 rng(3);
  std::normal_distribution<double> g(0, 0.03);
  for (int k = 0; k < 5; ++k) {
    Axis ax;
    ax.direction = Vec3(g(rng), g(rng), 1).normalized();
    ax.point = Vec3(g(rng), g(rng), g(rng));
    auto w = extract_braid(curves, ax);
    CHECK(w.strands == 2);
    CHECK(exponent_sum(w) == 3);
  }
  // axis through the curve's plane: not a braid
  Axis side;
  side.direction = Vec3(1, 0, 0);
  CHECK_THROWS_AS(extract_braid(curves, side), Error);
}

TEST_CASE("self-linking equals the braid writhe") {
  auto sl = self_linking(corpus::cusp(), 0.3);
  CHECK(sl.value == 3);
  CHECK(self_linking(corpus::plane(), 0.3).value == 0);
  // homotopic transverse framings give the same number
  auto e = branching_data(corpus::cusp()).plane;
  for (double s : {0.4, 1.1}) CHECK(self_linking(corpus::cusp(), 0.3, std::cos(s) * e.e3 + std::sin(s) * e.e4).value == 3);
}

TEST_CASE("the epsilon sweep stabilizes") {
  auto sweep = braid_sweep(corpus::minimal_limit());
  CHECK(exponent_sum(sweep.result.word) == 8);
  CHECK(sweep.rows.size() >= 2);
}
