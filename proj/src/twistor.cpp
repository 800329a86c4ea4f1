#include "branchfall/twistor.hpp"

#include "branchfall/error.hpp"
#include "branchfall/numerics.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

namespace branchfall {

namespace {

const double kRoot2 = std::sqrt(2.0);

// e_i ^ e_j lives at this slot, i < j
int slot(int i, int j) {
  static const int table[4][4] = {{-1, 0, 1, 2}, {-1, -1, 3, 4}, {-1, -1, -1, 5}, {-1, -1, -1, -1}};
  return table[i][j];
}

std::vector<cplx> to_complex(const Poly& p) { return p.to_complex(); }

// points distributed by area on the sphere, sent to C by stereographic projection
std::vector<cplx> generic_points(int n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-1, 1), phi(0, 2 * M_PI);
  std::vector<cplx> w;
  for (int i = 0; i < n; ++i) {
    const double h = u(rng);  // height, uniform for the area measure
    w.push_back(std::polar(std::sqrt((1 + h) / (1 - h)), phi(rng)));
  }
  return w;
}

bool fits_roots(const RationalFunction& g, int max_degree) {
  return std::max(g.num.degree(), g.den.degree()) <= max_degree;
}

}  // namespace

Bivector wedge(const Vec4& u, const Vec4& v) {
  Bivector b;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) b(slot(i, j)) = u(i) * v(j) - u(j) * v(i);
  return b;
}

SpherePair plane_to_spheres(const Bivector& P) {
  // P ^ P = 2 (p12 p34 - p13 p24 + p14 p23) vanishes on simple 2-vectors
  const double pp = 2 * (P(0) * P(5) - P(1) * P(4) + P(2) * P(3));
  if (std::abs(pp) > 1e-9) fail(ErrorKind::input, "2-vector is not simple");
  if (std::abs(P.norm() - 1) > 1e-9) fail(ErrorKind::input, "2-vector is not unit");
  SpherePair s;
  s.jplus = Vec3(P(0) + P(5), P(1) - P(4), P(2) + P(3));
  s.jminus = Vec3(P(0) - P(5), P(1) + P(4), P(2) - P(3));
  s.jplus.normalize();
  s.jminus.normalize();
  return s;
}

Bivector spheres_to_plane(const SpherePair& s) {
  const Vec3 &a = s.jplus, &b = s.jminus;
  Bivector P;
  P << a(0) + b(0), a(1) + b(1), a(2) + b(2), a(2) - b(2), b(1) - a(1), a(0) - b(0);
  return P / 2;
}

SpherePair tangent_spheres(const BranchedDiskSpec& spec, cplx z, double conditioning) {
  const auto j = eval_derivatives(spec, z);
  const Frame f = tangent_frame(j.Fx, j.Fy, conditioning);
  return plane_to_spheres(wedge(f.e1, f.e2));
}

LiftArea lift_area(const BranchedDiskSpec& spec, double epsilon, const QuadratureOptions& opt) {
  RegionIntegral info;
  const auto samples = region_samples(spec, epsilon, opt, &info);
  const NumericDisk disk(spec);
  LiftArea out;
  for (const auto& s : samples) {
    if (s.area_weight == 0) continue;
    out.area += s.area_weight;
    out.b_squared += s.area_weight * s.b_squared;
    const auto j = disk.jet(s.z);
    if (smallest_singular_ratio(j.Fx, j.Fy) < opt.conditioning) continue;
    const auto b = sff_from_jet(j, 0);
    // M_ij = sum_k <B(e_i, e_k), B(e_j, e_k)>
    const double m11 = b.b11.squaredNorm() + b.b12.squaredNorm();
    const double m22 = b.b12.squaredNorm() + b.b22.squaredNorm();
    const double m12 = b.b11.dot(b.b12) + b.b12.dot(b.b22);
    out.lift_area += s.area_weight * std::sqrt(std::max(0.0, m11 * m22 - m12 * m12));
  }
  out.bound = out.b_squared / 2;
  return out;
}

int roots_in_disk(const std::vector<cplx>& p, double r) {
  int n = static_cast<int>(p.size()) - 1;
  while (n >= 0 && p[n] == cplx(0)) --n;
  if (n <= 0) return 0;
  int zeros = 0;  // roots at the origin, exactly
  while (p[zeros] == cplx(0)) ++zeros;
  const int m = n - zeros;
  if (m == 0) return zeros;
  Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(m, m);
  for (int i = 1; i < m; ++i) C(i, i - 1) = 1;
  for (int i = 0; i < m; ++i) C(i, m - 1) = -p[zeros + i] / p[n];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(C, false);
  if (es.info() != Eigen::Success) fail(ErrorKind::unconverged, "companion eigenvalues did not converge");
  int inside = zeros;
  for (int i = 0; i < m; ++i) inside += std::abs(es.eigenvalues()(i)) <= r;
  return inside;
}

double mean_preimages(const RationalFunction& g, double delta, const std::vector<cplx>& ws) {
  if (ws.empty()) return 0;
  if (g.is_infinite_constant()) return 0;
  const auto num = to_complex(g.num), den = to_complex(g.den);
  long total = 0;
  for (const cplx w : ws) {
    // preimages of w solve num - w den = 0; of infinity, den = 0
    std::vector<cplx> p;
    if (std::isinf(w.real()) || std::isinf(w.imag())) {
      p = den;
    } else {
      p.assign(std::max(num.size(), den.size()), cplx(0));
      for (std::size_t i = 0; i < num.size(); ++i) p[i] += num[i];
      for (std::size_t i = 0; i < den.size(); ++i) p[i] -= w * den[i];
    }
    total += roots_in_disk(p, delta);
  }
  return double(total) / ws.size();
}

double normalized_area(const RationalFunction& g, double delta, const DefectOptions& opt) {
  if (g.is_constant()) return 0;
  const Poly dn = g.num.derivative(), dd = g.den.derivative();
  // |g'|^2 / (1 + |g|^2)^2 = |n' d - n d'|^2 / (|n|^2 + |d|^2)^2
  auto density = [&](cplx z) {
    const cplx n = g.num(z), d = g.den(z);
    const double s = std::norm(n) + std::norm(d);
    return s > 0 ? std::norm(dn(z) * d - n * dd(z)) / (s * s) : 0.0;
  };
  // bubbles hide in tiny disks around the zeros and poles that merge into
  // the origin, far below any global grid spacing: patch each one
  std::vector<cplx> centers;
  for (const Poly* p : {&g.num, &g.den}) {
    const auto c = to_complex(*p);
    int n = static_cast<int>(c.size()) - 1, v = 0;
    while (v < n && c[v] == cplx(0)) ++v;
    const int m = n - v;
    if (m <= 0) continue;
    Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(m, m);
    for (int i = 1; i < m; ++i) C(i, i - 1) = 1;
    for (int i = 0; i < m; ++i) C(i, m - 1) = -c[v + i] / c[n];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(C, false);
    for (int i = 0; i < m; ++i) {
      const cplx z = es.eigenvalues()(i);
      if (std::abs(z) < 0.9 * delta) centers.push_back(z);
    }
  }
  std::sort(centers.begin(), centers.end(), [](cplx a, cplx b) {
    return std::abs(a) != std::abs(b) ? std::abs(a) < std::abs(b) : std::arg(a) < std::arg(b);
  });
  std::vector<cplx> kept;
  std::vector<double> rho;
  for (const cplx c : centers) {
    double r = std::min(std::abs(c), delta - std::abs(c));
    for (const cplx o : centers)
      if (o != c) r = std::min(r, 0.5 * std::abs(o - c));
    if (r > 0 && r < 0.25 * delta) kept.push_back(c), rho.push_back(0.8 * r);
  }
  // 1 on s <= 1/2, quintic smoothstep to 0 at s = 1
  auto bump = [](double s) {
    if (s <= 0.5) return 1.0;
    if (s >= 1) return 0.0;
    const double u = 2 * (s - 0.5);
    return 1 - u * u * u * (10 - 15 * u + 6 * u * u);
  };
  auto patch_weight = [&](cplx z) {
    double w = 0;
    for (std::size_t k = 0; k < kept.size(); ++k) w += bump(std::abs(z - kept[k]) / rho[k]);
    return w;
  };

  const GaussRule rule(opt.gauss_order);
  auto polar_sum = [&](cplx c, double radius, bool global) {
    std::vector<double> edges{0};
    const double a = 1e-12 * radius;
    for (int k = 0; k < opt.panels; ++k) edges.push_back(a * std::pow(radius / a, double(k) / (opt.panels - 1)));
    std::vector<double> per_ray(opt.rays, 0.0);
#pragma omp parallel for schedule(static)
    for (int i = 0; i < opt.rays; ++i) {
      const double th = 2 * M_PI * i / opt.rays;
      double s = 0;
      for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
        const double r0 = edges[k], h = edges[k + 1] - edges[k];
        for (std::size_t q = 0; q < rule.x.size(); ++q) {
          const double r = r0 + h * rule.x[q];
          const cplx z = c + std::polar(r, th);
          const double pw = patch_weight(z);
          const double w = global ? 1 - pw : bump(r / radius) / std::max(pw, 1.0);
          if (w != 0) s += rule.w[q] * h * r * w * density(z);
        }
      }
      per_ray[i] = s;
    }
    double total = 0;
    for (double s : per_ray) total += s;
    return total * (2 * M_PI / opt.rays);
  };
  double total = polar_sum(0, delta, true);
  for (std::size_t k = 0; k < kept.size(); ++k) total += polar_sum(kept[k], rho[k], false);
  // (1/4pi) int 4 |g'|^2/(1+|g|^2)^2 dA
  return total / M_PI;
}

VerticalDefect vertical_defect(const RationalFamily& gamma, const RationalFunction& gamma0, const DefectOptions& opt) {
  if (opt.deltas.empty() || opt.ts.empty()) fail(ErrorKind::input, "empty delta or parameter grid");
  VerticalDefect out;
  const auto ws = generic_points(opt.generic_points, opt.seed);
  std::vector<RationalFunction> members;
  std::vector<double> tx;
  bool roots = fits_roots(gamma0, opt.max_root_degree);
  for (const auto& t : opt.ts) {
    if (t == 0) fail(ErrorKind::input, "parameter grid must avoid t = 0");
    members.push_back(gamma(t));
    tx.push_back(std::abs(static_cast<double>(t)));
    roots = roots && fits_roots(members.back(), opt.max_root_degree);
  }
  std::vector<double> count_at, area_at;
  double worst = 0;
  for (double delta : opt.deltas) {
    if (!(delta > 0)) fail(ErrorKind::input, "delta must be positive");
    const double c0 = roots ? mean_preimages(gamma0, delta, ws) : 0;
    const double a0 = normalized_area(gamma0, delta, opt);
    std::vector<double> dc, da;
    for (std::size_t k = 0; k < members.size(); ++k) {
      DefectRow row{delta, tx[k], roots ? mean_preimages(members[k], delta, ws) : 0, c0,
                    normalized_area(members[k], delta, opt), a0};
      dc.push_back(row.count_t - row.count_0);
      da.push_back(row.area_t - row.area_0);
      out.rows.push_back(row);
    }
    const auto ec = richardson(tx, dc), ea = richardson(tx, da);
    count_at.push_back(ec.value);
    area_at.push_back(ea.value);
    worst = std::max({worst, roots ? ec.residual : 0.0, ea.residual});
  }
  const auto ea = richardson(opt.deltas, area_at);
  out.area_defect = ea.value;
  worst = std::max(worst, ea.residual);
  if (roots) {
    const auto ec = richardson(opt.deltas, count_at);
    out.count_defect = ec.value;
    worst = std::max(worst, ec.residual);
    out.defect = out.count_defect;
    out.method = "roots";
    if (std::abs(out.count_defect - out.area_defect) > 0.05) {
      std::ostringstream w;
      w << "disagreement: root count " << out.count_defect << " vs quadrature " << out.area_defect;
      out.warnings.push_back(w.str());
    }
  } else {
    out.count_defect = std::numeric_limits<double>::quiet_NaN();
    out.defect = out.area_defect;
    out.method = "quadrature";
  }
  out.residual = worst;
  out.converged = worst < 0.05 && out.warnings.empty();
  if (worst >= 0.05) {
    std::ostringstream w;
    w << "unconverged: defect extrapolation residual " << worst;
    out.warnings.push_back(w.str());
  }
  return out;
}

CurrentClass current_class(double a_plus, double a_minus) {
  CurrentClass c;
  c.a_plus = a_plus;
  c.a_minus = a_minus;
  c.plus = static_cast<int>(std::lround(a_plus));
  c.minus = static_cast<int>(std::lround(a_minus));
  c.rounding_error = std::max(std::abs(a_plus - c.plus), std::abs(a_minus - c.minus));
  if (!(c.rounding_error < 0.05)) {
    std::ostringstream w;
    w << "defects (" << a_plus << ", " << a_minus << ") are not integral";
    fail(ErrorKind::unconverged, w.str());
  }
  // calibrated on (z^2, z^3 + tz): a_plus = 0, a_minus = 1 must give (-1, 1)
  c.kT = -(c.plus + c.minus);
  c.kN = c.minus - c.plus;
  return c;
}

TwistorFallout twistor_fallout(const FamilySpec& family, const DefectOptions& opt) {
  auto maps_at = [&](const Rational& t) {
    auto data = disk_to_weierstrass(family.at(t));
    if (!data) fail(ErrorKind::degenerate, "family member is not harmonic; no Weierstrass data");
    return gauss_maps(*data);
  };
  const GaussMaps limit = maps_at(Rational(0));
  TwistorFallout out;
  out.plus = vertical_defect([&](const Rational& t) { return maps_at(t).plus; }, limit.plus, opt);
  out.minus = vertical_defect([&](const Rational& t) { return maps_at(t).minus; }, limit.minus, opt);
  out.current = current_class(out.plus.defect, out.minus.defect);
  return out;
}

}  // namespace branchfall
