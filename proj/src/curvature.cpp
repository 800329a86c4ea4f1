#include "branchfall/curvature.hpp"

#include "branchfall/error.hpp"
#include "branchfall/link.hpp"
#include "branchfall/numerics.hpp"

#include <gsl/gsl_multimin.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <numeric>
#include <sstream>

namespace branchfall {

namespace {

double wedge(const Vec2& a, const Vec2& b) { return a(0) * b(1) - a(1) * b(0); }

// |Fx ^ Fy| without cancellation
double area_of(const Vec4& u, const Vec4& v) {
  double s = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) s += std::pow(u(i) * v(j) - u(j) * v(i), 2);
  return std::sqrt(s);
}

// 1 on [0, 1/2], quintic smoothstep down to 0 at 1
double bump(double s) {
  if (s <= 0.5) return 1;
  if (s >= 1) return 0;
  const double u = 2 * (s - 0.5);
  return 1 - u * u * u * (10 - 15 * u + 6 * u * u);
}

// panel edges from 0 (or `start`) to `end`
std::vector<double> radial_edges(double start, double end, double inner, int panels) {
  std::vector<double> e;
  if (start > 0) {
    for (int k = 0; k <= panels; ++k) e.push_back(start * std::pow(end / start, double(k) / panels));
  } else {
    e.push_back(0);
    const double a = inner * end;
    for (int k = 0; k < panels; ++k) e.push_back(a * std::pow(end / a, double(k) / (panels - 1)));
  }
  return e;
}

double radius_at(const std::vector<double>& radii, double theta) {
  const int n = static_cast<int>(radii.size());
  double u = theta / (2 * M_PI) * n;
  u -= std::floor(u / n) * n;
  const int i = static_cast<int>(u) % n;
  const double f = u - std::floor(u);
  return (1 - f) * radii[i] + f * radii[(i + 1) % n];
}

// GSL Nelder-Mead on a function of (x, y)
std::pair<cplx, double> minimize2(const std::function<double(cplx)>& f, cplx start, double step, double tol,
                                  int iterations = 2000) {
  struct Ctx {
    const std::function<double(cplx)>* f;
  } ctx{&f};
  gsl_multimin_function fn;
  fn.n = 2;
  fn.params = &ctx;
  fn.f = [](const gsl_vector* v, void* p) {
    auto* c = static_cast<Ctx*>(p);
    return (*c->f)(cplx(gsl_vector_get(v, 0), gsl_vector_get(v, 1)));
  };
  std::unique_ptr<gsl_vector, void (*)(gsl_vector*)> x(gsl_vector_alloc(2), gsl_vector_free),
      ss(gsl_vector_alloc(2), gsl_vector_free);
  gsl_vector_set(x.get(), 0, start.real());
  gsl_vector_set(x.get(), 1, start.imag());
  gsl_vector_set_all(ss.get(), step);
  std::unique_ptr<gsl_multimin_fminimizer, void (*)(gsl_multimin_fminimizer*)> m(
      gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, 2), gsl_multimin_fminimizer_free);
  gsl_multimin_fminimizer_set(m.get(), &fn, x.get(), ss.get());
  for (int it = 0; it < iterations; ++it) {
    if (gsl_multimin_fminimizer_iterate(m.get())) break;
    if (gsl_multimin_fminimizer_size(m.get()) < tol) break;
  }
  const gsl_vector* b = gsl_multimin_fminimizer_x(m.get());
  return {cplx(gsl_vector_get(b, 0), gsl_vector_get(b, 1)), gsl_multimin_fminimizer_minimum(m.get())};
}

// log of the smallest singular value of dF relative to |F| / |z|: about
// log N on z^N and strongly negative in a near-branch well
double well_depth(const NumericDisk& disk, cplx z) {
  const DiskJet j = disk.jet(z);
  const double f = j.F.norm();
  if (!(f > 0) || std::abs(z) == 0) return 0;
  const double tr = j.Fx.squaredNorm() + j.Fy.squaredNorm();
  const double a = area_of(j.Fx, j.Fy);
  const double smin = a / std::sqrt(tr);  // within a factor sqrt 2 of the smallest singular value
  return std::log(smin * std::abs(z) / f);
}

struct Patch {
  cplx c;
  double rho;
};

std::vector<Patch> make_patches(const std::vector<cplx>& centers, const std::vector<double>& radii) {
  std::vector<Patch> out;
  for (std::size_t i = 0; i < centers.size(); ++i) {
    const cplx c = centers[i];
    double room = std::abs(c);
    room = std::min(room, radius_at(radii, std::arg(c) < 0 ? std::arg(c) + 2 * M_PI : std::arg(c)) - std::abs(c));
    for (std::size_t k = 0; k < centers.size(); ++k)
      if (k != i) room = std::min(room, 0.5 * std::abs(centers[k] - c));
    if (room > 0) out.push_back({c, 0.8 * room});
  }
  return out;
}

// boundary points of the region, counterclockwise
std::vector<cplx> boundary(const BranchedDiskSpec& spec, double epsilon, int m) {
  auto radii = region_radii(spec, epsilon, m);
  std::vector<cplx> z(m);
  for (int i = 0; i < m; ++i) z[i] = std::polar(radii[i], 2 * M_PI * i / m);
  return z;
}

// signed angle from a to b inside the oriented plane (p, q)
double plane_angle(const Vec4& a, const Vec4& b, const Vec4& p, const Vec4& q) {
  const Vec2 u(a.dot(p), a.dot(q)), v(b.dot(p), b.dot(q));
  return std::atan2(wedge(u, v), u.dot(v));
}

Vec4 rotate_normal(const Frame& f, const Vec4& v) { return v.dot(f.e3) * f.e4 - v.dot(f.e4) * f.e3; }

Vec4 normal_part(const Frame& f, const Vec4& x) { return x.dot(f.e3) * f.e3 + x.dot(f.e4) * f.e4; }

// oint omega for the unit normal section along closed parameter loop zs
double connection_integral(const NumericDisk& disk, const std::vector<cplx>& zs, const Vec4& x, double conditioning) {
  const std::size_t m = zs.size();
  std::vector<Frame> fr(m);
  std::vector<Vec4> s(m);
  for (std::size_t i = 0; i < m; ++i) {
    const DiskJet j = disk.jet(zs[i]);
    fr[i] = tangent_frame(j.Fx, j.Fy, conditioning);
    Vec4 n = normal_part(fr[i], x);
    if (n.norm() < 1e-12 * x.norm()) fail(ErrorKind::resolution, "section vanishes on the loop; choose another vector");
    s[i] = n.normalized();
  }
  double total = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t k = (i + 1) % m;
    // forward angle measured at both ends, averaged
    const double a = std::atan2(s[k].dot(rotate_normal(fr[i], s[i])), s[k].dot(s[i]));
    const double b = std::atan2(-s[i].dot(rotate_normal(fr[k], s[k])), s[i].dot(s[k]));
    total += 0.5 * (a + b);
  }
  return total;
}

}  // namespace

CurvatureDensity curvature_densities(const SecondFundamentalForm& b) {
  CurvatureDensity d;
  d.omega_T = -b.b12.squaredNorm() + b.b11.dot(b.b22);
  d.omega_N = wedge(b.b11 - b.b22, b.b12);
  return d;
}

CurvatureDensity curvature_densities(const BranchedDiskSpec& spec, cplx z) {
  return curvature_densities(second_fundamental_form(spec, z));
}

std::vector<cplx> near_branch_centers(const BranchedDiskSpec& spec, const std::vector<double>& radii) {
  const NumericDisk disk(spec);
  const double rmax = *std::min_element(radii.begin(), radii.end());
  const double rmin = 1e-7 * rmax;
  const int nr = 160, na = 256;
  std::vector<double> q(nr * na);
  auto at = [&](int i, int k) { return std::polar(rmin * std::pow(0.9 * rmax / rmin, double(i) / (nr - 1)), 2 * M_PI * k / na); };
#pragma omp parallel for schedule(static)
  for (int i = 0; i < nr; ++i)
    for (int k = 0; k < na; ++k) q[i * na + k] = well_depth(disk, at(i, k));
  std::vector<double> sorted = q;
  std::nth_element(sorted.begin(), sorted.begin() + sorted.size() / 2, sorted.end());
  const double median = sorted[sorted.size() / 2];

  std::vector<cplx> out;
  for (int i = 1; i + 1 < nr; ++i)
    for (int k = 0; k < na; ++k) {
      const double v = q[i * na + k];
      if (!(v < median - std::log(3.0))) continue;
      bool low = true;
      for (int di = -1; di <= 1 && low; ++di)
        for (int dk = -1; dk <= 1; ++dk)
          if ((di || dk) && q[(i + di) * na + (k + dk + na) % na] < v) low = false;
      if (!low) continue;
      const cplx z0 = at(i, k);
      const double step = 0.2 * std::abs(z0) * 2 * M_PI / na * 4;
      // wells can be far narrower than |z0|; polish the centre to near machine precision
      auto [c, val] = minimize2([&](cplx z) { return well_depth(disk, z); }, z0, step, 1e-14 * std::abs(z0), 20000);
      if (!(val < median - std::log(10.0))) continue;
      bool dup = false;
      for (const auto& o : out) dup = dup || std::abs(o - c) < 0.05 * std::abs(c);
      if (!dup) out.push_back(c);
    }
  std::sort(out.begin(), out.end(), [](cplx a, cplx b) { return std::abs(a) != std::abs(b) ? std::abs(a) < std::abs(b) : std::arg(a) < std::arg(b); });
  return out;
}

std::vector<CurvatureSample> region_samples(const BranchedDiskSpec& spec, double epsilon, const QuadratureOptions& opt,
                                            RegionIntegral* info) {
  spec.validate();
  const NumericDisk disk(spec);
  const auto radii = region_radii(spec, epsilon, opt.rays);
  const int N = spec.min_degree();
  const bool branched = N >= 2;
  const double r_ex = branched ? opt.exclusion * std::pow(epsilon, 1.0 / N) : 0.0;
  const auto patches = opt.patches ? make_patches(near_branch_centers(spec, radii), radii) : std::vector<Patch>{};
  const GaussRule g(opt.gauss_order);

  auto outside_weight = [&](cplx z) {
    double w = 1;
    for (const auto& p : patches) w -= bump(std::abs(z - p.c) / p.rho);
    return w;
  };
  auto sample = [&](cplx z, double w, CurvatureSample& s) {
    s.z = z;
    const DiskJet j = disk.jet(z);
    if (!(w != 0) || smallest_singular_ratio(j.Fx, j.Fy) < opt.conditioning) return;
    const auto b = sff_from_jet(j, 0);
    const auto d = curvature_densities(b);
    s.area_weight = w * b.area_element;
    s.omega_T = d.omega_T;
    s.omega_N = d.omega_N;
    s.b_squared = b.b11.squaredNorm() + 2 * b.b12.squaredNorm() + b.b22.squaredNorm();
  };

  const int per_ray = opt.panels * opt.gauss_order;
  const int per_patch_ray = opt.patch_panels * opt.gauss_order;
  std::vector<CurvatureSample> out(std::size_t(opt.rays) * per_ray + patches.size() * std::size_t(opt.patch_rays) * per_patch_ray);
  const double dth = 2 * M_PI / opt.rays;
#pragma omp parallel for schedule(static)
  for (int i = 0; i < opt.rays; ++i) {
    const double th = i * dth;
    const auto e = radial_edges(r_ex, radii[i], opt.inner_fraction, opt.panels);
    for (int p = 0; p < opt.panels; ++p)
      for (int q = 0; q < opt.gauss_order; ++q) {
        const double r = e[p] + (e[p + 1] - e[p]) * g.x[q];
        const cplx z = std::polar(r, th);
        sample(z, dth * (e[p + 1] - e[p]) * g.w[q] * r * outside_weight(z), out[std::size_t(i) * per_ray + p * opt.gauss_order + q]);
      }
  }
  const std::size_t base = std::size_t(opt.rays) * per_ray;
  const double pdth = 2 * M_PI / opt.patch_rays;
  for (std::size_t pi = 0; pi < patches.size(); ++pi) {
    const Patch P = patches[pi];
#pragma omp parallel for schedule(static)
    for (int i = 0; i < opt.patch_rays; ++i) {
      const auto e = radial_edges(0, P.rho, 1e-12, opt.patch_panels);
      for (int p = 0; p < opt.patch_panels; ++p)
        for (int q = 0; q < opt.gauss_order; ++q) {
          const double r = e[p] + (e[p + 1] - e[p]) * g.x[q];
          const cplx z = P.c + std::polar(r, (i + 0.5) * pdth);
          sample(z, pdth * (e[p + 1] - e[p]) * g.w[q] * r * bump(r / P.rho),
                 out[base + (pi * opt.patch_rays + i) * per_patch_ray + p * opt.gauss_order + q]);
        }
    }
  }
  if (info) {
    *info = RegionIntegral{};
    info->epsilon = epsilon;
    info->excluded_radius = r_ex;
    for (const auto& p : patches) info->patch_centers.push_back(p.c);
    info->nodes = out.size();
    // mass of the innermost ring bounds the excluded disk when the density
    // grows no faster than r^-1.6 towards the branch point
    if (branched) {
      double ring = 0;
      for (int i = 0; i < opt.rays; ++i)
        for (int q = 0; q < opt.gauss_order; ++q) {
          const auto& s = out[std::size_t(i) * per_ray + q];
          ring += std::abs(s.area_weight) * s.b_squared;
        }
      info->excluded_bound = 4 * ring / (2 * M_PI);
    }
  }
  return out;
}

RegionIntegral integrate_region(const BranchedDiskSpec& spec, double epsilon, const QuadratureOptions& opt) {
  RegionIntegral out;
  const auto samples = region_samples(spec, epsilon, opt, &out);
  // fixed summation order: identical results for any thread count
  for (const auto& s : samples) {
    out.omega_T += s.area_weight * s.omega_T;
    out.omega_N += s.area_weight * s.omega_N;
    out.area += s.area_weight;
    out.b_squared += s.area_weight * s.b_squared;
  }
  out.omega_T /= 2 * M_PI;
  out.omega_N /= 2 * M_PI;
  return out;
}

FalloutEstimate integrate_fallout(const FamilySpec& family, const std::vector<double>& epsilons,
                                  const std::vector<Rational>& ts, const QuadratureOptions& opt) {
  if (epsilons.empty() || ts.empty()) fail(ErrorKind::input, "empty epsilon or parameter grid");
  FalloutEstimate est;
  est.epsilon_grid = epsilons;
  for (const auto& t : ts) {
    if (t == 0) fail(ErrorKind::input, "parameter grid must avoid t = 0");
    est.parameter_grid.push_back(static_cast<double>(t));
  }
  double worst = 0;
  for (double eps : epsilons) {
    std::vector<RegionIntegral> row;
    std::vector<double> yT, yN;
    for (const auto& t : ts) {
      row.push_back(integrate_region(family.at(t), eps, opt));
      yT.push_back(row.back().omega_T);
      yN.push_back(row.back().omega_N);
      worst = std::max(worst, row.back().excluded_bound);
    }
    const auto eT = richardson(est.parameter_grid, yT), eN = richardson(est.parameter_grid, yN);
    est.kT_at_eps.push_back(eT.value);
    est.kN_at_eps.push_back(eN.value);
    est.residual = std::max({est.residual, eT.residual, eN.residual});
    est.table.push_back(std::move(row));
  }
  // remainders of the limit germ scale like r^2 ~ eps^(2/N)
  const int N = std::max(1, family.at(Rational(0)).min_degree());
  est.epsilon_power = 2.0 / N;
  std::vector<double> xs;
  for (double e : epsilons) xs.push_back(std::pow(e, est.epsilon_power));
  const auto eT = richardson(xs, est.kT_at_eps), eN = richardson(xs, est.kN_at_eps);
  est.kT = eT.value;
  est.kN = eN.value;
  est.residual = std::max({est.residual, eT.residual, eN.residual}) + worst;
  est.converged = est.residual <= 0.05;
  if (!est.converged) {
    std::ostringstream w;
    w << "unconverged: extrapolation residual " << est.residual << " exceeds 0.05";
    est.warnings.push_back(w.str());
  }
  return est;
}

std::string fallout_csv(const FalloutEstimate& est) {
  std::ostringstream o;
  o.precision(12);
  o << "epsilon,t,omega_T,omega_N,area,b_squared,patches,nodes\n";
  for (std::size_t i = 0; i < est.table.size(); ++i)
    for (std::size_t k = 0; k < est.table[i].size(); ++k) {
      const auto& r = est.table[i][k];
      o << est.epsilon_grid[i] << ',' << est.parameter_grid[k] << ',' << r.omega_T << ',' << r.omega_N << ','
        << r.area << ',' << r.b_squared << ',' << r.patch_centers.size() << ',' << r.nodes << '\n';
    }
  return o.str();
}

GaussBonnetResult gauss_bonnet_check(const BranchedDiskSpec& spec, double epsilon, const QuadratureOptions& opt) {
  GaussBonnetResult out;
  out.curvature_term = integrate_region(spec, epsilon, opt).omega_T;
  const NumericDisk disk(spec);
  const auto zs = boundary(spec, epsilon, opt.boundary_samples);
  const std::size_t m = zs.size();
  std::vector<Vec4> F(m);
  std::vector<Frame> fr(m);
  for (std::size_t i = 0; i < m; ++i) {
    const DiskJet j = disk.jet(zs[i]);
    F[i] = j.F;
    fr[i] = tangent_frame(j.Fx, j.Fy, opt.conditioning);
  }
  // exterior angles of the boundary polygon inside the tangent planes
  double turning = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const Vec4 in = F[i] - F[(i + m - 1) % m], outv = F[(i + 1) % m] - F[i];
    turning += plane_angle(in, outv, fr[i].e1, fr[i].e2);
  }
  out.boundary_term = turning / (2 * M_PI);
  out.branching = spec.min_degree() >= 2 ? spec.min_degree() - 1 : 0;
  out.residual = out.curvature_term + out.boundary_term - out.euler - out.branching;
  return out;
}

NormalStokesResult normal_stokes_check(const BranchedDiskSpec& spec, double epsilon, const Vec4& section,
                                       const QuadratureOptions& opt) {
  if (!(section.norm() > 0)) fail(ErrorKind::input, "zero section vector");
  NormalStokesResult out;
  RegionIntegral info;
  const auto samples = region_samples(spec, epsilon, opt, &info);
  for (const auto& s : samples) out.curvature_term += s.area_weight * s.omega_N;
  out.curvature_term /= 2 * M_PI;

  const NumericDisk disk(spec);
  out.boundary_term = connection_integral(disk, boundary(spec, epsilon, opt.boundary_samples), section, opt.conditioning) / (2 * M_PI);

  // zeros: |normal part of X|^2 / |X|^2 vanishes where X is tangent
  const Vec4 X = section.normalized();
  const double region_scale = std::abs(samples.back().z) + 1e-300;
  auto f = [&](cplx z) {
    const DiskJet j = disk.jet(z);
    if (smallest_singular_ratio(j.Fx, j.Fy) < opt.conditioning) return 1.0;
    return normal_part(tangent_frame(j.Fx, j.Fy, 0), X).squaredNorm();
  };
  std::vector<std::pair<double, cplx>> low;
  for (const auto& s : samples)
    if (s.area_weight != 0) {
      const double v = f(s.z);
      if (v < 0.05) low.push_back({v, s.z});
    }
  std::sort(low.begin(), low.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  // near-branch spots first: the Gauss map sweeps the sphere there, so zeros
  // sit in wells far narrower than the grid spacing
  std::vector<cplx> seeds(info.patch_centers.begin(), info.patch_centers.end());
  for (std::size_t k = 0; k < low.size() && k < 48; ++k) seeds.push_back(low[k].second);
  std::vector<cplx> found;
  const auto radii = region_radii(spec, epsilon, opt.rays);
  for (std::size_t k = 0; k < seeds.size(); ++k) {
    const cplx z0 = seeds[k];
    const bool centre = k < info.patch_centers.size();
    bool near = false;
    if (!centre)
      for (const auto& z : found) near = near || std::abs(z - z0) < 0.05 * std::max(std::abs(z), std::abs(z0));
    if (near) continue;
    const double scale = std::max(std::abs(z0), 1e-6 * region_scale);
    cplx z = z0;
    double v = f(z0);
    // restart with shrinking simplices; a single large one steps over thin wells
    for (double rel : {5e-2, 1e-3, 1e-5}) {
      auto [zn, vn] = minimize2(f, z, rel * scale, 1e-12 * std::max(std::abs(z0), 1e-9));
      if (vn < v) z = zn, v = vn;
      if (v < 1e-14) break;
    }
    if (!(v < 1e-14)) continue;
    if (std::abs(z) < std::max(info.excluded_radius, 1e-300) || std::abs(z) >= radius_at(radii, std::arg(z) < 0 ? std::arg(z) + 2 * M_PI : std::arg(z)))
      continue;
    bool dup = false;
    for (const auto& o : found) dup = dup || std::abs(o - z) < 1e-6 * std::max(std::abs(z), 1e-9);
    if (!dup) found.push_back(z);
  }
  for (const cplx z0 : found) {
    double rho = 1e-4 * std::max(std::abs(z0), 1e-9 * region_scale);
    for (const cplx o : found)
      if (o != z0) rho = std::min(rho, 0.25 * std::abs(o - z0));
    std::vector<cplx> loop(64);
    for (int i = 0; i < 64; ++i) loop[i] = z0 + std::polar(rho, 2 * M_PI * i / 64);
    const double w = connection_integral(disk, loop, X, opt.conditioning) / (2 * M_PI);
    out.zeros.push_back({z0, static_cast<int>(std::lround(w))});
    out.index_sum += out.zeros.back().index;
  }
  // with omega = <ds, J s> in the oriented normal frame, curvature + boundary = index sum
  out.residual = out.curvature_term + out.boundary_term - out.index_sum;
  return out;
}

}  // namespace branchfall
