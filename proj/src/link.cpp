#include "branchfall/link.hpp"

#include "branchfall/disk_eval.hpp"
#include "branchfall/error.hpp"
#include "branchfall/kernels.hpp"

#include <boost/geometry.hpp>
#include <boost/geometry/index/rtree.hpp>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

namespace branchfall {

namespace {

constexpr long double kTwoPi = 6.283185307179586476925286766559L;

int default_samples(int order, const SliceOptions& opt) {
  int m = opt.samples > 0 ? opt.samples : std::max(64 * order, 2048);
  if (m < 64 * order)
    fail(ErrorKind::input, "need at least 64 N = " + std::to_string(64 * order) + " samples, got " + std::to_string(m));
  return m;
}

// Per-ray outcome of the radial solve.
template <class Real>
struct RaySolve {
  Real r = 0;
  V4<Real> unit;
  double admissible = 0;  // largest |F| up to which this ray stayed monotone
  int status = 0;         // 0 ok, 1 non-monotone, 2 not bracketed
};

template <class Real>
RaySolve<Real> solve_ray(const typename DiskEvaluator<Real>::Ray& ray, Real radius, Real log_eps, int probes,
                         Real tol) {
  RaySolve<Real> out;
  Real prev = -std::numeric_limits<Real>::infinity();
  int hit = -1;
  for (int k = 1; k <= probes; ++k) {
    Real r = radius * Real(k) / Real(probes);
    Real f = ray.log_norm(r);
    if (!(f > prev)) {
      out.admissible = std::exp(double(prev));
      out.status = 1;
      return out;
    }
    prev = f;
    if (f >= log_eps) {
      hit = k;
      break;
    }
  }
  if (hit < 0) {
    out.admissible = std::exp(double(prev));
    out.status = 2;
    return out;
  }
  // one more probe beyond the crossing must keep increasing
  if (hit < probes) {
    Real r = radius * Real(hit + 1) / Real(probes);
    if (!(ray.log_norm(r) > prev)) {
      out.admissible = std::exp(double(prev));
      out.status = 1;
      return out;
    }
  }
  Real lo = radius * Real(hit - 1) / Real(probes), hi = radius * Real(hit) / Real(probes);
  for (int it = 0; it < 400 && hi - lo > tol * hi; ++it) {
    Real mid = (lo + hi) / 2;
    if (ray.log_norm(mid) >= log_eps)
      hi = mid;
    else
      lo = mid;
  }
  out.r = (lo + hi) / 2;
  V4<Real> s = ray.scaled(out.r);
  out.unit = s / s.norm();
  out.admissible = std::numeric_limits<double>::infinity();
  return out;
}

template <class Real>
Real wrap_angle(Real a) {
  while (a > Real(kTwoPi) / 2) a -= Real(kTwoPi);
  while (a <= -Real(kTwoPi) / 2) a += Real(kTwoPi);
  return a;
}

}  // namespace

// --- slicing -----------------------------------------------------------------

template <class Real>
Slice<Real> slice_sphere_t(const BranchedDiskSpec& spec, double epsilon, const SliceOptions& opt) {
  spec.validate();
  if (!(epsilon > 0)) fail(ErrorKind::input, "epsilon must be positive");
  const int N = spec.min_degree();
  const int m = default_samples(N, opt);
  DiskEvaluator<Real> ev(spec);
  const Real radius = static_cast<Real>(spec.domain_radius);
  const Real log_eps = std::log(static_cast<Real>(epsilon));
  const Real tol = static_cast<Real>(opt.root_tolerance);

  Slice<Real> out;
  out.epsilon = epsilon;
  out.unit.resize(m);
  out.theta.resize(m);
  out.radius.resize(m);
  std::vector<double> admissible(m);
  std::vector<int> status(m);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < m; ++i) {
    Real th = kTwoPi * Real(i) / Real(m);
    auto ray = ev.ray(th);
    auto res = solve_ray<Real>(ray, radius, log_eps, opt.monotone_probes, tol);
    out.theta[i] = th;
    out.radius[i] = res.r;
    out.unit[i] = res.unit;
    admissible[i] = res.admissible;
    status[i] = res.status;
  }
  double worst = std::numeric_limits<double>::infinity();
  bool nonmono = false, unbracketed = false;
  for (int i = 0; i < m; ++i) {
    worst = std::min(worst, admissible[i]);
    nonmono |= status[i] == 1;
    unbracketed |= status[i] == 2;
  }
  if (nonmono) {
    std::ostringstream msg;
    msg << "epsilon " << epsilon << " outside graph regime; largest admissible about " << worst;
    throw GraphRegimeError(msg.str(), worst);
  }
  if (unbracketed) fail(ErrorKind::domain, "sphere of radius " + std::to_string(epsilon) + " not reached inside the domain");
  return out;
}

template Slice<double> slice_sphere_t<double>(const BranchedDiskSpec&, double, const SliceOptions&);
template Slice<long double> slice_sphere_t<long double>(const BranchedDiskSpec&, double, const SliceOptions&);

std::vector<double> region_radii(const BranchedDiskSpec& spec, double epsilon, int rays, const SliceOptions& opt) {
  spec.validate();
  if (!(epsilon > 0)) fail(ErrorKind::input, "epsilon must be positive");
  if (rays < 1) fail(ErrorKind::input, "need at least one ray");
  DiskEvaluator<double> ev(spec);
  std::vector<double> out(rays);
  std::vector<RaySolve<double>> res(rays);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < rays; ++i)
    res[i] = solve_ray<double>(ev.ray(2 * M_PI * i / rays), spec.domain_radius, std::log(epsilon), opt.monotone_probes,
                               opt.root_tolerance);
  double worst = std::numeric_limits<double>::infinity();
  for (int i = 0; i < rays; ++i) {
    if (res[i].status == 2) fail(ErrorKind::domain, "sphere of radius " + std::to_string(epsilon) + " not reached inside the domain");
    if (res[i].status == 1) worst = std::min(worst, res[i].admissible);
    out[i] = res[i].r;
  }
  if (std::isfinite(worst)) {
    std::ostringstream msg;
    msg << "epsilon " << epsilon << " outside graph regime; largest admissible about " << worst;
    throw GraphRegimeError(msg.str(), worst);
  }
  return out;
}

double graph_regime_limit(const BranchedDiskSpec& spec, int rays, int probes) {
  spec.validate();
  DiskEvaluator<double> ev(spec);
  double worst = std::numeric_limits<double>::infinity();
  for (int i = 0; i < rays; ++i) {
    auto ray = ev.ray(2 * M_PI * i / rays);
    double prev = -std::numeric_limits<double>::infinity();
    for (int k = 1; k <= probes; ++k) {
      double f = ray.log_norm(spec.domain_radius * k / probes);
      if (!(f > prev)) break;
      prev = f;
    }
    worst = std::min(worst, std::exp(prev));
  }
  return worst;
}

FramedLink slice_sphere(const BranchedDiskSpec& spec, double epsilon, const SliceOptions& opt) {
  auto bd = branching_data(spec);
  auto s = slice_sphere_t<double>(spec, epsilon, opt);
  FramedLink link;
  link.epsilon = epsilon;
  link.frame = bd.plane;
  link.order = bd.order;
  SpaceCurveSample c;
  c.points = std::move(s.unit);
  c.theta = std::move(s.theta);
  const std::size_t m = c.points.size();
  std::vector<Vec4> framing(m);
  const Vec4 X = bd.plane.e3;
  for (std::size_t i = 0; i < m; ++i) {
    const Vec4& u = c.points[i];
    const Vec4& next = c.points[(i + 1) % m];
    c.max_segment = std::max(c.max_segment, (next - u).norm());
    Vec4 xh = X - X.dot(u) * u;
    Vec4 tangent = (next - c.points[(i + m - 1) % m]).normalized();
    double normal_part = (xh - xh.dot(tangent) * tangent).norm();
    if (xh.norm() < 1e-8 || normal_part < 1e-8)
      fail(ErrorKind::resolution, "framing vector tangent to the link or radial; epsilon too large");
    framing[i] = xh.normalized();
  }
  link.components.push_back(std::move(c));
  link.framing.push_back(std::move(framing));
  return link;
}

// --- stereographic projection ------------------------------------------------

Frame pole_frame(const Vec4& pole) {
  Vec4 p = pole.normalized();
  // e1, e2, e3 completing p, then orient so that (e1, e2, e3, p) is positive
  Frame f = complete_frame(p, [&] {
    Vec4 best = Vec4::Zero();
    double score = -1;
    for (int i = 0; i < 4; ++i) {
      Vec4 v = Vec4::Unit(i) - p(i) * p;
      if (v.norm() > score) score = v.norm(), best = v.normalized();
    }
    return best;
  }());
  Frame out;
  out.e1 = f.e2;
  out.e2 = f.e3;
  out.e3 = f.e4;
  out.e4 = p;
  if (det4(out.e1, out.e2, out.e3, out.e4) < 0) out.e3 = -out.e3;
  return out;
}

template <class Real>
Polyline<Real> stereographic_t(const std::vector<V4<Real>>& points, const Frame& basis, double min_pole_distance) {
  V4<Real> b[4] = {basis.e1.cast<Real>(), basis.e2.cast<Real>(), basis.e3.cast<Real>(), basis.e4.cast<Real>()};
  Polyline<Real> out;
  out.reserve(points.size());
  for (const auto& u : points) {
    Real a4 = u.dot(b[3]);
    if ((u - b[3]).norm() < Real(min_pole_distance)) fail(ErrorKind::pole, "stereographic pole too close to the link");
    Real s = Real(1) / (Real(1) - a4);
    out.push_back(V3<Real>(u.dot(b[0]) * s, u.dot(b[1]) * s, u.dot(b[2]) * s));
  }
  return out;
}

template Polyline<double> stereographic_t<double>(const std::vector<V4<double>>&, const Frame&, double);
template Polyline<long double> stereographic_t<long double>(const std::vector<V4<long double>>&, const Frame&,
                                                            double);

ProjectedLink stereographic(const FramedLink& link, const Vec4& pole) {
  Frame basis = pole_frame(pole);
  ProjectedLink out;
  for (std::size_t c = 0; c < link.components.size(); ++c) {
    const auto& pts = link.components[c].points;
    auto curve = stereographic_t<double>(pts, basis, 0.05);
    // framing: derivative of the projection applied to the framing vector
    Polyline<double> dirs;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const Vec4& u = pts[i];
      const Vec4& x = link.framing[c][i];
      double a4 = u.dot(basis.e4), s = 1 / (1 - a4);
      Vec3 q(u.dot(basis.e1), u.dot(basis.e2), u.dot(basis.e3));
      Vec3 dq(x.dot(basis.e1), x.dot(basis.e2), x.dot(basis.e3));
      dirs.push_back(s * dq + s * s * x.dot(basis.e4) * q);
    }
    out.curves.push_back(std::move(curve));
    out.framing.push_back(std::move(dirs));
  }
  return out;
}

// --- braid extraction --------------------------------------------------------

namespace {

enum class Issue { none, not_braid, sampling, precision };

template <class Real>
struct Extraction {
  BraidExtraction result;
  Issue issue = Issue::none;
  std::string message;
};

// One closed curve in cylindrical coordinates about the braid axis. `scale`
// bounds the rounding error of `depth` in units of the working epsilon.
template <class Real>
struct Cylinder {
  std::vector<Real> angle, h, depth, scale;
};

template <class Real>
Cylinder<Real> cylinder_of(const Polyline<Real>& P, const Axis& axis) {
  const V3<Real> d = axis.direction.normalized().cast<Real>();
  const V3<Real> o = axis.point.cast<Real>();
  // (b1, b2, d) right handed
  V3<Real> b1 = std::abs(double(d(0))) < 0.9 ? V3<Real>(1, 0, 0) : V3<Real>(0, 1, 0);
  b1 = (b1 - b1.dot(d) * d).normalized();
  V3<Real> b2 = d.cross(b1);
  Cylinder<Real> c;
  for (const auto& p : P) {
    V3<Real> rel = p - o;
    Real h = rel.dot(d);
    V3<Real> perp = rel - h * d;
    using std::atan2;
    c.angle.push_back(atan2(perp.dot(b2), perp.dot(b1)));
    c.h.push_back(h);
    c.depth.push_back(perp.norm());
    c.scale.push_back(perp.norm() + std::abs(h));
  }
  return c;
}

template <class Real>
struct Strand {
  // unwrapped angle with height and depth, two periods long. Height and depth
  // are interpolated as functions of the angle: interpolating the point
  // instead would add chord sag far above the depth gaps of tight braids.
  const std::vector<Real>* phi;
  const Cylinder<Real>* cyl;
  std::size_t cursor = 0;
  Real offset = 0;  // target angle = grid angle + offset
};

template <class Real>
Extraction<Real> extract(const std::vector<Cylinder<Real>>& input, const BraidOptions& opt) {
  Extraction<Real> ex;
  const Real tau = Real(kTwoPi);
  std::vector<std::vector<Real>> phis(input.size());
  std::vector<Cylinder<Real>> cyls(input.size());
  std::vector<int> degree(input.size());
  std::size_t total_samples = 0;
  for (std::size_t c = 0; c < input.size(); ++c) {
    const auto& in = input[c];
    const std::size_t n = in.angle.size();
    if (n < 3) fail(ErrorKind::input, "curve with fewer than 3 samples");
    total_samples += n;
    auto& phi = phis[c];
    phi.resize(2 * n + 1);
    phi[0] = in.angle[0];
    for (std::size_t i = 1; i <= n; ++i) {
      Real step = wrap_angle<Real>(in.angle[i % n] - in.angle[i - 1]);
      if (!(step > 0)) {
        ex.issue = Issue::not_braid;
        ex.message = "angle about the axis is not increasing";
        return ex;
      }
      phi[i] = phi[i - 1] + step;
    }
    Real period = phi[n] - phi[0];
    degree[c] = static_cast<int>(std::lround(double(period / tau)));
    if (degree[c] < 1 || std::abs(double(period / tau) - degree[c]) > 1e-6) {
      ex.issue = Issue::not_braid;
      ex.message = "curve does not close up around the axis";
      return ex;
    }
    for (std::size_t i = 1; i <= n; ++i) phi[n + i] = phi[i] + period;
    auto& cy = cyls[c];
    for (std::size_t i = 0; i <= 2 * n; ++i) {
      cy.h.push_back(in.h[i % n]);
      cy.depth.push_back(in.depth[i % n]);
      cy.scale.push_back(in.scale[i % n]);
    }
  }

  // strands: (curve, lift index)
  std::vector<Strand<Real>> strands;
  for (std::size_t c = 0; c < input.size(); ++c) {
    using std::ceil;
    Real base = ceil(phis[c][0] / tau);
    for (int s = 0; s < degree[c]; ++s) strands.push_back({&phis[c], &cyls[c], 0, tau * (base + Real(s))});
  }
  const int S = static_cast<int>(strands.size());
  ex.result.strands_per_component = degree;
  ex.result.word.strands = S;
  const long G = std::max<long>(16, static_cast<long>(std::ceil(double(opt.grid_factor) * double(total_samples) / S)));

  auto sample = [&](Strand<Real>& st, Real psi, Real& h, Real& depth, Real& scale) {
    const auto& phi = *st.phi;
    const auto& cy = *st.cyl;
    Real target = psi + st.offset;
    while (st.cursor + 1 < phi.size() && phi[st.cursor + 1] <= target) ++st.cursor;
    std::size_t i = std::min(st.cursor, phi.size() - 2);
    Real w = (target - phi[i]) / (phi[i + 1] - phi[i]);
    h = cy.h[i] + w * (cy.h[i + 1] - cy.h[i]);
    depth = cy.depth[i] + w * (cy.depth[i + 1] - cy.depth[i]);
    scale = std::max(cy.scale[i], cy.scale[i + 1]);
  };

  std::vector<Real> h0(S), r0(S), s0(S), h1(S), r1(S), s1(S);
  for (int s = 0; s < S; ++s) sample(strands[s], 0, h0[s], r0[s], s0[s]);
  std::vector<int> order(S);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return h0[a] < h0[b]; });

  const Real ulps = Real(64) * std::numeric_limits<Real>::epsilon();
  double min_gap = std::numeric_limits<double>::infinity();
  struct Event {
    Real t;
    int a, b;
  };
  std::vector<Event> events;
  std::vector<int> pos(S);
  for (long g = 1; g <= G; ++g) {
    Real psi = tau * Real(g) / Real(G);
    for (int s = 0; s < S; ++s) sample(strands[s], psi, h1[s], r1[s], s1[s]);
    events.clear();
    for (int a = 0; a < S; ++a)
      for (int b = a + 1; b < S; ++b) {
        Real d0 = h0[a] - h0[b], d1 = h1[a] - h1[b];
        if ((d0 < 0) != (d1 < 0)) events.push_back({d0 / (d0 - d1), a, b});
      }
    std::sort(events.begin(), events.end(), [](const Event& x, const Event& y) { return x.t < y.t; });
    for (int p = 0; p < S; ++p) pos[order[p]] = p;
    for (const auto& e : events) {
      int pa = pos[e.a], pb = pos[e.b];
      if (std::abs(pa - pb) != 1) {
        ex.issue = Issue::sampling;
        ex.message = "non-adjacent strands exchange within one grid step";
        return ex;
      }
      int lower = pa < pb ? e.a : e.b, upper = pa < pb ? e.b : e.a;
      int i = std::min(pa, pb);
      // the lower strand moves up; it passes under when nearer the axis
      Real g0 = r0[lower] - r0[upper], g1 = r1[lower] - r1[upper];
      Real gap = (1 - e.t) * g0 + e.t * g1;
      min_gap = std::min(min_gap, std::abs(double(gap)));
      if ((g0 < 0) != (g1 < 0)) {
        ex.issue = Issue::sampling;
        ex.message = "depth order flips across a crossing";
        return ex;
      }
      using std::abs;
      Real thresh = opt.ambiguity > 0
                        ? Real(opt.ambiguity)
                        : ulps * std::max({s0[lower], s0[upper], s1[lower], s1[upper]});
      if (abs(g0) < thresh || abs(g1) < thresh) {
        ex.issue = Issue::precision;
        std::ostringstream msg;
        msg << "crossing depth gap " << double(std::min(abs(g0), abs(g1))) << " below resolution " << double(thresh);
        ex.message = msg.str();
        return ex;
      }
      ex.result.word.letters.push_back(g0 < 0 ? (i + 1) : -(i + 1));
      std::swap(order[pa], order[pb]);
      pos[e.a] = pb;
      pos[e.b] = pa;
    }
    std::swap(h0, h1);
    std::swap(r0, r1);
    std::swap(s0, s1);
  }
  ex.result.min_depth_gap = min_gap;
  return ex;
}

[[noreturn]] void raise(Issue issue, const std::string& msg) {
  switch (issue) {
    case Issue::not_braid: fail(ErrorKind::not_braid, "not a braid about this axis: " + msg);
    default: fail(ErrorKind::resolution, msg + "; sample more densely");
  }
}

}  // namespace

template <class Real>
BraidExtraction extract_braid_t(const std::vector<Polyline<Real>>& curves, const Axis& axis, const BraidOptions& opt) {
  std::vector<Cylinder<Real>> cyl;
  for (const auto& c : curves) {
    cyl.push_back(cylinder_of<Real>(c, axis));
    for (Real rho : cyl.back().depth)
      if (rho < Real(opt.min_rho)) raise(Issue::not_braid, "curve meets the axis");
  }
  auto ex = extract<Real>(cyl, opt);
  if (ex.issue != Issue::none) raise(ex.issue, ex.message);
  return ex.result;
}

template BraidExtraction extract_braid_t<double>(const std::vector<Polyline<double>>&, const Axis&,
                                                 const BraidOptions&);
template BraidExtraction extract_braid_t<long double>(const std::vector<Polyline<long double>>&, const Axis&,
                                                      const BraidOptions&);

BraidWord extract_braid(const std::vector<Polyline<double>>& curves, const Axis& axis, const BraidOptions& opt) {
  return extract_braid_t<double>(curves, axis, opt).word;
}

const char* to_string(Precision p) { return p == Precision::double_ ? "double" : "long double"; }

namespace {

template <class Real>
Extraction<Real> slice_and_extract(const BranchedDiskSpec& spec, const Frame& frame, double epsilon,
                                   const SliceOptions& sopt, const BraidOptions& bopt) {
  auto s = slice_sphere_t<Real>(spec, epsilon, sopt);
  stereographic_t<Real>(s.unit, frame, 0.05);  // pole check
  // Projection from e4 read about the e3 axis. With a = coordinates in the
  // frame, rho^2 - 1 = (2 a4 (1 - a4) - a3^2) / (1 - a4)^2 exactly on the
  // sphere; the depth is taken in that form, which keeps relative precision
  // where rho itself is 1 to many digits.
  Cylinder<Real> cyl;
  V4<Real> b[4] = {frame.e1.cast<Real>(), frame.e2.cast<Real>(), frame.e3.cast<Real>(), frame.e4.cast<Real>()};
  for (const auto& u : s.unit) {
    Real a1 = u.dot(b[0]), a2 = u.dot(b[1]), a3 = u.dot(b[2]), a4 = u.dot(b[3]);
    Real k = Real(1) / (Real(1) - a4);
    using std::abs;
    using std::atan2;
    cyl.angle.push_back(atan2(a2, a1));
    cyl.h.push_back(a3 * k);
    cyl.depth.push_back((2 * a4 * (1 - a4) - a3 * a3) * k * k);
    cyl.scale.push_back((2 * abs(a4) + a3 * a3) * k * k + abs(a3 * k) * std::numeric_limits<Real>::epsilon());
  }
  for (Real q : cyl.depth)
    if (1 + q < Real(bopt.min_rho * bopt.min_rho)) {
      Extraction<Real> ex;
      ex.issue = Issue::not_braid;
      ex.message = "curve meets the axis";
      return ex;
    }
  return extract<Real>({cyl}, bopt);
}

}  // namespace

LinkBraid link_braid(const BranchedDiskSpec& spec, double epsilon, const SliceOptions& slice,
                     const BraidOptions& braid, bool allow_extended) {
  auto bd = branching_data(spec);
  SliceOptions sopt = slice;
  sopt.samples = default_samples(bd.order, slice);
  const int max_samples = std::max(sopt.samples, 1 << 19);
  Precision prec = braid.extended ? Precision::long_double : Precision::double_;
  std::string last;
  while (true) {
    Issue issue;
    BraidExtraction res;
    if (prec == Precision::double_) {
      auto ex = slice_and_extract<double>(spec, bd.plane, epsilon, sopt, braid);
      issue = ex.issue, res = ex.result, last = ex.message;
    } else {
      SliceOptions lopt = sopt;
      lopt.root_tolerance = std::min(sopt.root_tolerance, 1e-15);
      auto ex = slice_and_extract<long double>(spec, bd.plane, epsilon, lopt, braid);
      issue = ex.issue, res = ex.result, last = ex.message;
    }
    if (issue == Issue::none) {
      LinkBraid out;
      out.word = res.word;
      out.epsilon = epsilon;
      out.samples = sopt.samples;
      out.precision = prec;
      out.min_depth_gap = res.min_depth_gap;
      return out;
    }
    if (issue == Issue::precision && prec == Precision::double_ && allow_extended) {
      prec = Precision::long_double;
      continue;
    }
    if ((issue == Issue::sampling || issue == Issue::not_braid) && sopt.samples * 4 <= max_samples) {
      sopt.samples *= 4;
      continue;
    }
    raise(issue, last);
  }
}

BraidSweep braid_sweep(const BranchedDiskSpec& spec, const std::vector<double>& epsilons, const SliceOptions& slice,
                       const BraidOptions& braid) {
  std::vector<double> eps = epsilons;
  if (eps.empty()) {
    double e = spec.domain_radius / 2;
    for (int k = 0; k < 14; ++k, e *= 0.7) eps.push_back(e);
  }
  BraidSweep sweep;
  for (double e : eps) {
    SweepRow row;
    row.epsilon = e;
    LinkBraid lb;
    try {
      lb = link_braid(spec, e, slice, braid);
      row.status = "ok";
      row.exponent_sum = exponent_sum(lb.word);
      row.strands = lb.word.strands;
      row.precision = lb.precision;
    } catch (const Error& err) {
      row.status = to_string(err.kind());
      if (err.kind() == ErrorKind::not_branched || err.kind() == ErrorKind::input) throw;
    }
    sweep.rows.push_back(row);
    const std::size_t k = sweep.rows.size();
    if (k >= 2) {
      const auto &a = sweep.rows[k - 2], &b = sweep.rows[k - 1];
      if (a.status == "ok" && b.status == "ok" && a.exponent_sum == b.exponent_sum && a.strands == b.strands) {
        sweep.result = lb;
        return sweep;
      }
    }
  }
  fail(ErrorKind::unconverged, "braid did not stabilize over the epsilon sweep");
}

// --- linking numbers ---------------------------------------------------------

double gauss_linking(const Polyline<double>& a, const Polyline<double>& b) {
  return kernels::parallel_enabled() ? kernels::gauss_linking_parallel(a, b) : kernels::gauss_linking_serial(a, b);
}

double crossing_linking(const Polyline<double>& a, const Polyline<double>& b, const Vec3& view) {
  const Vec3 v = view.normalized();
  Vec3 e1 = std::abs(v(0)) < 0.9 ? Vec3::UnitX() : Vec3::UnitY();
  e1 = (e1 - e1.dot(v) * v).normalized();
  const Vec3 e2 = v.cross(e1);
  auto flat = [&](const Vec3& p) { return Eigen::Vector2d(p.dot(e1), p.dot(e2)); };
  const std::size_t na = a.size(), nb = b.size();
  std::vector<Eigen::Vector2d> fa(na), fb(nb);
  for (std::size_t i = 0; i < na; ++i) fa[i] = flat(a[i]);
  for (std::size_t j = 0; j < nb; ++j) fb[j] = flat(b[j]);
  auto cross2 = [](const Eigen::Vector2d& x, const Eigen::Vector2d& y) { return x(0) * y(1) - x(1) * y(0); };
  double total = 0;
  for (std::size_t i = 0; i < na; ++i) {
    const auto &p = fa[i], &p2 = fa[(i + 1) % na];
    const Eigen::Vector2d r = p2 - p;
    const double xmin = std::min(p(0), p2(0)), xmax = std::max(p(0), p2(0));
    const double ymin = std::min(p(1), p2(1)), ymax = std::max(p(1), p2(1));
    for (std::size_t j = 0; j < nb; ++j) {
      const auto &q = fb[j], &q2 = fb[(j + 1) % nb];
      if (std::max(q(0), q2(0)) < xmin || std::min(q(0), q2(0)) > xmax || std::max(q(1), q2(1)) < ymin ||
          std::min(q(1), q2(1)) > ymax)
        continue;
      const Eigen::Vector2d s = q2 - q;
      double den = cross2(r, s);
      if (den == 0) continue;
      double t = cross2(q - p, s) / den, u = cross2(q - p, r) / den;
      if (t < 0 || t >= 1 || u < 0 || u >= 1) continue;
      Vec3 pa = a[i] + t * (a[(i + 1) % na] - a[i]);
      Vec3 pb = b[j] + u * (b[(j + 1) % nb] - b[j]);
      Vec3 ta = a[(i + 1) % na] - a[i], tb = b[(j + 1) % nb] - b[j];
      bool a_over = pa.dot(v) > pb.dot(v);
      const Vec3& to = a_over ? ta : tb;
      const Vec3& tu = a_over ? tb : ta;
      total += to.cross(tu).dot(v) > 0 ? 1 : -1;
    }
  }
  return total / 2;
}

LinkingResult linking_number(const Polyline<double>& a, const Polyline<double>& b, std::uint64_t seed) {
  double max_seg = 0;
  for (const auto* c : {&a, &b})
    for (std::size_t i = 0; i < c->size(); ++i) max_seg = std::max(max_seg, ((*c)[(i + 1) % c->size()] - (*c)[i]).norm());
  double clearance = kernels::parallel_enabled() ? kernels::min_distance_parallel(a, b) : kernels::min_distance_serial(a, b);
  if (clearance < 10 * max_seg) {
    std::ostringstream msg;
    msg << "curves too close for their sampling (clearance " << clearance << ", segment " << max_seg << ")";
    fail(ErrorKind::resolution, msg.str());
  }
  LinkingResult out;
  out.gauss = gauss_linking(a, b);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0, 1);
  out.crossings = crossing_linking(a, b, Vec3(gauss(rng), gauss(rng), gauss(rng)));
  long rounded = std::lround(out.gauss);
  if (std::abs(out.gauss - double(rounded)) > 0.1 || std::abs(out.crossings - double(rounded)) > 1e-9) {
    std::ostringstream msg;
    msg << "linking methods disagree: Gauss sum " << out.gauss << ", crossings " << out.crossings;
    fail(ErrorKind::resolution, msg.str());
  }
  out.value = static_cast<int>(rounded);
  return out;
}

double self_clearance(const std::vector<Vec4>& points, int window) {
  namespace bg = boost::geometry;
  namespace bgi = boost::geometry::index;
  using P = bg::model::point<double, 4, bg::cs::cartesian>;
  using Entry = std::pair<P, int>;
  const int n = static_cast<int>(points.size());
  std::vector<Entry> entries;
  entries.reserve(n);
  auto to_p = [](const Vec4& v) {
    P p;
    bg::set<0>(p, v(0));
    bg::set<1>(p, v(1));
    bg::set<2>(p, v(2));
    bg::set<3>(p, v(3));
    return p;
  };
  for (int i = 0; i < n; ++i) entries.emplace_back(to_p(points[i]), i);
  bgi::rtree<Entry, bgi::rstar<16>> tree(entries.begin(), entries.end());
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    auto far = [&](const Entry& e) {
      int gap = std::abs(e.second - i);
      return std::min(gap, n - gap) > window;
    };
    for (auto it = tree.qbegin(bgi::nearest(entries[i].first, 1) && bgi::satisfies(far)); it != tree.qend(); ++it)
      best = std::min(best, (points[it->second] - points[i]).norm());
  }
  return best;
}

SelfLinkingResult self_linking(const BranchedDiskSpec& spec, double epsilon, const Vec4& framing_vector,
                               std::uint64_t seed, int max_samples) {
  auto bd = branching_data(spec);
  SliceOptions opt;
  opt.samples = default_samples(bd.order, opt);
  const Frame basis = bd.plane;
  SelfLinkingResult out;
  double delta = -1;
  int refinements = 0;
  while (out.values.size() < 6) {
    auto s = slice_sphere_t<double>(spec, epsilon, opt);
    const int m = static_cast<int>(s.unit.size());
    if (delta < 0) {
      // points closer than an eighth of a strand turn count as neighbours
      delta = self_clearance(s.unit, std::max(3, m / (8 * bd.order))) / 4;
    }
    std::vector<Vec4> pushed(m);
    for (int i = 0; i < m; ++i) {
      const Vec4& u = s.unit[i];
      Vec4 xh = framing_vector - framing_vector.dot(u) * u;
      Vec4 tangent = (s.unit[(i + 1) % m] - s.unit[(i + m - 1) % m]).normalized();
      if ((xh - xh.dot(tangent) * tangent).norm() < 1e-8)
        fail(ErrorKind::resolution, "framing vector tangent to the link");
      pushed[i] = (u + delta * xh.normalized()).normalized();
    }
    auto a = stereographic_t<double>(s.unit, basis, 0.05);
    auto b = stereographic_t<double>(pushed, basis, 0.05);
    // the linking precondition is checked in R^3, where the projection has
    // stretched the two curves by different amounts along their length
    double seg = 0;
    for (const auto* c : {&a, &b})
      for (int i = 0; i < m; ++i) seg = std::max(seg, ((*c)[(i + 1) % m] - (*c)[i]).norm());
    double gap = kernels::parallel_enabled() ? kernels::min_distance_parallel(a, b) : kernels::min_distance_serial(a, b);
    if (gap < 12 * seg) {
      int need = static_cast<int>(std::ceil(m * 12 * seg / gap * 1.2));
      if (need > max_samples || ++refinements > 8) {
        std::ostringstream msg;
        msg << "push-off " << delta << " needs " << need << " samples (limit " << max_samples << ")";
        fail(ErrorKind::resolution, msg.str());
      }
      opt.samples = need;
      continue;
    }
    int lk = linking_number(a, b, seed).value;
    out.deltas.push_back(delta);
    out.values.push_back(lk);
    out.samples = m;
    if (out.values.size() >= 2 && out.values[out.values.size() - 2] == lk) {
      out.value = lk;
      return out;
    }
    delta /= 2;
  }
  fail(ErrorKind::resolution, "self-linking did not stabilize under push-off halving");
}

SelfLinkingResult self_linking(const BranchedDiskSpec& spec, double epsilon, std::uint64_t seed) {
  return self_linking(spec, epsilon, branching_data(spec).plane.e3, seed);
}

}  // namespace branchfall
