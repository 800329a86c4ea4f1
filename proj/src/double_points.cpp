#include "branchfall/double_points.hpp"

#include "branchfall/error.hpp"

#include <Eigen/Dense>
#include <boost/geometry.hpp>
#include <boost/geometry/index/rtree.hpp>

#include <algorithm>
#include <cmath>

namespace branchfall {

namespace bg = boost::geometry;
namespace bgi = boost::geometry::index;

namespace {

// (F/|F|, log|F|): nearby keys from distant parameters flag a near-intersection
using Key = bg::model::point<double, 5, bg::cs::cartesian>;
using Entry = std::pair<Key, std::size_t>;

Key key_of(const Vec4& f) {
  const double n = f.norm();
  Key k;
  bg::set<0>(k, f(0) / n);
  bg::set<1>(k, f(1) / n);
  bg::set<2>(k, f(2) / n);
  bg::set<3>(k, f(3) / n);
  bg::set<4>(k, std::log(n));
  return k;
}

struct Candidate {
  double distance;
  std::size_t a, b;
};

enum class Outcome { converged, stalled, failed };

Outcome newton(const NumericDisk& disk, cplx& z, cplx& w, int iterations, double& residual) {
  const double R = disk.domain_radius();
  DiskJet jz = disk.jet(z), jw = disk.jet(w);
  Vec4 g = jz.F - jw.F;
  residual = g.norm();
  for (int it = 0; it < iterations; ++it) {
    const double scale = std::max(jz.F.norm(), 1e-300);
    if (residual <= 1e-14 * scale) return Outcome::converged;
    Eigen::Matrix4d J;
    J << jz.Fx, jz.Fy, -jw.Fx, -jw.Fy;
    Eigen::Vector4d step = J.fullPivLu().solve(-g);
    if (!step.allFinite()) return Outcome::failed;
    // near-tangent sheets make J nearly singular and convergence linear; a
    // vanishing step is then the stopping signal
    const double mag = std::max(std::abs(z), std::abs(w));
    if (step.norm() < 1e-13 * mag) return residual <= 1e-8 * scale ? Outcome::converged : Outcome::failed;
    // backtrack until the residual drops
    double lambda = 1;
    bool moved = false;
    for (int b = 0; b < 30; ++b, lambda *= 0.5) {
      cplx z1 = z + lambda * cplx(step(0), step(1)), w1 = w + lambda * cplx(step(2), step(3));
      if (std::abs(z1) > R || std::abs(w1) > R) continue;
      DiskJet a = disk.jet(z1), c = disk.jet(w1);
      double r1 = (a.F - c.F).norm();
      if (r1 < residual) {
        z = z1, w = w1, jz = a, jw = c, g = a.F - c.F, residual = r1;
        moved = true;
        break;
      }
    }
    if (!moved) return residual <= 1e-10 * scale ? Outcome::converged : Outcome::failed;
  }
  return residual <= 1e-6 * std::max(jz.F.norm(), 1e-300) ? Outcome::stalled : Outcome::failed;
}

}  // namespace

DoublePointCount double_points(const BranchedDiskSpec& spec, double epsilon, const DoublePointOptions& opt) {
  spec.validate();
  if (!(epsilon > 0)) fail(ErrorKind::input, "epsilon must be positive");
  const NumericDisk disk(spec);
  const double R = spec.domain_radius;

  std::vector<cplx> zs;
  std::vector<Entry> entries;
  const double lo = std::log(R * opt.r_min_fraction), hi = std::log(R);
  for (int i = 0; i < opt.radial; ++i) {
    const double r = std::exp(lo + (hi - lo) * (i + 0.5) / opt.radial);
    for (int k = 0; k < opt.angular; ++k) {
      // staggered rings keep the grid from aligning with symmetric pairs
      const double th = 2 * M_PI * (k + 0.5 * (i % 2)) / opt.angular;
      const cplx z = std::polar(r, th);
      const Vec4 f = disk.eval(z);
      const double n = f.norm();
      if (!(n > 0) || n > epsilon * 1.05) continue;
      entries.push_back({key_of(f), zs.size()});
      zs.push_back(z);
    }
  }
  bgi::rtree<Entry, bgi::quadratic<16>> tree(entries.begin(), entries.end());

  // key-space cell size: one radial step moves log|F| by about N dlog r
  const double cell = (hi - lo) / opt.radial * std::max(1, spec.min_degree()) + 2 * M_PI / opt.angular * spec.max_degree();
  std::vector<Candidate> cands;
  for (const auto& [k, a] : entries) {
    std::vector<Entry> near;
    tree.query(bgi::nearest(k, 12), std::back_inserter(near));
    double best = 1e300;
    std::size_t bi = a;
    for (const auto& [k2, b] : near) {
      if (b <= a) continue;
      if (std::abs(zs[a] - zs[b]) < 0.25 * std::max(std::abs(zs[a]), std::abs(zs[b]))) continue;
      double d = bg::distance(k, k2);
      if (d < best) best = d, bi = b;
    }
    if (bi != a && best < 4 * cell) cands.push_back({best, a, bi});
  }
  std::sort(cands.begin(), cands.end(), [](const Candidate& x, const Candidate& y) {
    return x.distance != y.distance ? x.distance < y.distance : (x.a != y.a ? x.a < y.a : x.b < y.b);
  });
  if (static_cast<int>(cands.size()) > opt.max_candidates) cands.resize(opt.max_candidates);

  DoublePointCount out;
  std::vector<DoublePoint> stalled;
  for (const auto& c : cands) {
    cplx z = zs[c.a], w = zs[c.b];
    double res = 0;
    Outcome o = newton(disk, z, w, opt.newton_iterations, res);
    if (o == Outcome::failed) continue;
    const double sep = std::abs(z - w), mag = std::max(std::abs(z), std::abs(w));
    if (sep < 1e-6 * mag || mag == 0) continue;  // collapsed onto the diagonal
    if (disk.eval(z).norm() > epsilon) continue;
    if (o == Outcome::stalled) {
      stalled.push_back({z, w, 0, res});
      continue;
    }
    const double tol = 1e-7 * mag;
    bool dup = false;
    for (const auto& p : out.points)
      if ((std::abs(p.z - z) < tol && std::abs(p.w - w) < tol) || (std::abs(p.z - w) < tol && std::abs(p.w - z) < tol))
        dup = true;
    if (std::abs(z) > std::abs(w) + tol || (std::abs(std::abs(z) - std::abs(w)) <= tol && std::arg(z) > std::arg(w)))
      std::swap(z, w);
    if (dup) continue;
    DiskJet jz = disk.jet(z), jw = disk.jet(w);
    // orthonormal tangent pairs: the determinant is the sine product of the
    // angles between the sheets
    Frame fz = tangent_frame(jz.Fx, jz.Fy), fw = tangent_frame(jw.Fx, jw.Fy);
    const double d = det4(fz.e1, fz.e2, fw.e1, fw.e2);
    DoublePoint p{z, w, d > 0 ? 1 : -1, res};
    if (!(std::abs(d) > 1e-12)) {
      p.sign = 0;  // tangential contact
      out.reliable = false;
    }
    out.points.push_back(p);
  }
  std::sort(out.points.begin(), out.points.end(), [](const DoublePoint& x, const DoublePoint& y) {
    return std::abs(x.z) != std::abs(y.z) ? std::abs(x.z) < std::abs(y.z) : std::arg(x.z) < std::arg(y.z);
  });
  for (const auto& p : out.points) out.signed_count += p.sign;
  // a slow start that was heading for a point found elsewhere is harmless
  for (const auto& q : stalled) {
    const double tol = 1e-4 * std::max(std::abs(q.z), std::abs(q.w));
    bool known = false;
    for (const auto& p : out.points)
      known = known || (std::abs(p.z - q.z) < tol && std::abs(p.w - q.w) < tol) ||
              (std::abs(p.z - q.w) < tol && std::abs(p.w - q.z) < tol);
    if (!known) ++out.unresolved;
  }
  if (out.unresolved > 0) out.reliable = false;
  return out;
}

DoublePointCount double_points(const FamilySpec& family, const Rational& t, double epsilon,
                               const DoublePointOptions& opt) {
  return double_points(family.at(t), epsilon, opt);
}

}  // namespace branchfall
