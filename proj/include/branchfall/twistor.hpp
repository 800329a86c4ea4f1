#pragma once

// Oriented 2-planes of R^4 as points of S^2 x S^2, areas of the tangent-plane
// lift, and the vertical degree defects that escape into the bubble when a
// family of Gauss maps degenerates.

#include "branchfall/curvature.hpp"
#include "branchfall/surface.hpp"

#include <Eigen/Core>

#include <functional>
#include <string>
#include <vector>

namespace branchfall {

using Vec3 = Eigen::Vector3d;
/// Components on e12, e13, e14, e23, e24, e34.
using Bivector = Eigen::Matrix<double, 6, 1>;

Bivector wedge(const Vec4& u, const Vec4& v);

/// Self-dual and anti-self-dual halves of a unit simple 2-vector, each scaled
/// to unit length. Bases of the two factors:
///   (e12 + e34, e13 - e24, e14 + e23) / sqrt 2  and  (e12 - e34, e13 + e24, e14 - e23) / sqrt 2.
struct SpherePair {
  Vec3 jplus;
  Vec3 jminus;
};

SpherePair plane_to_spheres(const Bivector& P);
Bivector spheres_to_plane(const SpherePair& s);

/// Oriented tangent plane of the disk at an immersed point.
SpherePair tangent_spheres(const BranchedDiskSpec& spec, cplx z, double conditioning = 1e-10);

struct LiftArea {
  double lift_area = 0;  // area of z -> tangent plane, metric |dP(u)|^2 = sum_k |B(u, e_k)|^2
  double area = 0;
  double b_squared = 0;  // integral of |B|^2
  double bound = 0;      // b_squared / 2, never below lift_area
};

LiftArea lift_area(const BranchedDiskSpec& spec, double epsilon, const QuadratureOptions& opt = {});

using RationalFamily = std::function<RationalFunction(const Rational&)>;

struct DefectOptions {
  std::vector<double> deltas{0.2, 0.1, 0.05};
  std::vector<Rational> ts{Rational(1, 10000), Rational(1, 100000), Rational(1, 1000000)};
  int generic_points = 64;  // sphere points whose preimages are counted
  unsigned seed = 17;
  int max_root_degree = 12;  // above this only the area quadrature runs
  int rays = 256;
  int panels = 40;
  int gauss_order = 8;
};

struct DefectRow {
  double delta = 0;
  double t = 0;
  double count_t = 0, count_0 = 0;  // mean preimage counts in |z| <= delta
  double area_t = 0, area_0 = 0;    // normalized pulled-back area, 1 per sphere
};

struct VerticalDefect {
  double defect = 0;        // preferred estimate
  double count_defect = 0;  // from preimage counts (nan when skipped)
  double area_defect = 0;   // from quadrature
  double residual = 0;
  bool converged = true;
  std::string method;       // "roots" or "quadrature"
  std::vector<DefectRow> rows;
  std::vector<std::string> warnings;
};

/// Number of roots of p inside |z| <= r, from the companion matrix.
int roots_in_disk(const std::vector<cplx>& p, double r);

/// Mean number of preimages in |z| <= delta over the given sphere points
/// (points at infinity allowed as std::numeric_limits<double>::infinity()).
double mean_preimages(const RationalFunction& g, double delta, const std::vector<cplx>& ws);

/// (1/4pi) times the pulled-back sphere area over |z| <= delta.
double normalized_area(const RationalFunction& g, double delta, const DefectOptions& opt = {});

/// lim_{delta -> 0} lim_{t -> 0} [A(gamma_t, delta) - A(gamma_0, delta)].
VerticalDefect vertical_defect(const RationalFamily& gamma, const RationalFunction& gamma0,
                               const DefectOptions& opt = {});

struct CurrentClass {
  double a_plus = 0, a_minus = 0;
  int plus = 0, minus = 0;        // rounded
  double rounding_error = 0;      // max |a - round(a)|
  int kT = 0, kN = 0;
};

/// kT + kN = -2 a_plus and kT - kN = -2 a_minus. Throws ErrorKind::unconverged
/// when a defect is 0.05 or more away from an integer.
CurrentClass current_class(double a_plus, double a_minus);

struct TwistorFallout {
  VerticalDefect plus, minus;
  CurrentClass current;
};

/// Gauss maps of each member come from its Weierstrass data; the family must be harmonic.
TwistorFallout twistor_fallout(const FamilySpec& family, const DefectOptions& opt = {});

}  // namespace branchfall
