#pragma once

// The link cut out on a small sphere around the branch point: radial slicing,
// stereographic projection, braid extraction about the transverse axis, and
// linking / self-linking numbers.

#include "branchfall/braid.hpp"
#include "branchfall/surface.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <string>
#include <vector>

namespace branchfall {

using Vec3 = Eigen::Vector3d;

template <class Real>
using V3 = Eigen::Matrix<Real, 3, 1>;
template <class Real>
using V4 = Eigen::Matrix<Real, 4, 1>;

/// Closed polyline (last point connects back to the first).
template <class Real>
using Polyline = std::vector<V3<Real>>;

struct SliceOptions {
  int samples = 0;  // 0: max(64 N, 2048)
  double root_tolerance = 1e-12;  // relative, on the disk radius
  int monotone_probes = 48;  // radial samples per ray for the graph-regime test
};

/// Gamma^eps radially rescaled to the unit sphere, one point per disk angle.
template <class Real>
struct Slice {
  std::vector<V4<Real>> unit;  // F / |F|
  std::vector<Real> theta;
  std::vector<Real> radius;    // |z| on the ray
  double epsilon = 0;
};

struct SpaceCurveSample {
  std::vector<Vec4> points;
  std::vector<double> theta;
  double max_segment = 0;
};

struct FramedLink {
  double epsilon = 0;
  Frame frame;   // adapted frame of the limit tangent plane
  int order = 0; // N
  std::vector<SpaceCurveSample> components;  // on the unit sphere
  std::vector<std::vector<Vec4>> framing;    // unit vectors tangent to S^3, normal to the curve
};

template <class Real>
Slice<Real> slice_sphere_t(const BranchedDiskSpec& spec, double epsilon, const SliceOptions& opt = {});

/// Double-precision slice with the framing of the fixed transverse vector e3.
FramedLink slice_sphere(const BranchedDiskSpec& spec, double epsilon, const SliceOptions& opt = {});

/// |z| where the ray at angle 2 pi i / rays first meets |F| = eps.
std::vector<double> region_radii(const BranchedDiskSpec& spec, double epsilon, int rays, const SliceOptions& opt = {});

/// Largest eps (up to the domain) for which every sampled ray is monotone.
double graph_regime_limit(const BranchedDiskSpec& spec, int rays = 720, int probes = 48);

/// Orthonormal positively oriented basis (b1, b2, b3, pole).
Frame pole_frame(const Vec4& pole);

/// Stereographic projection from `pole`, coordinates in the basis of pole_frame(pole)
/// (or of `basis` when given, whose e4 must be the pole).
template <class Real>
Polyline<Real> stereographic_t(const std::vector<V4<Real>>& points, const Frame& basis, double min_pole_distance = 0.05);

struct ProjectedLink {
  std::vector<Polyline<double>> curves;
  std::vector<Polyline<double>> framing;  // projected push-off directions
};

ProjectedLink stereographic(const FramedLink& link, const Vec4& pole);

struct Axis {
  Vec3 point = Vec3::Zero();
  Vec3 direction = Vec3::UnitZ();
};

struct BraidOptions {
  int grid_factor = 8;       // uniform angular grid of grid_factor * samples points
  double ambiguity = 0;      // depth gap below which a crossing is unresolved; 0: 64 ulp of Real
  double min_rho = 1e-6;
  bool extended = false;     // start in long double instead of falling back to it
};

struct BraidExtraction {
  BraidWord word;
  std::vector<int> strands_per_component;
  double min_depth_gap = 0;  // smallest |rho_a - rho_b| seen at a crossing
};

template <class Real>
BraidExtraction extract_braid_t(const std::vector<Polyline<Real>>& curves, const Axis& axis, const BraidOptions& opt = {});

BraidWord extract_braid(const std::vector<Polyline<double>>& curves, const Axis& axis, const BraidOptions& opt = {});

enum class Precision { double_, long_double };
const char* to_string(Precision p);

struct LinkBraid {
  BraidWord word;
  double epsilon = 0;
  int samples = 0;
  Precision precision = Precision::double_;
  double min_depth_gap = 0;
};

/// Slice at eps, project from e4 of the branching frame, read the braid about
/// the e3 axis. Falls back to long double when double cannot resolve a crossing.
LinkBraid link_braid(const BranchedDiskSpec& spec, double epsilon, const SliceOptions& slice = {},
                     const BraidOptions& braid = {}, bool allow_extended = true);

struct SweepRow {
  double epsilon = 0;
  std::string status;  // "ok" or the error kind
  int exponent_sum = 0;
  int strands = 0;
  Precision precision = Precision::double_;
};

struct BraidSweep {
  LinkBraid result;
  std::vector<SweepRow> rows;
};

/// Sweeps eps downward (from domain/2 by 0.7, or through `epsilons`) until two
/// consecutive values give the same strand count and exponent sum.
BraidSweep braid_sweep(const BranchedDiskSpec& spec, const std::vector<double>& epsilons = {},
                       const SliceOptions& slice = {}, const BraidOptions& braid = {});

// --- linking ---------------------------------------------------------------

/// Gauss linking integral of two closed polygons, exact per segment pair.
double gauss_linking(const Polyline<double>& a, const Polyline<double>& b);

/// Signed crossings of a planar projection along `view`, halved.
double crossing_linking(const Polyline<double>& a, const Polyline<double>& b, const Vec3& view);

struct LinkingResult {
  int value = 0;
  double gauss = 0;
  double crossings = 0;
};

/// Both methods; the projection direction is drawn from `seed`.
LinkingResult linking_number(const Polyline<double>& a, const Polyline<double>& b, std::uint64_t seed = 17);

/// Smallest distance between points of the closed curve that are more than
/// `window` samples apart along it.
double self_clearance(const std::vector<Vec4>& points, int window);

struct SelfLinkingResult {
  int value = 0;
  std::vector<double> deltas;
  std::vector<int> values;
  int samples = 0;
};

/// lk(Gamma, Gamma pushed along the projected framing vector X); halves the
/// push-off until two consecutive values agree.
SelfLinkingResult self_linking(const BranchedDiskSpec& spec, double epsilon, const Vec4& framing_vector,
                               std::uint64_t seed = 17, int max_samples = 1 << 16);

/// Same with X = e3 of the branching frame.
SelfLinkingResult self_linking(const BranchedDiskSpec& spec, double epsilon, std::uint64_t seed = 17);

}  // namespace branchfall
