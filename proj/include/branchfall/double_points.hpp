#pragma once

// Transverse self-intersections of an immersed disk inside the eps-ball.

#include "branchfall/surface.hpp"

#include <vector>

namespace branchfall {

struct DoublePoint {
  cplx z, w;   // F(z) = F(w)
  int sign = 0;  // orientation of (Fx(z), Fy(z), Fx(w), Fy(w))
  double residual = 0;
};

struct DoublePointOptions {
  int radial = 240;   // log-spaced radii per ray
  int angular = 240;
  double r_min_fraction = 1e-6;  // innermost sample radius / domain radius
  int max_candidates = 40000;
  int newton_iterations = 60;
};

struct DoublePointCount {
  int signed_count = 0;
  std::vector<DoublePoint> points;
  int unresolved = 0;  // candidates that stalled short of convergence
  bool reliable = true;
};

DoublePointCount double_points(const BranchedDiskSpec& spec, double epsilon, const DoublePointOptions& opt = {});
DoublePointCount double_points(const FamilySpec& family, const Rational& t, double epsilon,
                               const DoublePointOptions& opt = {});

}  // namespace branchfall
