#pragma once

// Small numerical helpers shared by the quadrature and extrapolation code.

#include <vector>

namespace branchfall {

/// Gauss-Legendre nodes and weights on [0, 1].
struct GaussRule {
  std::vector<double> x, w;
  explicit GaussRule(int n);
};

struct Extrapolated {
  double value = 0;
  double residual = 0;
};

/// Value at x = 0 of the line through the two smallest x. With three or more
/// points the residual is the spread against the next pair, otherwise the
/// size of the correction.
Extrapolated richardson(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace branchfall
