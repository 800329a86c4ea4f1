#include "branchfall/numerics.hpp"

#include "branchfall/error.hpp"

#include <gsl/gsl_integration.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>

namespace branchfall {

GaussRule::GaussRule(int n) {
  std::unique_ptr<gsl_integration_glfixed_table, void (*)(gsl_integration_glfixed_table*)> t(
      gsl_integration_glfixed_table_alloc(n), gsl_integration_glfixed_table_free);
  if (!t) fail(ErrorKind::input, "bad Gauss-Legendre order");
  x.resize(n), w.resize(n);
  for (int i = 0; i < n; ++i) gsl_integration_glfixed_point(0, 1, i, &x[i], &w[i], t.get());
}

Extrapolated richardson(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.empty() || x.size() != y.size()) fail(ErrorKind::input, "extrapolation needs matching non-empty grids");
  std::vector<std::size_t> idx(x.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  if (idx.size() == 1) return {y[idx[0]], 0};
  auto line = [&](std::size_t a, std::size_t b) {
    const double x1 = x[idx[a]], x2 = x[idx[b]], y1 = y[idx[a]], y2 = y[idx[b]];
    return y1 - (y2 - y1) / (x2 - x1) * x1;
  };
  Extrapolated e;
  e.value = line(0, 1);
  e.residual = idx.size() >= 3 ? std::abs(e.value - line(1, 2)) : std::abs(e.value - y[idx[0]]);
  return e;
}

}  // namespace branchfall
