#pragma once

// Tangent and normal curvature densities of a surface in Euclidean R^4, their
// integrals over the eps-ball, the double limit defining the fallouts, and
// boundary self-tests (Gauss-Bonnet and the Stokes identity for the normal
// bundle).

#include "branchfall/surface.hpp"

#include <string>
#include <utility>
#include <vector>

namespace branchfall {

/// Per unit area.
struct CurvatureDensity {
  double omega_T = 0;
  double omega_N = 0;
};

CurvatureDensity curvature_densities(const SecondFundamentalForm& b);
CurvatureDensity curvature_densities(const BranchedDiskSpec& spec, cplx z);

struct CurvatureSample {
  cplx z;
  double area_weight = 0;  // quadrature weight times the area element
  double omega_T = 0;      // densities at z, per unit area
  double omega_N = 0;
  double b_squared = 0;    // |B|^2
};

struct QuadratureOptions {
  int rays = 256;             // trapezoid nodes in theta on the global grid
  int panels = 28;            // geometric radial panels per ray
  int gauss_order = 8;
  double inner_fraction = 1e-9;  // innermost panel edge relative to the ray length
  bool patches = true;        // refine around off-centre near-branch points
  int patch_rays = 96;
  int patch_panels = 36;
  double exclusion = 1e-4;    // excluded disk radius / eps^{1/N} at a branch point sitting at 0
  int boundary_samples = 1024;
  double conditioning = 1e-13;
};

struct RegionIntegral {
  double epsilon = 0;
  double omega_T = 0;        // (1/2pi) * integral of the density
  double omega_N = 0;
  double area = 0;
  double b_squared = 0;      // integral of |B|^2
  double excluded_radius = 0;
  double excluded_bound = 0; // bound on (1/2pi) |curvature| inside the excluded disk
  std::vector<cplx> patch_centers;
  std::size_t nodes = 0;
};

/// Quadrature nodes over {|F| <= eps} (the radial preimage of the ball).
std::vector<CurvatureSample> region_samples(const BranchedDiskSpec& spec, double epsilon,
                                            const QuadratureOptions& opt = {}, RegionIntegral* info = nullptr);

RegionIntegral integrate_region(const BranchedDiskSpec& spec, double epsilon, const QuadratureOptions& opt = {});

/// Centres where the surface is nearly branched away from 0.
std::vector<cplx> near_branch_centers(const BranchedDiskSpec& spec, const std::vector<double>& radii);

struct FalloutEstimate {
  double kT = 0;
  double kN = 0;
  std::vector<double> epsilon_grid;
  std::vector<double> parameter_grid;
  std::vector<std::vector<RegionIntegral>> table;  // [eps][t]
  std::vector<double> kT_at_eps, kN_at_eps;         // after t -> 0
  double epsilon_power = 1;                         // eps -> 0 is linear in eps^epsilon_power
  double residual = 0;
  bool converged = true;
  std::vector<std::string> warnings;
};

/// t -> 0 first (linear in t), then eps -> 0 linear in eps^(2/N), N the
/// branch order of the limit. Residual: spread between successive pairwise
/// extrapolations, plus the bound on the excluded disk.
FalloutEstimate integrate_fallout(const FamilySpec& family, const std::vector<double>& epsilons,
                                  const std::vector<Rational>& ts, const QuadratureOptions& opt = {});

/// One row per (eps, t).
std::string fallout_csv(const FalloutEstimate& est);

struct GaussBonnetResult {
  double curvature_term = 0;  // (1/2pi) int Omega^T
  double boundary_term = 0;   // (1/2pi) oint k_g
  double euler = 1;           // chi of the disk preimage
  int branching = 0;          // N - 1 when branched at 0
  double residual = 0;        // curvature + boundary - euler - branching
};

GaussBonnetResult gauss_bonnet_check(const BranchedDiskSpec& spec, double epsilon, const QuadratureOptions& opt = {});

struct SectionZero {
  cplx z;
  int index = 0;
};

struct NormalStokesResult {
  double curvature_term = 0;  // (1/2pi) int Omega^N
  double boundary_term = 0;   // (1/2pi) oint <ds, J s>, s the unit section
  std::vector<SectionZero> zeros;
  int index_sum = 0;
  double residual = 0;        // curvature + boundary - index_sum
};

/// Section = normal projection of the constant vector `section`.
NormalStokesResult normal_stokes_check(const BranchedDiskSpec& spec, double epsilon, const Vec4& section,
                                       const QuadratureOptions& opt = {});

}  // namespace branchfall
