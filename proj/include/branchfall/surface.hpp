#pragma once

// Branched disks in R^4 = C^2 given as finite monomial series in z and
// conj(z), one-parameter families of them, and minimal disks built from
// Weierstrass data.

#include "branchfall/exact.hpp"

#include <Eigen/Core>

#include <array>
#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace branchfall {

using Vec2 = Eigen::Vector2d;
using Vec4 = Eigen::Vector4d;
using cplx = std::complex<double>;

/// Exact complex-rational value times an optional unit phase e^{i*phase}.
/// Symbolic checks only see `value`; they refuse coefficients with a phase.
struct Coefficient {
  ExactComplex value;
  double phase = 0.0;

  bool has_phase() const { return phase != 0.0; }
  cplx numeric() const { return value.to_complex() * std::polar(1.0, phase); }
  std::complex<long double> numeric_ld() const {
    return value.to_complex_ld() * std::polar<long double>(1.0L, phase);
  }
};

/// coeff * z^j * conj(z)^k
struct MonomialTerm {
  Coefficient coeff;
  int j = 0;
  int k = 0;

  int degree() const { return j + k; }
};

/// A coordinate series w(z) = sum coeff z^j zbar^k.
using Series = std::vector<MonomialTerm>;

/// A germ z -> (w1(z), w2(z)) in C^2, read in R^4 as (Re w1, Im w1, Re w2, Im w2).
struct BranchedDiskSpec {
  Series w1;
  Series w2;
  double domain_radius = 1.0;

  /// Throws ErrorKind::input on zero coefficients, duplicate (j,k) within a
  /// coordinate, a constant term, an empty spec, or a non-positive radius.
  void validate() const;
  int min_degree() const;
  int max_degree() const;
  bool holomorphic() const;
};

/// A term whose coefficient is a polynomial in the family parameter t.
struct FamilyTerm {
  std::vector<ExactComplex> tpoly;  // c0 + c1 t + ...
  double phase = 0.0;
  int j = 0;
  int k = 0;
};

struct FamilySpec {
  std::vector<FamilyTerm> w1;
  std::vector<FamilyTerm> w2;
  double domain_radius = 1.0;
  std::vector<Rational> parameter_values;  // t = 1/n grid, all nonzero

  /// Instantiates the member at parameter t (terms with vanishing coefficient dropped).
  BranchedDiskSpec at(const Rational& t) const;
  BranchedDiskSpec limit() const { return at(Rational(0)); }

  /// The family that is constantly `spec`.
  static FamilySpec constant(const BranchedDiskSpec& spec, std::vector<Rational> t_values);
};

/// Derivatives f'_1..f'_4 of the holomorphic Weierstrass functions.
struct WeierstrassData {
  Poly f1p, f2p, f3p, f4p;

  /// Exact check of f'1 f'2 + f'3 f'4 == 0; the error names the first
  /// offending coefficient.
  void validate() const;
};

/// Weierstrass data with coefficients polynomial in t:
/// f'_i = sum_p t^p * terms[i][p](z).
struct WeierstrassFamily {
  std::array<std::vector<Poly>, 4> by_tpower;
  double domain_radius = 1.0;
  std::vector<Rational> parameter_values;

  WeierstrassData at(const Rational& t) const;
};

/// Orthonormal frame adapted to a tangent plane; orientation = +1 when
/// (e1,e2,e3,e4) is positively oriented in R^4.
struct Frame {
  Vec4 e1, e2, e3, e4;
  int orientation = 1;
};

struct DiskJet {
  Vec4 F, Fx, Fy, Fxx, Fxy, Fyy;
};

struct BranchingData {
  int order = 0;  // N; branching order is N - 1
  std::array<cplx, 2> leading;  // leading coefficient vector (a, b): F ~ (a, b) z^N
  Frame plane;  // (e1, e2) the oriented limit tangent plane, (e3, e4) its complex normal line
};

struct SecondFundamentalForm {
  Frame frame;
  Vec2 b11, b12, b22;  // normal coordinates in (e3, e4)
  double area_element = 0;  // |Fx ^ Fy|
};

struct RationalFunction {
  Poly num;
  Poly den;  // zero polynomial: the constant infinity

  bool is_infinite_constant() const { return den.is_zero(); }
  bool is_constant() const { return den.is_zero() || (num.degree() <= 0 && den.degree() == 0); }
  cplx operator()(cplx z) const { return num(z) / den(z); }
  std::string str() const;
};

struct GaussMaps {
  RationalFunction plus;
  RationalFunction minus;
};

// ---------------------------------------------------------------------------

Vec4 eval_disk(const BranchedDiskSpec& spec, cplx z);
DiskJet eval_derivatives(const BranchedDiskSpec& spec, cplx z);

BranchingData branching_data(const BranchedDiskSpec& spec);

BranchedDiskSpec weierstrass_to_disk(const WeierstrassData& data, double domain_radius = 1.0);
FamilySpec weierstrass_family_to_disk(const WeierstrassFamily& family);

/// Inverse of weierstrass_to_disk for harmonic specs (terms pure in z or in
/// zbar, no phases); nullopt when the spec has mixed terms.
std::optional<WeierstrassData> disk_to_weierstrass(const BranchedDiskSpec& spec);

GaussMaps gauss_maps(const WeierstrassData& data);

SecondFundamentalForm second_fundamental_form(const BranchedDiskSpec& spec, cplx z,
                                              double conditioning = 1e-10);

/// Second fundamental form from a precomputed jet.
SecondFundamentalForm sff_from_jet(const DiskJet& jet, double conditioning = 1e-10);

/// Floating-point copy of a spec for hot loops (no domain check).
class NumericDisk {
 public:
  explicit NumericDisk(const BranchedDiskSpec& spec);
  Vec4 eval(cplx z) const;
  DiskJet jet(cplx z) const;
  SecondFundamentalForm sff(cplx z, double conditioning = 1e-10) const;
  double domain_radius() const { return domain_radius_; }

 private:
  struct Term {
    int coord, j, k;
    cplx c;
  };
  std::vector<Term> terms_;
  int max_j_ = 0, max_k_ = 0;
  double domain_radius_ = 1;
};

/// Completes an orthonormal tangent pair to a positively oriented frame.
Frame complete_frame(const Vec4& e1, const Vec4& e2);

/// Builds the frame from raw tangent vectors; throws ErrorKind::conditioning
/// when the smallest singular value of [u v] is below conditioning * largest.
Frame tangent_frame(const Vec4& u, const Vec4& v, double conditioning = 1e-10);

double smallest_singular_ratio(const Vec4& u, const Vec4& v);

bool immersed_at(const BranchedDiskSpec& spec, cplx z, double conditioning = 1e-10);

/// Reflection (w1, w2) -> (w1, conj w2), or (conj w1, w2) when the leading
/// term sits in w2; reverses the ambient orientation, fixes the surface orientation.
BranchedDiskSpec reverse_orientation(const BranchedDiskSpec& spec);
FamilySpec reverse_orientation(const FamilySpec& family);
WeierstrassData reverse_orientation(const WeierstrassData& data);

double det4(const Vec4& a, const Vec4& b, const Vec4& c, const Vec4& d);

}  // namespace branchfall
