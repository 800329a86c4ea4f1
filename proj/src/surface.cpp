#include "branchfall/surface.hpp"

#include "branchfall/error.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

namespace branchfall {

namespace {

void validate_series(const Series& s, const char* name) {
  std::set<std::pair<int, int>> seen;
  for (const auto& t : s) {
    if (t.j < 0 || t.k < 0) fail(ErrorKind::input, std::string(name) + ": negative exponent");
    if (t.coeff.value.is_zero()) fail(ErrorKind::input, std::string(name) + ": zero coefficient stored");
    if (!std::isfinite(t.coeff.phase)) fail(ErrorKind::input, std::string(name) + ": non-finite phase");
    if (t.degree() == 0) fail(ErrorKind::input, std::string(name) + ": constant term (the disk must pass through 0)");
    if (!seen.insert({t.j, t.k}).second)
      fail(ErrorKind::input, std::string(name) + ": duplicate term z^" + std::to_string(t.j) + " zbar^" +
                                 std::to_string(t.k));
  }
}

void check_domain(const BranchedDiskSpec& spec, cplx z) {
  if (std::abs(z) > spec.domain_radius * (1 + 1e-12))
    fail(ErrorKind::input, "evaluation point outside the domain disk");
}

Series conj_series(const Series& s) {
  Series out;
  out.reserve(s.size());
  for (const auto& t : s) out.push_back({{t.coeff.value.conj(), -t.coeff.phase}, t.k, t.j});
  return out;
}

std::vector<FamilyTerm> conj_family(const std::vector<FamilyTerm>& s) {
  std::vector<FamilyTerm> out;
  for (const auto& t : s) {
    FamilyTerm c = t;
    for (auto& x : c.tpoly) x = x.conj();
    c.phase = -t.phase;
    std::swap(c.j, c.k);
    out.push_back(std::move(c));
  }
  return out;
}

// Which coordinate carries the leading z^N term; -1 when both do.
int leading_coordinate(const BranchingData& b) {
  bool a = std::abs(b.leading[0]) > 0, c = std::abs(b.leading[1]) > 0;
  if (a && !c) return 0;
  if (c && !a) return 1;
  return -1;
}

Series integrate_pair(const Poly& holo, const Poly& anti) {
  Series s;
  Poly f = holo.antiderivative();
  for (int m = 0; m <= f.degree(); ++m)
    if (!f.coeff(m).is_zero()) s.push_back({{f.coeff(m)}, m, 0});
  Poly g = anti.antiderivative();
  for (int m = 0; m <= g.degree(); ++m)
    if (!g.coeff(m).is_zero()) s.push_back({{g.coeff(m).conj()}, 0, m});
  return s;
}

RationalFunction reduce(Poly num, Poly den) {
  if (den.is_zero()) {
    if (num.is_zero()) fail(ErrorKind::degenerate, "Gauss map 0/0");
    return {Poly::constant(ExactComplex(1)), Poly{}};
  }
  if (num.is_zero()) return {Poly{}, Poly::constant(ExactComplex(1))};
  Poly g = gcd(num, den);
  num = num.divmod(g).quotient;
  den = den.divmod(g).quotient;
  ExactComplex lead = den.leading();
  ExactComplex inv = ExactComplex(1) / lead;
  return {inv * num, inv * den};
}

Poly eval_tpoly(const std::vector<Poly>& by_power, const Rational& t) {
  Poly acc;
  Rational tp = 1;
  for (const auto& p : by_power) {
    acc = acc + ExactComplex(tp) * p;
    tp *= t;
  }
  return acc;
}

}  // namespace

// --- spec basics -------------------------------------------------------------

void BranchedDiskSpec::validate() const {
  if (w1.empty() && w2.empty()) fail(ErrorKind::input, "empty spec");
  if (!(domain_radius > 0) || !std::isfinite(domain_radius))
    fail(ErrorKind::input, "domain_radius must be positive");
  validate_series(w1, "w1");
  validate_series(w2, "w2");
}

int BranchedDiskSpec::min_degree() const {
  int n = INT32_MAX;
  for (const auto& t : w1) n = std::min(n, t.degree());
  for (const auto& t : w2) n = std::min(n, t.degree());
  return n == INT32_MAX ? 0 : n;
}

int BranchedDiskSpec::max_degree() const {
  int n = 0;
  for (const auto& t : w1) n = std::max(n, t.degree());
  for (const auto& t : w2) n = std::max(n, t.degree());
  return n;
}

bool BranchedDiskSpec::holomorphic() const {
  auto pure = [](const Series& s) {
    return std::all_of(s.begin(), s.end(), [](const MonomialTerm& t) { return t.k == 0; });
  };
  return pure(w1) && pure(w2);
}

BranchedDiskSpec FamilySpec::at(const Rational& t) const {
  BranchedDiskSpec out;
  out.domain_radius = domain_radius;
  auto inst = [&](const std::vector<FamilyTerm>& src, Series& dst) {
    for (const auto& term : src) {
      ExactComplex c;
      Rational tp = 1;
      for (const auto& a : term.tpoly) {
        c += ExactComplex(tp) * a;
        tp *= t;
      }
      if (!c.is_zero()) dst.push_back({{c, term.phase}, term.j, term.k});
    }
  };
  inst(w1, out.w1);
  inst(w2, out.w2);
  return out;
}

FamilySpec FamilySpec::constant(const BranchedDiskSpec& spec, std::vector<Rational> t_values) {
  FamilySpec f;
  f.domain_radius = spec.domain_radius;
  f.parameter_values = std::move(t_values);
  for (const auto& t : spec.w1) f.w1.push_back({{t.coeff.value}, t.coeff.phase, t.j, t.k});
  for (const auto& t : spec.w2) f.w2.push_back({{t.coeff.value}, t.coeff.phase, t.j, t.k});
  return f;
}

void WeierstrassData::validate() const {
  Poly r = f1p * f2p + f3p * f4p;
  if (r.is_zero()) return;
  int m = r.valuation();
  fail(ErrorKind::input, "f1'f2' + f3'f4' != 0: coefficient of z^" + std::to_string(m) + " is " +
                             to_string(r.coeff(m)));
}

WeierstrassData WeierstrassFamily::at(const Rational& t) const {
  return {eval_tpoly(by_tpower[0], t), eval_tpoly(by_tpower[1], t), eval_tpoly(by_tpower[2], t),
          eval_tpoly(by_tpower[3], t)};
}

std::string RationalFunction::str() const {
  if (den.is_zero()) return "inf";
  if (den.degree() == 0 && den.coeff(0) == ExactComplex(1)) return num.str();
  return "(" + num.str() + ")/(" + den.str() + ")";
}

// --- evaluation --------------------------------------------------------------

Vec4 eval_disk(const BranchedDiskSpec& spec, cplx z) {
  check_domain(spec, z);
  const double r = std::abs(z);
  if (r == 0) return Vec4::Zero();
  const double phi = std::arg(z);
  Vec4 out = Vec4::Zero();
  // c r^{j+k} e^{i(j-k)phi}, the modulus taken in log space
  auto acc = [&](const Series& s, int coord) {
    for (const auto& t : s) {
      cplx v = t.coeff.numeric() * std::polar(std::exp(t.degree() * std::log(r)), (t.j - t.k) * phi);
      out(2 * coord) += v.real();
      out(2 * coord + 1) += v.imag();
    }
  };
  acc(spec.w1, 0);
  acc(spec.w2, 1);
  return out;
}

DiskJet eval_derivatives(const BranchedDiskSpec& spec, cplx z) {
  check_domain(spec, z);
  return NumericDisk(spec).jet(z);
}

NumericDisk::NumericDisk(const BranchedDiskSpec& spec) : domain_radius_(spec.domain_radius) {
  auto add = [&](const Series& s, int coord) {
    for (const auto& t : s) {
      terms_.push_back({coord, t.j, t.k, t.coeff.numeric()});
      max_j_ = std::max(max_j_, t.j);
      max_k_ = std::max(max_k_, t.k);
    }
  };
  add(spec.w1, 0);
  add(spec.w2, 1);
}

Vec4 NumericDisk::eval(cplx z) const {
  cplx w[2] = {0, 0};
  for (const auto& t : terms_) w[t.coord] += t.c * std::pow(z, t.j) * std::pow(std::conj(z), t.k);
  return Vec4(w[0].real(), w[0].imag(), w[1].real(), w[1].imag());
}

DiskJet NumericDisk::jet(cplx z) const {
  std::vector<cplx> zp(max_j_ + 1), zbp(max_k_ + 1);
  zp[0] = zbp[0] = 1;
  for (int i = 1; i <= max_j_; ++i) zp[i] = zp[i - 1] * z;
  for (int i = 1; i <= max_k_; ++i) zbp[i] = zbp[i - 1] * std::conj(z);
  cplx w[2]{}, wz[2]{}, wzb[2]{}, wzz[2]{}, wzzb[2]{}, wzbzb[2]{};
  for (const auto& t : terms_) {
    const int j = t.j, k = t.k, c = t.coord;
    w[c] += t.c * zp[j] * zbp[k];
    if (j >= 1) wz[c] += t.c * double(j) * zp[j - 1] * zbp[k];
    if (k >= 1) wzb[c] += t.c * double(k) * zp[j] * zbp[k - 1];
    if (j >= 2) wzz[c] += t.c * double(j * (j - 1)) * zp[j - 2] * zbp[k];
    if (j >= 1 && k >= 1) wzzb[c] += t.c * double(j * k) * zp[j - 1] * zbp[k - 1];
    if (k >= 2) wzbzb[c] += t.c * double(k * (k - 1)) * zp[j] * zbp[k - 2];
  }
  const cplx I(0, 1);
  DiskJet out;
  for (int c = 0; c < 2; ++c) {
    auto put = [&](Vec4& v, cplx x) { v(2 * c) = x.real(), v(2 * c + 1) = x.imag(); };
    put(out.F, w[c]);
    put(out.Fx, wz[c] + wzb[c]);
    put(out.Fy, I * (wz[c] - wzb[c]));
    put(out.Fxx, wzz[c] + 2.0 * wzzb[c] + wzbzb[c]);
    put(out.Fxy, I * (wzz[c] - wzbzb[c]));
    put(out.Fyy, -wzz[c] + 2.0 * wzzb[c] - wzbzb[c]);
  }
  return out;
}

SecondFundamentalForm NumericDisk::sff(cplx z, double conditioning) const { return sff_from_jet(jet(z), conditioning); }

// --- branching ---------------------------------------------------------------

BranchingData branching_data(const BranchedDiskSpec& spec) {
  spec.validate();
  BranchingData out;
  out.order = spec.min_degree();
  const int N = out.order;
  cplx lead[2] = {0, 0};
  auto scan = [&](const Series& s, int c) {
    for (const auto& t : s) {
      if (t.degree() != N) continue;
      if (t.k != 0)
        fail(ErrorKind::not_branched,
             "not positively branched: leading part contains zbar^" + std::to_string(t.k));
      lead[c] += t.coeff.numeric();
    }
  };
  scan(spec.w1, 0);
  scan(spec.w2, 1);
  out.leading = {lead[0], lead[1]};
  const double n = std::sqrt(std::norm(lead[0]) + std::norm(lead[1]));
  if (!(n > 0)) fail(ErrorKind::not_branched, "vanishing leading coefficient");
  const cplx a = lead[0] / n, b = lead[1] / n;
  const cplx I(0, 1);
  auto vec = [](cplx p, cplx q) { return Vec4(p.real(), p.imag(), q.real(), q.imag()); };
  out.plane.e1 = vec(a, b);
  out.plane.e2 = vec(I * a, I * b);
  out.plane.e3 = vec(-std::conj(b), std::conj(a));
  out.plane.e4 = vec(-I * std::conj(b), I * std::conj(a));
  out.plane.orientation = 1;
  return out;
}

// --- Weierstrass -------------------------------------------------------------

BranchedDiskSpec weierstrass_to_disk(const WeierstrassData& data, double domain_radius) {
  data.validate();
  BranchedDiskSpec s;
  s.domain_radius = domain_radius;
  s.w1 = integrate_pair(data.f1p, data.f2p);
  s.w2 = integrate_pair(data.f3p, data.f4p);
  return s;
}

FamilySpec weierstrass_family_to_disk(const WeierstrassFamily& family) {
  FamilySpec out;
  out.domain_radius = family.domain_radius;
  out.parameter_values = family.parameter_values;
  auto build = [&](int holo, int anti) {
    std::map<std::pair<int, int>, std::vector<ExactComplex>> terms;
    auto put = [&](int j, int k, std::size_t p, const ExactComplex& c) {
      auto& v = terms[{j, k}];
      if (v.size() <= p) v.resize(p + 1);
      v[p] += c;
    };
    for (std::size_t p = 0; p < family.by_tpower[holo].size(); ++p) {
      Poly f = family.by_tpower[holo][p].antiderivative();
      for (int m = 1; m <= f.degree(); ++m)
        if (!f.coeff(m).is_zero()) put(m, 0, p, f.coeff(m));
    }
    for (std::size_t p = 0; p < family.by_tpower[anti].size(); ++p) {
      Poly g = family.by_tpower[anti][p].antiderivative();
      for (int m = 1; m <= g.degree(); ++m)
        if (!g.coeff(m).is_zero()) put(0, m, p, g.coeff(m).conj());
    }
    std::vector<FamilyTerm> out_terms;
    for (auto& [jk, tp] : terms) out_terms.push_back({tp, 0.0, jk.first, jk.second});
    return out_terms;
  };
  out.w1 = build(0, 1);
  out.w2 = build(2, 3);
  return out;
}

std::optional<WeierstrassData> disk_to_weierstrass(const BranchedDiskSpec& spec) {
  auto split = [](const Series& s, Poly& holo, Poly& anti) {
    for (const auto& t : s) {
      if (t.coeff.has_phase() || (t.j > 0 && t.k > 0)) return false;
      if (t.k == 0)
        holo = holo + Poly::monomial(ExactComplex(t.j) * t.coeff.value, t.j - 1);
      else
        anti = anti + Poly::monomial(ExactComplex(t.k) * t.coeff.value.conj(), t.k - 1);
    }
    return true;
  };
  WeierstrassData d;
  if (!split(spec.w1, d.f1p, d.f2p) || !split(spec.w2, d.f3p, d.f4p)) return std::nullopt;
  return d;
}

GaussMaps gauss_maps(const WeierstrassData& data) {
  data.validate();
  const Poly &a = data.f1p, &b = data.f2p, &c = data.f3p, &d = data.f4p;
  // Both maps are points of CP^1: [c : b] = [-a : d] and [-d : b] = [a : c].
  GaussMaps g;
  if (!b.is_zero() || !c.is_zero())
    g.plus = reduce(c, b);
  else
    g.plus = reduce(-a, d);
  if (!b.is_zero() || !d.is_zero())
    g.minus = reduce(-d, b);
  else
    g.minus = reduce(a, c);
  return g;
}

// --- frames ------------------------------------------------------------------

double det4(const Vec4& a, const Vec4& b, const Vec4& c, const Vec4& d) {
  Eigen::Matrix4d m;
  m << a, b, c, d;
  return m.determinant();
}

double smallest_singular_ratio(const Vec4& u, const Vec4& v) {
  const double tr = u.squaredNorm() + v.squaredNorm();
  if (!(tr > 0)) return 0;
  // |u ^ v|^2 from the 2x2 minors; g11 g22 - g12^2 cancels for nearly parallel vectors
  double det = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) det += std::pow(u(i) * v(j) - u(j) * v(i), 2);
  const double disc = std::sqrt(std::max(0.0, 0.25 * tr * tr - det));
  const double lmax = 0.5 * tr + disc;
  const double lmin = det / lmax;
  return std::sqrt(lmin / lmax);
}

Frame complete_frame(const Vec4& e1, const Vec4& e2) {
  Frame f;
  f.e1 = e1;
  f.e2 = e2;
  // Gram-Schmidt on the standard basis, keeping the two best-conditioned.
  Vec4 basis[2];
  int found = 0;
  std::array<std::pair<double, int>, 4> score;
  for (int i = 0; i < 4; ++i) {
    Vec4 v = Vec4::Unit(i);
    v -= e1.dot(v) * e1 + e2.dot(v) * e2;
    score[i] = {-v.norm(), i};
  }
  std::sort(score.begin(), score.end());
  for (int s = 0; s < 4 && found < 2; ++s) {
    Vec4 v = Vec4::Unit(score[s].second);
    v -= e1.dot(v) * e1 + e2.dot(v) * e2;
    for (int q = 0; q < found; ++q) v -= basis[q].dot(v) * basis[q];
    double n = v.norm();
    if (n > 1e-6) basis[found++] = v / n;
  }
  f.e3 = basis[0];
  f.e4 = basis[1];
  if (det4(f.e1, f.e2, f.e3, f.e4) < 0) f.e4 = -f.e4;
  f.orientation = 1;
  return f;
}

Frame tangent_frame(const Vec4& u, const Vec4& v, double conditioning) {
  if (smallest_singular_ratio(u, v) < conditioning)
    fail(ErrorKind::conditioning, "tangent vectors nearly dependent (branch point)");
  Vec4 e1 = u.normalized();
  Vec4 w = v - e1.dot(v) * e1;
  return complete_frame(e1, w.normalized());
}

bool immersed_at(const BranchedDiskSpec& spec, cplx z, double conditioning) {
  DiskJet j = eval_derivatives(spec, z);
  return smallest_singular_ratio(j.Fx, j.Fy) >= conditioning;
}

SecondFundamentalForm second_fundamental_form(const BranchedDiskSpec& spec, cplx z, double conditioning) {
  return sff_from_jet(eval_derivatives(spec, z), conditioning);
}

SecondFundamentalForm sff_from_jet(const DiskJet& j, double conditioning) {
  SecondFundamentalForm out;
  out.frame = tangent_frame(j.Fx, j.Fy, conditioning);
  const double g11 = j.Fx.squaredNorm(), g12 = j.Fx.dot(j.Fy);
  const double nx = std::sqrt(g11);
  const double ny = (j.Fy - (g12 / g11) * j.Fx).norm();
  out.area_element = nx * ny;
  // e1 = p1 . (d/dx, d/dy), e2 = p2 . (d/dx, d/dy)
  const Vec2 p1(1 / nx, 0);
  const Vec2 p2(-g12 / (g11 * ny), 1 / ny);
  auto hess = [&](const Vec2& p, const Vec2& q) -> Vec4 {
    return p(0) * q(0) * j.Fxx + (p(0) * q(1) + p(1) * q(0)) * j.Fxy + p(1) * q(1) * j.Fyy;
  };
  auto normal = [&](const Vec4& h) { return Vec2(h.dot(out.frame.e3), h.dot(out.frame.e4)); };
  out.b11 = normal(hess(p1, p1));
  out.b12 = normal(hess(p1, p2));
  out.b22 = normal(hess(p2, p2));
  return out;
}

// --- orientation reversal ----------------------------------------------------

BranchedDiskSpec reverse_orientation(const BranchedDiskSpec& spec) {
  int c = leading_coordinate(branching_data(spec));
  if (c < 0) fail(ErrorKind::scope, "orientation reversal needs the leading term in a single coordinate");
  BranchedDiskSpec out = spec;
  if (c == 0)
    out.w2 = conj_series(spec.w2);
  else
    out.w1 = conj_series(spec.w1);
  return out;
}

FamilySpec reverse_orientation(const FamilySpec& family) {
  int c = leading_coordinate(branching_data(family.limit()));
  if (c < 0) fail(ErrorKind::scope, "orientation reversal needs the leading term in a single coordinate");
  FamilySpec out = family;
  if (c == 0)
    out.w2 = conj_family(family.w2);
  else
    out.w1 = conj_family(family.w1);
  return out;
}

WeierstrassData reverse_orientation(const WeierstrassData& data) {
  return {data.f1p, data.f2p, data.f4p, data.f3p};
}

}  // namespace branchfall
