#include "branchfall/invariants.hpp"

#include "branchfall/error.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

namespace branchfall {

int tangent_fallout(const std::vector<int>& orders, int genus) {
  if (genus < 0) fail(ErrorKind::input, "genus must be non-negative");
  int s = 0;
  for (int n : orders) {
    if (n < 2) fail(ErrorKind::input, "branch orders N_i must be at least 2");
    s += n + 1;
  }
  return 2 - s - 2 * genus;
}

int normal_fallout(int self_linking, int double_points) { return self_linking - 2 * double_points; }

std::string to_string(FamilyKind k) {
  switch (k) {
    case FamilyKind::complex: return "complex";
    case FamilyKind::right_superminimal: return "right-superminimal";
    case FamilyKind::left_superminimal: return "left-superminimal";
    case FamilyKind::symplectic_plus: return "symplectic+";
    case FamilyKind::symplectic_minus: return "symplectic-";
    case FamilyKind::minimal: return "minimal";
    case FamilyKind::generic: return "generic";
  }
  return "generic";
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::strict: return "strict";
    case Verdict::equality_plus: return "equality_plus";
    case Verdict::equality_minus: return "equality_minus";
    case Verdict::violation: return "violation";
  }
  return "strict";
}

FamilyKind family_kind_from_string(const std::string& s) {
  for (auto k : {FamilyKind::complex, FamilyKind::right_superminimal, FamilyKind::left_superminimal,
                 FamilyKind::symplectic_plus, FamilyKind::symplectic_minus, FamilyKind::minimal, FamilyKind::generic})
    if (to_string(k) == s) return k;
  fail(ErrorKind::input, "unknown family kind '" + s + "'");
}

InequalityReport main_inequality_report(double kT, double kN, FamilyKind kind, double tolerance) {
  if (kT > tolerance) {
    std::ostringstream w;
    w << "kT = " << kT << " is positive, impossible when every N_i >= 2";
    fail(ErrorKind::input, w.str());
  }
  InequalityReport r;
  r.kind = kind;
  const bool plus = std::abs(kT + kN) <= tolerance, minus = std::abs(kT - kN) <= tolerance;
  if (std::abs(kN) > -kT + tolerance) {
    r.verdict = Verdict::violation;
    r.notes.push_back("VIOLATION: |kN| > -kT; an example for the open question whether this can happen");
  } else if (plus) {
    r.verdict = Verdict::equality_plus;
    if (minus) r.notes.push_back("kT - kN = 0 holds as well");
  } else if (minus) {
    r.verdict = Verdict::equality_minus;
  } else {
    r.verdict = Verdict::strict;
    r.notes.push_back("kN + kT and kN - kT are both non zero");
  }
  switch (kind) {
    case FamilyKind::complex:
    case FamilyKind::right_superminimal:
    case FamilyKind::symplectic_plus: r.expected = Verdict::equality_plus; break;
    case FamilyKind::left_superminimal:
    case FamilyKind::symplectic_minus: r.expected = Verdict::equality_minus; break;
    default: break;
  }
  if (r.expected) {
    // (0, 0) satisfies both equalities
    const bool ok = *r.expected == Verdict::equality_plus ? plus : minus;
    r.mismatch = !ok || r.verdict == Verdict::violation;
    if (r.mismatch) r.notes.push_back("family kind " + to_string(kind) + " expects " + to_string(*r.expected));
  } else if (kind == FamilyKind::minimal || kind == FamilyKind::generic) {
    r.mismatch = r.verdict == Verdict::violation;
  }
  if (kind == FamilyKind::minimal && r.verdict == Verdict::equality_plus)
    r.notes.push_back("expected consequence: boundary links quasipositive and chi(Sigma_n^eps) = chi_s(boundary)");
  return r;
}

int genus_bound(int writhe_abs, const std::vector<int>& orders) {
  int s = 0;
  for (int n : orders) s += n + 1;
  const int num = std::abs(writhe_abs) + 2 - s;
  if (num <= 0) return 0;
  return (num + 1) / 2;
}

SingularityInvariants complex_singularity_invariants(int p, int q) {
  if (p < 2 || q <= p) fail(ErrorKind::scope, "need 2 <= p < q");
  if (std::gcd(p, q) != 1) fail(ErrorKind::scope, "p and q share a factor: multi-component links are out of scope");
  SingularityInvariants s;
  s.p = p;
  s.q = q;
  s.milnor = (p - 1) * (q - 1);
  s.braid = torus_braid(p, q);
  s.euler_fiber = 1 - s.milnor;
  s.kT = s.euler_fiber - p;
  s.kN = s.milnor + p - 1;
  s.boundary_components = permutation_and_components(s.braid).components;
  std::ostringstream n;
  n << "kN = mu + N - 1 with N = " << p << " strands gives " << s.kN << "; mu + r - 1 with r = "
    << s.boundary_components << " boundary component(s) would give " << s.milnor + s.boundary_components - 1;
  s.note = n.str();
  return s;
}

AdjunctionDegree adjunction_degree(int degree, int cusps, int orientation) {
  if (degree < 1 || degree > 4) fail(ErrorKind::scope, "adjunction bookkeeping covers degrees 1 to 4");
  if (orientation != 1 && orientation != -1) fail(ErrorKind::input, "orientation must be +1 or -1");
  const int genus = (degree - 1) * (degree - 2) / 2 - cusps;
  if (cusps < 0 || genus < 0) fail(ErrorKind::scope, "too many cusps for an irreducible curve of this degree");
  AdjunctionDegree a;
  // c1(T) + c1(N) = 3d for complex curves in CP^2; each cusp moves one unit to c1(T)
  a.c1_tangent = 2 - 2 * genus + cusps;
  a.c1_normal = orientation * (degree * degree - 3 * cusps);
  a.d_plus = a.c1_tangent + a.c1_normal;
  return a;
}

void finalize_report(FalloutReport& r, FamilyKind kind, double tolerance) {
  auto near_int = [](double x) { return std::abs(x - std::round(x)) < 0.05; };
  auto compare = [&](const char* what, const std::optional<double>& a, const std::optional<double>& b, bool exact,
                     const char* na, const char* nb) {
    if (!a || !b) return;
    const bool ok = exact ? near_int(*a) && near_int(*b) && std::lround(*a) == std::lround(*b)
                          : std::abs(*a - *b) <= tolerance;
    if (!ok) {
      r.disagreement = true;
      std::ostringstream w;
      w << "disagreement on " << what << ": " << na << " " << *a << " vs " << nb << " " << *b;
      r.warnings.push_back(w.str());
    }
  };
  compare("kT", r.kT_formula, r.kT_twistor, true, "formula", "twistor");
  compare("kN", r.kN_formula, r.kN_twistor, true, "formula", "twistor");
  compare("kT", r.kT_formula, r.kT_quadrature, false, "formula", "quadrature");
  compare("kN", r.kN_formula, r.kN_quadrature, false, "formula", "quadrature");
  compare("kT", r.kT_twistor, r.kT_quadrature, false, "twistor", "quadrature");
  compare("kN", r.kN_twistor, r.kN_quadrature, false, "twistor", "quadrature");
  // most trustworthy pipeline present decides the verdict
  std::optional<double> kT = r.kT_formula ? r.kT_formula : r.kT_twistor ? r.kT_twistor : r.kT_quadrature;
  std::optional<double> kN = r.kN_formula ? r.kN_formula : r.kN_twistor ? r.kN_twistor : r.kN_quadrature;
  if (kT && kN) {
    r.inequality = main_inequality_report(*kT, *kN, kind, tolerance);
    if (r.inequality->verdict == Verdict::violation) r.warnings.push_back("violation of |kN| <= -kT");
    if (r.inequality->mismatch) r.warnings.push_back("verdict does not match the family kind");
  }
}

nlohmann::json to_json(const FalloutReport& r) {
  using nlohmann::json;
  auto opt = [](const auto& v) { return v ? json(*v) : json(nullptr); };
  json j;
  j["schema"] = 1;
  j["family"] = r.family;
  j["kT_formula"] = opt(r.kT_formula);
  j["kT_quadrature"] = opt(r.kT_quadrature);
  j["kT_twistor"] = opt(r.kT_twistor);
  j["kN_formula"] = opt(r.kN_formula);
  j["kN_quadrature"] = opt(r.kN_quadrature);
  j["kN_twistor"] = opt(r.kN_twistor);
  j["genus_bound"] = opt(r.genus_bound);
  if (r.inequality) {
    j["verdict"] = to_string(r.inequality->verdict);
    j["family_kind"] = to_string(r.inequality->kind);
    j["expected_verdict"] = r.inequality->expected ? json(to_string(*r.inequality->expected)) : json(nullptr);
    j["verdict_notes"] = r.inequality->notes;
  } else {
    j["verdict"] = nullptr;
  }
  j["disagreement"] = r.disagreement;
  j["warnings"] = r.warnings;
  j["details"] = r.details;
  return j;
}

}  // namespace branchfall
