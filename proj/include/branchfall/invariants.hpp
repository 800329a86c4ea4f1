#pragma once

// Closed-form fallout formulas, the |kN| <= -kT verdict, genus bounds, torus
// singularity baselines and the adjunction bookkeeping of plane curves.

#include "branchfall/braid.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace branchfall {

/// 2 - sum (N_i + 1) - 2 g; orders N_i >= 2, g >= 0.
int tangent_fallout(const std::vector<int>& orders, int genus);

/// sl - 2 * (double points in the limit).
int normal_fallout(int self_linking, int double_points);

enum class FamilyKind { complex, right_superminimal, left_superminimal, symplectic_plus, symplectic_minus, minimal, generic };
enum class Verdict { strict, equality_plus, equality_minus, violation };

std::string to_string(FamilyKind k);
std::string to_string(Verdict v);
FamilyKind family_kind_from_string(const std::string& s);

struct InequalityReport {
  Verdict verdict = Verdict::strict;
  FamilyKind kind = FamilyKind::generic;
  std::optional<Verdict> expected;  // what the family kind forces, if anything
  bool mismatch = false;
  std::vector<std::string> notes;
};

/// kT + kN = 0 is equality_plus, kT - kN = 0 equality_minus, |kN| > -kT a
/// violation (reported, not thrown). Values within `tolerance` of a relation
/// count as satisfying it. Throws ErrorKind::input when kT > tolerance.
InequalityReport main_inequality_report(double kT, double kN, FamilyKind kind, double tolerance = 0.1);

/// Smallest g >= 0 with |writhe| <= -(2 - sum (N_i + 1) - 2 g).
int genus_bound(int writhe_abs, const std::vector<int>& orders);

struct SingularityInvariants {
  int p = 0, q = 0;
  int milnor = 0;          // (p-1)(q-1)
  BraidWord braid;         // (sigma_1 ... sigma_{p-1})^q
  int euler_fiber = 0;     // 1 - milnor
  int kT = 0, kN = 0;      // euler_fiber - p and milnor + p - 1
  int boundary_components = 1;
  std::string note;
};

/// x^p = y^q with 2 <= p < q coprime. Throws ErrorKind::scope otherwise.
SingularityInvariants complex_singularity_invariants(int p, int q);

struct AdjunctionDegree {
  int c1_tangent = 0;  // chi of the normalization plus one per cusp
  int c1_normal = 0;   // d^2 - 3 * cusps, negated for the reversed orientation
  int d_plus = 0;      // their sum
};

/// Plane curves of degree d <= 4 with ordinary cusps only.
AdjunctionDegree adjunction_degree(int degree, int cusps, int orientation);

struct FalloutReport {
  std::string family;
  std::optional<double> kT_formula, kN_formula;
  std::optional<double> kT_quadrature, kN_quadrature;
  std::optional<double> kT_twistor, kN_twistor;
  std::optional<int> genus_bound;
  std::optional<InequalityReport> inequality;
  bool disagreement = false;
  std::vector<std::string> warnings;
  nlohmann::json details = nlohmann::json::object();
};

/// Cross-checks the pipelines present (formula and twistor must agree
/// exactly after rounding, quadrature within `tolerance`), sets the
/// disagreement flag and attaches the inequality verdict.
void finalize_report(FalloutReport& r, FamilyKind kind, double tolerance = 0.1);

/// Schema 1: kT_formula, kT_quadrature, kT_twistor, kN_*, verdict, warnings, ...
nlohmann::json to_json(const FalloutReport& r);

}  // namespace branchfall
