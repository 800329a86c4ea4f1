#include "branchfall/corpus.hpp"

namespace branchfall::corpus {

namespace {

MonomialTerm term(ExactComplex c, int j, int k, double phase = 0) { return {{std::move(c), phase}, j, k}; }

Poly mono(int c, int m) { return Poly::monomial(ExactComplex(c), m); }

const Rational half(1, 2);

}  // namespace

BranchedDiskSpec plane() { return {{term(1, 1, 0)}, {}, 1.0}; }

BranchedDiskSpec graph() { return {{term(1, 1, 0)}, {term(1, 2, 0)}, 1.0}; }

BranchedDiskSpec cusp() { return torus_singularity(2, 3); }

BranchedDiskSpec torus_singularity(int p, int q) { return {{term(1, p, 0)}, {term(1, q, 0)}, 1.0}; }

std::vector<Rational> default_t_values() {
  return {Rational(1, 100), Rational(1, 300), Rational(1, 1000), Rational(1, 3000), Rational(1, 10000)};
}

FamilySpec cusp_family() {
  FamilySpec f;
  f.domain_radius = 1.0;
  f.w1 = {{{ExactComplex(1)}, 0, 2, 0}};
  f.w2 = {{{ExactComplex(1)}, 0, 3, 0}, {{ExactComplex(0), ExactComplex(1)}, 0, 1, 0}};
  f.parameter_values = default_t_values();
  return f;
}

WeierstrassData minimal_limit_data() { return {mono(1, 2), mono(1, 5), mono(1, 3), mono(-1, 4)}; }

BranchedDiskSpec minimal_limit() { return weierstrass_to_disk(minimal_limit_data()); }

WeierstrassFamily minimal_family_data() {
  // f1' = z^2 - t^2, f2' = z^5, f3' = z^3 - t z^2, f4' = -z^4 - t z^3
  WeierstrassFamily w;
  w.by_tpower[0] = {mono(1, 2), Poly{}, mono(-1, 0)};
  w.by_tpower[1] = {mono(1, 5)};
  w.by_tpower[2] = {mono(1, 3), mono(-1, 2)};
  w.by_tpower[3] = {mono(-1, 4), mono(-1, 3)};
  w.domain_radius = 1.0;
  w.parameter_values = default_t_values();
  return w;
}

FamilySpec minimal_family() { return weierstrass_family_to_disk(minimal_family_data()); }

BranchedDiskSpec writhe20(double alpha) {
  // Im(z^50) = (-i/2) z^50 + (i/2) zbar^50
  // i Re(e^{ia} z^110) = (i/2) e^{ia} z^110 + (i/2) e^{-ia} zbar^110
  BranchedDiskSpec s;
  s.domain_radius = 1.0;
  s.w1 = {term(1, 3, 0)};
  s.w2 = {term({0, -half}, 50, 0), term({0, half}, 0, 50), term({0, half}, 110, 0, alpha),
          term({0, half}, 0, 110, -alpha)};
  return s;
}

}  // namespace branchfall::corpus
