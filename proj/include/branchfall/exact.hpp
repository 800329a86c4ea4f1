#pragma once

// Exact arithmetic over Q(i): complex rationals and polynomials with
// complex-rational coefficients. Used for every symbolic check (the
// Weierstrass identity, Gauss-map reduction); numeric pipelines convert
// to floating point through to_complex().

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <string>
#include <string_view>
#include <vector>

namespace branchfall {

using Rational = boost::multiprecision::cpp_rational;

/// Parses "p/q", an integer, or a decimal literal ("0.25", "-1e-3") exactly.
Rational parse_rational(std::string_view text);

/// Exact binary value of a double.
Rational rational_from_double(double value);

std::string to_string(const Rational& q);

struct ExactComplex {
  Rational re{0};
  Rational im{0};

  ExactComplex() = default;
  ExactComplex(Rational r) : re(std::move(r)) {}
  ExactComplex(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
  ExactComplex(int r) : re(r) {}

  bool is_zero() const { return re == 0 && im == 0; }
  ExactComplex conj() const { return {re, -im}; }
  std::complex<double> to_complex() const {
    return {static_cast<double>(re), static_cast<double>(im)};
  }
  std::complex<long double> to_complex_ld() const {
    return {static_cast<long double>(re), static_cast<long double>(im)};
  }

  friend bool operator==(const ExactComplex& a, const ExactComplex& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend ExactComplex operator+(const ExactComplex& a, const ExactComplex& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend ExactComplex operator-(const ExactComplex& a, const ExactComplex& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend ExactComplex operator-(const ExactComplex& a) { return {-a.re, -a.im}; }
  friend ExactComplex operator*(const ExactComplex& a, const ExactComplex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend ExactComplex operator/(const ExactComplex& a, const ExactComplex& b);
  ExactComplex& operator+=(const ExactComplex& b) { return *this = *this + b; }
  ExactComplex& operator*=(const ExactComplex& b) { return *this = *this * b; }
};

std::string to_string(const ExactComplex& c);

/// Polynomial in z with coefficients in Q(i), lowest degree first.
/// Invariant: no trailing zero coefficients (the zero polynomial is empty).
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<ExactComplex> coeffs);

  static Poly monomial(ExactComplex c, int power);
  static Poly constant(ExactComplex c) { return monomial(std::move(c), 0); }

  bool is_zero() const { return c_.empty(); }
  /// Degree; -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<ExactComplex>& coeffs() const { return c_; }
  ExactComplex coeff(int power) const;
  const ExactComplex& leading() const { return c_.back(); }
  /// Lowest power with a nonzero coefficient; -1 for the zero polynomial.
  int valuation() const;

  Poly derivative() const;
  /// Antiderivative with zero constant term.
  Poly antiderivative() const;
  Poly conj_coeffs() const;
  Poly monic() const;

  std::complex<double> operator()(std::complex<double> z) const;
  std::vector<std::complex<double>> to_complex() const;

  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a);
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(const ExactComplex& s, const Poly& p);

  struct DivMod;
  DivMod divmod(const Poly& divisor) const;

  std::string str(char var = 'z') const;

 private:
  void trim();
  std::vector<ExactComplex> c_;
};

struct Poly::DivMod {
  Poly quotient;
  Poly remainder;
};

/// Monic greatest common divisor (zero if both inputs are zero).
Poly gcd(Poly a, Poly b);

}  // namespace branchfall
