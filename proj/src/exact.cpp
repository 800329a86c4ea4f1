#include "branchfall/exact.hpp"

#include "branchfall/error.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

namespace branchfall {

namespace {

using boost::multiprecision::cpp_int;

cpp_int pow10(int e) {
  cpp_int r = 1;
  for (int i = 0; i < e; ++i) r *= 10;
  return r;
}

Rational parse_decimal(std::string_view s) {
  std::string text(s);
  std::size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    negative = text[pos] == '-';
    ++pos;
  }
  cpp_int mantissa = 0;
  int frac_digits = 0;
  bool seen_digit = false;
  bool in_frac = false;
  for (; pos < text.size(); ++pos) {
    char ch = text[pos];
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      mantissa = mantissa * 10 + (ch - '0');
      seen_digit = true;
      if (in_frac) ++frac_digits;
    } else if (ch == '.' && !in_frac) {
      in_frac = true;
    } else {
      break;
    }
  }
  if (!seen_digit) fail(ErrorKind::input, "not a number: '" + text + "'");
  int exponent = 0;
  if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
    ++pos;
    std::size_t used = 0;
    try {
      exponent = std::stoi(text.substr(pos), &used);
    } catch (const std::exception&) {
      fail(ErrorKind::input, "bad exponent in '" + text + "'");
    }
    pos += used;
  }
  if (pos != text.size()) fail(ErrorKind::input, "trailing characters in '" + text + "'");
  int e10 = exponent - frac_digits;
  Rational q = e10 >= 0 ? Rational(mantissa * pow10(e10)) : Rational(mantissa, pow10(-e10));
  return negative ? Rational(-q) : q;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) fail(ErrorKind::input, "empty rational literal");
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return parse_decimal(text);
  Rational num = parse_decimal(text.substr(0, slash));
  Rational den = parse_decimal(text.substr(slash + 1));
  if (den == 0) fail(ErrorKind::input, "zero denominator in '" + std::string(text) + "'");
  return num / den;
}

Rational rational_from_double(double value) {
  if (!std::isfinite(value)) fail(ErrorKind::input, "non-finite coefficient");
  return Rational(value);
}

std::string to_string(const Rational& q) {
  std::ostringstream out;
  out << q;
  return out.str();
}

ExactComplex operator/(const ExactComplex& a, const ExactComplex& b) {
  Rational n = b.re * b.re + b.im * b.im;
  if (n == 0) fail(ErrorKind::degenerate, "division by exact zero");
  return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
}

std::string to_string(const ExactComplex& c) {
  if (c.im == 0) return to_string(c.re);
  if (c.re == 0) return to_string(c.im) + "i";
  std::string im = to_string(c.im);
  return "(" + to_string(c.re) + (im.front() == '-' ? "" : "+") + im + "i)";
}

Poly::Poly(std::vector<ExactComplex> coeffs) : c_(std::move(coeffs)) { trim(); }

Poly Poly::monomial(ExactComplex c, int power) {
  if (power < 0) fail(ErrorKind::input, "negative monomial power");
  std::vector<ExactComplex> v(static_cast<std::size_t>(power) + 1);
  v.back() = std::move(c);
  return Poly(std::move(v));
}

void Poly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

ExactComplex Poly::coeff(int power) const {
  if (power < 0 || power > degree()) return {};
  return c_[static_cast<std::size_t>(power)];
}

int Poly::valuation() const {
  for (std::size_t i = 0; i < c_.size(); ++i)
    if (!c_[i].is_zero()) return static_cast<int>(i);
  return -1;
}

Poly Poly::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<ExactComplex> d(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i)
    d[i - 1] = ExactComplex(static_cast<int>(i)) * c_[i];
  return Poly(std::move(d));
}

Poly Poly::antiderivative() const {
  if (c_.empty()) return {};
  std::vector<ExactComplex> a(c_.size() + 1);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    Rational inv(1, static_cast<long>(i + 1));
    a[i + 1] = {c_[i].re * inv, c_[i].im * inv};
  }
  return Poly(std::move(a));
}

Poly Poly::conj_coeffs() const {
  std::vector<ExactComplex> v;
  v.reserve(c_.size());
  for (const auto& c : c_) v.push_back(c.conj());
  return Poly(std::move(v));
}

Poly Poly::monic() const {
  if (c_.empty()) return {};
  ExactComplex lead = c_.back();
  std::vector<ExactComplex> v;
  v.reserve(c_.size());
  for (const auto& c : c_) v.push_back(c / lead);
  return Poly(std::move(v));
}

std::complex<double> Poly::operator()(std::complex<double> z) const {
  std::complex<double> acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + it->to_complex();
  return acc;
}

std::vector<std::complex<double>> Poly::to_complex() const {
  std::vector<std::complex<double>> v;
  v.reserve(c_.size());
  for (const auto& c : c_) v.push_back(c.to_complex());
  return v;
}

Poly operator+(const Poly& a, const Poly& b) {
  std::vector<ExactComplex> v(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t i = 0; i < a.c_.size(); ++i) v[i] = a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) v[i] += b.c_[i];
  return Poly(std::move(v));
}

Poly operator-(const Poly& a) {
  std::vector<ExactComplex> v;
  v.reserve(a.c_.size());
  for (const auto& c : a.c_) v.push_back(-c);
  return Poly(std::move(v));
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<ExactComplex> v(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
  return Poly(std::move(v));
}

Poly operator*(const ExactComplex& s, const Poly& p) {
  std::vector<ExactComplex> v;
  v.reserve(p.c_.size());
  for (const auto& c : p.c_) v.push_back(s * c);
  return Poly(std::move(v));
}

Poly::DivMod Poly::divmod(const Poly& divisor) const {
  if (divisor.is_zero()) fail(ErrorKind::degenerate, "polynomial division by zero");
  std::vector<ExactComplex> rem = c_;
  int dd = divisor.degree();
  int qd = degree() - dd;
  if (qd < 0) return {Poly{}, *this};
  std::vector<ExactComplex> quot(static_cast<std::size_t>(qd) + 1);
  const ExactComplex& lead = divisor.leading();
  for (int k = qd; k >= 0; --k) {
    const ExactComplex& top = rem[static_cast<std::size_t>(k + dd)];
    if (top.is_zero()) continue;
    ExactComplex f = top / lead;
    quot[static_cast<std::size_t>(k)] = f;
    for (int i = 0; i <= dd; ++i)
      rem[static_cast<std::size_t>(k + i)] =
          rem[static_cast<std::size_t>(k + i)] - f * divisor.c_[static_cast<std::size_t>(i)];
  }
  return {Poly(std::move(quot)), Poly(std::move(rem))};
}

Poly gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = a.divmod(b).remainder;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

std::string Poly::str(char var) const {
  if (c_.empty()) return "0";
  std::string out;
  for (int i = degree(); i >= 0; --i) {
    const auto& c = c_[static_cast<std::size_t>(i)];
    if (c.is_zero()) continue;
    std::string cs = to_string(c);
    bool unit = (c.im == 0 && (c.re == 1 || c.re == -1));
    if (!out.empty()) out += (cs.front() == '-' ? " - " : " + ");
    else if (cs.front() == '-') out += "-";
    if (cs.front() == '-') cs.erase(0, 1);
    if (i == 0) {
      out += cs;
      continue;
    }
    if (!unit) out += cs + "*";
    out += var;
    if (i > 1) out += "^" + std::to_string(i);
  }
  return out;
}

}  // namespace branchfall
