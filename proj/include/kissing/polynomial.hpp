#pragma once

#include <string>
#include <utility>
#include <vector>

#include "kissing/rational.hpp"

namespace kissing {

/// Dense univariate polynomial over the rationals, lowest degree first.
/// Trailing zero coefficients are always stripped, so the zero polynomial
/// has an empty coefficient list and degree -1.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> coeffs);
  static Polynomial constant(const Rational& c) { return Polynomial({c}); }
  /// The identity polynomial t.
  static Polynomial identity() { return Polynomial({Rational(0), Rational(1)}); }
  /// Product of (t - r) over the given roots.
  static Polynomial from_roots(const std::vector<Rational>& roots);
  /// Parses a list of "num/den" coefficient strings.
  static Polynomial from_strings(const std::vector<std::string>& coeffs);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  /// Coefficient of t^k (zero beyond the degree).
  Rational coeff(int k) const;
  const Rational& leading() const { return coeffs_.back(); }

  Rational operator()(const Rational& t) const { return eval(t); }
  /// Exact Horner evaluation.
  Rational eval(const Rational& t) const;
  /// Natural interval extension by Horner's scheme (sound, not tight).
  RationalInterval eval(const RationalInterval& t) const;
  /// Float evaluation for plotting and heuristics.
  double eval_double(double t) const;

  Polynomial derivative() const;
  /// Euclidean division: *this = q * d + r with deg r < deg d.
  std::pair<Polynomial, Polynomial> divmod(const Polynomial& d) const;
  /// Substitutes t -> inner(t).
  Polynomial compose(const Polynomial& inner) const;
  /// Divides by the leading coefficient's absolute value (keeps signs).
  Polynomial abs_normalized() const;

  std::vector<std::string> to_strings() const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Rational& s);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Rational& s) { return a *= s; }
  friend Polynomial operator*(const Rational& s, Polynomial a) { return a *= s; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  Polynomial operator-() const { return *this * Rational(-1); }

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  void strip();
  std::vector<Rational> coeffs_;
};

std::string to_string(const Polynomial& p);

Polynomial gcd(Polynomial a, Polynomial b);
/// p / gcd(p, p'): same distinct roots, all simple.
Polynomial squarefree_part(const Polynomial& p);

}  // namespace kissing
