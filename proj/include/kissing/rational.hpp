#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace kissing {

/// Exact rational number in canonical form (gcd(num, den) = 1, den > 0).
///
/// Thin value wrapper over GMP's mpq_class. Every constructor canonicalizes,
/// so two equal values always have identical representations and render to
/// identical strings.
class Rational {
 public:
  Rational() = default;
  Rational(long v) : value_(v) {}  // NOLINT(google-explicit-constructor)
  Rational(int v) : value_(v) {}   // NOLINT(google-explicit-constructor)
  Rational(long num, long den);
  explicit Rational(const mpz_class& integer) : value_(integer) {}
  Rational(const mpz_class& num, const mpz_class& den);
  explicit Rational(const mpq_class& q) : value_(q) { value_.canonicalize(); }

  /// Parses "num/den", an integer, or a finite decimal literal such as
  /// "-0.50" or "1e-3". Throws ParseError on malformed input.
  static Rational parse(std::string_view text);
  /// Parses a finite decimal literal ("0.09465869", "-2", ".5").
  static Rational from_decimal(std::string_view text);
  /// Nearest dyadic rational k/2^bits to a finite double (exact if possible).
  static Rational from_double(double v);
  /// 2^exp for any integer exp.
  static Rational pow2(long exp);

  const mpq_class& raw() const { return value_; }
  mpz_class numerator() const { return value_.get_num(); }
  mpz_class denominator() const { return value_.get_den(); }

  int sign() const { return sgn(value_); }
  bool is_zero() const { return sign() == 0; }
  bool is_integer() const { return value_.get_den() == 1; }

  double to_double() const { return value_.get_d(); }
  mpz_class floor() const;
  mpz_class ceil() const;
  Rational abs() const;

  /// Canonical "num/den" form, e.g. "9465869/100000000" and "0/1".
  std::string str() const;
  /// Decimal with `places` digits after the point, rounded half away from zero.
  std::string to_fixed(int places) const;
  /// Decimal with `digits` significant digits (default 12).
  std::string to_decimal(int digits = 12) const;

  /// Largest k/2^bits <= *this.
  Rational round_down(unsigned bits) const;
  /// Smallest k/2^bits >= *this.
  Rational round_up(unsigned bits) const;

  Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
  Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
  Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  Rational operator-() const { return Rational(mpq_class(-value_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class value_{0};
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

inline const Rational& min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline const Rational& max(const Rational& a, const Rational& b) { return a < b ? b : a; }

/// Closed interval [lo, hi] with exact rational endpoints, lo <= hi.
class RationalInterval {
 public:
  RationalInterval() = default;
  /// Throws DomainError if lo > hi.
  RationalInterval(Rational lo, Rational hi);
  static RationalInterval point(const Rational& x) { return {x, x}; }

  const Rational& lo() const { return lo_; }
  const Rational& hi() const { return hi_; }
  Rational width() const { return hi_ - lo_; }
  Rational midpoint() const { return (lo_ + hi_) / Rational(2); }
  bool is_point() const { return lo_ == hi_; }

  bool contains(const Rational& x) const { return lo_ <= x && x <= hi_; }
  bool contains(const RationalInterval& o) const { return lo_ <= o.lo_ && o.hi_ <= hi_; }
  bool intersects(const RationalInterval& o) const { return lo_ <= o.hi_ && o.lo_ <= hi_; }
  /// Largest absolute value of any element.
  Rational magnitude() const { return max(lo_.abs(), hi_.abs()); }

  RationalInterval hull(const RationalInterval& o) const;
  /// Outward rounding of both endpoints to the dyadic grid 2^-bits.
  RationalInterval rounded_outward(unsigned bits) const;

  /// "[num/den, num/den]"
  std::string str() const;

  friend bool operator==(const RationalInterval&, const RationalInterval&) = default;

 private:
  Rational lo_;
  Rational hi_;
};

RationalInterval operator+(const RationalInterval& a, const RationalInterval& b);
RationalInterval operator-(const RationalInterval& a, const RationalInterval& b);
RationalInterval operator*(const RationalInterval& a, const RationalInterval& b);
RationalInterval operator-(const RationalInterval& a);
RationalInterval operator*(const Rational& s, const RationalInterval& a);
RationalInterval operator+(const Rational& s, const RationalInterval& a);
/// Exact image of x^2 over the interval (tighter than a*a when 0 is inside).
RationalInterval square(const RationalInterval& a);

std::ostream& operator<<(std::ostream& os, const RationalInterval& iv);

enum class IntervalOp { Add, Sub, Mul };
RationalInterval interval_arith(IntervalOp op, const RationalInterval& a, const RationalInterval& b);

/// Certified enclosure [l, h] of sqrt over x: l^2 <= x.lo, h^2 >= x.hi and
/// h - l <= eps + (sqrt(x.hi) - sqrt(x.lo)). Endpoints are dyadic unless the
/// endpoint is an exact rational square, in which case the root is returned
/// exactly. Throws DomainError when x.lo < 0 or eps <= 0.
RationalInterval sqrt_enclose(const RationalInterval& x, const Rational& eps);

}  // namespace kissing
