#include "kissing/rational.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <ostream>

#include "kissing/errors.hpp"

namespace kissing {

namespace {

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

mpz_class pow10(unsigned long e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
  return r;
}

// Parses an optionally signed integer literal.
mpz_class parse_integer(std::string_view s, std::string_view whole) {
  bool neg = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) throw ParseError("malformed integer in '" + std::string(whole) + "'");
  mpz_class v(std::string(s), 10);
  return neg ? mpz_class(-v) : v;
}

bool is_perfect_square(const mpz_class& v) { return mpz_perfect_square_p(v.get_mpz_t()) != 0; }

mpz_class isqrt(const mpz_class& v) {
  mpz_class r;
  mpz_sqrt(r.get_mpz_t(), v.get_mpz_t());
  return r;
}

// Exact square root when x is the square of a rational.
bool exact_sqrt(const Rational& x, Rational& out) {
  const mpz_class n = x.numerator();
  const mpz_class d = x.denominator();
  if (is_perfect_square(n) && is_perfect_square(d)) {
    out = Rational(isqrt(n), isqrt(d));
    return true;
  }
  return false;
}

mpz_class scale_pow2(const mpz_class& v, unsigned long bits) {
  mpz_class r;
  mpz_mul_2exp(r.get_mpz_t(), v.get_mpz_t(), bits);
  return r;
}

}  // namespace

Rational::Rational(long num, long den) : value_(num, den) {
  if (den == 0) throw DomainError("zero denominator");
  value_.canonicalize();
}

Rational::Rational(const mpz_class& num, const mpz_class& den) : value_(num, den) {
  if (den == 0) throw DomainError("zero denominator");
  value_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw DomainError("division by zero");
  value_ /= o.value_;
  return *this;
}

Rational Rational::from_decimal(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (s.empty()) throw ParseError("empty decimal literal");

  bool neg = false;
  if (s.front() == '-' || s.front() == '+') {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }
  long exponent = 0;
  if (const auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    const mpz_class ev = parse_integer(s.substr(e + 1), text);
    if (!ev.fits_slong_p() || ::abs(ev) > 100000) throw ParseError("exponent out of range in '" + std::string(text) + "'");
    exponent = ev.get_si();
    s = s.substr(0, e);
  }
  std::string_view int_part = s;
  std::string_view frac_part;
  if (const auto dot = s.find('.'); dot != std::string_view::npos) {
    int_part = s.substr(0, dot);
    frac_part = s.substr(dot + 1);
  }
  if (int_part.empty() && frac_part.empty()) throw ParseError("malformed decimal '" + std::string(text) + "'");
  if ((!int_part.empty() && !all_digits(int_part)) || (!frac_part.empty() && !all_digits(frac_part))) {
    throw ParseError("malformed decimal '" + std::string(text) + "'");
  }
  const std::string digits = std::string(int_part) + std::string(frac_part);
  mpz_class num(digits.empty() ? std::string("0") : digits, 10);
  if (neg) num = -num;
  const long scale = static_cast<long>(frac_part.size()) - exponent;
  if (scale >= 0) return Rational(num, pow10(static_cast<unsigned long>(scale)));
  return Rational(mpz_class(num * pow10(static_cast<unsigned long>(-scale))));
}

Rational Rational::parse(std::string_view text) {
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    auto trim = [](std::string_view v) {
      while (!v.empty() && std::isspace(static_cast<unsigned char>(v.front()))) v.remove_prefix(1);
      while (!v.empty() && std::isspace(static_cast<unsigned char>(v.back()))) v.remove_suffix(1);
      return v;
    };
    const mpz_class num = parse_integer(trim(text.substr(0, slash)), text);
    const mpz_class den = parse_integer(trim(text.substr(slash + 1)), text);
    if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
  }
  return from_decimal(text);
}

Rational Rational::from_double(double v) {
  if (!std::isfinite(v)) throw DomainError("non-finite double");
  mpq_class q(v);  // exact binary value
  return Rational(q);
}

Rational Rational::pow2(long exp) {
  mpz_class p(1);
  mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(exp < 0 ? -exp : exp));
  return exp >= 0 ? Rational(p) : Rational(mpz_class(1), p);
}

mpz_class Rational::floor() const {
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
  return r;
}

mpz_class Rational::ceil() const {
  mpz_class r;
  mpz_cdiv_q(r.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
  return r;
}

Rational Rational::abs() const { return Rational(mpq_class(::abs(value_))); }

std::string Rational::str() const { return value_.get_num().get_str() + "/" + value_.get_den().get_str(); }

std::string Rational::to_fixed(int places) const {
  if (places < 0) places = 0;
  const mpz_class scale = pow10(static_cast<unsigned long>(places));
  // round half away from zero on |x| * 10^places
  const mpq_class scaled = ::abs(value_) * scale;
  mpz_class twice = scaled.get_num() * 2 + scaled.get_den();
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), twice.get_mpz_t(), mpz_class(scaled.get_den() * 2).get_mpz_t());
  std::string digits = q.get_str();
  if (static_cast<int>(digits.size()) <= places) digits.insert(0, places + 1 - digits.size(), '0');
  std::string out;
  if (sign() < 0 && q != 0) out.push_back('-');
  out += digits.substr(0, digits.size() - places);
  if (places > 0) {
    out.push_back('.');
    out += digits.substr(digits.size() - places);
  }
  return out;
}

std::string Rational::to_decimal(int digits) const {
  if (digits < 1) digits = 1;
  if (is_zero()) return to_fixed(digits - 1);
  // exponent of the leading digit: 10^e <= |x| < 10^(e+1)
  const Rational a = abs();
  long e = static_cast<long>(std::floor(std::log10(std::fabs(a.to_double()))));
  auto pow10r = [](long k) { return k >= 0 ? Rational(pow10(k)) : Rational(mpz_class(1), pow10(-k)); };
  while (pow10r(e) > a) --e;
  while (pow10r(e + 1) <= a) ++e;
  const int places = static_cast<int>(std::max<long>(0, digits - 1 - e));
  return to_fixed(places);
}

Rational Rational::round_down(unsigned bits) const {
  const mpz_class scaled = Rational(mpq_class(value_ * mpq_class(scale_pow2(1, bits)))).floor();
  return Rational(scaled, scale_pow2(1, bits));
}

Rational Rational::round_up(unsigned bits) const {
  const mpz_class scaled = Rational(mpq_class(value_ * mpq_class(scale_pow2(1, bits)))).ceil();
  return Rational(scaled, scale_pow2(1, bits));
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

RationalInterval::RationalInterval(Rational lo, Rational hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (hi_ < lo_) throw DomainError("interval with lo > hi: [" + lo_.str() + ", " + hi_.str() + "]");
}

RationalInterval RationalInterval::hull(const RationalInterval& o) const {
  return {min(lo_, o.lo_), max(hi_, o.hi_)};
}

RationalInterval RationalInterval::rounded_outward(unsigned bits) const {
  return {lo_.round_down(bits), hi_.round_up(bits)};
}

std::string RationalInterval::str() const { return "[" + lo_.str() + ", " + hi_.str() + "]"; }

std::ostream& operator<<(std::ostream& os, const RationalInterval& iv) { return os << iv.str(); }

RationalInterval operator+(const RationalInterval& a, const RationalInterval& b) {
  return {a.lo() + b.lo(), a.hi() + b.hi()};
}

RationalInterval operator-(const RationalInterval& a, const RationalInterval& b) {
  return {a.lo() - b.hi(), a.hi() - b.lo()};
}

RationalInterval operator-(const RationalInterval& a) { return {-a.hi(), -a.lo()}; }

RationalInterval operator*(const RationalInterval& a, const RationalInterval& b) {
  if (a.lo().sign() >= 0 && b.lo().sign() >= 0) return {a.lo() * b.lo(), a.hi() * b.hi()};
  const std::array<Rational, 4> p{a.lo() * b.lo(), a.lo() * b.hi(), a.hi() * b.lo(), a.hi() * b.hi()};
  return {*std::min_element(p.begin(), p.end()), *std::max_element(p.begin(), p.end())};
}

RationalInterval operator*(const Rational& s, const RationalInterval& a) {
  if (s.sign() >= 0) return {s * a.lo(), s * a.hi()};
  return {s * a.hi(), s * a.lo()};
}

RationalInterval operator+(const Rational& s, const RationalInterval& a) { return {s + a.lo(), s + a.hi()}; }

RationalInterval square(const RationalInterval& a) {
  if (a.lo().sign() >= 0) return {a.lo() * a.lo(), a.hi() * a.hi()};
  if (a.hi().sign() <= 0) return {a.hi() * a.hi(), a.lo() * a.lo()};
  const Rational m = a.magnitude();
  return {Rational(0), m * m};
}

RationalInterval interval_arith(IntervalOp op, const RationalInterval& a, const RationalInterval& b) {
  switch (op) {
    case IntervalOp::Add: return a + b;
    case IntervalOp::Sub: return a - b;
    case IntervalOp::Mul: return a * b;
  }
  throw DomainError("unknown interval op");
}

RationalInterval sqrt_enclose(const RationalInterval& x, const Rational& eps) {
  if (x.lo().sign() < 0) throw DomainError("sqrt_enclose: negative domain " + x.str());
  if (eps.sign() <= 0) throw DomainError("sqrt_enclose: eps must be positive");

  // smallest k with 2^-k <= eps/2
  unsigned long k = 0;
  const Rational half_eps = eps / Rational(2);
  while (Rational::pow2(-static_cast<long>(k)) > half_eps) ++k;
  const Rational unit = Rational::pow2(-static_cast<long>(k));

  Rational lo;
  if (!exact_sqrt(x.lo(), lo)) {
    // floor(sqrt(floor(N))) == floor(sqrt(N)) for N = lo * 4^k
    const mpz_class n = Rational(x.lo() * Rational::pow2(2 * static_cast<long>(k))).floor();
    lo = Rational(isqrt(n)) * unit;
  }
  Rational hi;
  if (!exact_sqrt(x.hi(), hi)) {
    const mpz_class n = Rational(x.hi() * Rational::pow2(2 * static_cast<long>(k))).ceil();
    mpz_class s = isqrt(n);
    if (s * s != n) s += 1;
    hi = Rational(s) * unit;
  }
  return {lo, hi};
}

}  // namespace kissing
