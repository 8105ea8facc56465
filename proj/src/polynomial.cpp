#include "kissing/polynomial.hpp"

#include <sstream>

#include "kissing/errors.hpp"

namespace kissing {

Polynomial::Polynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { strip(); }

void Polynomial::strip() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

Polynomial Polynomial::from_roots(const std::vector<Rational>& roots) {
  Polynomial p = constant(Rational(1));
  for (const Rational& r : roots) p = p * Polynomial({-r, Rational(1)});
  return p;
}

Polynomial Polynomial::from_strings(const std::vector<std::string>& coeffs) {
  std::vector<Rational> c;
  c.reserve(coeffs.size());
  for (const auto& s : coeffs) c.push_back(Rational::parse(s));
  return Polynomial(std::move(c));
}

Rational Polynomial::coeff(int k) const {
  if (k < 0 || k > degree()) return Rational(0);
  return coeffs_[static_cast<std::size_t>(k)];
}

Rational Polynomial::eval(const Rational& t) const {
  Rational acc;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc *= t;
    acc += *it;
  }
  return acc;
}

RationalInterval Polynomial::eval(const RationalInterval& t) const {
  if (t.is_point()) return RationalInterval::point(eval(t.lo()));
  RationalInterval acc = RationalInterval::point(Rational(0));
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc = acc * t;
    acc = *it + acc;
  }
  return acc;
}

double Polynomial::eval_double(double t) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + it->to_double();
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<Rational> d;
  d.reserve(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) d.push_back(coeffs_[k] * Rational(static_cast<long>(k)));
  return Polynomial(std::move(d));
}

std::pair<Polynomial, Polynomial> Polynomial::divmod(const Polynomial& d) const {
  if (d.is_zero()) throw DomainError("polynomial division by zero");
  std::vector<Rational> rem = coeffs_;
  const int dd = d.degree();
  if (degree() < dd) return {Polynomial(), *this};
  std::vector<Rational> quot(static_cast<std::size_t>(degree() - dd + 1));
  const Rational& lead = d.leading();
  for (int k = degree(); k >= dd; --k) {
    const Rational c = rem[static_cast<std::size_t>(k)] / lead;
    quot[static_cast<std::size_t>(k - dd)] = c;
    if (c.is_zero()) continue;
    for (int j = 0; j <= dd; ++j) rem[static_cast<std::size_t>(k - dd + j)] -= c * d.coeffs_[static_cast<std::size_t>(j)];
  }
  rem.resize(static_cast<std::size_t>(dd));
  return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
}

Polynomial Polynomial::compose(const Polynomial& inner) const {
  Polynomial acc;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * inner + constant(*it);
  return acc;
}

Polynomial Polynomial::abs_normalized() const {
  if (is_zero()) return {};
  return *this * (Rational(1) / leading().abs());
}

std::vector<std::string> Polynomial::to_strings() const {
  std::vector<std::string> out;
  out.reserve(coeffs_.size());
  for (const auto& c : coeffs_) out.push_back(c.str());
  return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
  strip();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
  strip();
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& s) {
  for (auto& c : coeffs_) c *= s;
  strip();
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> out(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return Polynomial(std::move(out));
}

std::string to_string(const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int k = p.degree(); k >= 0; --k) {
    const Rational c = p.coeff(k);
    if (c.is_zero()) continue;
    if (!first) os << (c.sign() < 0 ? " - " : " + ");
    else if (c.sign() < 0) os << "-";
    first = false;
    os << "(" << c.abs().str() << ")";
    if (k >= 1) os << "*t";
    if (k >= 2) os << "^" << k;
  }
  return os.str();
}

Polynomial gcd(Polynomial a, Polynomial b) {
  while (!b.is_zero()) {
    Polynomial r = a.divmod(b).second;
    a = std::move(b);
    b = r.abs_normalized();
  }
  if (a.is_zero()) return a;
  return a * (Rational(1) / a.leading());
}

Polynomial squarefree_part(const Polynomial& p) {
  if (p.degree() <= 0) return p;
  const Polynomial g = gcd(p, p.derivative());
  return p.divmod(g).first;
}

}  // namespace kissing
