#include "kissing/gegenbauer.hpp"

#include <deque>
#include <mutex>

#include "kissing/errors.hpp"

namespace kissing {

namespace {

void check_params(int d, int k) {
  if (d < 3) throw DomainError("gegenbauer: dimension must be >= 3, got " + std::to_string(d));
  if (k < 0) throw DomainError("gegenbauer: degree must be >= 0, got " + std::to_string(k));
}

// Per-dimension memo. std::deque keeps references stable while growing.
struct GegenbauerCache {
  std::mutex mu;
  std::map<int, std::deque<Polynomial>> by_dim;
};

GegenbauerCache& cache() {
  static GegenbauerCache c;
  return c;
}

Rational dot(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  Rational s;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void check_points(std::span<const std::vector<Rational>> points, int d) {
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (static_cast<int>(points[i].size()) != d) {
      throw DomainError("positivity_quadform: point " + std::to_string(i) + " has dimension " +
                        std::to_string(points[i].size()) + ", expected " + std::to_string(d));
    }
    if (dot(points[i], points[i]) != Rational(1)) {
      throw DomainError("positivity_quadform: point " + std::to_string(i) + " is not a unit vector");
    }
  }
}

}  // namespace

const Polynomial& gegenbauer_poly(int d, int k) {
  check_params(d, k);
  auto& c = cache();
  std::lock_guard lock(c.mu);
  auto& seq = c.by_dim[d];
  if (seq.empty()) {
    seq.push_back(Polynomial::constant(Rational(1)));
    seq.push_back(Polynomial::identity());
  }
  const Polynomial t = Polynomial::identity();
  while (static_cast<int>(seq.size()) <= k) {
    const long j = static_cast<long>(seq.size());
    const Polynomial& g1 = seq[static_cast<std::size_t>(j - 1)];
    const Polynomial& g2 = seq[static_cast<std::size_t>(j - 2)];
    Polynomial next = (t * g1) * Rational(d + 2 * j - 4) - g2 * Rational(j - 1);
    seq.push_back(next * (Rational(1) / Rational(d + j - 3)));
  }
  return seq[static_cast<std::size_t>(k)];
}

std::vector<Rational> gegenbauer_values(int d, int kmax, const Rational& t) {
  check_params(d, kmax);
  std::vector<Rational> g;
  g.reserve(static_cast<std::size_t>(kmax) + 1);
  g.emplace_back(1);
  if (kmax >= 1) g.push_back(t);
  for (long j = 2; j <= kmax; ++j) {
    const std::size_t u = static_cast<std::size_t>(j);
    g.push_back((Rational(d + 2 * j - 4) * t * g[u - 1] - Rational(j - 1) * g[u - 2]) / Rational(d + j - 3));
  }
  return g;
}

std::vector<double> gegenbauer_values(int d, int kmax, double t) {
  check_params(d, kmax);
  std::vector<double> g;
  g.reserve(static_cast<std::size_t>(kmax) + 1);
  g.push_back(1.0);
  if (kmax >= 1) g.push_back(t);
  for (int j = 2; j <= kmax; ++j) {
    const auto u = static_cast<std::size_t>(j);
    g.push_back(((d + 2.0 * j - 4.0) * t * g[u - 1] - (j - 1.0) * g[u - 2]) / (d + j - 3.0));
  }
  return g;
}

GegenbauerExpansion::GegenbauerExpansion(int dim, std::map<int, Rational> coeffs) : dim_(dim) {
  for (auto& [k, c] : coeffs) set(k, c);
}

Rational GegenbauerExpansion::coeff(int k) const {
  const auto it = coeffs_.find(k);
  return it == coeffs_.end() ? Rational(0) : it->second;
}

void GegenbauerExpansion::set(int k, const Rational& c) {
  if (k < 0) throw DomainError("expansion index must be >= 0");
  if (c.is_zero()) coeffs_.erase(k);
  else coeffs_[k] = c;
}

bool GegenbauerExpansion::admissible() const { return negative_indices().empty(); }

std::vector<int> GegenbauerExpansion::negative_indices() const {
  std::vector<int> out;
  for (const auto& [k, c] : coeffs_) {
    if (c.sign() < 0) out.push_back(k);
  }
  return out;
}

Polynomial expansion_to_poly(const GegenbauerExpansion& e) {
  Polynomial p;
  for (const auto& [k, c] : e.coeffs()) p += gegenbauer_poly(e.dim(), k) * c;
  return p;
}

GegenbauerExpansion poly_to_expansion(const Polynomial& p, int d) {
  check_params(d, 0);
  GegenbauerExpansion out(d);
  Polynomial rest = p;
  while (!rest.is_zero()) {
    const int k = rest.degree();
    const Polynomial& g = gegenbauer_poly(d, k);
    const Rational c = rest.leading() / g.leading();
    out.set(k, c);
    rest -= g * c;
  }
  return out;
}

std::vector<Rational> positivity_quadforms(std::span<const std::vector<Rational>> points, int d, int kmax) {
  check_params(d, kmax);
  check_points(points, d);
  std::vector<Rational> sums(static_cast<std::size_t>(kmax) + 1, Rational(static_cast<long>(points.size())));
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      const auto g = gegenbauer_values(d, kmax, dot(points[i], points[j]));
      for (std::size_t k = 0; k < g.size(); ++k) sums[k] += Rational(2) * g[k];
    }
  }
  return sums;
}

Rational positivity_quadform(std::span<const std::vector<Rational>> points, int d, int k) {
  return positivity_quadforms(points, d, k)[static_cast<std::size_t>(k)];
}

}  // namespace kissing
