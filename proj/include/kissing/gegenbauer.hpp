#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "kissing/polynomial.hpp"
#include "kissing/rational.hpp"

namespace kissing {

/// Gegenbauer polynomial G_k^{(d)} normalized so that G_k(1) = 1:
///   G_0 = 1, G_1 = t,
///   (d + k - 3) G_k = (d + 2k - 4) t G_{k-1} - (k - 1) G_{k-2}.
/// For d = 3 these are the Legendre polynomials. Requires d >= 3 and
/// k >= 0, otherwise DomainError. Results are memoized per (d, k); the
/// cache is shared across threads and write-once.
const Polynomial& gegenbauer_poly(int d, int k);

/// G_0(t), ..., G_kmax(t) at a single rational point via the three-term
/// recursion on values (no polynomial expansion).
std::vector<Rational> gegenbauer_values(int d, int kmax, const Rational& t);

/// Same recursion in double precision.
std::vector<double> gegenbauer_values(int d, int kmax, double t);

/// f = sum_k c_k G_k^{(d)} with a sparse coefficient map.
class GegenbauerExpansion {
 public:
  GegenbauerExpansion() = default;
  explicit GegenbauerExpansion(int dim) : dim_(dim) {}
  GegenbauerExpansion(int dim, std::map<int, Rational> coeffs);

  int dim() const { return dim_; }
  const std::map<int, Rational>& coeffs() const { return coeffs_; }
  /// c_k, zero when absent.
  Rational coeff(int k) const;
  /// Sets c_k; zero erases the entry.
  void set(int k, const Rational& c);
  /// Largest k with c_k != 0, or -1.
  int max_index() const { return coeffs_.empty() ? -1 : coeffs_.rbegin()->first; }
  /// Delsarte admissibility: every c_k >= 0.
  bool admissible() const;
  /// Indices with negative coefficients.
  std::vector<int> negative_indices() const;

  friend bool operator==(const GegenbauerExpansion&, const GegenbauerExpansion&) = default;

 private:
  int dim_ = 3;
  std::map<int, Rational> coeffs_;
};

/// sum_k c_k G_k in the monomial basis.
Polynomial expansion_to_poly(const GegenbauerExpansion& e);

/// Inverse basis map by back-substitution from the top degree (deg G_k = k).
GegenbauerExpansion poly_to_expansion(const Polynomial& p, int d);

/// sum_{i,j} G_k^{(d)}(<x_i, x_j>) computed exactly. Every point must have
/// exactly d rational coordinates with squared norm exactly 1, otherwise
/// DomainError.
Rational positivity_quadform(std::span<const std::vector<Rational>> points, int d, int k);

/// All quadratic forms k = 0..kmax in one pass over the point pairs.
std::vector<Rational> positivity_quadforms(std::span<const std::vector<Rational>> points, int d, int kmax);

}  // namespace kissing
