#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "kissing/polynomial.hpp"
#include "kissing/rational.hpp"

namespace kissing {

/// t -> p(t) + q(t) * sqrt(r(t)).
///
/// Polynomials in a single radical form a ring modulo s^2 = r, which is how
/// a polynomial f composed with an algebraic substitution such as
/// t/2 - sqrt(3(1-t^2)/4) collapses to this shape.
struct RadicalExpr {
  Polynomial p;
  Polynomial q;
  Polynomial r;

  static RadicalExpr polynomial(Polynomial poly) { return {std::move(poly), {}, {}}; }
  bool has_radical() const { return !q.is_zero(); }

  /// f(p + q sqrt(r)) reduced back to P + Q sqrt(r).
  static RadicalExpr compose(const Polynomial& f, const RadicalExpr& inner);

  double eval_double(double t) const;
};

/// Enclosure of {e'(t) : t in tv} where e' = p' + q' sqrt(r) + q r' / (2 sqrt(r)).
/// Empty when the radicand's enclosure touches zero on tv.
std::optional<RationalInterval> radical_derivative_enclose(const RadicalExpr& e, const RationalInterval& tv,
                                                           const Rational& eps);

/// Enclosure of {e(t) : t in tv}. The radicand must be certified
/// nonnegative on tv (first by interval bound, then exactly by Sturm when
/// the bound is inconclusive); otherwise DomainError.
RationalInterval radical_eval_enclose(const RadicalExpr& e, const RationalInterval& tv, const Rational& eps);

enum class BoundStatus { Pass, Fail, Inconclusive };
std::string to_string(BoundStatus s);

struct MaxBoundResult {
  BoundStatus status = BoundStatus::Inconclusive;
  /// Pass: enclosure of sup over iv of the summed terms.
  std::optional<RationalInterval> enclosure;
  /// Fail: a point where the certified lower bound exceeds the bound.
  std::optional<RationalInterval> witness;
  std::size_t nodes = 0;
  int depth_reached = 0;
};

struct BranchAndBoundOptions {
  /// Precision of each radical evaluation.
  Rational eps = Rational(1, 1000000000);
  int max_depth = 60;
  /// When set, keep refining after the bound is proved until the
  /// enclosure of the supremum is at most this wide (telemetry only).
  /// Values below 4 eps are raised to 4 eps.
  std::optional<Rational> target_width;
};

/// Proves sup_{t in iv} sum(terms)(t) <= bound by best-first bisection.
/// Each node is enclosed by the intersection of the termwise enclosure and a
/// mean-value form of the whole sum, so cancellation between terms is seen.
/// A node is closed once its upper enclosure is <= bound. Single-threaded
/// and deterministic.
MaxBoundResult certify_max_bound(const std::vector<RadicalExpr>& terms, const RationalInterval& iv,
                                 const Rational& bound, const BranchAndBoundOptions& opts = {});

}  // namespace kissing
