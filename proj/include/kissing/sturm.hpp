#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kissing/polynomial.hpp"
#include "kissing/rational.hpp"

namespace kissing {

/// Sturm chain p, p', -rem(p, p'), ... ending at the (scaled) gcd of p and p'.
/// Each remainder is divided by the absolute value of its leading coefficient;
/// positive scaling leaves sign variations unchanged. Throws DomainError for
/// the zero polynomial.
std::vector<Polynomial> sturm_sequence(const Polynomial& p);

/// Number of sign changes in the chain evaluated at x, zeros skipped.
int sign_variations(const std::vector<Polynomial>& chain, const Rational& x);

struct RootCount {
  int interior = 0;  // distinct roots in the open interval (lo, hi)
  bool lo_is_root = false;
  bool hi_is_root = false;

  /// Distinct roots in (lo, hi].
  int half_open() const { return interior + (hi_is_root ? 1 : 0); }
  /// Distinct roots in [lo, hi].
  int closed() const { return interior + (hi_is_root ? 1 : 0) + (lo_is_root && !lo_hi_same ? 1 : 0); }
  bool lo_hi_same = false;
};

/// Exact distinct-root count. Endpoint roots are divided out of p and
/// reported separately, so the Sturm count itself always runs on
/// non-root endpoints. Throws PreconditionError for the zero polynomial.
RootCount count_roots_detailed(const Polynomial& p, const RationalInterval& iv);

/// Distinct real roots of p in (iv.lo, iv.hi].
int count_roots(const Polynomial& p, const RationalInterval& iv);

/// Disjoint, sorted isolating intervals for the distinct roots of p in the
/// closed interval iv, each of width <= width and containing exactly one
/// root. Endpoint roots come back as point intervals; every other returned
/// interval has non-root endpoints.
std::vector<RationalInterval> isolate_roots(const Polynomial& p, const RationalInterval& iv, const Rational& width);

enum class SignTag {
  NonnegativeOn,
  NonpositiveOn,
  StrictlyNegativeInterior,
  StrictlyPositiveInterior,
  Mixed,
};

std::string to_string(SignTag tag);

struct SignVerdict {
  SignTag tag = SignTag::Mixed;
  /// Isolating intervals of every root of p in the interval.
  std::vector<RationalInterval> witnesses;
  /// For Mixed: an interval whose endpoints carry opposite signs of p.
  std::optional<RationalInterval> sign_change;

  bool nonpositive() const { return tag == SignTag::NonpositiveOn || tag == SignTag::StrictlyNegativeInterior; }
  bool nonnegative() const { return tag == SignTag::NonnegativeOn || tag == SignTag::StrictlyPositiveInterior; }
  bool strict() const {
    return tag == SignTag::StrictlyNegativeInterior || tag == SignTag::StrictlyPositiveInterior;
  }
};

/// Decides the sign of p on iv exactly: roots are isolated by Sturm
/// counting and p is sampled once in every root-free gap. Strict tags mean
/// p has no root in the open interior.
SignVerdict certify_sign(const Polynomial& p, const RationalInterval& iv);

/// Mean-value enclosure of p over iv intersected with the Horner extension.
/// Converges quadratically as iv shrinks.
RationalInterval poly_range(const Polynomial& p, const RationalInterval& iv);

struct PolyMaxCandidate {
  RationalInterval location;  // point or isolating interval of a critical point
  RationalInterval value;     // enclosure of p there
};

struct PolyMax {
  RationalInterval enclosure;  // certified enclosure of max_{iv} p
  std::vector<PolyMaxCandidate> candidates;
  std::size_t argmax = 0;  // candidate whose value realises the enclosure's lower end
};

/// Certified maximum of a polynomial on iv: endpoints plus critical points
/// (roots of p' isolated to `width`), each enclosed by poly_range.
PolyMax poly_max(const Polynomial& p, const RationalInterval& iv, const Rational& width);

}  // namespace kissing
