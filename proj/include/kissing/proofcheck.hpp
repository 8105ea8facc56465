#pragma once

#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "kissing/gegenbauer.hpp"
#include "kissing/radical.hpp"
#include "kissing/rational.hpp"
#include "kissing/sturm.hpp"

namespace kissing::proof {

/// The published certificate polynomial for dimension three:
/// c_0..c_5 and c_9 as exact decimals, every other coefficient zero.
GegenbauerExpansion paper_f();

/// alpha(t) = t/2 - (sqrt 3 / 2) sqrt(1 - t^2), stored with the radicand
/// 3(1 - t^2)/4 so that the radical's coefficient stays rational.
RadicalExpr alpha_expr();
/// beta(t) = 2t/3 - (2/3) sqrt(3/2 - 2t^2).
RadicalExpr beta_expr();

struct ProofConstants {
  Rational threshold{123, 100};
  GegenbauerExpansion f = paper_f();
  /// Inner products of a spherical code with minimal angle pi/3 lie in [-1, 1/2].
  Rational min_cos{-1};
  Rational max_cos{1, 2};
  /// Width bound for the enclosures of the irrational interval endpoints.
  Rational enclosure_width{mpz_class(1), mpz_class("100000000000000000000")};
  RationalInterval cap_cos_boundary;  // -1/sqrt 2
  RationalInterval i_lo;              // -cos(pi/12) = -(sqrt 6 + sqrt 2)/4
  RationalInterval j_lo;              // -sqrt 2/4 - 1/2
  RationalInterval j_hi;              // -sqrt(2/3)

  /// Rational supersets of the intervals the claims quantify over.
  RationalInterval negativity_domain() const;  // [-1/sqrt2, 1/2]
  RationalInterval one_point_domain() const;   // [-1, -1/sqrt2]
  RationalInterval interval_I() const;         // [-cos(pi/12), -1/sqrt2]
  RationalInterval shape_domain() const;       // [-sqrt2/4 - 1/2, -1/sqrt2]
  RationalInterval interval_J() const;         // [-sqrt2/4 - 1/2, -sqrt(2/3)]
};

/// Builds the constants for f and threshold, computing every irrational
/// endpoint with sqrt_enclose at `enclosure_width`.
ProofConstants make_constants(GegenbauerExpansion f = paper_f(), Rational threshold = Rational(123, 100),
                              Rational enclosure_width = Rational(mpz_class(1), mpz_class("100000000000000000000")));

/// Deliberate corruption of the inputs, used to demonstrate that the
/// verifier can fail.
struct FaultInjection {
  std::optional<Rational> threshold;
  std::vector<int> negate_coefficients;
};
ProofConstants inject(ProofConstants c, const FaultInjection& fault);

enum class ClaimId { A_negativity, B_one_point, C_monotone_I, D_two_point, E_shape_J, F_three_point };
inline constexpr ClaimId kAllClaims[] = {ClaimId::A_negativity, ClaimId::B_one_point, ClaimId::C_monotone_I,
                                         ClaimId::D_two_point,  ClaimId::E_shape_J,   ClaimId::F_three_point};
std::string to_string(ClaimId id);

enum class Verdict { Pass, Fail, Inconclusive };
std::string to_string(Verdict v);

struct SignEvidence {
  std::string function;  // "f", "f'", "f''"
  std::string expected;  // "nonpositive" / "nonnegative"
  SignVerdict verdict;
};

struct ClaimResult {
  ClaimId id{};
  Verdict verdict = Verdict::Inconclusive;
  std::string statement;
  RationalInterval domain;
  /// Certified enclosure of the maximised left-hand side (including f(1)
  /// where the inequality has it).
  std::optional<RationalInterval> enclosure;
  std::optional<Rational> bound;
  std::vector<SignEvidence> signs;
  std::vector<PolyMaxCandidate> candidates;  // claim B and claim A's max
  std::optional<std::size_t> bnb_nodes;
  std::optional<int> bnb_depth;

  /// bound - enclosure.hi when both are known.
  std::optional<Rational> slack() const;
};

struct CheckOptions {
  /// Radical evaluation precision in the branch and bound.
  Rational eps = Rational::pow2(-50);
  int max_depth = 60;
  /// Telemetry tightness of reported maxima.
  Rational target_width = Rational::pow2(-40);
  /// Isolation width for critical points.
  Rational root_width = Rational::pow2(-64);
};

/// Enclosure of the summed terms at x.
RationalInterval radical_sum_at(const std::vector<RadicalExpr>& terms, const RationalInterval& x, const Rational& eps);

ClaimResult check_claim(ClaimId id, const ProofConstants& c, const CheckOptions& opts = {});

struct EndpointIdentity {
  std::string name;
  RationalInterval lhs;
  RationalInterval rhs;
  bool agrees = false;  // enclosures intersect
};

/// alpha(-1/sqrt2) = -cos(pi/12), alpha(-cos(pi/12)) = -1/sqrt2,
/// beta(-sqrt2/4 - 1/2) = -1/sqrt2, beta(-sqrt(2/3)) = -sqrt(2/3).
std::vector<EndpointIdentity> endpoint_identities(const ProofConstants& c);

struct BoundRatio {
  Rational ratio;
  mpz_class max_n;
};

/// threshold / c0 and its floor. DomainError when c0 <= 0.
BoundRatio derive_bound(const Rational& threshold, const Rational& c0);

struct Certificate {
  ProofConstants constants;
  std::vector<int> negative_coefficients;
  std::vector<ClaimResult> claims;
  std::vector<EndpointIdentity> identities;
  std::optional<BoundRatio> bound;
  std::optional<long> conclusion;
  std::vector<std::string> assumptions;

  bool admissible() const { return negative_coefficients.empty(); }
  bool all_pass() const;
  bool any_inconclusive() const;
};

Certificate run_full_verification(const ProofConstants& c = make_constants(), const CheckOptions& opts = {});

/// Stable-key-order JSON rendering; byte-identical for identical inputs.
std::string certificate_json(const Certificate& cert);

}  // namespace kissing::proof
