#include "kissing/proofcheck.hpp"

#include "kissing/errors.hpp"

namespace kissing::proof {

namespace {

Rational dec(const char* s) { return Rational::from_decimal(s); }

RationalInterval sqrt_of(long n, long d, const Rational& eps) {
  return sqrt_enclose(RationalInterval::point(Rational(n, d)), eps);
}

// Rational subsets of the claim intervals, used to tell a genuine violation
// from one that only appears in the slop of the endpoint enclosures.
RationalInterval inner(const RationalInterval& lo_enc, const RationalInterval& hi_enc) {
  return {lo_enc.hi(), hi_enc.lo()};
}

SignEvidence sign_check(const Polynomial& p, const std::string& name, bool want_nonpositive,
                        const RationalInterval& dom) {
  return {name, want_nonpositive ? "nonpositive" : "nonnegative", certify_sign(p, dom)};
}

bool holds(const SignEvidence& e) {
  return e.expected == "nonpositive" ? e.verdict.nonpositive() : e.verdict.nonnegative();
}

// Sign claims: Pass when every check holds on the superset; Fail when a
// check also breaks on the subset; otherwise Inconclusive.
void settle_signs(ClaimResult& r, const std::vector<std::pair<Polynomial, std::string>>& checks,
                  const std::vector<bool>& nonpositive, const RationalInterval& outer,
                  const RationalInterval& inside) {
  bool all = true;
  bool broken = false;
  for (std::size_t i = 0; i < checks.size(); ++i) {
    auto ev = sign_check(checks[i].first, checks[i].second, nonpositive[i], outer);
    if (!holds(ev)) {
      all = false;
      if (!holds(sign_check(checks[i].first, checks[i].second, nonpositive[i], inside))) broken = true;
    }
    r.signs.push_back(std::move(ev));
  }
  r.verdict = all ? Verdict::Pass : broken ? Verdict::Fail : Verdict::Inconclusive;
}

void settle_bnb(ClaimResult& r, const std::vector<RadicalExpr>& terms, const Rational& f1, const Rational& threshold,
                const CheckOptions& opts) {
  BranchAndBoundOptions bo;
  bo.eps = opts.eps;
  bo.max_depth = opts.max_depth;
  bo.target_width = opts.target_width;
  const auto res = certify_max_bound(terms, r.domain, threshold - f1, bo);
  r.bound = threshold;
  r.bnb_nodes = res.nodes;
  r.bnb_depth = res.depth_reached;
  switch (res.status) {
    case BoundStatus::Pass:
      r.verdict = Verdict::Pass;
      r.enclosure = f1 + *res.enclosure;
      break;
    case BoundStatus::Fail:
      r.verdict = Verdict::Fail;
      r.candidates.push_back({*res.witness, f1 + radical_sum_at(terms, *res.witness, opts.eps)});
      break;
    case BoundStatus::Inconclusive: r.verdict = Verdict::Inconclusive; break;
  }
}

}  // namespace

RationalInterval radical_sum_at(const std::vector<RadicalExpr>& terms, const RationalInterval& x, const Rational& eps) {
  RationalInterval acc = RationalInterval::point(Rational(0));
  for (const auto& t : terms) acc = acc + radical_eval_enclose(t, x, eps);
  return acc;
}

GegenbauerExpansion paper_f() {
  return GegenbauerExpansion(3, {{0, dec("0.09465869")},
                                 {1, dec("0.17273741")},
                                 {2, dec("0.33128438")},
                                 {3, dec("0.17275228")},
                                 {4, dec("0.18905584")},
                                 {5, dec("0.00334265")},
                                 {9, dec("0.03616728")}});
}

RadicalExpr alpha_expr() {
  return {Polynomial({0, Rational(1, 2)}), Polynomial::constant(-1), Polynomial({Rational(3, 4), 0, Rational(-3, 4)})};
}

RadicalExpr beta_expr() {
  return {Polynomial({0, Rational(2, 3)}), Polynomial::constant(Rational(-2, 3)),
          Polynomial({Rational(3, 2), 0, Rational(-2)})};
}

RationalInterval ProofConstants::negativity_domain() const { return {cap_cos_boundary.lo(), max_cos}; }
RationalInterval ProofConstants::one_point_domain() const { return {min_cos, cap_cos_boundary.hi()}; }
RationalInterval ProofConstants::interval_I() const { return {i_lo.lo(), cap_cos_boundary.hi()}; }
RationalInterval ProofConstants::shape_domain() const { return {j_lo.lo(), cap_cos_boundary.hi()}; }
RationalInterval ProofConstants::interval_J() const { return {j_lo.lo(), j_hi.hi()}; }

ProofConstants make_constants(GegenbauerExpansion f, Rational threshold, Rational enclosure_width) {
  if (enclosure_width.sign() <= 0) throw DomainError("make_constants: enclosure width must be positive");
  ProofConstants c;
  c.f = std::move(f);
  c.threshold = std::move(threshold);
  c.enclosure_width = enclosure_width;
  // each constant is a small rational combination of square roots; split the
  // width budget so the combination stays within it
  const Rational e = enclosure_width / Rational(4);
  const auto s2 = sqrt_of(2, 1, e);
  const auto s6 = sqrt_of(6, 1, e);
  c.cap_cos_boundary = -sqrt_of(1, 2, e);
  c.i_lo = -(Rational(1, 4) * (s6 + s2));
  c.j_lo = -(Rational(1, 4) * s2) + RationalInterval::point(Rational(-1, 2));
  c.j_hi = -sqrt_of(2, 3, e);
  return c;
}

ProofConstants inject(ProofConstants c, const FaultInjection& fault) {
  if (fault.threshold) c.threshold = *fault.threshold;
  for (int k : fault.negate_coefficients) c.f.set(k, -c.f.coeff(k));
  return c;
}

std::string to_string(ClaimId id) {
  switch (id) {
    case ClaimId::A_negativity: return "A";
    case ClaimId::B_one_point: return "B";
    case ClaimId::C_monotone_I: return "C";
    case ClaimId::D_two_point: return "D";
    case ClaimId::E_shape_J: return "E";
    case ClaimId::F_three_point: return "F";
  }
  return "?";
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "Pass";
    case Verdict::Fail: return "Fail";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

std::optional<Rational> ClaimResult::slack() const {
  if (!bound || !enclosure) return std::nullopt;
  return *bound - enclosure->hi();
}

ClaimResult check_claim(ClaimId id, const ProofConstants& c, const CheckOptions& opts) {
  if (c.f.dim() != 3) throw DomainError("check_claim: the claims are stated for dimension 3");
  const Polynomial f = expansion_to_poly(c.f);
  const Polynomial df = f.derivative();
  const Rational f1 = f.eval(Rational(1));

  ClaimResult r;
  r.id = id;
  switch (id) {
    case ClaimId::A_negativity: {
      r.statement = "f(t) <= 0 for t in [-1/sqrt2, 1/2]";
      r.domain = c.negativity_domain();
      settle_signs(r, {{f, "f"}}, {true}, r.domain, RationalInterval(c.cap_cos_boundary.hi(), c.max_cos));
      const auto mx = poly_max(f, r.domain, opts.root_width);
      r.enclosure = mx.enclosure;
      r.bound = Rational(0);
      r.candidates = mx.candidates;
      break;
    }
    case ClaimId::B_one_point: {
      r.statement = "f(1) + f(t) <= threshold for t in [-1, -1/sqrt2]";
      r.domain = c.one_point_domain();
      const auto mx = poly_max(f, r.domain, opts.root_width);
      r.enclosure = f1 + mx.enclosure;
      r.bound = c.threshold;
      for (const auto& cand : mx.candidates) r.candidates.push_back({cand.location, f1 + cand.value});
      if (r.enclosure->hi() <= c.threshold) {
        r.verdict = Verdict::Pass;
      } else if (r.enclosure->lo() > c.threshold) {
        // the maximiser may sit in the slop beyond -1/sqrt2; recheck on the subset
        const auto sub = poly_max(f, RationalInterval(c.min_cos, c.cap_cos_boundary.lo()), opts.root_width);
        r.verdict = (f1 + sub.enclosure).lo() > c.threshold ? Verdict::Fail : Verdict::Inconclusive;
      } else {
        r.verdict = Verdict::Inconclusive;
      }
      break;
    }
    case ClaimId::C_monotone_I: {
      r.statement = "f'(t) <= 0 for t in [-cos(pi/12), -1/sqrt2]";
      r.domain = c.interval_I();
      settle_signs(r, {{df, "f'"}}, {true}, r.domain, inner(c.i_lo, c.cap_cos_boundary));
      break;
    }
    case ClaimId::D_two_point: {
      r.statement = "f(1) + f(t) + f(alpha(t)) <= threshold for t in [-cos(pi/12), -1/sqrt2]";
      r.domain = c.interval_I();
      settle_bnb(r, {RadicalExpr::polynomial(f), RadicalExpr::compose(f, alpha_expr())}, f1, c.threshold, opts);
      break;
    }
    case ClaimId::E_shape_J: {
      r.statement = "f'(t) <= 0 and f''(t) >= 0 for t in [-sqrt2/4 - 1/2, -1/sqrt2]";
      r.domain = c.shape_domain();
      settle_signs(r, {{df, "f'"}, {df.derivative(), "f''"}}, {true, false}, r.domain,
                   inner(c.j_lo, c.cap_cos_boundary));
      break;
    }
    case ClaimId::F_three_point: {
      r.statement = "f(1) + 2 f(t) + f(beta(t)) <= threshold for t in [-sqrt2/4 - 1/2, -sqrt(2/3)]";
      r.domain = c.interval_J();
      const auto fp = RadicalExpr::polynomial(f);
      settle_bnb(r, {fp, fp, RadicalExpr::compose(f, beta_expr())}, f1, c.threshold, opts);
      break;
    }
  }
  return r;
}

std::vector<EndpointIdentity> endpoint_identities(const ProofConstants& c) {
  const Rational eps = c.enclosure_width;
  const auto alpha = alpha_expr();
  const auto beta = beta_expr();
  std::vector<EndpointIdentity> out;
  auto add = [&](std::string name, const RadicalExpr& e, const RationalInterval& at, const RationalInterval& rhs) {
    const auto lhs = radical_eval_enclose(e, at, eps);
    out.push_back({std::move(name), lhs, rhs, lhs.intersects(rhs)});
  };
  add("alpha(-1/sqrt2) = -cos(pi/12)", alpha, c.cap_cos_boundary, c.i_lo);
  add("alpha(-cos(pi/12)) = -1/sqrt2", alpha, c.i_lo, c.cap_cos_boundary);
  add("beta(-sqrt2/4 - 1/2) = -1/sqrt2", beta, c.j_lo, c.cap_cos_boundary);
  add("beta(-sqrt(2/3)) = -sqrt(2/3)", beta, c.j_hi, c.j_hi);
  return out;
}

BoundRatio derive_bound(const Rational& threshold, const Rational& c0) {
  if (c0.sign() <= 0) throw DomainError("derive_bound: c0 must be positive, got " + c0.str());
  const Rational ratio = threshold / c0;
  return {ratio, ratio.floor()};
}

bool Certificate::all_pass() const {
  if (!admissible() || claims.size() != std::size(kAllClaims)) return false;
  for (const auto& c : claims)
    if (c.verdict != Verdict::Pass) return false;
  for (const auto& e : identities)
    if (!e.agrees) return false;
  return true;
}

bool Certificate::any_inconclusive() const {
  for (const auto& c : claims)
    if (c.verdict == Verdict::Inconclusive) return true;
  return false;
}

Certificate run_full_verification(const ProofConstants& c, const CheckOptions& opts) {
  Certificate cert;
  cert.constants = c;
  cert.negative_coefficients = c.f.negative_indices();
  for (ClaimId id : kAllClaims) cert.claims.push_back(check_claim(id, c, opts));
  cert.identities = endpoint_identities(c);
  const Rational c0 = c.f.coeff(0);
  if (c0.sign() > 0) cert.bound = derive_bound(c.threshold, c0);
  cert.assumptions = {
      "a spherical code with minimal angle pi/3 has all pairwise inner products in [-1, 1/2]",
      "Delsarte: sum_{i,j} f(<x_i, x_j>) >= c0 N^2 for admissible f",
      "pairs with inner product in [-1, -1/sqrt2] are charged by the one-, two- and three-point cases; "
      "the reduction to these cases is taken as given",
      "the left end of the three-point interval is -sqrt2/4 - 1/2 as stated",
  };
  if (cert.all_pass() && cert.bound) cert.conclusion = cert.bound->max_n.get_si();
  return cert;
}

}  // namespace kissing::proof
