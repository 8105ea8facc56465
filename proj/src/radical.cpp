#include "kissing/radical.hpp"

#include <cmath>
#include <queue>

#include "kissing/errors.hpp"
#include "kissing/sturm.hpp"

namespace kissing {

namespace {

// Number of bits b with 2^-b <= x.
unsigned bits_for(const Rational& x) {
  unsigned b = 0;
  while (Rational::pow2(-static_cast<long>(b)) > x) ++b;
  return b;
}

struct Node {
  RationalInterval iv;
  RationalInterval value;
  int depth = 0;
};

struct ByUpper {
  bool operator()(const Node& a, const Node& b) const {
    if (a.value.hi() != b.value.hi()) return a.value.hi() < b.value.hi();
    return a.iv.lo() > b.iv.lo();
  }
};

}  // namespace

RadicalExpr RadicalExpr::compose(const Polynomial& f, const RadicalExpr& inner) {
  // Horner in Q[t][s]/(s^2 - r)
  Polynomial accp;
  Polynomial accq;
  const auto& coeffs = f.coeffs();
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
    Polynomial np = accp * inner.p + accq * inner.q * inner.r;
    Polynomial nq = accp * inner.q + accq * inner.p;
    accp = np + Polynomial::constant(*it);
    accq = std::move(nq);
  }
  return {accp, accq, accq.is_zero() ? Polynomial() : inner.r};
}

double RadicalExpr::eval_double(double t) const {
  double v = p.eval_double(t);
  if (has_radical()) v += q.eval_double(t) * std::sqrt(std::max(0.0, r.eval_double(t)));
  return v;
}

RationalInterval radical_eval_enclose(const RadicalExpr& e, const RationalInterval& tv, const Rational& eps) {
  if (eps.sign() <= 0) throw DomainError("radical_eval_enclose: eps must be positive");
  const RationalInterval pv = poly_range(e.p, tv);
  if (!e.has_radical()) return pv;

  RationalInterval rv = poly_range(e.r, tv);
  if (rv.lo().sign() < 0) {
    if (!certify_sign(e.r, tv).nonnegative()) {
      throw DomainError("radical_eval_enclose: radicand may be negative on " + tv.str());
    }
    rv = RationalInterval(Rational(0), max(rv.hi(), Rational(0)));
  }
  const RationalInterval qv = poly_range(e.q, tv);
  const Rational sqrt_eps = eps / (Rational(4) * (qv.magnitude() + Rational(1)));
  const RationalInterval sv = sqrt_enclose(rv, sqrt_eps);
  const RationalInterval out = pv + qv * sv;
  return out.rounded_outward(bits_for(eps / Rational(8)));
}

std::optional<RationalInterval> radical_derivative_enclose(const RadicalExpr& e, const RationalInterval& tv,
                                                           const Rational& eps) {
  const RationalInterval dp = e.p.derivative().eval(tv);
  if (!e.has_radical()) return dp;
  const RationalInterval rv = poly_range(e.r, tv);
  if (rv.lo().sign() <= 0) return std::nullopt;
  const RationalInterval sv = sqrt_enclose(rv, eps);
  if (sv.lo().sign() <= 0) return std::nullopt;
  const RationalInterval inv_2s(Rational(1) / (Rational(2) * sv.hi()), Rational(1) / (Rational(2) * sv.lo()));
  const RationalInterval out = dp + e.q.derivative().eval(tv) * sv + e.q.eval(tv) * e.r.derivative().eval(tv) * inv_2s;
  return out.rounded_outward(bits_for(eps / Rational(8)));
}

std::string to_string(BoundStatus s) {
  switch (s) {
    case BoundStatus::Pass: return "Pass";
    case BoundStatus::Fail: return "Fail";
    case BoundStatus::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

MaxBoundResult certify_max_bound(const std::vector<RadicalExpr>& terms, const RationalInterval& iv,
                                 const Rational& bound, const BranchAndBoundOptions& opts) {
  MaxBoundResult res;
  const Rational term_eps = opts.eps / Rational(4 * static_cast<long>(std::max<std::size_t>(terms.size(), 1)));

  auto enclose = [&](const RationalInterval& x) {
    RationalInterval acc = RationalInterval::point(Rational(0));
    for (const auto& t : terms) acc = acc + radical_eval_enclose(t, x, term_eps);
    if (x.is_point()) return acc;
    // mean-value form of the sum around the midpoint
    const Rational m = x.midpoint();
    RationalInterval at_mid = RationalInterval::point(Rational(0));
    RationalInterval slope = RationalInterval::point(Rational(0));
    for (const auto& t : terms) {
      const auto d = radical_derivative_enclose(t, x, term_eps);
      if (!d) return acc;
      slope = slope + *d;
      at_mid = at_mid + radical_eval_enclose(t, RationalInterval::point(m), term_eps);
    }
    const RationalInterval mv = at_mid + slope * (x - RationalInterval::point(m));
    return RationalInterval(max(acc.lo(), mv.lo()), min(acc.hi(), mv.hi()));
  };

  // the enclosures cannot resolve the supremum below a few eps
  std::optional<Rational> target;
  if (opts.target_width) target = max(*opts.target_width, Rational(4) * opts.eps);

  std::optional<Rational> best_lower;
  auto probe = [&](const Rational& x) -> bool {
    const RationalInterval v = enclose(RationalInterval::point(x));
    if (!best_lower || v.lo() > *best_lower) best_lower = v.lo();
    if (v.lo() > bound) {
      res.status = BoundStatus::Fail;
      res.witness = RationalInterval::point(x);
      return true;
    }
    return false;
  };

  if (probe(iv.lo()) || probe(iv.hi())) return res;

  std::priority_queue<Node, std::vector<Node>, ByUpper> open;
  open.push({iv, enclose(iv), 0});
  res.nodes = 1;
  std::optional<Rational> accepted_upper;

  while (!open.empty()) {
    const Node top = open.top();
    const Rational& upper = top.value.hi();
    if (upper <= bound && (!target || upper <= *best_lower + *target)) break;
    open.pop();
    if (top.depth >= opts.max_depth || top.iv.is_point()) {
      if (upper <= bound) {
        if (!accepted_upper || upper > *accepted_upper) accepted_upper = upper;
        continue;
      }
      res.status = BoundStatus::Inconclusive;
      res.depth_reached = top.depth;
      return res;
    }
    const Rational m = top.iv.midpoint();
    if (probe(m)) {
      res.depth_reached = top.depth + 1;
      return res;
    }
    for (const RationalInterval& half : {RationalInterval(top.iv.lo(), m), RationalInterval(m, top.iv.hi())}) {
      open.push({half, enclose(half), top.depth + 1});
      ++res.nodes;
    }
    res.depth_reached = std::max(res.depth_reached, top.depth + 1);
  }

  Rational upper = open.empty() ? *best_lower : open.top().value.hi();
  if (accepted_upper && *accepted_upper > upper) upper = *accepted_upper;
  if (upper < *best_lower) upper = *best_lower;
  res.status = BoundStatus::Pass;
  res.enclosure = RationalInterval(*best_lower, upper);
  return res;
}

}  // namespace kissing
