#include "kissing/sturm.hpp"

#include <functional>

#include "kissing/errors.hpp"

namespace kissing {

namespace {

Polynomial linear_factor(const Rational& r) { return Polynomial({-r, Rational(1)}); }

// Removes every factor (t - r) from p.
Polynomial deflate(Polynomial p, const Rational& r) {
  while (!p.is_zero() && p.degree() > 0 && p.eval(r).is_zero()) p = p.divmod(linear_factor(r)).first;
  return p;
}

// A point strictly inside (a, b) where g does not vanish.
Rational nonroot_split(const Polynomial& g, const Rational& a, const Rational& b) {
  const Rational w = b - a;
  Rational m = a + w / Rational(2);
  for (long j = 2; g.eval(m).is_zero(); ++j) m = a + w * (Rational(1, 2) + Rational::pow2(-j));
  return m;
}

}  // namespace

std::vector<Polynomial> sturm_sequence(const Polynomial& p) {
  if (p.is_zero()) throw DomainError("sturm_sequence: zero polynomial");
  std::vector<Polynomial> chain{p};
  Polynomial d = p.derivative();
  if (d.is_zero()) return chain;
  chain.push_back(d.abs_normalized());
  while (true) {
    const Polynomial& a = chain[chain.size() - 2];
    const Polynomial& b = chain.back();
    Polynomial r = a.divmod(b).second;
    if (r.is_zero()) break;
    chain.push_back((-r).abs_normalized());
  }
  return chain;
}

int sign_variations(const std::vector<Polynomial>& chain, const Rational& x) {
  int changes = 0;
  int last = 0;
  for (const auto& s : chain) {
    const int sg = s.eval(x).sign();
    if (sg == 0) continue;
    if (last != 0 && sg != last) ++changes;
    last = sg;
  }
  return changes;
}

RootCount count_roots_detailed(const Polynomial& p, const RationalInterval& iv) {
  if (p.is_zero()) throw PreconditionError("count_roots: zero polynomial has no isolated roots");
  RootCount rc;
  rc.lo_is_root = p.eval(iv.lo()).is_zero();
  rc.hi_is_root = p.eval(iv.hi()).is_zero();
  rc.lo_hi_same = iv.is_point();
  if (iv.is_point()) return rc;
  Polynomial q = p;
  if (rc.lo_is_root) q = deflate(q, iv.lo());
  if (rc.hi_is_root) q = deflate(q, iv.hi());
  if (q.degree() <= 0) return rc;
  const auto chain = sturm_sequence(q);
  rc.interior = sign_variations(chain, iv.lo()) - sign_variations(chain, iv.hi());
  return rc;
}

int count_roots(const Polynomial& p, const RationalInterval& iv) { return count_roots_detailed(p, iv).half_open(); }

std::vector<RationalInterval> isolate_roots(const Polynomial& p, const RationalInterval& iv, const Rational& width) {
  if (p.is_zero()) throw PreconditionError("isolate_roots: zero polynomial has no isolated roots");
  if (width.sign() <= 0) throw DomainError("isolate_roots: width must be positive");
  std::vector<RationalInterval> out;
  if (iv.is_point()) {
    if (p.eval(iv.lo()).is_zero()) out.push_back(iv);
    return out;
  }

  Polynomial g = squarefree_part(p);
  Rational lo = iv.lo();
  Rational hi = iv.hi();
  const bool lo_root = g.eval(lo).is_zero();
  const bool hi_root = g.eval(hi).is_zero();
  if (lo_root) g = deflate(g, lo);
  if (hi_root) g = deflate(g, hi);
  if (lo_root) out.push_back(RationalInterval::point(lo));

  if (g.degree() >= 1) {
    const auto chain = sturm_sequence(g);
    // Move endpoints that are roots of p inward past a root-free gap so every
    // emitted interval has non-root endpoints and stays disjoint from the
    // point intervals.
    if (lo_root) {
      const int v_lo = sign_variations(chain, lo);
      Rational step = (hi - lo) / Rational(2);
      while (true) {
        const Rational cand = lo + step;
        if (!g.eval(cand).is_zero() && v_lo - sign_variations(chain, cand) == 0) {
          lo = cand;
          break;
        }
        step /= Rational(2);
      }
    }
    if (hi_root) {
      const int v_hi = sign_variations(chain, hi);
      Rational step = (hi - lo) / Rational(2);
      while (true) {
        const Rational cand = hi - step;
        if (!g.eval(cand).is_zero() && sign_variations(chain, cand) - v_hi == 0) {
          hi = cand;
          break;
        }
        step /= Rational(2);
      }
    }

    std::function<void(const Rational&, const Rational&, int, int)> recurse =
        [&](const Rational& a, const Rational& b, int va, int vb) {
          const int n = va - vb;
          if (n <= 0) return;
          if (n == 1 && b - a <= width) {
            out.emplace_back(a, b);
            return;
          }
          const Rational m = nonroot_split(g, a, b);
          const int vm = sign_variations(chain, m);
          recurse(a, m, va, vm);
          recurse(m, b, vm, vb);
        };
    recurse(lo, hi, sign_variations(chain, lo), sign_variations(chain, hi));
  }

  if (hi_root) out.push_back(RationalInterval::point(iv.hi()));
  return out;
}

std::string to_string(SignTag tag) {
  switch (tag) {
    case SignTag::NonnegativeOn: return "NonnegativeOn";
    case SignTag::NonpositiveOn: return "NonpositiveOn";
    case SignTag::StrictlyNegativeInterior: return "StrictlyNegativeInterior";
    case SignTag::StrictlyPositiveInterior: return "StrictlyPositiveInterior";
    case SignTag::Mixed: return "Mixed";
  }
  return "Mixed";
}

SignVerdict certify_sign(const Polynomial& p, const RationalInterval& iv) {
  SignVerdict v;
  if (p.is_zero()) {
    v.tag = SignTag::NonpositiveOn;
    return v;
  }
  if (iv.is_point()) {
    const int s = p.eval(iv.lo()).sign();
    if (s == 0) v.witnesses.push_back(iv);
    v.tag = s < 0 ? SignTag::StrictlyNegativeInterior
                  : (s > 0 ? SignTag::StrictlyPositiveInterior : SignTag::NonpositiveOn);
    return v;
  }

  v.witnesses = isolate_roots(p, iv, iv.width());

  // One sample per root-free gap; the sign of p is constant and nonzero there.
  std::vector<std::pair<Rational, int>> samples;
  auto sample_gap = [&](const Rational& l, const Rational& r) {
    if (l < r) {
      const Rational m = (l + r) / Rational(2);
      samples.emplace_back(m, p.eval(m).sign());
    } else if (const int s = p.eval(l).sign(); s != 0) {
      samples.emplace_back(l, s);
    }
  };
  Rational left = iv.lo();
  bool interior_root = false;
  for (const auto& w : v.witnesses) {
    sample_gap(left, w.lo());
    left = w.hi();
    if (!(w.is_point() && (w.lo() == iv.lo() || w.lo() == iv.hi()))) interior_root = true;
  }
  sample_gap(left, iv.hi());

  bool any_pos = false;
  bool any_neg = false;
  for (const auto& [x, s] : samples) {
    any_pos |= s > 0;
    any_neg |= s < 0;
  }
  if (any_pos && any_neg) {
    v.tag = SignTag::Mixed;
    for (std::size_t i = 1; i < samples.size(); ++i) {
      if (samples[i].second != samples[i - 1].second) {
        v.sign_change = RationalInterval(samples[i - 1].first, samples[i].first);
        break;
      }
    }
    return v;
  }
  if (any_neg) {
    v.tag = interior_root ? SignTag::NonpositiveOn : SignTag::StrictlyNegativeInterior;
  } else {
    v.tag = interior_root ? SignTag::NonnegativeOn : SignTag::StrictlyPositiveInterior;
  }
  return v;
}

RationalInterval poly_range(const Polynomial& p, const RationalInterval& iv) {
  if (iv.is_point() || p.degree() <= 0) return RationalInterval::point(p.eval(iv.lo()));
  const RationalInterval horner = p.eval(iv);
  const Rational m = iv.midpoint();
  const RationalInterval slope = p.derivative().eval(iv);
  const RationalInterval mv = p.eval(m) + slope * (iv - RationalInterval::point(m));
  return {max(horner.lo(), mv.lo()), min(horner.hi(), mv.hi())};
}

PolyMax poly_max(const Polynomial& p, const RationalInterval& iv, const Rational& width) {
  PolyMax out;
  out.candidates.push_back({RationalInterval::point(iv.lo()), RationalInterval::point(p.eval(iv.lo()))});
  if (!iv.is_point()) {
    const Polynomial d = p.derivative();
    if (!d.is_zero()) {
      for (const auto& r : isolate_roots(d, iv, width)) {
        if (r.is_point() && (r.lo() == iv.lo() || r.lo() == iv.hi())) continue;
        out.candidates.push_back({r, poly_range(p, r)});
      }
    }
    out.candidates.push_back({RationalInterval::point(iv.hi()), RationalInterval::point(p.eval(iv.hi()))});
  }
  Rational lo = out.candidates.front().value.lo();
  Rational hi = out.candidates.front().value.hi();
  for (std::size_t i = 0; i < out.candidates.size(); ++i) {
    const auto& c = out.candidates[i];
    if (c.value.lo() > lo) {
      lo = c.value.lo();
      out.argmax = i;
    }
    if (c.value.hi() > hi) hi = c.value.hi();
  }
  out.enclosure = RationalInterval(lo, hi);
  return out;
}

}  // namespace kissing
