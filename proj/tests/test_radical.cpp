#include <cmath>
#include <random>

#include "doctest.h"
#include "kissing/errors.hpp"
#include "kissing/gegenbauer.hpp"
#include "kissing/radical.hpp"
#include "kissing/sturm.hpp"

using kissing::BoundStatus;
using kissing::Polynomial;
using kissing::RadicalExpr;
using kissing::Rational;
using kissing::RationalInterval;

namespace {

Polynomial paper_f_poly() {
  kissing::GegenbauerExpansion e(3, {{0, Rational::from_decimal("0.09465869")},
                                     {1, Rational::from_decimal("0.17273741")},
                                     {2, Rational::from_decimal("0.33128438")},
                                     {3, Rational::from_decimal("0.17275228")},
                                     {4, Rational::from_decimal("0.18905584")},
                                     {5, Rational::from_decimal("0.00334265")},
                                     {9, Rational::from_decimal("0.03616728")}});
  return kissing::expansion_to_poly(e);
}

// alpha(t) = t/2 - sqrt(3(1 - t^2)/4)
RadicalExpr alpha() {
  return {Polynomial({0, Rational(1, 2)}), Polynomial::constant(-1),
          Polynomial({Rational(3, 4), 0, Rational(-3, 4)})};
}

const Rational kEps = Rational::pow2(-70);

}  // namespace

TEST_CASE("radical_eval_enclose basics") {
  const RadicalExpr circle{Polynomial(), Polynomial::constant(1), Polynomial({1, 0, -1})};
  CHECK(radical_eval_enclose(circle, RationalInterval::point(0), kEps) == RationalInterval(1, 1));

  const Polynomial f = paper_f_poly();
  const RadicalExpr fa = RadicalExpr::compose(f, alpha());
  // alpha(-1) = -1/2 exactly (radicand vanishes)
  const auto at_m1 = radical_eval_enclose(fa, RationalInterval::point(-1), kEps);
  CHECK(at_m1.contains(f.eval(Rational(-1, 2))));
  CHECK(at_m1.width() <= kEps);

  CHECK_THROWS_AS(radical_eval_enclose(circle, RationalInterval(1, 2), kEps), kissing::DomainError);
}

TEST_CASE("compose agrees with float evaluation") {
  const Polynomial f = paper_f_poly();
  const RadicalExpr fa = RadicalExpr::compose(f, alpha());
  CHECK_FALSE(fa.q.is_zero());
  for (double t : {-0.95, -0.9, -0.8, -0.75, 0.0, 0.5}) {
    const double a = t / 2 - std::sqrt(3.0) / 2 * std::sqrt(1 - t * t);
    CHECK(fa.eval_double(t) == doctest::Approx(f.eval_double(a)).epsilon(1e-12));
  }
}

TEST_CASE("alpha(-1/sqrt2) = -cos(pi/12)") {
  const Polynomial f = paper_f_poly();
  const RadicalExpr fa = RadicalExpr::compose(f, alpha());
  const auto inv_sqrt2 = kissing::sqrt_enclose(RationalInterval::point(Rational(1, 2)), Rational::pow2(-70));
  const auto at = radical_eval_enclose(fa, -inv_sqrt2, kEps);
  // oracle: f(-cos(pi/12)) with cos(pi/12) = (sqrt 6 + sqrt 2)/4, enclosed independently
  const auto s6 = kissing::sqrt_enclose(RationalInterval::point(6), Rational::pow2(-80));
  const auto s2 = kissing::sqrt_enclose(RationalInterval::point(2), Rational::pow2(-80));
  const auto cos15 = Rational(1, 4) * (s6 + s2);
  const auto expected = kissing::poly_range(f, -cos15);
  CHECK(at.intersects(expected));
  CHECK(at.width() < Rational::pow2(-50));
}

TEST_CASE("radical enclosure containment at perfect-square radicands") {
  // r(t) = 1 - t^2 is a rational square at t = 2ab/(a^2+b^2)-type points; use 3/5, 4/5, 5/13, 12/13
  const RadicalExpr e{Polynomial({1, 2, 0, -1}), Polynomial({0, 3, 1}), Polynomial({1, 0, -1})};
  for (auto [t, s] : {std::pair{Rational(3, 5), Rational(4, 5)}, {Rational(-4, 5), Rational(3, 5)},
                      {Rational(5, 13), Rational(12, 13)}, {Rational(-12, 13), Rational(5, 13)}}) {
    const Rational exact = e.p.eval(t) + e.q.eval(t) * s;
    CHECK(radical_eval_enclose(e, RationalInterval::point(t), kEps).contains(exact));
    CHECK(radical_eval_enclose(e, RationalInterval(t - Rational(1, 100), t + Rational(1, 100)), kEps).contains(exact));
  }
}

TEST_CASE("certify_max_bound examples") {
  const std::vector<RadicalExpr> one{RadicalExpr::polynomial(Polynomial::constant(1))};
  const auto pass = kissing::certify_max_bound(one, {0, 1}, Rational(2));
  CHECK(pass.status == BoundStatus::Pass);
  REQUIRE(pass.enclosure.has_value());
  CHECK(*pass.enclosure == RationalInterval(1, 1));

  const std::vector<RadicalExpr> ident{RadicalExpr::polynomial(Polynomial::identity())};
  const auto fail = kissing::certify_max_bound(ident, {0, 1}, Rational(1, 2));
  CHECK(fail.status == BoundStatus::Fail);
  REQUIRE(fail.witness.has_value());
  CHECK(fail.witness->lo() > Rational(1, 2));

  // refuted by the endpoint probe
  CHECK(kissing::certify_max_bound(ident, {0, 1}, Rational(1) - Rational::pow2(-40)).status == BoundStatus::Fail);

  // sup is 0 at t = 1/3, never a probe point; a shallow tree can neither prove nor refute -1e-6
  const Polynomial bump = Polynomial::from_roots({Rational(1, 3), Rational(1, 3)}) * Rational(-1);
  kissing::BranchAndBoundOptions shallow;
  shallow.max_depth = 2;
  const auto r = kissing::certify_max_bound({RadicalExpr::polynomial(bump)}, {0, 1}, Rational(-1, 1000000), shallow);
  CHECK(r.status == BoundStatus::Inconclusive);
}

TEST_CASE("two-point bound with the published f") {
  const Polynomial f = paper_f_poly();
  const RadicalExpr fa = RadicalExpr::compose(f, alpha());
  const auto s6 = kissing::sqrt_enclose(RationalInterval::point(6), Rational::pow2(-70));
  const auto s2 = kissing::sqrt_enclose(RationalInterval::point(2), Rational::pow2(-70));
  const RationalInterval I(-(Rational(1, 4) * (s6 + s2)).hi(), -(Rational(1, 2) * s2).lo());
  const Rational bound = Rational(123, 100) - f.eval(Rational(1));
  kissing::BranchAndBoundOptions opts;
  opts.target_width = Rational(1, 1000000000);
  opts.eps = Rational::pow2(-40);  // the target is clamped to >= 4 eps
  const auto res = kissing::certify_max_bound({RadicalExpr::polynomial(f), fa}, I, bound, opts);
  REQUIRE(res.status == BoundStatus::Pass);
  // float-grid oracle for the max of f(t) + f(alpha(t)) on I
  double worst = -1e300;
  const double lo = -std::cos(M_PI / 12);
  const double hi = -1 / std::sqrt(2.0);
  for (int i = 0; i <= 200000; ++i) {
    const double t = lo + (hi - lo) * i / 200000.0;
    const double a = t / 2 - std::sqrt(3.0) / 2 * std::sqrt(1 - t * t);
    worst = std::max(worst, f.eval_double(t) + f.eval_double(a));
  }
  CHECK(worst < 0.23000147);
  CHECK(res.enclosure->hi().to_double() >= worst - 1e-12);
  CHECK(res.enclosure->lo().to_double() <= worst + 1e-9);
  CHECK(res.enclosure->width() <= Rational(1, 1000000000));

  // determinism
  const auto again = kissing::certify_max_bound({RadicalExpr::polynomial(f), fa}, I, bound, opts);
  CHECK(again.enclosure == res.enclosure);
  CHECK(again.nodes == res.nodes);
}
