#include <cmath>
#include <optional>

#include "doctest.h"
#include "kissing/errors.hpp"
#include "kissing/lpbound.hpp"
#include "kissing/sturm.hpp"
#include "support/float_lp.hpp"

using namespace kissing;

namespace {

// Independent replay of a classical certificate: nonnegative coefficients,
// c_0 > 0, f <= 0 on [-1, s] by exact Sturm sign check, bound f(1)/c_0.
std::optional<Rational> replay_classical(const GegenbauerExpansion& f, const Rational& s) {
  if (!f.admissible() || f.coeff(0).sign() <= 0) return std::nullopt;
  const Polynomial p = expansion_to_poly(f);
  if (!certify_sign(p, RationalInterval(Rational(-1), s)).nonpositive()) return std::nullopt;
  Rational sum;
  for (const auto& [k, c] : f.coeffs()) sum += c;  // G_k(1) = 1
  return sum / f.coeff(0);
}

}  // namespace

TEST_CASE("build_classical_lp shape") {
  const auto p = build_classical_lp(3, Rational(1, 2), 9, 200);
  CHECK(p.num_vars == 9);
  CHECK(p.constraints.size() == 200);
  CHECK(p.var_lower_bounds == std::vector<Rational>(9, Rational(0)));
  CHECK(p.objective == std::vector<Rational>(9, Rational(-1)));
  CHECK_NOTHROW(build_classical_lp(8, Rational(1, 2), 6, 400));
  CHECK_THROWS_AS(build_classical_lp(2, Rational(1, 2), 3, 10), DomainError);
  CHECK_THROWS_AS(build_classical_lp(3, Rational(1), 3, 10), DomainError);
  CHECK_THROWS_AS(build_classical_lp(3, Rational(1, 2), 0, 10), DomainError);
  CHECK_THROWS_AS(build_classical_lp(3, Rational(1, 2), 3, 1), DomainError);
}

TEST_CASE("degree-one toy problems") {
  // f = 1 + c t with c >= 0 is positive at t = 1/2: no certificate exists
  ClassicalLP half(3, Rational(1, 2), 1, 2);
  const auto r = solve_and_refine(half, 5);
  CHECK(r.lp_status == LPStatus::Infeasible);
  CHECK_FALSE(r.certified);
  CHECK_THROWS_AS(kissing_bound(3, 1), RefinementError);

  // on [-1, -1/2]: 1 - c <= 0 and 1 - c/2 <= 0 give c = 2, bound 3
  DiscretizationOptions exact;
  exact.margin = Rational(0);
  ClassicalLP obtuse(3, Rational(-1, 2), 1, 2, exact);
  const auto o = solve_and_refine(obtuse, 5);
  REQUIRE(o.certified);
  CHECK(*o.bound == Rational(3));
  CHECK(o.f->coeff(1) == Rational(2));
}

TEST_CASE("classical bound in dimension 3") {
  ClassicalLP model(3, Rational(1, 2), 9, 512);
  const auto r = solve_and_refine(model, 30);
  REQUIRE(r.certified);
  CHECK(*r.bound > Rational(13));
  CHECK(*r.bound < Rational(132, 10));
  CHECK(replay_classical(*r.f, Rational(1, 2)) == r.bound);
  CHECK(r.lp.objective_value == objective_at(model.problem(), r.lp.x));
  CHECK(exactly_feasible(model.problem(), r.lp.x));
  const double fl = oracle::classical_lp_float(3, 0.5, 9, 5120);
  CHECK(std::abs(r.bound->to_double() - fl) < 1e-3);

  // already certified: no further rounds
  const auto again = verify_and_refine(model, r.lp, 5);
  CHECK(again.certified);
  CHECK(again.rounds == 0);
}

TEST_CASE("coarse grid needs refinement") {
  ClassicalLP model(3, Rational(1, 2), 9, 10);
  const auto r = solve_and_refine(model, 40);
  REQUIRE(r.certified);
  CHECK(r.rounds >= 1);
  CHECK(r.cuts_added >= 1);
  CHECK(replay_classical(*r.f, Rational(1, 2)) == r.bound);
}

TEST_CASE("dimension 8 is tight") {
  const Rational b = kissing_bound(8, 6);
  CHECK(b >= Rational(240));
  CHECK(b <= Rational(240) + Rational(1, 1000000));
}

TEST_CASE("bound is non-increasing in degree") {
  std::optional<Rational> prev;
  for (int deg = 1; deg <= 10; ++deg) {
    ClassicalLP model(3, Rational(1, 2), deg, 256);
    const auto r = solve_and_refine(model, 40);
    if (!r.certified) {
      CHECK(r.lp_status == LPStatus::Infeasible);
      CHECK_FALSE(prev.has_value());
      continue;
    }
    CHECK(replay_classical(*r.f, Rational(1, 2)) == r.bound);
    // different cut sets perturb the certified value by O(margin)
    if (prev) CHECK(*r.bound <= *prev + Rational(1, 1000000));
    prev = r.bound;
  }
  CHECK(prev.has_value());
}

TEST_CASE("chebyshev_nodes") {
  const auto v = chebyshev_nodes(Rational(-1), Rational(1, 2), 64);
  CHECK(v.front() == Rational(-1));
  CHECK(v.back() == Rational(1, 2));
  CHECK(v.size() == 64);
  for (std::size_t i = 1; i < v.size(); ++i) CHECK(v[i - 1] < v[i]);
  // clustered at the ends
  CHECK(v[1] - v[0] < v[32] - v[31]);
  CHECK_THROWS_AS(chebyshev_nodes(Rational(1), Rational(0), 4), DomainError);
}

TEST_CASE("extended problem toy supports") {
  CHECK_THROWS_AS(build_extended_lp({}, Rational(123, 100)), DomainError);
  CHECK_THROWS_AS(build_extended_lp({1, 2}, Rational(123, 100)), DomainError);

  // f = c_0 must be <= -margin on [-1/sqrt2, 1/2]: infeasible
  ExtendedGrids small;
  small.per_family = 16;
  CHECK(solve_lp(build_extended_lp({0}, Rational(123, 100), small)).status == LPStatus::Infeasible);

  // two variables: compare with vertex enumeration of the same rows
  for (const Rational& thr : {Rational(123, 100), Rational(0)}) {
    const auto p = build_extended_lp({0, 1}, thr, small);
    const auto s = solve_lp(p);
    std::optional<Rational> best;
    std::vector<std::pair<std::vector<Rational>, Rational>> lines;
    for (const auto& c : p.constraints) lines.push_back({c.coeffs, c.rhs});
    lines.push_back({{1, 0}, 0});
    lines.push_back({{0, 1}, 0});
    for (std::size_t i = 0; i < lines.size(); ++i)
      for (std::size_t j = i + 1; j < lines.size(); ++j) {
        const auto& a = lines[i].first;
        const auto& b = lines[j].first;
        const Rational det = a[0] * b[1] - a[1] * b[0];
        if (det.is_zero()) continue;
        const std::vector<Rational> x{(lines[i].second * b[1] - a[1] * lines[j].second) / det,
                                      (a[0] * lines[j].second - lines[i].second * b[0]) / det};
        if (exactly_feasible(p, x) && (!best || x[0] > *best)) best = x[0];
      }
    if (best) {
      REQUIRE(s.status == LPStatus::Optimal);
      CHECK(s.objective_value == *best);
    } else {
      CHECK(s.status == LPStatus::Infeasible);
    }
  }
}

TEST_CASE("published f is a certified warm start") {
  const std::vector<int> support{0, 1, 2, 3, 4, 5, 9};
  ExtendedGrids small;
  small.per_family = 32;
  ExtendedLP model(support, Rational(123, 100), small);
  LPSolution warm;
  warm.status = LPStatus::Optimal;
  const auto f = proof::paper_f();
  for (int k : support) warm.x.push_back(f.coeff(k));
  const auto r = verify_and_refine(model, warm, 3);
  CHECK(r.certified);
  CHECK(r.rounds == 0);
}

TEST_CASE("extended search reproduces the published constant term") {
  ExtendedLP model({0, 1, 2, 3, 4, 5, 9}, Rational(123, 100));
  const auto r = solve_and_refine(model, 30);
  REQUIRE(r.certified);
  const Rational c0 = r.f->coeff(0);
  CHECK(c0 >= Rational(9465869, 100000000) - Rational(1, 1000000));
  CHECK(c0 >= Rational(946, 10000));
  CHECK(r.bound->floor() == 12);
  // replay through the full verifier
  const auto cert = proof::run_full_verification(proof::make_constants(*r.f));
  CHECK(cert.all_pass());
  CHECK(cert.conclusion == 12);
}
