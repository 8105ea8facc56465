#include <optional>
#include <random>

#include "doctest.h"
#include "kissing/errors.hpp"
#include "kissing/simplex.hpp"

using namespace kissing;

namespace {

LPProblem one_var(std::vector<LPConstraint> rows, Rational obj = 1) {
  return {1, {obj}, std::move(rows), {Rational(0)}};
}

// Brute-force oracle for two-variable problems: enumerate every pairwise
// intersection of constraint lines (bounds included) and keep the best
// feasible one. Callers add a box so the optimum is always a vertex.
struct Vertex {
  bool feasible = false;
  Rational value;
};

std::optional<std::pair<Rational, Rational>> intersect(const std::vector<Rational>& a, const Rational& ra,
                                                       const std::vector<Rational>& b, const Rational& rb) {
  const Rational det = a[0] * b[1] - a[1] * b[0];
  if (det.is_zero()) return std::nullopt;
  return std::pair{(ra * b[1] - a[1] * rb) / det, (a[0] * rb - ra * b[0]) / det};
}

Vertex enumerate_vertices(const LPProblem& p) {
  std::vector<std::pair<std::vector<Rational>, Rational>> lines;
  for (const auto& c : p.constraints) lines.push_back({c.coeffs, c.rhs});
  lines.push_back({{1, 0}, p.var_lower_bounds[0]});
  lines.push_back({{0, 1}, p.var_lower_bounds[1]});
  Vertex best;
  for (std::size_t i = 0; i < lines.size(); ++i)
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      const auto pt = intersect(lines[i].first, lines[i].second, lines[j].first, lines[j].second);
      if (!pt) continue;
      const std::vector<Rational> x{pt->first, pt->second};
      if (!exactly_feasible(p, x)) continue;
      const Rational v = objective_at(p, x);
      if (!best.feasible || v > best.value) best = {true, v};
    }
  return best;
}

}  // namespace

TEST_CASE("solve_lp examples") {
  const auto opt = solve_lp(one_var({{{Rational(1)}, Relation::LessEq, Rational(1)}}));
  CHECK(opt.status == LPStatus::Optimal);
  CHECK(opt.x == std::vector<Rational>{Rational(1)});
  CHECK(opt.objective_value == Rational(1));

  CHECK(solve_lp(one_var({})).status == LPStatus::Unbounded);
  CHECK(solve_lp(one_var({{{Rational(1)}, Relation::LessEq, Rational(-1)}}, 0)).status == LPStatus::Infeasible);
}

TEST_CASE("relations, lower bounds and equality rows") {
  // maximize x + y  s.t.  x + 2y = 4, x >= 1, y >= -1, x <= 3
  LPProblem p{2, {1, 1}, {}, {Rational(1), Rational(-1)}};
  p.constraints.push_back({{1, 2}, Relation::Equal, 4});
  p.constraints.push_back({{1, 0}, Relation::LessEq, 3});
  const auto s = solve_lp(p);
  REQUIRE(s.status == LPStatus::Optimal);
  CHECK(s.x == std::vector<Rational>{Rational(3), Rational(1, 2)});
  CHECK(s.objective_value == Rational(7, 2));

  // >= rows and negative objective
  LPProblem q{2, {-1, -2}, {}, {Rational(0), Rational(0)}};
  q.constraints.push_back({{1, 1}, Relation::GreaterEq, Rational(3, 2)});
  q.constraints.push_back({{1, -1}, Relation::LessEq, Rational(1, 2)});
  const auto t = solve_lp(q);
  REQUIRE(t.status == LPStatus::Optimal);
  CHECK(t.x == std::vector<Rational>{Rational(1), Rational(1, 2)});

  LPProblem bad{2, {1}, {}, {Rational(0), Rational(0)}};
  CHECK_THROWS_AS(solve_lp(bad), DomainError);
}

TEST_CASE("degenerate problem terminates") {
  // many redundant rows through the same vertex
  LPProblem p{3, {1, 1, 1}, {}, {0, 0, 0}};
  for (int k = 1; k <= 40; ++k) p.constraints.push_back({{Rational(k), Rational(1), Rational(1)}, Relation::LessEq, 1});
  for (int k = 1; k <= 40; ++k) p.constraints.push_back({{Rational(1), Rational(k), Rational(1)}, Relation::LessEq, 1});
  p.constraints.push_back({{1, 1, 1}, Relation::LessEq, 1});
  const auto s = solve_lp(p);
  REQUIRE(s.status == LPStatus::Optimal);
  CHECK(s.objective_value == Rational(1));
  CHECK(exactly_feasible(p, s.x));
}

TEST_CASE("random two-variable problems against vertex enumeration") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long> coef(-6, 6);
  std::uniform_int_distribution<int> rows(1, 6);
  int optimal = 0;
  int infeasible = 0;
  for (int trial = 0; trial < 400; ++trial) {
    LPProblem p{2, {Rational(coef(rng)), Rational(coef(rng))}, {}, {Rational(coef(rng), 3), Rational(coef(rng), 3)}};
    const int m = rows(rng);
    for (int i = 0; i < m; ++i) {
      const Relation rel = i % 4 == 3 ? Relation::GreaterEq : Relation::LessEq;
      p.constraints.push_back({{Rational(coef(rng)), Rational(coef(rng))}, rel, Rational(coef(rng) + 8, 2)});
    }
    // a box keeps the oracle complete
    p.constraints.push_back({{1, 0}, Relation::LessEq, 10});
    p.constraints.push_back({{0, 1}, Relation::LessEq, 10});
    const auto s = solve_lp(p);
    const auto v = enumerate_vertices(p);
    if (!v.feasible) {
      CHECK(s.status == LPStatus::Infeasible);
      ++infeasible;
    } else {
      REQUIRE(s.status == LPStatus::Optimal);
      CHECK(s.objective_value == v.value);
      CHECK(exactly_feasible(p, s.x));
      ++optimal;
    }
  }
  CHECK(optimal > 100);
  CHECK(infeasible > 10);
}

TEST_CASE("random unbounded and infeasible detection") {
  // maximize y with only y >= x rows: unbounded
  LPProblem p{2, {0, 1}, {}, {0, 0}};
  p.constraints.push_back({{1, -1}, Relation::LessEq, 0});
  CHECK(solve_lp(p).status == LPStatus::Unbounded);
  // contradictory rows
  LPProblem q{2, {1, 1}, {}, {0, 0}};
  q.constraints.push_back({{1, 1}, Relation::LessEq, 1});
  q.constraints.push_back({{1, 1}, Relation::GreaterEq, 2});
  CHECK(solve_lp(q).status == LPStatus::Infeasible);
}

TEST_CASE("dump_problem") {
  const std::string d = dump_problem(one_var({{{Rational(1, 2)}, Relation::GreaterEq, Rational(-1)}}));
  CHECK(d == "vars 1\nmaximize 1/1\nlower 0/1\nrows 1\n1/2 >= -1/1\n");
}
