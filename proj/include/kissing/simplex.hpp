#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "kissing/rational.hpp"

namespace kissing {

enum class Relation { LessEq, Equal, GreaterEq };

struct LPConstraint {
  std::vector<Rational> coeffs;
  Relation relation = Relation::LessEq;
  Rational rhs;
};

/// maximize objective . x subject to the constraints and x >= var_lower_bounds.
struct LPProblem {
  int num_vars = 0;
  std::vector<Rational> objective;
  std::vector<LPConstraint> constraints;
  std::vector<Rational> var_lower_bounds;

  /// Throws DomainError when sizes disagree.
  void validate() const;
};

enum class LPStatus { Optimal, Infeasible, Unbounded };
std::string to_string(LPStatus s);

struct LPSolution {
  LPStatus status = LPStatus::Infeasible;
  std::vector<Rational> x;
  Rational objective_value;
  std::size_t pivots = 0;
};

/// Exact rational simplex. The primal (few variables, many rows) is solved
/// through its dual, whose tableau has one row per variable; the primal
/// vertex is read off the dual's reduced costs and then checked exactly for
/// feasibility and strong duality. Dantzig pricing with a switch to Bland's
/// rule after a run of degenerate pivots, so it always terminates.
LPSolution solve_lp(const LPProblem& p);

/// Every constraint and bound holds exactly at x.
bool exactly_feasible(const LPProblem& p, const std::vector<Rational>& x);

Rational objective_at(const LPProblem& p, const std::vector<Rational>& x);

/// Structured text dump with exact rationals.
std::string dump_problem(const LPProblem& p);

}  // namespace kissing
