#include "kissing/simplex.hpp"

#include <algorithm>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "kissing/errors.hpp"

namespace kissing {

namespace {

constexpr int kDegenerateSwitch = 50;

// minimize cost . z  subject to  M z = r, z >= 0, with a given starting
// basis for some rows (columns that are unit vectors) and artificials for the
// rest.
class Tableau {
 public:
  Tableau(std::vector<std::vector<mpq_class>> rows, std::vector<mpq_class> rhs, std::vector<int> basis)
      : t_(std::move(rows)), r_(std::move(rhs)), basis_(std::move(basis)) {}

  std::size_t cols() const { return t_.empty() ? 0 : t_[0].size(); }
  const std::vector<int>& basis() const { return basis_; }
  const std::vector<mpq_class>& reduced() const { return d_; }
  const mpq_class& value() const { return z_; }
  std::size_t pivots() const { return pivots_; }

  void set_cost(const std::vector<mpq_class>& cost) {
    d_ = cost;
    z_ = 0;
    for (std::size_t i = 0; i < t_.size(); ++i) {
      const mpq_class cb = cost[static_cast<std::size_t>(basis_[i])];
      if (sgn(cb) == 0) continue;
      for (std::size_t j = 0; j < d_.size(); ++j)
        if (sgn(t_[i][j]) != 0) d_[j] -= cb * t_[i][j];
      z_ += cb * r_[i];
    }
  }

  // true: optimal, false: unbounded
  bool optimize(std::size_t usable_cols) {
    int degenerate = 0;
    for (;;) {
      std::optional<std::size_t> enter;
      const bool bland = degenerate >= kDegenerateSwitch;
      for (std::size_t j = 0; j < usable_cols; ++j) {
        if (sgn(d_[j]) >= 0) continue;
        if (bland) {
          enter = j;
          break;
        }
        if (!enter || d_[j] < d_[*enter]) enter = j;
      }
      if (!enter) return true;
      const std::size_t e = *enter;
      std::optional<std::size_t> leave;
      mpq_class best;
      for (std::size_t i = 0; i < t_.size(); ++i) {
        if (sgn(t_[i][e]) <= 0) continue;
        mpq_class ratio = r_[i] / t_[i][e];
        if (!leave || ratio < best || (ratio == best && basis_[i] < basis_[*leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (!leave) return false;
      degenerate = sgn(best) == 0 ? degenerate + 1 : 0;
      pivot(*leave, e);
    }
  }

  void pivot(std::size_t row, std::size_t col) {
    ++pivots_;
    const mpq_class p = t_[row][col];
    auto& pr = t_[row];
    for (auto& v : pr)
      if (sgn(v) != 0) v /= p;
    r_[row] /= p;
    auto eliminate = [&](std::vector<mpq_class>& target, mpq_class& rhs) {
      const mpq_class f = target[col];
      if (sgn(f) == 0) return;
      for (std::size_t j = 0; j < pr.size(); ++j)
        if (sgn(pr[j]) != 0) target[j] -= f * pr[j];
      rhs -= f * r_[row];
    };
    for (std::size_t i = 0; i < t_.size(); ++i)
      if (i != row) eliminate(t_[i], r_[i]);
    mpq_class negz = -z_;
    eliminate(d_, negz);
    z_ = -negz;
    basis_[row] = static_cast<int>(col);
  }

  // Pivots basic columns >= first_art out of the basis. Returns false if a
  // row has no usable entry (cannot happen for full-rank systems).
  bool expel(std::size_t first_art) {
    for (std::size_t i = 0; i < t_.size(); ++i) {
      if (static_cast<std::size_t>(basis_[i]) < first_art) continue;
      bool done = false;
      for (std::size_t j = 0; j < first_art && !done; ++j) {
        if (sgn(t_[i][j]) != 0) {
          pivot(i, j);
          done = true;
        }
      }
      if (!done) return false;
    }
    return true;
  }

  void truncate(std::size_t ncols) {
    for (auto& row : t_) row.resize(ncols);
    d_.resize(ncols);
  }

 private:
  std::vector<std::vector<mpq_class>> t_;
  std::vector<mpq_class> r_;
  std::vector<int> basis_;
  std::vector<mpq_class> d_;
  mpq_class z_;
  std::size_t pivots_ = 0;
};

struct DualResult {
  enum Kind { Optimal, Infeasible, Unbounded } kind;
  std::vector<mpq_class> y;  // primal values from the surplus reduced costs
  mpq_class value;
  std::size_t pivots = 0;
};

// Dual of  max c.y  s.t.  A y <= b, y >= 0:
//   min b.u  s.t.  A^T u - s = c,  u, s >= 0.
DualResult solve_dual(const std::vector<std::vector<mpq_class>>& a, const std::vector<mpq_class>& b,
                      const std::vector<mpq_class>& c) {
  const std::size_t m = a.size();
  const std::size_t n = c.size();
  std::vector<int> sign(n, 1);
  std::vector<std::size_t> art_rows;
  for (std::size_t i = 0; i < n; ++i) {
    // rows with c_i <= 0 are negated so the surplus column is +e_i and basic
    if (sgn(c[i]) <= 0) sign[i] = -1;
    else art_rows.push_back(i);
  }
  const std::size_t ncols = m + n + art_rows.size();
  std::vector<std::vector<mpq_class>> rows(n, std::vector<mpq_class>(ncols));
  std::vector<mpq_class> rhs(n);
  std::vector<int> basis(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < m; ++k)
      if (sgn(a[k][i]) != 0) rows[i][k] = sign[i] > 0 ? a[k][i] : mpq_class(-a[k][i]);
    rows[i][m + i] = -sign[i];
    rhs[i] = sign[i] > 0 ? c[i] : mpq_class(-c[i]);
    basis[i] = static_cast<int>(m + i);
  }
  for (std::size_t j = 0; j < art_rows.size(); ++j) {
    rows[art_rows[j]][m + n + j] = 1;
    basis[art_rows[j]] = static_cast<int>(m + n + j);
  }
  Tableau tab(std::move(rows), std::move(rhs), std::move(basis));

  DualResult res{DualResult::Optimal, {}, 0, 0};
  if (!art_rows.empty()) {
    std::vector<mpq_class> phase1(ncols);
    for (std::size_t j = m + n; j < ncols; ++j) phase1[j] = 1;
    tab.set_cost(phase1);
    tab.optimize(ncols);
    if (sgn(tab.value()) > 0) {
      res.kind = DualResult::Infeasible;
      res.pivots = tab.pivots();
      return res;
    }
    if (!tab.expel(m + n)) throw std::logic_error("solve_lp: rank-deficient dual");
    tab.truncate(m + n);
  }
  std::vector<mpq_class> cost(m + n);
  for (std::size_t k = 0; k < m; ++k) cost[k] = b[k];
  tab.set_cost(cost);
  const bool bounded = tab.optimize(m + n);
  res.pivots = tab.pivots();
  if (!bounded) {
    res.kind = DualResult::Unbounded;
    return res;
  }
  res.value = tab.value();
  res.y.resize(n);
  // reduced cost of the surplus column equals the multiplier of the original row
  for (std::size_t i = 0; i < n; ++i) res.y[i] = tab.reduced()[m + i];
  return res;
}

mpq_class dot(const std::vector<mpq_class>& a, const std::vector<mpq_class>& b) {
  mpq_class s;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (sgn(a[i]) != 0) s += a[i] * b[i];
  return s;
}

}  // namespace

void LPProblem::validate() const {
  if (num_vars < 1) throw DomainError("LPProblem: num_vars must be >= 1");
  const auto n = static_cast<std::size_t>(num_vars);
  if (objective.size() != n) throw DomainError("LPProblem: objective size mismatch");
  if (var_lower_bounds.size() != n) throw DomainError("LPProblem: lower bounds size mismatch");
  for (const auto& c : constraints)
    if (c.coeffs.size() != n) throw DomainError("LPProblem: constraint size mismatch");
}

std::string to_string(LPStatus s) {
  switch (s) {
    case LPStatus::Optimal: return "Optimal";
    case LPStatus::Infeasible: return "Infeasible";
    case LPStatus::Unbounded: return "Unbounded";
  }
  return "Infeasible";
}

Rational objective_at(const LPProblem& p, const std::vector<Rational>& x) {
  Rational s;
  for (std::size_t i = 0; i < x.size(); ++i) s += p.objective[i] * x[i];
  return s;
}

bool exactly_feasible(const LPProblem& p, const std::vector<Rational>& x) {
  if (x.size() != static_cast<std::size_t>(p.num_vars)) return false;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] < p.var_lower_bounds[i]) return false;
  for (const auto& c : p.constraints) {
    Rational lhs;
    for (std::size_t i = 0; i < x.size(); ++i)
      if (!c.coeffs[i].is_zero()) lhs += c.coeffs[i] * x[i];
    switch (c.relation) {
      case Relation::LessEq:
        if (lhs > c.rhs) return false;
        break;
      case Relation::GreaterEq:
        if (lhs < c.rhs) return false;
        break;
      case Relation::Equal:
        if (lhs != c.rhs) return false;
        break;
    }
  }
  return true;
}

namespace {

LPSolution solve_all_rows(const LPProblem& p);

// Positive when row c is violated at x.
Rational violation(const LPConstraint& c, const std::vector<Rational>& x) {
  Rational lhs;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!c.coeffs[i].is_zero()) lhs += c.coeffs[i] * x[i];
  switch (c.relation) {
    case Relation::LessEq: return lhs - c.rhs;
    case Relation::GreaterEq: return c.rhs - lhs;
    case Relation::Equal: return (lhs - c.rhs).abs();
  }
  return Rational(0);
}

}  // namespace

LPSolution solve_lp(const LPProblem& p) {
  p.validate();
  const std::size_t m = p.constraints.size();
  const auto n = static_cast<std::size_t>(p.num_vars);
  if (m <= 8 * n + 64) return solve_all_rows(p);

  // Row generation: solve on a subset, add the most violated rows, repeat.
  // An optimum of a relaxation that satisfies every row is optimal.
  std::vector<bool> active(m, false);
  const std::size_t stride = std::max<std::size_t>(1, m / (4 * n + 16));
  for (std::size_t k = 0; k < m; k += stride) active[k] = true;
  active[m - 1] = true;
  for (std::size_t k = 0; k < m; ++k)
    if (p.constraints[k].relation == Relation::Equal) active[k] = true;
  const std::size_t batch = std::max<std::size_t>(2 * n, 16);
  std::size_t pivots = 0;
  for (;;) {
    LPProblem sub{p.num_vars, p.objective, {}, p.var_lower_bounds};
    for (std::size_t k = 0; k < m; ++k)
      if (active[k]) sub.constraints.push_back(p.constraints[k]);
    LPSolution s = solve_all_rows(sub);
    pivots += s.pivots;
    if (s.status == LPStatus::Unbounded) {
      LPSolution full = solve_all_rows(p);
      full.pivots += pivots;
      return full;
    }
    if (s.status == LPStatus::Infeasible) {
      s.pivots = pivots;
      return s;
    }
    std::vector<std::pair<Rational, std::size_t>> bad;
    for (std::size_t k = 0; k < m; ++k) {
      if (active[k]) continue;
      Rational v = violation(p.constraints[k], s.x);
      if (v.sign() > 0) bad.emplace_back(std::move(v), k);
    }
    if (bad.empty()) {
      s.pivots = pivots;
      return s;
    }
    std::sort(bad.begin(), bad.end(), [](const auto& a, const auto& b) {
      return a.first != b.first ? a.first > b.first : a.second < b.second;
    });
    for (std::size_t i = 0; i < std::min(batch, bad.size()); ++i) active[bad[i].second] = true;
  }
}

namespace {

LPSolution solve_all_rows(const LPProblem& p) {
  const auto n = static_cast<std::size_t>(p.num_vars);

  // x = lb + y, every row as A y <= b
  std::vector<std::vector<mpq_class>> a;
  std::vector<mpq_class> b;
  for (const auto& con : p.constraints) {
    std::vector<mpq_class> row(n);
    mpq_class shift = con.rhs.raw();
    for (std::size_t i = 0; i < n; ++i) {
      row[i] = con.coeffs[i].raw();
      shift -= row[i] * p.var_lower_bounds[i].raw();
    }
    if (con.relation != Relation::GreaterEq) {
      a.push_back(row);
      b.push_back(shift);
    }
    if (con.relation != Relation::LessEq) {
      for (auto& v : row) v = -v;
      a.push_back(std::move(row));
      b.push_back(-shift);
    }
  }
  std::vector<mpq_class> c(n);
  for (std::size_t i = 0; i < n; ++i) c[i] = p.objective[i].raw();

  LPSolution sol;
  const DualResult d = solve_dual(a, b, c);
  sol.pivots = d.pivots;
  if (d.kind == DualResult::Unbounded) {
    sol.status = LPStatus::Infeasible;
    return sol;
  }
  if (d.kind == DualResult::Infeasible) {
    // primal is infeasible or unbounded; the zero-objective dual decides
    const DualResult d0 = solve_dual(a, b, std::vector<mpq_class>(n));
    sol.pivots += d0.pivots;
    sol.status = d0.kind == DualResult::Optimal ? LPStatus::Unbounded : LPStatus::Infeasible;
    return sol;
  }

  for (std::size_t k = 0; k < a.size(); ++k)
    if (dot(a[k], d.y) > b[k]) throw std::logic_error("solve_lp: recovered vertex violates a row");
  for (const auto& v : d.y)
    if (sgn(v) < 0) throw std::logic_error("solve_lp: recovered vertex violates a bound");
  if (dot(c, d.y) != d.value) throw std::logic_error("solve_lp: duality gap at recovered vertex");

  sol.status = LPStatus::Optimal;
  sol.x.reserve(n);
  for (std::size_t i = 0; i < n; ++i) sol.x.push_back(p.var_lower_bounds[i] + Rational(d.y[i]));
  sol.objective_value = objective_at(p, sol.x);
  if (!exactly_feasible(p, sol.x)) throw std::logic_error("solve_lp: solution not exactly feasible");
  return sol;
}

}  // namespace

std::string dump_problem(const LPProblem& p) {
  std::ostringstream out;
  out << "vars " << p.num_vars << "\n";
  out << "maximize";
  for (const auto& c : p.objective) out << " " << c.str();
  out << "\nlower";
  for (const auto& l : p.var_lower_bounds) out << " " << l.str();
  out << "\nrows " << p.constraints.size() << "\n";
  for (const auto& c : p.constraints) {
    for (const auto& v : c.coeffs) out << v.str() << " ";
    out << (c.relation == Relation::LessEq ? "<=" : c.relation == Relation::Equal ? "=" : ">=") << " " << c.rhs.str()
        << "\n";
  }
  return out.str();
}

}  // namespace kissing
