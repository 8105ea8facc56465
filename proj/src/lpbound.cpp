#include "kissing/lpbound.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "kissing/errors.hpp"
#include "kissing/sturm.hpp"

namespace kissing {

namespace {

constexpr unsigned kNodeBits = 40;

Rational clamp_node(const Rational& t, const RationalInterval& dom) { return max(dom.lo(), min(dom.hi(), t)); }

Rational to_node(double t, const RationalInterval& dom) {
  return clamp_node(Rational::from_double(t).round_down(kNodeBits), dom);
}

// Local maxima of p on dom whose value may exceed `level`.
void poly_cuts(const Polynomial& p, const RationalInterval& dom, const Rational& level, int family,
               std::vector<Cut>& out) {
  if (p.is_zero()) return;
  const auto mx = poly_max(p, dom, Rational::pow2(-50));
  for (const auto& c : mx.candidates)
    if (c.value.hi() > level) out.push_back({family, clamp_node(c.location.midpoint().round_down(kNodeBits), dom)});
}

// Float scan for maxima of g on dom above `level`, each polished by golden
// section. Only used to place nodes; certification is exact elsewhere.
template <class G>
void scan_cuts(const G& g, const RationalInterval& dom, double level, int family, std::vector<Cut>& out) {
  const double lo = dom.lo().to_double();
  const double hi = dom.hi().to_double();
  const int n = 4000;
  std::vector<double> v(n + 1);
  for (int i = 0; i <= n; ++i) v[static_cast<std::size_t>(i)] = g(lo + (hi - lo) * i / n);
  for (int i = 0; i <= n; ++i) {
    const auto u = static_cast<std::size_t>(i);
    const bool left = i == 0 || v[u] >= v[u - 1];
    const bool right = i == n || v[u] >= v[u + 1];
    if (!left || !right) continue;
    double a = lo + (hi - lo) * std::max(0, i - 1) / n;
    double b = lo + (hi - lo) * std::min(n, i + 1) / n;
    const double phi = (std::sqrt(5.0) - 1) / 2;
    for (int it = 0; it < 80; ++it) {
      const double x1 = b - phi * (b - a);
      const double x2 = a + phi * (b - a);
      if (g(x1) < g(x2)) a = x1;
      else b = x2;
    }
    const double t = (a + b) / 2;
    const double best = std::max({g(t), v[u]});
    if (best > level) out.push_back({family, to_node(g(t) >= v[u] ? t : lo + (hi - lo) * i / n, dom)});
  }
}

Rational round_nearest(const Rational& x, unsigned bits) {
  const Rational lo = x.round_down(bits);
  const Rational hi = x.round_up(bits);
  return (x - lo) <= (hi - x) ? lo : hi;
}

}  // namespace

std::vector<Rational> chebyshev_nodes(const Rational& lo, const Rational& hi, int count, unsigned bits) {
  if (count < 2 || !(lo < hi)) throw DomainError("chebyshev_nodes: need count >= 2 and lo < hi");
  const RationalInterval dom(lo, hi);
  const double a = lo.to_double();
  const double b = hi.to_double();
  std::vector<Rational> out{lo, hi};
  for (int i = 1; i < count - 1; ++i) {
    const double x = (a + b) / 2 - (b - a) / 2 * std::cos(std::numbers::pi * i / (count - 1));
    out.push_back(clamp_node(Rational::from_double(x).round_down(bits), dom));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::size_t LPModel::add_cuts(const std::vector<Cut>& cuts) {
  std::vector<Cut> sorted = cuts;
  std::sort(sorted.begin(), sorted.end());
  std::size_t added = 0;
  for (const auto& c : sorted) {
    auto& v = nodes_[c.family];
    const auto it = std::lower_bound(v.begin(), v.end(), c.t);
    if (it != v.end() && *it == c.t) continue;
    v.insert(it, c.t);
    ++added;
  }
  return added;
}

// ---------------------------------------------------------------- classical

ClassicalLP::ClassicalLP(int d, Rational cos_theta, int degree, int grid_size, DiscretizationOptions opts)
    : d_(d), cos_theta_(std::move(cos_theta)), degree_(degree), opts_(std::move(opts)) {
  if (d < 3) throw DomainError("build_classical_lp: d must be >= 3");
  if (!(Rational(-1) < cos_theta_ && cos_theta_ < Rational(1))) throw DomainError("build_classical_lp: need -1 < cos_theta < 1");
  if (degree < 1) throw DomainError("build_classical_lp: degree must be >= 1");
  if (grid_size < 2) throw DomainError("build_classical_lp: grid_size must be >= 2");
  auto& v = nodes_[0];
  const Rational step = (cos_theta_ + Rational(1)) / Rational(grid_size - 1);
  for (int i = 0; i < grid_size; ++i) v.push_back(Rational(-1) + step * Rational(i));
}

LPProblem ClassicalLP::problem() const {
  LPProblem p;
  p.num_vars = degree_;
  p.objective.assign(static_cast<std::size_t>(degree_), Rational(-1));
  p.var_lower_bounds.assign(static_cast<std::size_t>(degree_), Rational(0));
  const Rational rhs = Rational(-1) - opts_.margin;
  for (const auto& t : nodes_.at(0)) {
    const auto g = gegenbauer_values(d_, degree_, t);
    LPConstraint c;
    c.relation = Relation::LessEq;
    c.rhs = rhs;
    for (int k = 1; k <= degree_; ++k) c.coeffs.push_back(g[static_cast<std::size_t>(k)].round_up(opts_.coeff_bits));
    p.constraints.push_back(std::move(c));
  }
  return p;
}

GegenbauerExpansion ClassicalLP::expansion(const std::vector<Rational>& x) const {
  GegenbauerExpansion f(d_);
  f.set(0, Rational(1));
  for (int k = 1; k <= degree_; ++k) f.set(k, round_nearest(x[static_cast<std::size_t>(k - 1)], opts_.coeff_bits));
  return f;
}

ContinuousCheck ClassicalLP::check(const GegenbauerExpansion& f) const {
  ContinuousCheck out;
  const RationalInterval dom(Rational(-1), cos_theta_);
  const Polynomial p = expansion_to_poly(f);
  const auto verdict = certify_sign(p, dom);
  if (f.admissible() && f.coeff(0).sign() > 0 && verdict.nonpositive()) {
    out.certified = true;
    out.detail = "f <= 0 on " + dom.str() + " (" + to_string(verdict.tag) + ")";
    return out;
  }
  poly_cuts(p, dom, -(opts_.margin / Rational(2)), 0, out.cuts);
  out.detail = "f not certified nonpositive; " + std::to_string(out.cuts.size()) + " cut(s)";
  return out;
}

Rational ClassicalLP::implied_bound(const GegenbauerExpansion& f) const {
  return expansion_to_poly(f).eval(Rational(1)) / f.coeff(0);
}

LPProblem build_classical_lp(int d, const Rational& cos_theta, int degree, int grid_size) {
  return ClassicalLP(d, cos_theta, degree, grid_size).problem();
}

// ----------------------------------------------------------------- extended

int ExtendedGrids::count(int family) const {
  const auto it = overrides.find(family);
  return it == overrides.end() ? per_family : it->second;
}

ExtendedLP::ExtendedLP(std::vector<int> support, Rational threshold, ExtendedGrids grids, DiscretizationOptions opts)
    : support_(std::move(support)), threshold_(std::move(threshold)), opts_(std::move(opts)) {
  if (support_.empty()) throw DomainError("build_extended_lp: empty support");
  std::sort(support_.begin(), support_.end());
  support_.erase(std::unique(support_.begin(), support_.end()), support_.end());
  if (support_.front() != 0) throw DomainError("build_extended_lp: support must contain 0");
  constants_ = proof::make_constants(GegenbauerExpansion(3), threshold_);
  for (int fam = 0; fam < kFamilyCount; ++fam) {
    const auto dom = family_domain(fam);
    nodes_[fam] = chebyshev_nodes(dom.lo(), dom.hi(), grids.count(fam));
  }
}

RationalInterval ExtendedLP::family_domain(int family) const {
  switch (family) {
    case kFamilyNegativity: return constants_.negativity_domain();
    case kFamilyOnePoint: return constants_.one_point_domain();
    case kFamilyMonotone:
    case kFamilyTwoPoint: return constants_.interval_I();
    case kFamilyConvex: return constants_.shape_domain();
    case kFamilyThreePoint: return constants_.interval_J();
    default: throw DomainError("unknown constraint family");
  }
}

std::vector<Rational> ExtendedLP::row(int family, const Rational& t) const {
  const Rational eps = Rational::pow2(-70);
  std::optional<RationalInterval> moved;
  if (family == kFamilyTwoPoint) moved = radical_eval_enclose(proof::alpha_expr(), RationalInterval::point(t), eps);
  if (family == kFamilyThreePoint) moved = radical_eval_enclose(proof::beta_expr(), RationalInterval::point(t), eps);
  std::vector<Rational> out;
  for (int k : support_) {
    const Polynomial& g = gegenbauer_poly(3, k);
    Rational v;
    switch (family) {
      case kFamilyNegativity: v = g.eval(t); break;
      case kFamilyOnePoint: v = Rational(1) + g.eval(t); break;
      case kFamilyMonotone: v = g.derivative().eval(t); break;
      case kFamilyTwoPoint: v = Rational(1) + g.eval(t) + poly_range(g, *moved).hi(); break;
      case kFamilyConvex: v = -g.derivative().derivative().eval(t); break;
      case kFamilyThreePoint: v = Rational(1) + Rational(2) * g.eval(t) + poly_range(g, *moved).hi(); break;
      default: throw DomainError("unknown constraint family");
    }
    out.push_back(v.round_up(opts_.coeff_bits));
  }
  return out;
}

LPProblem ExtendedLP::problem() const {
  LPProblem p;
  const auto n = support_.size();
  p.num_vars = static_cast<int>(n);
  p.objective.assign(n, Rational(0));
  p.objective[0] = Rational(1);
  p.var_lower_bounds.assign(n, Rational(0));
  for (const auto& [fam, ts] : nodes_) {
    const bool has_threshold = fam == kFamilyOnePoint || fam == kFamilyTwoPoint || fam == kFamilyThreePoint;
    const Rational rhs = (has_threshold ? threshold_ : Rational(0)) - opts_.margin;
    for (const auto& t : ts) p.constraints.push_back({row(fam, t), Relation::LessEq, rhs});
  }
  return p;
}

GegenbauerExpansion ExtendedLP::expansion(const std::vector<Rational>& x) const {
  GegenbauerExpansion f(3);
  for (std::size_t i = 0; i < support_.size(); ++i) {
    const Rational c = support_[i] == 0 ? x[i].round_down(opts_.coeff_bits) : round_nearest(x[i], opts_.coeff_bits);
    f.set(support_[i], c);
  }
  return f;
}

ContinuousCheck ExtendedLP::check(const GegenbauerExpansion& f) const {
  ContinuousCheck out;
  proof::ProofConstants c = constants_;
  c.f = f;
  c.threshold = threshold_;
  const Polynomial p = expansion_to_poly(f);
  const Rational f1 = p.eval(Rational(1));
  const Rational half = opts_.margin / Rational(2);
  const Polynomial dp = p.derivative();
  std::ostringstream detail;
  bool all = f.admissible() && f.coeff(0).sign() > 0;
  if (!all) detail << "not admissible; ";
  for (proof::ClaimId id : proof::kAllClaims) {
    const auto r = proof::check_claim(id, c);
    if (r.verdict == proof::Verdict::Pass) continue;
    all = false;
    detail << to_string(id) << " " << to_string(r.verdict) << "; ";
    switch (id) {
      case proof::ClaimId::A_negativity:
        poly_cuts(p, family_domain(kFamilyNegativity), -half, kFamilyNegativity, out.cuts);
        break;
      case proof::ClaimId::B_one_point:
        poly_cuts(p, family_domain(kFamilyOnePoint), threshold_ - f1 - half, kFamilyOnePoint, out.cuts);
        break;
      case proof::ClaimId::C_monotone_I:
      case proof::ClaimId::E_shape_J:
        poly_cuts(dp, family_domain(kFamilyMonotone), -half, kFamilyMonotone, out.cuts);
        if (id == proof::ClaimId::E_shape_J)
          poly_cuts(-dp.derivative(), family_domain(kFamilyConvex), -half, kFamilyConvex, out.cuts);
        break;
      case proof::ClaimId::D_two_point: {
        const auto alpha = proof::alpha_expr();
        scan_cuts([&](double t) { return p.eval_double(t) + p.eval_double(alpha.eval_double(t)); },
                  family_domain(kFamilyTwoPoint), (threshold_ - f1 - half).to_double(), kFamilyTwoPoint, out.cuts);
        break;
      }
      case proof::ClaimId::F_three_point: {
        const auto beta = proof::beta_expr();
        scan_cuts([&](double t) { return 2 * p.eval_double(t) + p.eval_double(beta.eval_double(t)); },
                  family_domain(kFamilyThreePoint), (threshold_ - f1 - half).to_double(), kFamilyThreePoint,
                  out.cuts);
        break;
      }
    }
  }
  out.certified = all;
  out.detail = all ? "all claims pass" : detail.str() + std::to_string(out.cuts.size()) + " cut(s)";
  return out;
}

Rational ExtendedLP::implied_bound(const GegenbauerExpansion& f) const { return threshold_ / f.coeff(0); }

LPProblem build_extended_lp(const std::vector<int>& support, const Rational& threshold, const ExtendedGrids& grids) {
  return ExtendedLP(support, threshold, grids).problem();
}

// ------------------------------------------------------------------ refine

RefineReport verify_and_refine(LPModel& model, LPSolution sol, int max_rounds) {
  RefineReport rep;
  for (;;) {
    rep.lp = sol;
    rep.lp_status = sol.status;
    if (sol.status != LPStatus::Optimal) {
      rep.detail = "LP " + to_string(sol.status);
      return rep;
    }
    const auto f = model.expansion(sol.x);
    rep.f = f;
    const auto chk = model.check(f);
    rep.detail = chk.detail;
    if (chk.certified) {
      rep.certified = true;
      rep.bound = model.implied_bound(f);
      return rep;
    }
    if (rep.rounds >= max_rounds) {
      rep.detail += "; refinement rounds exhausted";
      return rep;
    }
    const std::size_t added = model.add_cuts(chk.cuts);
    if (added == 0) {
      rep.detail += "; no new cut";
      return rep;
    }
    rep.cuts_added += added;
    ++rep.rounds;
    sol = solve_lp(model.problem());
  }
}

RefineReport solve_and_refine(LPModel& model, int max_rounds) {
  return verify_and_refine(model, solve_lp(model.problem()), max_rounds);
}

Rational kissing_bound(int d, int degree, int grid_size, int max_rounds) {
  ClassicalLP model(d, Rational(1, 2), degree, grid_size);
  const auto rep = solve_and_refine(model, max_rounds);
  if (!rep.certified) throw RefinementError("kissing_bound(" + std::to_string(d) + ", " + std::to_string(degree) + "): " + rep.detail);
  return *rep.bound;
}

}  // namespace kissing
