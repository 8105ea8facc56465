#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "kissing/gegenbauer.hpp"
#include "kissing/proofcheck.hpp"
#include "kissing/rational.hpp"
#include "kissing/simplex.hpp"

namespace kissing {

/// Extra node in one constraint family of a discretized problem.
struct Cut {
  int family = 0;
  Rational t;
  friend auto operator<=>(const Cut&, const Cut&) = default;
};

struct ContinuousCheck {
  bool certified = false;
  std::vector<Cut> cuts;
  std::string detail;
};

/// A semi-infinite LP sampled on finite node sets, able to check a candidate
/// on the continuum and to propose new nodes where it is violated.
class LPModel {
 public:
  virtual ~LPModel() = default;
  virtual LPProblem problem() const = 0;
  virtual GegenbauerExpansion expansion(const std::vector<Rational>& x) const = 0;
  virtual ContinuousCheck check(const GegenbauerExpansion& f) const = 0;
  /// Implied kissing bound of a certified expansion.
  virtual Rational implied_bound(const GegenbauerExpansion& f) const = 0;
  /// Adds nodes; returns how many were new.
  std::size_t add_cuts(const std::vector<Cut>& cuts);
  const std::map<int, std::vector<Rational>>& nodes() const { return nodes_; }

 protected:
  std::map<int, std::vector<Rational>> nodes_;  // sorted, unique per family
};

struct DiscretizationOptions {
  /// Required slack at every node.
  Rational margin{1, 1000000000};
  /// Constraint coefficients are rounded outward to this dyadic grid and
  /// solution coefficients to the nearest point of it.
  unsigned coeff_bits = 48;
};

/// Delsarte LP: c_0 = 1, variables c_1..c_degree >= 0, minimize 1 + sum c_k
/// (posed as maximize -sum c_k) subject to f(t) <= -margin at grid_size
/// uniform nodes of [-1, cos_theta], both ends included.
class ClassicalLP final : public LPModel {
 public:
  ClassicalLP(int d, Rational cos_theta, int degree, int grid_size, DiscretizationOptions opts = {});
  LPProblem problem() const override;
  GegenbauerExpansion expansion(const std::vector<Rational>& x) const override;
  ContinuousCheck check(const GegenbauerExpansion& f) const override;
  Rational implied_bound(const GegenbauerExpansion& f) const override;

 private:
  int d_;
  Rational cos_theta_;
  int degree_;
  DiscretizationOptions opts_;
};

LPProblem build_classical_lp(int d, const Rational& cos_theta, int degree, int grid_size);

enum ExtendedFamily {
  kFamilyNegativity = 0,  // f <= 0 on [-1/sqrt2, 1/2]
  kFamilyOnePoint,        // f(1) + f(t) <= T on [-1, -1/sqrt2]
  kFamilyMonotone,        // f' <= 0 on I (which contains the shape interval)
  kFamilyTwoPoint,        // f(1) + f(t) + f(alpha t) <= T on I
  kFamilyConvex,          // f'' >= 0 on [-sqrt2/4 - 1/2, -1/sqrt2]
  kFamilyThreePoint,      // f(1) + 2 f(t) + f(beta t) <= T on J
  kFamilyCount
};

struct ExtendedGrids {
  int per_family = 512;
  std::map<int, int> overrides;  // family -> node count
  int count(int family) const;
};

/// Maximize c_0 over expansions supported on `support` (dimension 3) with
/// every claim family imposed on Chebyshev-spaced nodes. Values of G_k at
/// alpha(t) and beta(t) enter through the upper ends of certified
/// enclosures.
class ExtendedLP final : public LPModel {
 public:
  ExtendedLP(std::vector<int> support, Rational threshold, ExtendedGrids grids = {}, DiscretizationOptions opts = {});
  LPProblem problem() const override;
  GegenbauerExpansion expansion(const std::vector<Rational>& x) const override;
  /// Certified when admissible and every claim of the proof checker passes.
  ContinuousCheck check(const GegenbauerExpansion& f) const override;
  Rational implied_bound(const GegenbauerExpansion& f) const override;

  const std::vector<int>& support() const { return support_; }
  const proof::ProofConstants& constants() const { return constants_; }

 private:
  std::vector<Rational> row(int family, const Rational& t) const;
  RationalInterval family_domain(int family) const;

  std::vector<int> support_;
  Rational threshold_;
  DiscretizationOptions opts_;
  proof::ProofConstants constants_;
};

LPProblem build_extended_lp(const std::vector<int>& support, const Rational& threshold, const ExtendedGrids& grids = {});

struct RefineReport {
  bool certified = false;
  LPStatus lp_status = LPStatus::Infeasible;
  int rounds = 0;
  std::size_t cuts_added = 0;
  std::optional<GegenbauerExpansion> f;
  std::optional<Rational> bound;
  LPSolution lp;
  std::string detail;
};

/// Alternates exact continuous checks and re-solves with the violated nodes
/// added until the expansion is certified or max_rounds re-solves are spent.
RefineReport verify_and_refine(LPModel& model, LPSolution sol, int max_rounds);

/// Solves the model and refines it.
RefineReport solve_and_refine(LPModel& model, int max_rounds);

/// Certified classical bound for theta = pi/3. Throws RefinementError when
/// the LP is infeasible or refinement does not certify.
Rational kissing_bound(int d, int degree, int grid_size = 512, int max_rounds = 30);

class RefinementError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Chebyshev-spaced nodes in [lo, hi] rounded to 2^-bits, ends included.
std::vector<Rational> chebyshev_nodes(const Rational& lo, const Rational& hi, int count, unsigned bits = 40);

}  // namespace kissing
