#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "kissing/gegenbauer.hpp"
#include "kissing/rational.hpp"

namespace kissing {

/// splitmix64 (Steele, Lea, Flood). Trial streams start from
///   state = seed ^ (trial_index * 0xD1B54A32D192ED03)
/// and each draw is: state += 0x9E3779B97F4A7C15; z = state;
/// z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9; z = (z ^ (z >> 27)) * 0x94D049BB133111EB;
/// return z ^ (z >> 31). Doubles take the top 53 bits: (z >> 11) * 2^-53.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t state) : state_(state) {}
  static SplitMix64 for_trial(std::uint64_t seed, std::uint64_t trial) {
    return SplitMix64(seed ^ (trial * 0xD1B54A32D192ED03ULL));
  }
  std::uint64_t next();
  /// Uniform in [0, 1).
  double uniform();
  /// Uniform integer in [lo, hi] (modulo reduction; bias is irrelevant here).
  long range(long lo, long hi);

 private:
  std::uint64_t state_;
};

enum class PointMode { ExactRational, Float };

class SpherePoint {
 public:
  /// DomainError unless the squared norm is exactly 1.
  static SpherePoint exact(std::vector<Rational> coords);
  /// DomainError unless the norm is within 1e-12 of 1.
  static SpherePoint approx(std::vector<double> coords);

  PointMode mode() const { return mode_; }
  std::size_t dim() const { return mode_ == PointMode::ExactRational ? exact_.size() : float_.size(); }
  const std::vector<Rational>& exact_coords() const { return exact_; }
  /// Float coordinates in either mode.
  std::vector<double> coords() const;
  std::string str() const;

 private:
  PointMode mode_ = PointMode::Float;
  std::vector<Rational> exact_;
  std::vector<double> float_;
};

/// Inverse stereographic projection (2a, 2b, a^2+b^2-1)/(a^2+b^2+1).
SpherePoint rational_sphere_point(const Rational& a, const Rational& b);
/// Same map from R^{d-1} to S^{d-1}.
SpherePoint rational_sphere_point(const std::vector<Rational>& u);

/// Exact for two exact points, double for two float points; ModeError for
/// mixed modes or mismatched dimensions.
std::variant<Rational, double> inner(const SpherePoint& u, const SpherePoint& v);
double inner_float(const SpherePoint& u, const SpherePoint& v);

struct Configuration {
  std::vector<SpherePoint> points;
  Rational min_cos_sep{1, 2};

  /// Pairwise inner products <= min_cos_sep: exactly for exact points,
  /// within tol for float points.
  bool valid(double tol = 1e-9) const;
  double max_inner() const;
  /// Coordinates and the inner-product matrix.
  std::string dump() const;
};

/// cos a cos b + sin a sin b cos gamma.
double spherical_cos_rule(double a, double b, double gamma);

struct CapLemmaReport {
  // analytic part, in x = cos^2 a, y = cos^2 b in [1/2, 1], w = cos gamma in [0, 1]
  bool analytic_pass = false;
  RationalInterval infimum;        // enclosure of the minimum of the cos rule on the closed box
  std::size_t boxes = 0;
  bool minimum_only_at_corner = false;  // every box reaching 1/2 contains a = b = pi/4, gamma = pi/2
  // randomized part
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  std::size_t counterexamples = 0;
  double max_min_separation_deg = 0;  // largest minimal pairwise angle seen
  std::optional<std::vector<SpherePoint>> counterexample;

  bool pass() const { return analytic_pass && minimum_only_at_corner && counterexamples == 0; }
  std::string text() const;
};

/// Analytic interval branch and bound plus `samples` random 4-point sets in
/// the open cap of angular radius pi/4.
CapLemmaReport verify_cap_lemma(std::size_t samples, std::uint64_t seed, unsigned workers = 1);

/// 12 float vertices of a regular icosahedron.
Configuration icosahedron_witness();

struct MasterSums {
  std::vector<double> per_point;  // sum_j f(<x_i, x_j>)
  double worst = 0;
};
MasterSums master_sums(const Configuration& c, const GegenbauerExpansion& f);

struct IcosahedronReport {
  std::size_t vertices = 0;
  double max_inner = 0;
  double min_separation_rad = 0;
  double worst_master_sum = 0;
  /// Certified enclosure of f(1) + 5 f(1/sqrt5) + 5 f(-1/sqrt5) + f(-1).
  RationalInterval exact_master_sum;
  bool pass(const Rational& threshold) const;
  std::string text() const;
};
IcosahedronReport icosahedron_report(const GegenbauerExpansion& f);

struct StressReport {
  int n_points = 0;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  std::size_t sampling_failures = 0;
  double worst = 0;
  std::size_t worst_trial = 0;
  double worst_max_inner = 0;
  bool pass(double threshold) const { return sampling_failures == 0 && worst <= threshold; }
  std::string text() const;
};

/// Random configurations of n_points with pairwise inner products <= 1/2
/// (rejection sampling, then a repulsion fallback), scored by the largest
/// master sum. Results do not depend on `workers`.
StressReport config_stress(int n_points, std::size_t trials, std::uint64_t seed, const GegenbauerExpansion& f,
                           unsigned workers = 1);

struct PositivityReport {
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  int kmax = 0;
  std::size_t forms_checked = 0;
  std::size_t negative = 0;
  Rational min_value;
  bool pass() const { return negative == 0 && forms_checked > 0; }
  std::string text() const;
};

/// Random exact rational configurations (N <= max_points, d in {3, 4})
/// and every quadratic form k = 0..kmax.
PositivityReport positivity_check(std::size_t trials, std::uint64_t seed, int kmax = 12, int max_points = 12,
                                  unsigned workers = 1);

}  // namespace kissing
