#include "kissing/spheregeom.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <thread>

#include "kissing/errors.hpp"
#include "kissing/sturm.hpp"

namespace kissing {

namespace {

// Runs body(i) for i in [0, n) on `workers` threads with a static
// interleaved partition. Callers store per-index results and reduce in index
// order, so the outcome does not depend on scheduling.
template <class Body>
void parallel_for(std::size_t n, unsigned workers, const Body& body) {
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < n; i += workers) body(i);
    });
  for (auto& t : pool) t.join();
}

std::string fmt(double v, int places = 12) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", places, v);
  return buf;
}

using Vec3 = std::array<double, 3>;

double dot3(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

Vec3 normalized(Vec3 v) {
  const double n = std::sqrt(dot3(v, v));
  return {v[0] / n, v[1] / n, v[2] / n};
}

Vec3 uniform_sphere(SplitMix64& rng) {
  const double z = 2 * rng.uniform() - 1;
  const double phi = 2 * std::numbers::pi * rng.uniform();
  const double s = std::sqrt(std::max(0.0, 1 - z * z));
  return {s * std::cos(phi), s * std::sin(phi), z};
}

double max_pair_inner(const std::vector<Vec3>& pts) {
  double m = -1;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) m = std::max(m, dot3(pts[i], pts[j]));
  return m;
}

// Pushes overlapping pairs apart until every inner product is below
// target; returns false when the iteration budget runs out.
bool repulse(std::vector<Vec3>& pts, double target) {
  const double tau = target - 0.01;
  for (int iter = 0; iter < 5000; ++iter) {
    if (max_pair_inner(pts) <= target) return true;
    std::vector<Vec3> grad(pts.size(), Vec3{0, 0, 0});
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t j = i + 1; j < pts.size(); ++j) {
        const double excess = dot3(pts[i], pts[j]) - tau;
        if (excess <= 0) continue;
        for (int k = 0; k < 3; ++k) {
          grad[i][static_cast<std::size_t>(k)] += excess * pts[j][static_cast<std::size_t>(k)];
          grad[j][static_cast<std::size_t>(k)] += excess * pts[i][static_cast<std::size_t>(k)];
        }
      }
    for (std::size_t i = 0; i < pts.size(); ++i)
      pts[i] = normalized({pts[i][0] - 0.5 * grad[i][0], pts[i][1] - 0.5 * grad[i][1], pts[i][2] - 0.5 * grad[i][2]});
  }
  return max_pair_inner(pts) <= target;
}

std::optional<std::vector<Vec3>> sample_configuration(int n, SplitMix64& rng) {
  constexpr double kTarget = 0.5 - 1e-9;
  std::vector<Vec3> pts;
  for (int i = 0; i < n; ++i) {
    bool placed = false;
    for (int attempt = 0; attempt < 2000 && !placed; ++attempt) {
      const Vec3 p = uniform_sphere(rng);
      bool ok = true;
      for (const auto& q : pts)
        if (dot3(p, q) > kTarget) {
          ok = false;
          break;
        }
      if (ok) {
        pts.push_back(p);
        placed = true;
      }
    }
    if (!placed) break;
  }
  if (static_cast<int>(pts.size()) == n) return pts;
  for (int restart = 0; restart < 5; ++restart) {
    std::vector<Vec3> fill = pts;
    while (static_cast<int>(fill.size()) < n) fill.push_back(uniform_sphere(rng));
    if (repulse(fill, kTarget)) return fill;
    pts.clear();
  }
  return std::nullopt;
}

}  // namespace

// ------------------------------------------------------------------ rng

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double SplitMix64::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

long SplitMix64::range(long lo, long hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<long>(next() % span);
}

// --------------------------------------------------------------- points

SpherePoint SpherePoint::exact(std::vector<Rational> coords) {
  Rational n2;
  for (const auto& x : coords) n2 += x * x;
  if (n2 != Rational(1)) throw DomainError("SpherePoint: squared norm is " + n2.str() + ", not 1");
  SpherePoint p;
  p.mode_ = PointMode::ExactRational;
  p.exact_ = std::move(coords);
  return p;
}

SpherePoint SpherePoint::approx(std::vector<double> coords) {
  double n2 = 0;
  for (double x : coords) n2 += x * x;
  if (std::abs(std::sqrt(n2) - 1) > 1e-12) throw DomainError("SpherePoint: not a unit vector");
  SpherePoint p;
  p.mode_ = PointMode::Float;
  p.float_ = std::move(coords);
  return p;
}

std::vector<double> SpherePoint::coords() const {
  if (mode_ == PointMode::Float) return float_;
  std::vector<double> out;
  for (const auto& x : exact_) out.push_back(x.to_double());
  return out;
}

std::string SpherePoint::str() const {
  std::string s = "(";
  for (std::size_t i = 0; i < dim(); ++i) {
    if (i) s += ", ";
    s += mode_ == PointMode::ExactRational ? exact_[i].str() : fmt(float_[i]);
  }
  return s + ")";
}

SpherePoint rational_sphere_point(const Rational& a, const Rational& b) { return rational_sphere_point({a, b}); }

SpherePoint rational_sphere_point(const std::vector<Rational>& u) {
  Rational n2;
  for (const auto& x : u) n2 += x * x;
  const Rational den = n2 + Rational(1);
  std::vector<Rational> out;
  for (const auto& x : u) out.push_back(Rational(2) * x / den);
  out.push_back((n2 - Rational(1)) / den);
  return SpherePoint::exact(std::move(out));
}

std::variant<Rational, double> inner(const SpherePoint& u, const SpherePoint& v) {
  if (u.mode() != v.mode()) throw ModeError("inner: mixed exact and float points");
  if (u.dim() != v.dim()) throw ModeError("inner: dimension mismatch");
  if (u.mode() == PointMode::ExactRational) {
    Rational s;
    for (std::size_t i = 0; i < u.dim(); ++i) s += u.exact_coords()[i] * v.exact_coords()[i];
    return s;
  }
  return inner_float(u, v);
}

double inner_float(const SpherePoint& u, const SpherePoint& v) {
  if (u.mode() != v.mode()) throw ModeError("inner: mixed exact and float points");
  if (u.dim() != v.dim()) throw ModeError("inner: dimension mismatch");
  const auto a = u.coords();
  const auto b = v.coords();
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

bool Configuration::valid(double tol) const {
  const double bound = min_cos_sep.to_double() + tol;
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      const auto ip = inner(points[i], points[j]);
      if (const auto* r = std::get_if<Rational>(&ip)) {
        if (*r > min_cos_sep) return false;
      } else if (std::get<double>(ip) > bound) {
        return false;
      }
    }
  return true;
}

double Configuration::max_inner() const {
  double m = -1;
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j) m = std::max(m, inner_float(points[i], points[j]));
  return m;
}

std::string Configuration::dump() const {
  std::ostringstream out;
  out << "points " << points.size() << "\n";
  for (const auto& p : points) out << p.str() << "\n";
  out << "inner products\n";
  for (const auto& p : points) {
    for (std::size_t j = 0; j < points.size(); ++j) {
      if (j) out << " ";
      const auto ip = inner(p, points[j]);
      if (const auto* r = std::get_if<Rational>(&ip)) out << r->str();
      else out << fmt(std::get<double>(ip));
    }
    out << "\n";
  }
  return out.str();
}

double spherical_cos_rule(double a, double b, double gamma) {
  return std::cos(a) * std::cos(b) + std::sin(a) * std::sin(b) * std::cos(gamma);
}

// ------------------------------------------------------------ cap lemma

namespace {

struct Box {
  RationalInterval x, y, w;
  int depth = 0;
};

// Lower bound of sqrt(xy) + sqrt((1-x)(1-y)) w over the box.
Rational cos_rule_lower(const Box& b) {
  const Rational eps = Rational::pow2(-60);
  const RationalInterval one = RationalInterval::point(Rational(1));
  const auto s1 = sqrt_enclose(b.x * b.y, eps);
  const auto s2 = sqrt_enclose((one - b.x) * (one - b.y), eps);
  return s1.lo() + s2.lo() * b.w.lo();
}

}  // namespace

std::string CapLemmaReport::text() const {
  std::ostringstream out;
  out << "cap-lemma analytic: " << (analytic_pass ? "PASS" : "FAIL") << " infimum in " << infimum.str()
      << " boxes " << boxes << " minimum only at a = b = pi/4, gamma = pi/2: " << (minimum_only_at_corner ? "yes" : "no")
      << "\n";
  out << "cap-lemma sampling: samples " << samples << " seed " << seed << " counterexamples " << counterexamples
      << " largest minimal separation " << fmt(max_min_separation_deg, 6) << " deg\n";
  if (counterexample) {
    out << "counterexample:";
    for (const auto& p : *counterexample) out << " " << p.str();
    out << "\n";
  }
  out << "cap-lemma: " << (pass() ? "PASS" : "FAIL") << "\n";
  return out.str();
}

CapLemmaReport verify_cap_lemma(std::size_t samples, std::uint64_t seed, unsigned workers) {
  CapLemmaReport rep;
  rep.samples = samples;
  rep.seed = seed;

  // analytic part: x = cos^2 a, y = cos^2 b, w = cos gamma
  const Rational half(1, 2);
  const Rational small = Rational::pow2(-12);
  std::vector<Box> stack{{RationalInterval(half, Rational(1)), RationalInterval(half, Rational(1)),
                          RationalInterval(Rational(0), Rational(1)), 0}};
  std::optional<Rational> min_lower;
  rep.minimum_only_at_corner = true;
  while (!stack.empty()) {
    const Box b = stack.back();
    stack.pop_back();
    ++rep.boxes;
    const Rational lower = cos_rule_lower(b);
    if (!min_lower || lower < *min_lower) min_lower = lower;
    if (lower > half) continue;
    const bool corner = b.x.lo() == half && b.y.lo() == half && b.w.lo().is_zero();
    const Rational widest = max(b.x.width(), max(b.y.width(), b.w.width()));
    if (corner && widest <= small) continue;
    if (b.depth >= 60) {
      rep.minimum_only_at_corner = false;
      continue;
    }
    Box l = b;
    Box r = b;
    l.depth = r.depth = b.depth + 1;
    RationalInterval Box::*axis = b.x.width() == widest ? &Box::x : b.y.width() == widest ? &Box::y : &Box::w;
    const Rational m = (b.*axis).midpoint();
    l.*axis = RationalInterval((b.*axis).lo(), m);
    r.*axis = RationalInterval(m, (b.*axis).hi());
    stack.push_back(r);
    stack.push_back(l);
  }
  // the corner value sqrt(1/4) + 0 is exactly 1/2
  rep.infimum = RationalInterval(min(*min_lower, half), half);
  rep.analytic_pass = *min_lower >= half;

  // randomized part: 4 points in the open cap of radius pi/4 around the south pole
  struct Sample {
    double min_sep_deg = 0;
    bool counter = false;
    std::vector<Vec3> pts;
  };
  std::vector<Sample> out(samples);
  const double c45 = std::cos(std::numbers::pi / 4);
  parallel_for(samples, workers, [&](std::size_t i) {
    auto rng = SplitMix64::for_trial(seed, i);
    std::vector<Vec3> pts;
    for (int k = 0; k < 4; ++k) {
      double c;
      do c = c45 + (1 - c45) * rng.uniform();
      while (c <= c45);
      const double phi = 2 * std::numbers::pi * rng.uniform();
      const double s = std::sqrt(1 - c * c);
      pts.push_back({s * std::cos(phi), s * std::sin(phi), -c});
    }
    const double mx = max_pair_inner(pts);
    out[i].min_sep_deg = std::acos(std::min(1.0, mx)) * 180 / std::numbers::pi;
    out[i].counter = mx <= 0.5;
    if (out[i].counter) out[i].pts = pts;
  });
  for (const auto& s : out) {
    rep.max_min_separation_deg = std::max(rep.max_min_separation_deg, s.min_sep_deg);
    if (!s.counter) continue;
    if (++rep.counterexamples == 1) {
      std::vector<SpherePoint> pts;
      for (const auto& p : s.pts) pts.push_back(SpherePoint::approx({p[0], p[1], p[2]}));
      rep.counterexample = pts;
    }
  }
  return rep;
}

// --------------------------------------------------------- icosahedron

Configuration icosahedron_witness() {
  const double phi = (1 + std::sqrt(5.0)) / 2;
  Configuration c;
  for (double s1 : {-1.0, 1.0})
    for (double s2 : {-1.0, 1.0})
      for (const Vec3& v : {Vec3{0, s1, s2 * phi}, Vec3{s1, s2 * phi, 0}, Vec3{s2 * phi, 0, s1}}) {
        const Vec3 u = normalized(v);
        c.points.push_back(SpherePoint::approx({u[0], u[1], u[2]}));
      }
  return c;
}

MasterSums master_sums(const Configuration& c, const GegenbauerExpansion& f) {
  const Polynomial p = expansion_to_poly(f);
  MasterSums ms;
  ms.worst = -INFINITY;
  for (const auto& x : c.points) {
    double s = 0;
    for (const auto& y : c.points) s += p.eval_double(std::clamp(inner_float(x, y), -1.0, 1.0));
    ms.per_point.push_back(s);
    ms.worst = std::max(ms.worst, s);
  }
  return ms;
}

bool IcosahedronReport::pass(const Rational& threshold) const {
  return vertices == 12 && max_inner <= 0.5 + 1e-12 && min_separation_rad >= std::acos(1 / std::sqrt(5.0)) - 1e-12 &&
         worst_master_sum <= threshold.to_double() + 1e-9 && exact_master_sum.hi() <= threshold;
}

std::string IcosahedronReport::text() const {
  std::ostringstream out;
  out << "icosahedron: vertices " << vertices << " max inner " << fmt(max_inner) << " min separation "
      << fmt(min_separation_rad) << " rad (arccos(1/sqrt5) = " << fmt(std::acos(1 / std::sqrt(5.0))) << ")\n";
  out << "icosahedron: worst master sum " << fmt(worst_master_sum) << " certified " << exact_master_sum.lo().to_decimal(15)
      << " .. " << exact_master_sum.hi().to_decimal(15) << "\n";
  return out.str();
}

IcosahedronReport icosahedron_report(const GegenbauerExpansion& f) {
  const auto c = icosahedron_witness();
  IcosahedronReport r;
  r.vertices = c.points.size();
  r.max_inner = c.max_inner();
  r.min_separation_rad = std::acos(r.max_inner);
  r.worst_master_sum = master_sums(c, f).worst;
  const Polynomial p = expansion_to_poly(f);
  const auto s = sqrt_enclose(RationalInterval::point(Rational(1, 5)), Rational::pow2(-80));
  r.exact_master_sum = RationalInterval::point(p.eval(Rational(1)) + p.eval(Rational(-1))) +
                       Rational(5) * poly_range(p, s) + Rational(5) * poly_range(p, -s);
  return r;
}

// --------------------------------------------------------------- stress

std::string StressReport::text() const {
  std::ostringstream out;
  out << "stress: n " << n_points << " trials " << trials << " seed " << seed << " sampling failures "
      << sampling_failures << " worst master sum " << fmt(worst) << " (trial " << worst_trial << ", max inner "
      << fmt(worst_max_inner) << ")\n";
  return out.str();
}

StressReport config_stress(int n_points, std::size_t trials, std::uint64_t seed, const GegenbauerExpansion& f,
                           unsigned workers) {
  if (n_points < 1 || n_points > 12) throw DomainError("config_stress: n_points must be in [1, 12]");
  if (trials < 1) throw DomainError("config_stress: trials must be >= 1");
  const Polynomial p = expansion_to_poly(f);
  struct Trial {
    bool ok = false;
    double worst = 0;
    double max_inner = 0;
  };
  std::vector<Trial> res(trials);
  parallel_for(trials, workers, [&](std::size_t t) {
    auto rng = SplitMix64::for_trial(seed, t);
    const auto pts = sample_configuration(n_points, rng);
    if (!pts) return;
    double worst = -INFINITY;
    for (const auto& x : *pts) {
      double s = 0;
      for (const auto& y : *pts) s += p.eval_double(std::clamp(dot3(x, y), -1.0, 1.0));
      worst = std::max(worst, s);
    }
    res[t] = {true, worst, pts->size() > 1 ? max_pair_inner(*pts) : -1.0};
  });
  StressReport rep;
  rep.n_points = n_points;
  rep.trials = trials;
  rep.seed = seed;
  rep.worst = -INFINITY;
  for (std::size_t t = 0; t < trials; ++t) {
    if (!res[t].ok) {
      ++rep.sampling_failures;
      continue;
    }
    if (res[t].worst > rep.worst) {
      rep.worst = res[t].worst;
      rep.worst_trial = t;
      rep.worst_max_inner = res[t].max_inner;
    }
  }
  return rep;
}

// ----------------------------------------------------------- positivity

std::string PositivityReport::text() const {
  std::ostringstream out;
  out << "prop1: trials " << trials << " seed " << seed << " kmax " << kmax << " forms " << forms_checked
      << " negative " << negative << " min value " << min_value.str() << "\n";
  return out.str();
}

PositivityReport positivity_check(std::size_t trials, std::uint64_t seed, int kmax, int max_points, unsigned workers) {
  struct Trial {
    std::size_t forms = 0;
    std::size_t negative = 0;
    Rational min_value;
  };
  std::vector<Trial> res(trials);
  parallel_for(trials, workers, [&](std::size_t t) {
    auto rng = SplitMix64::for_trial(seed, t);
    const int d = static_cast<int>(rng.range(3, 4));
    const auto n = static_cast<int>(rng.range(1, max_points));
    std::vector<std::vector<Rational>> pts;
    for (int i = 0; i < n; ++i) {
      std::vector<Rational> u;
      for (int j = 0; j < d - 1; ++j) u.emplace_back(rng.range(-12, 12), rng.range(1, 7));
      pts.push_back(rational_sphere_point(u).exact_coords());
    }
    const auto forms = positivity_quadforms(pts, d, kmax);
    Trial tr;
    tr.forms = forms.size();
    tr.min_value = forms.front();
    for (const auto& v : forms) {
      if (v.sign() < 0) ++tr.negative;
      tr.min_value = min(tr.min_value, v);
    }
    res[t] = std::move(tr);
  });
  PositivityReport rep;
  rep.trials = trials;
  rep.seed = seed;
  rep.kmax = kmax;
  bool first = true;
  for (const auto& tr : res) {
    rep.forms_checked += tr.forms;
    rep.negative += tr.negative;
    if (first || tr.min_value < rep.min_value) rep.min_value = tr.min_value;
    first = false;
  }
  return rep;
}

}  // namespace kissing
