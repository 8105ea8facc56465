#include <cmath>

#include "doctest.h"
#include "kissing/errors.hpp"
#include "kissing/expansion_io.hpp"
#include "kissing/proofcheck.hpp"

using namespace kissing;
using namespace kissing::proof;

namespace {

// c_k G_k(1) = c_k and G_k(-1) = (-1)^k for Legendre, so f(+-1) are plain
// (alternating) coefficient sums.
Rational coeff_sum(const GegenbauerExpansion& e, int sign) {
  Rational s;
  for (const auto& [k, c] : e.coeffs()) s += (sign < 0 && k % 2 == 1) ? -c : c;
  return s;
}

const Certificate& published_certificate() {
  static const Certificate cert = run_full_verification();
  return cert;
}

}  // namespace

TEST_CASE("published constants") {
  const auto f = paper_f();
  CHECK(f.coeffs().size() == 7);
  CHECK(f.coeff(0) == Rational(9465869, 100000000));
  CHECK(f.coeff(9) == Rational(3616728, 100000000));
  CHECK(f.admissible());
  CHECK(coeff_sum(f, 1) == Rational(99999853, 100000000));
  CHECK(coeff_sum(f, -1) == Rational(22999929, 100000000));
  CHECK(coeff_sum(f, 1) + coeff_sum(f, -1) == Rational(122999782, 100000000));

  const auto c = make_constants();
  const Rational w(mpz_class(1), mpz_class("100000000000000000000"));
  for (const auto& iv : {c.cap_cos_boundary, c.i_lo, c.j_lo, c.j_hi}) CHECK(iv.width() <= w);
  CHECK(c.cap_cos_boundary.contains(Rational::from_double(-1 / std::sqrt(2.0))) == false);  // irrational, not a double
  CHECK(std::abs(c.cap_cos_boundary.midpoint().to_double() + 1 / std::sqrt(2.0)) < 1e-15);
  CHECK(std::abs(c.i_lo.midpoint().to_double() + std::cos(M_PI / 12)) < 1e-15);
  CHECK(std::abs(c.j_lo.midpoint().to_double() + std::sqrt(2.0) / 4 + 0.5) < 1e-15);
  CHECK(std::abs(c.j_hi.midpoint().to_double() + std::sqrt(2.0 / 3)) < 1e-15);
  // exact squares bracket the true values
  CHECK(square(c.cap_cos_boundary).contains(Rational(1, 2)));
  CHECK(square(c.j_hi).contains(Rational(2, 3)));
}

TEST_CASE("alpha and beta against floating point") {
  for (double t : {-0.99, -0.9, -0.8, -0.75}) {
    const double a = t / 2 - std::sqrt(3.0) / 2 * std::sqrt(1 - t * t);
    CHECK(alpha_expr().eval_double(t) == doctest::Approx(a).epsilon(1e-14));
    // alpha rotates by pi/3: cos(acos(t) + pi/3)
    CHECK(a == doctest::Approx(std::cos(std::acos(t) + M_PI / 3)).epsilon(1e-13));
  }
  for (double t : {-0.85, -0.83, -0.82}) {
    const double b = 2 * t / 3 - 2.0 / 3 * std::sqrt(1.5 - 2 * t * t);
    CHECK(beta_expr().eval_double(t) == doctest::Approx(b).epsilon(1e-14));
  }
}

TEST_CASE("endpoint identities") {
  const auto ids = endpoint_identities(make_constants());
  REQUIRE(ids.size() == 4);
  for (const auto& e : ids) {
    CHECK_MESSAGE(e.agrees, e.name);
    CHECK(e.lhs.width() <= Rational(1, 1000000000000000));
  }
}

TEST_CASE("derive_bound") {
  const auto b = derive_bound(Rational(123, 100), Rational(9465869, 100000000));
  CHECK(b.ratio == Rational(123000000, 9465869));
  CHECK(b.ratio.to_fixed(8) == "12.99405263");
  CHECK(b.max_n == 12);
  CHECK(std::abs(b.ratio.to_double() - 1.23 / 0.09465869) < 1e-12);
  CHECK_THROWS_AS(derive_bound(Rational(1), Rational(0)), DomainError);
  CHECK_THROWS_AS(derive_bound(Rational(1), Rational(-1, 2)), DomainError);
}

TEST_CASE("claims on the published f") {
  const auto& cert = published_certificate();
  REQUIRE(cert.claims.size() == 6);
  for (const auto& r : cert.claims) CHECK_MESSAGE(r.verdict == Verdict::Pass, to_string(r.id));
  CHECK(cert.admissible());
  CHECK(cert.all_pass());
  REQUIRE(cert.conclusion.has_value());
  CHECK(*cert.conclusion == 12);

  const auto& a = cert.claims[0];
  CHECK(a.signs.front().verdict.strict());
  CHECK(a.enclosure->hi().sign() < 0);

  // claim B: the t = -1 candidate carries f(1) + f(-1) exactly
  const auto& b = cert.claims[1];
  bool found = false;
  for (const auto& c : b.candidates)
    if (c.location == RationalInterval::point(-1)) {
      found = true;
      CHECK(c.value == RationalInterval::point(Rational(122999782, 100000000)));
    }
  CHECK(found);
  // float oracle for max f on [-1, -1/sqrt2]
  const Polynomial fp = expansion_to_poly(paper_f());
  double worst = -1e300;
  for (int i = 0; i <= 400000; ++i) worst = std::max(worst, fp.eval_double(-1 + (1 - 1 / std::sqrt(2.0)) * i / 400000.0));
  const double f1 = fp.eval_double(1);
  CHECK(b.enclosure->lo().to_double() <= f1 + worst + 1e-12);
  CHECK(b.enclosure->hi().to_double() >= f1 + worst - 1e-15);
  CHECK(b.enclosure->width() < Rational(1, 1000000000000));

  for (int i : {3, 5}) {
    const auto& r = cert.claims[static_cast<std::size_t>(i)];
    REQUIRE(r.enclosure.has_value());
    CHECK(r.slack()->sign() > 0);
    CHECK(*r.bnb_nodes > 0);
  }
}

TEST_CASE("fault injection") {
  FaultInjection low;
  low.threshold = Rational(122, 100);
  const auto c = inject(make_constants(), low);
  CHECK(check_claim(ClaimId::B_one_point, c).verdict == Verdict::Fail);
  CHECK(check_claim(ClaimId::D_two_point, c).verdict == Verdict::Pass);  // max there is about 1.2161

  FaultInjection neg;
  neg.negate_coefficients = {5};
  const auto cert = run_full_verification(inject(make_constants(), neg));
  CHECK_FALSE(cert.admissible());
  CHECK(cert.negative_coefficients == std::vector<int>{5});
  CHECK_FALSE(cert.all_pass());
  CHECK_FALSE(cert.conclusion.has_value());

  // a polynomial positive on [-1/sqrt2, 1/2] breaks claim A
  GegenbauerExpansion pos(3, {{0, Rational(1)}});
  CHECK(check_claim(ClaimId::A_negativity, make_constants(pos)).verdict == Verdict::Fail);
}

TEST_CASE("certificate json is stable") {
  const auto& cert = published_certificate();
  const std::string j1 = certificate_json(cert);
  CHECK(j1 == certificate_json(cert));
  CHECK(j1.find("\"ratio\": \"123000000/9465869\"") != std::string::npos);
  CHECK(j1.find("\"ratio_decimal\": \"12.99405263\"") != std::string::npos);
  CHECK(j1.find("\"conclusion\": 12") != std::string::npos);
  CHECK(read_expansion(j1) == paper_f());
}

TEST_CASE("expansion file format") {
  const auto f = paper_f();
  const std::string text = write_expansion(f);
  CHECK(text.rfind("dim 3\n0 9465869/100000000\n", 0) == 0);
  CHECK(read_expansion(text) == f);
  CHECK(read_expansion("# comment\ndim 4\n\n2 1/3\n") == GegenbauerExpansion(4, {{2, Rational(1, 3)}}));
  CHECK_THROWS_AS(read_expansion("0 1/2\n"), ParseError);
  CHECK_THROWS_AS(read_expansion("dim 3\nx 1\n"), ParseError);
  CHECK_THROWS_AS(read_expansion("dim 3\n1 1/0\n"), ParseError);
  CHECK_THROWS_AS(read_expansion("dim 3\n1 1 2\n"), ParseError);
  CHECK_THROWS_AS(read_expansion("dim 3\n1 1\n1 2\n"), ParseError);
}
