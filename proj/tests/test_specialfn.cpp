#include "test_util.hpp"

#include "matrad/riesz.hpp"
#include "matrad/specialfn.hpp"

using namespace matrad;
using testutil::rel;
using testutil::uniform_in;

TEST_SUITE("specialfn") {
  TEST_CASE("rank-one gamma is the ordinary gamma") {
    for (double a : {0.3, 1.0, 2.5, 7.25}) CHECK(rel(gamma_m(1, a), std::tgamma(a)) < 1e-14);
    CHECK(rel(gamma_m(2, 3.0), std::sqrt(M_PI) * std::tgamma(3.0) * std::tgamma(2.5)) < 1e-14);
  }

  TEST_CASE("poles name the offending factor") {
    try {
      gamma_m(3, 1.0);  // Gamma(1), Gamma(1/2), Gamma(0)
      FAIL("expected a pole");
    } catch (const PoleError& e) {
      CHECK(e.factor() == 2);
    }
    CHECK(at_gamma_pole(-3.0));
    CHECK_FALSE(at_gamma_pole(-2.5));
    // the Gaussian zeta integral continues analytically but keeps the poles
    CHECK_THROWS_AS(zeta_gaussian(4, 2, 1.0), PoleError);
    CHECK(std::isfinite(zeta_gaussian(4, 2, 0.5)));
  }

  TEST_CASE("beta through gammas (property)") {
    SeededSampler s(21);
    for (int i = 0; i < 50; ++i) {
      const int m = 1 + i % 3;
      const double a = uniform_in(s, 0.5 * m, 6.0), b = uniform_in(s, 0.5 * m, 6.0);
      CHECK(rel(beta_m(m, a, b), gamma_m(m, a) * gamma_m(m, b) / gamma_m(m, a + b)) < 1e-12);
      CHECK(rel(beta_m(m, a, b), beta_m(m, b, a)) < 1e-12);
    }
  }

  TEST_CASE("admissible orders") {
    CHECK(WallachParam(3, 1.0).discrete());
    CHECK(WallachParam(3, 1.0).twice() == 2);
    CHECK_FALSE(WallachParam(3, 1.7).discrete());
    CHECK_THROWS_AS(WallachParam(3, 0.7), OrderNotInWallachSet);
    CHECK_THROWS_AS(WallachParam(2, -0.5), OrderNotInWallachSet);
  }

  TEST_CASE("rational bookkeeping") {
    const auto c = ConeConstants::make(5, 2, 2);
    CHECK(c.d == Rational(3, 2));
    CHECK(c.p0 == Rational(2));
    CHECK(c.delta == Rational(0));
    CHECK((Rational(1, 2) + Rational(1, 3)) == Rational(5, 6));
    CHECK(Rational(1, 3) < Rational(1, 2));
  }

  TEST_CASE("radon constants refuse divergent exponents") {
    CHECK_THROWS_AS(lambda1(5, 2, 2, 3.0), DomainError);
    CHECK_THROWS_AS(lambda2(5, 2, 2, 2.5), DomainError);
    CHECK(lambda1(5, 2, 2, 8.0) > 0);
    CHECK_THROWS_AS(fuglede_constant(4, 2, 3), DomainError);
  }

  TEST_CASE("Pochhammer and Bernstein agree for m = 1") {
    SeededSampler s(22);
    for (int i = 0; i < 20; ++i) {
      const double a = uniform_in(s, -3, 5);
      CHECK(rel(bernstein_b(1, a), a) < 1e-15);
      CHECK(rel(pochhammer(a, 3), a * (a + 1) * (a + 2)) < 1e-14);
    }
  }

  TEST_CASE("Riesz normalization matches the Euclidean one for m = 1") {
    // 2^a pi^{n/2} Gamma(a/2) / Gamma((n-a)/2)
    for (double a : {0.5, 1.0, 2.0}) {
      const int n = 5;
      const double e = std::pow(2.0, a) * std::pow(M_PI, 0.5 * n) * std::tgamma(0.5 * a) / std::tgamma(0.5 * (n - a));
      CHECK(rel(riesz_gamma(n, 1, a), e) < 1e-13);
    }
  }
}
