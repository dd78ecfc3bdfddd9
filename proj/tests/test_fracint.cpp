#include "test_util.hpp"

#include "matrad/fracint.hpp"

using namespace matrad;
using testutil::random_pd;
using testutil::rel;
using testutil::uniform_in;

TEST_SUITE("fracint") {
  TEST_CASE("order zero is the identity") {
    SeededSampler s(41);
    const Mat sm = random_pd(2, s);
    const auto f = RadialFunction::shifted_det_power(2, -3.0);
    CHECK(gg_minus(f, FracOrder(2, 0.0), sm, MCConfig{}).value == f(sm));
    CHECK(gg_plus(f, FracOrder(2, 0.0), sm, MCConfig{}).value == f(sm));
    CHECK(FracOrder(2, 0.0).is_zero());
    CHECK(FracOrder(3, 1.0).is_half_integral());
    CHECK_THROWS_AS(FracOrder(3, 0.8), OrderNotInWallachSet);
  }

  TEST_CASE("Gaussian is a fixed point of I_-") {
    SeededSampler s(42);
    const auto g = RadialFunction::gaussian(2);
    for (double a : {0.5, 1.0, 2.5}) {
      const Mat sm = random_pd(2, s);
      CHECK(rel(gg_minus(g, FracOrder(2, a), sm, MCConfig{}).value, g(sm)) < 1e-14);
    }
  }

  TEST_CASE("closed forms agree with forced MC") {
    MCConfig cfg;
    cfg.n_samples = 40000;
    GGOptions mc;
    mc.force_mc = true;
    Mat sm(2, 2);
    sm << 1.2, 0.3, 0.3, 0.8;
    for (double a : {0.5, 1.5}) {
      const auto f = RadialFunction::shifted_from_lambda(2, 8);
      CHECK(z_score(gg_minus(f, FracOrder(2, a), sm, cfg), gg_minus(f, FracOrder(2, a), sm, cfg, mc)) < 4.0);
      const auto g = RadialFunction::det_power(2, 0.7);
      CHECK(z_score(gg_plus(g, FracOrder(2, a), sm, cfg), gg_plus(g, FracOrder(2, a), sm, cfg, mc)) < 4.0);
    }
  }

  TEST_CASE("symbolic D_+ telescopes the Bernstein polynomial (property)") {
    SeededSampler s(43);
    for (int i = 0; i < 30; ++i) {
      const int m = 1 + i % 3;
      const double e = uniform_in(s, -3, 3);
      const Mat sm = random_pd(m, s);
      const auto f = RadialFunction::det_power(m, e);
      CHECK(rel(d_plus(f)(sm), bernstein_b(m, e) * std::pow(sm.determinant(), e - 1)) < 1e-12);
      // D_- differs by (-1)^m per application
      CHECK(rel(d_minus(f)(sm), (m % 2 ? -1.0 : 1.0) * d_plus(f)(sm)) < 1e-14);
    }
  }

  TEST_CASE("inversion needs even k") {
    const auto phi = gg_minus_image(RadialFunction::shifted_from_lambda(2, 9), FracOrder(2, 0.5));
    CHECK_THROWS_AS(invert_gg_minus_closed(phi, 1), OddOrderUnsupported);
  }

  TEST_CASE("divergent images are refused") {
    CHECK_THROWS_AS(gg_minus_image(RadialFunction::shifted_from_lambda(2, 2.0), FracOrder(2, 1.0)), DivergentIntegral);
    CHECK_THROWS_AS(gg_plus(RadialFunction::det_power(2, -1.5), FracOrder(2, 1.0), Mat::Identity(2, 2), MCConfig{}),
                    DivergentIntegral);
  }
}
