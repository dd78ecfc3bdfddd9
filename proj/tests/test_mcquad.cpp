#include "test_util.hpp"

#include <cmath>

#include "matrad/mcquad.hpp"
#include "matrad/specialfn.hpp"

using namespace matrad;

TEST_SUITE("mcquad") {
  TEST_CASE("same seed, same bits; different seed, different bits") {
    MCConfig cfg;
    cfg.n_samples = 20000;
    auto draw = [](SeededSampler& s) { return std::exp(-gaussian_mat(2, 2, s).squaredNorm()); };
    const auto a = mc_integrate(cfg, draw), b = mc_integrate(cfg, draw);
    CHECK(a.value == b.value);
    CHECK(a.std_err == b.std_err);
    const auto c = mc_integrate(cfg.with_seed(99), draw);
    CHECK(a.value != c.value);
    CHECK(cfg.fork(1).seed != cfg.fork(2).seed);
  }

  TEST_CASE("estimate arithmetic") {
    const MCEstimate a{2.0, 0.3, 10}, b{1.0, 0.4, 10};
    CHECK((a + b).value == doctest::Approx(3.0));
    CHECK((a + b).std_err == doctest::Approx(0.5));
    CHECK((2.0 * a).std_err == doctest::Approx(0.6));
    CHECK(z_score(a, b) == doctest::Approx(2.0));
    CHECK(z_score(MCEstimate::exact(1), MCEstimate::exact(1)) == 0.0);
  }

  TEST_CASE("rare non-finite draws count as zero, frequent ones raise") {
    MCConfig cfg;
    cfg.n_samples = 20000;
    auto rare = mc_integrate(cfg.with_samples(8192), [&](SeededSampler& s) {
      return s.uniform() < 1e-5 ? std::nan("") : 1.0;
    });
    CHECK(rare.value == doctest::Approx(1.0).epsilon(1e-3));
    CHECK_THROWS_AS(mc_integrate(cfg, [](SeededSampler& s) { return s.uniform() < 0.01 ? std::nan("") : 1.0; }),
                    NonFinite);
  }

  TEST_CASE("Haar frames are orthonormal and unbiased in sign") {
    SeededSampler s(31);
    double mean = 0;
    for (int i = 0; i < 4000; ++i) {
      const Mat v = haar_frame(4, 2, s);
      CHECK((v.transpose() * v - Mat::Identity(2, 2)).norm() < 1e-12);
      mean += v(0, 0);
    }
    CHECK(std::abs(mean / 4000) < 0.05);
  }

  TEST_CASE("det-power proposal is isotropic: off-center Gaussians integrate to pi^{km/2}") {
    // an offset in a non-leading row is what a non-isotropic sampler gets wrong
    MCConfig cfg;
    cfg.n_samples = 100000;
    for (int k : {1, 3}) {
      Mat a = Mat::Zero(k, 2);
      a(k - 1, 0) = 1.5;
      a(k - 1, 1) = -1.0;
      const auto e = integrate_matrix_space([&](const Mat& w) { return std::exp(-(w - a).squaredNorm()); },
                                            MatrixDensity::det_power(k, 2, 2.5), cfg);
      CHECK(z_score(e, MCEstimate::exact(std::pow(M_PI, k))) < 4.0);
    }
  }

  TEST_CASE("matrix densities are normalized") {
    MCConfig cfg;
    cfg.n_samples = 50000;
    // E_p[q/p] = 1 for q another density
    const auto p = MatrixDensity::student(2, 2, 3.0), q = MatrixDensity::det_power(2, 2, 3.0, 0.8);
    const auto e = mc_integrate(cfg, [&](SeededSampler& s) {
      const Mat w = p.sample(s);
      return std::exp(q.log_density(w) - p.log_density(w));
    });
    CHECK(std::abs(e.value - 1.0) < 4 * e.std_err + 1e-3);
  }

  TEST_CASE("cone sampler: volume of the unit interval") {
    MCConfig cfg;
    cfg.n_samples = 100000;
    // int_0^I dr = B_m(d, d) with d = (m+1)/2
    const auto e = integrate_cone([](const Mat&) { return 1.0; }, 2,
                                  ConeDomain::interval(Mat::Zero(2, 2), Mat::Identity(2, 2)), 0.0, cfg);
    CHECK(z_score(e, MCEstimate::exact(beta_m(2, 1.5, 1.5))) < 4.0);
  }
}
