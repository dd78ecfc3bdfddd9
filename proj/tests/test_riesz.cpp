#include "test_util.hpp"

#include "matrad/riesz.hpp"

using namespace matrad;
using testutil::rel;

TEST_SUITE("riesz") {
  TEST_CASE("admissible Riesz orders") {
    CHECK(RieszWallachParam(5, 2, 1.0).discrete());
    CHECK_FALSE(RieszWallachParam(5, 2, 1.5).discrete());
    CHECK_THROWS_AS(RieszWallachParam(5, 2, 0.5), OrderNotAdmissible);
    CHECK_THROWS_AS(RieszWallachParam(5, 2, 4.0), OrderNotAdmissible);
  }

  TEST_CASE("existence window for power functions") {
    // alpha + m - 1 < lambda < n - m + 1
    CHECK_NOTHROW(check_riesz_exists(MatrixField::power(8, 2, 4.0), 2.0));
    CHECK_THROWS_AS(check_riesz_exists(MatrixField::power(8, 2, 3.0), 2.0), ExistenceViolation);
    CHECK_THROWS_AS(check_riesz_exists(MatrixField::power(8, 2, 7.0), 2.0), ExistenceViolation);
  }

  TEST_CASE("Cayley-Laplace eigen-factor vs differences") {
    Mat y = Mat::Zero(3, 2);
    y(0, 0) = 1.3;
    y(1, 1) = 0.9;
    y(2, 0) = 0.4;
    CHECK(rel(cayley_laplace_power(3, 2, 2.5, y, true), cayley_laplace_power(3, 2, 2.5, y)) < 1e-4);
    // det(d'd) is a polynomial operator: |x'x| itself goes to the constant B(2)
    CHECK(rel(cayley_laplace_power(3, 2, 2.0, y), cayley_laplace_factor(3, 2, 2.0)) < 1e-14);
  }

  TEST_CASE("Fourier transform of the Gaussian") {
    const FourierClosedForm ft{3, 2};
    CHECK(rel(ft(Mat::Zero(3, 2)), std::pow(M_PI, 3)) < 1e-15);
  }

  TEST_CASE("plane-wave inversion guards") {
    const auto g = MatrixField::gaussian(5, 2);
    CHECK_THROWS_AS(plane_wave_invert_even(g, Mat::Zero(5, 2), 1, MCConfig{}), OddKUnsupported);
    const auto c = MatrixField::custom(4, 2, [](const Mat& x) { return std::exp(-x.squaredNorm()); });
    CHECK_THROWS_AS(plane_wave_invert_even(c, Mat::Zero(4, 2), 2, MCConfig{}), PipelineNotClosedForm);
  }

  TEST_CASE("frame form of the Riesz potential needs k <= n - m") {
    CHECK_THROWS_AS(riesz_potential_int(MatrixField::gaussian(4, 2), Mat::Zero(4, 2), 3, MCConfig{}),
                    OrderNotAdmissible);
  }

  TEST_CASE("Semyanistyi potential at the origin, closed inner integral") {
    MCConfig cfg;
    cfg.n_samples = 50000;
    const MatrixPlane pl(StiefelFrame::canonical(5, 3), RectMatrix::zero(3, 2), 2);
    const auto e = semyanistyi_p(MatrixField::gaussian(5, 2), pl, 2.5, cfg);
    CHECK(z_score(e, MCEstimate::exact(semyanistyi_gaussian_origin(5, 2, 2, 2.5))) < 4.0);
  }
}
