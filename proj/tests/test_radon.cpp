#include "test_util.hpp"

#include "matrad/radon.hpp"

using namespace matrad;
using testutil::rel;

TEST_SUITE("radon") {
  TEST_CASE("plane points satisfy xi'x = t (property)") {
    SeededSampler s(51);
    for (int i = 0; i < 30; ++i) {
      const int n = 4 + i % 3, m = 1 + i % 2, k = 1 + i % (n - m);
      const Mat xi = haar_frame(n, n - k, s);
      const Mat rot = complete_rotation(xi);
      const Mat t = gaussian_mat(n - k, m, s), w = gaussian_mat(k, m, s);
      const Mat x = plane_point(rot, w, t, k);
      CHECK((xi.transpose() * x - t).norm() < 1e-10);
    }
  }

  TEST_CASE("existence guard at the sharp thresholds") {
    CHECK_THROWS_AS(check_radon_exists(MatrixField::power(5, 2, 3.0), 2), ExistenceViolation);
    CHECK_NOTHROW(check_radon_exists(MatrixField::power(5, 2, 3.5), 2));
    CHECK_THROWS_AS(check_radon_exists(MatrixField::counterexample(5, 2, 2.0), 2), ExistenceViolation);
    CHECK_NOTHROW(check_radon_exists(MatrixField::counterexample(5, 2, 1.9), 2));
    CHECK_THROWS_AS(check_radon_exists(MatrixField::custom(5, 2, [](const Mat&) { return 1.0; }, 3.0), 2),
                    ExistenceViolation);
  }

  TEST_CASE("closed radial images") {
    const auto f = MatrixField::shifted_power(5, 2, 8);
    MatrixPlane pl(StiefelFrame::canonical(5, 3), RectMatrix::zero(3, 2), 2);
    CHECK(rel(radon(f, pl, MCConfig{}).value, lambda1(5, 2, 2, 8)) < 1e-13);
    const auto g = MatrixField::gaussian(5, 2);
    CHECK(rel(radon(g, pl, MCConfig{}).value, M_PI * M_PI) < 1e-13);
  }

  TEST_CASE("closed dual transform needs full rank") {
    const auto phi = PlaneFunction::radial(5, 2, RadialFunction::det_power(2, 1.5));
    Mat x = Mat::Zero(5, 2);
    x(0, 0) = 1;
    CHECK_THROWS_AS(dual_radon_radial(phi, x), RankDeficient);
  }

  TEST_CASE("shifted dual rejects a z with the wrong Gram matrix") {
    const auto phi = PlaneFunction::radial(5, 2, RadialFunction::gaussian(2));
    const Mat z = Mat::Identity(3, 2);
    CHECK_THROWS_AS(shifted_dual_radon(phi, Mat::Zero(5, 2), 2.0 * Mat::Identity(2, 2), z, MCConfig{}),
                    DomainError);
  }

  TEST_CASE("mean-value inversion needs even k and a closed pipeline") {
    CHECK_THROWS_AS(mean_value_invert(MatrixField::gaussian(5, 2), Mat::Zero(5, 2), 1), OddOrderUnsupported);
    const auto c = MatrixField::custom(4, 2, [](const Mat& x) { return std::exp(-x.squaredNorm()); });
    CHECK_THROWS_AS(mean_value_invert(c, Mat::Zero(4, 2), 2), PipelineNotClosedForm);
    CHECK(rel(mean_value_invert(MatrixField::gaussian(4, 2), Mat::Zero(4, 2), 2), 1.0) < 1e-2);
  }
}
