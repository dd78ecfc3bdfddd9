#include "test_util.hpp"

#include "matrad/symcone.hpp"

using namespace matrad;
using testutil::random_pd;

TEST_SUITE("symcone") {
  TEST_CASE("symmetric storage averages the triangles") {
    Mat a(2, 2);
    a << 1.0, 2.0 + 1e-14, 2.0, 3.0;
    SymmetricMatrix s(a);
    CHECK(s(0, 1) == s(1, 0));
    CHECK(s.trace() == doctest::Approx(4.0));
    Mat bad(2, 2);
    bad << 1, 2, 3, 4;
    CHECK_THROWS_AS(SymmetricMatrix{bad}, DomainError);
  }

  TEST_CASE("cone membership is certified by Cholesky") {
    Mat a(2, 2);
    a << 1, 2, 2, 1;
    CHECK_FALSE(is_positive_definite(a));
    CHECK_THROWS_AS(PositiveDefiniteMatrix{a}, NotPSD);
    PositiveDefiniteMatrix p(Mat::Identity(3, 3) * 2.0);
    CHECK(p.det() == doctest::Approx(8.0));
    CHECK(p.log_det() == doctest::Approx(std::log(8.0)));
  }

  TEST_CASE("polar decomposition reconstructs x (property)") {
    SeededSampler s(11);
    for (int i = 0; i < 40; ++i) {
      const int m = 1 + i % 3, n = m + i % 4;
      const Mat x = gaussian_mat(n, m, s);
      const auto [v, r] = polar_decompose(RectMatrix(x));
      CHECK((v.mat() * psd_sqrt(r.dense()) - x).norm() < 1e-10);
      CHECK((v.mat().transpose() * v.mat() - Mat::Identity(m, m)).norm() < 1e-12);
    }
    Mat thin = Mat::Zero(3, 2);
    thin(0, 0) = 1;
    CHECK_THROWS_AS(polar_decompose(RectMatrix(thin)), RankDeficient);
  }

  TEST_CASE("completed rotation carries the frame in its trailing columns") {
    SeededSampler s(12);
    for (int i = 0; i < 30; ++i) {
      const int n = 3 + i % 4, q = 1 + i % (n - 1);
      const Mat xi = haar_frame(n, q, s);
      const Mat g = complete_rotation(xi);
      CHECK((g.transpose() * g - Mat::Identity(n, n)).norm() < 1e-12);
      CHECK((g.rightCols(q) - xi).norm() < 1e-12);
      CHECK(g.determinant() == doctest::Approx(1.0));
    }
  }

  TEST_CASE("matrix distance is invariant under plane motions (property)") {
    SeededSampler s(13);
    for (int i = 0; i < 20; ++i) {
      const int n = 5, m = 2, k = 2;
      const Mat xi = haar_frame(n, n - k, s);
      const Mat t = gaussian_mat(n - k, m, s), x = gaussian_mat(n, m, s);
      const Mat th = haar_orthogonal(n - k, s);
      const auto d1 = matrix_distance(RectMatrix(x), MatrixPlane(StiefelFrame(xi), RectMatrix(t), k)).dense();
      const auto d2 =
          matrix_distance(RectMatrix(x), MatrixPlane(StiefelFrame(xi * th.transpose()), RectMatrix(th * t), k)).dense();
      CHECK((d1 - d2).norm() < 1e-10);
    }
  }

  TEST_CASE("psd square root and rank") {
    SeededSampler s(14);
    const Mat a = random_pd(3, s);
    const Mat r = psd_sqrt(a);
    CHECK((r * r - a).norm() < 1e-10);
    Mat low = Mat::Zero(3, 2);
    low.col(0) << 1, 2, 3;
    low.col(1) = 2 * low.col(0);
    CHECK(rank(low) == 1);
    CHECK(gram_det(low) == doctest::Approx(0.0).epsilon(1e-10));
  }
}
