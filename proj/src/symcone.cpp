#include "matrad/symcone.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace matrad {

namespace {

bool all_finite(const Mat& a) { return a.allFinite(); }

std::string dims(const Mat& a) {
  return std::to_string(a.rows()) + "x" + std::to_string(a.cols());
}

}  // namespace

int SymmetricMatrix::index(int m, int i, int j) {
  if (i > j) std::swap(i, j);
  // row-major packed upper triangle
  return i * m - i * (i - 1) / 2 + (j - i);
}

SymmetricMatrix::SymmetricMatrix(const Mat& a) {
  if (a.rows() != a.cols()) throw DomainError("symmetric matrix must be square, got " + dims(a));
  if (!all_finite(a)) throw DomainError("non-finite entry in symmetric matrix");
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  if ((a - a.transpose()).cwiseAbs().maxCoeff() > 1e-9 * scale)
    throw DomainError("matrix is not symmetric");
  m_ = static_cast<int>(a.rows());
  upper_.resize(static_cast<std::size_t>(m_ * (m_ + 1) / 2));
  for (int i = 0; i < m_; ++i)
    for (int j = i; j < m_; ++j) upper_[index(m_, i, j)] = 0.5 * (a(i, j) + a(j, i));
}

SymmetricMatrix SymmetricMatrix::identity(int m) { return scalar(m, 1.0); }

SymmetricMatrix SymmetricMatrix::scalar(int m, double c) {
  return SymmetricMatrix(Mat(c * Mat::Identity(m, m)));
}

double SymmetricMatrix::operator()(int i, int j) const { return upper_[index(m_, i, j)]; }

Mat SymmetricMatrix::dense() const {
  Mat a(m_, m_);
  for (int i = 0; i < m_; ++i)
    for (int j = 0; j < m_; ++j) a(i, j) = (*this)(i, j);
  return a;
}

double SymmetricMatrix::trace() const {
  double s = 0;
  for (int i = 0; i < m_; ++i) s += (*this)(i, i);
  return s;
}

double SymmetricMatrix::det() const { return m_ == 0 ? 1.0 : dense().determinant(); }

PositiveDefiniteMatrix::PositiveDefiniteMatrix(const SymmetricMatrix& s) : base_(s) {
  const Mat a = s.dense();
  if (!is_positive_definite(a)) throw NotPSD("Cholesky certificate failed");
  chol_ = a.llt().matrixL();
}

double PositiveDefiniteMatrix::det() const { return std::exp(log_det()); }

double PositiveDefiniteMatrix::log_det() const {
  return 2.0 * chol_.diagonal().array().log().sum();
}

Mat PositiveDefiniteMatrix::inverse() const {
  return dense().llt().solve(Mat::Identity(size(), size()));
}

RectMatrix::RectMatrix(const Mat& a) : a_(a) {
  if (!all_finite(a)) throw DomainError("non-finite entry in rectangular matrix");
}

StiefelFrame::StiefelFrame(const Mat& v) {
  if (v.cols() > v.rows()) throw DomainError("frame needs n >= m, got " + dims(v));
  if (!all_finite(v)) throw DomainError("non-finite entry in frame");
  if (v.cols() == 0) {
    v_ = v;
    return;
  }
  Eigen::HouseholderQR<Mat> qr(v);
  const Mat r = qr.matrixQR().topRows(v.cols()).triangularView<Eigen::Upper>();
  const double top = r.diagonal().cwiseAbs().maxCoeff();
  if (r.diagonal().cwiseAbs().minCoeff() <= 1e-10 * std::max(top, 1e-300))
    throw RankDeficient("frame columns are linearly dependent");
  Mat q = qr.householderQ() * Mat::Identity(v.rows(), v.cols());
  for (int j = 0; j < v.cols(); ++j)
    if (r(j, j) < 0) q.col(j) = -q.col(j);
  v_ = q;
}

StiefelFrame StiefelFrame::canonical(int n, int m) {
  return StiefelFrame(Mat(Mat::Identity(n, m)));
}

MatrixPlane::MatrixPlane(StiefelFrame xi, RectMatrix t, int k)
    : xi_(std::move(xi)), t_(std::move(t)), k_(k) {
  const int n = xi_.n();
  if (k < 1 || k > n - 1) throw DomainError("plane dimension k must satisfy 1 <= k <= n-1");
  if (xi_.m() != n - k) throw DomainError("plane frame must have n-k columns");
  if (t_.rows() != n - k) throw DomainError("plane offset must have n-k rows");
}

std::pair<StiefelFrame, PositiveDefiniteMatrix> polar_decompose(const RectMatrix& x) {
  const Mat& a = x.mat();
  if (a.rows() < a.cols()) throw DomainError("polar decomposition needs n >= m");
  Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vec sv = svd.singularValues();
  if (sv.size() == 0 || sv(sv.size() - 1) <= 1e-10)
    throw RankDeficient("smallest singular value " +
                        std::to_string(sv.size() ? sv(sv.size() - 1) : 0.0));
  const Mat& u = svd.matrixU();
  const Mat& v = svd.matrixV();
  Mat frame = u * v.transpose();
  Mat r = a.transpose() * a;
  r = 0.5 * (r + r.transpose()).eval();
  return {StiefelFrame(frame), PositiveDefiniteMatrix(r)};
}

SymmetricMatrix sqrt_psd(const SymmetricMatrix& s) {
  Eigen::SelfAdjointEigenSolver<Mat> es(s.dense());
  const Vec ev = es.eigenvalues();
  if (ev.size() && ev.minCoeff() < -1e-8)
    throw NotPSD("eigenvalue " + std::to_string(ev.minCoeff()));
  return SymmetricMatrix(psd_sqrt(s.dense()));
}

SymmetricMatrix matrix_distance(const RectMatrix& x, const MatrixPlane& p) {
  const Mat& xi = p.xi().mat();
  if (x.rows() != xi.rows() || x.cols() != p.t().cols())
    throw DomainError("point and plane dimensions differ");
  const Mat d = xi.transpose() * x.mat() - p.t().mat();
  Mat g = d.transpose() * d;
  return SymmetricMatrix(psd_sqrt(0.5 * (g + g.transpose())));
}

SymmetricMatrix matrix_distance(const RectMatrix& x, const RectMatrix& y) {
  if (x.rows() != y.rows() || x.cols() != y.cols()) throw DomainError("point dimensions differ");
  const Mat d = x.mat() - y.mat();
  Mat g = d.transpose() * d;
  return SymmetricMatrix(psd_sqrt(0.5 * (g + g.transpose())));
}

int rank(const Mat& a) {
  if (a.size() == 0) return 0;
  Eigen::JacobiSVD<Mat> svd(a);
  const Vec sv = svd.singularValues();
  const double top = sv(0);
  if (top == 0) return 0;
  int r = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > 1e-10 * top) ++r;
  return r;
}

bool is_positive_definite(const Mat& a) {
  const int m = static_cast<int>(a.rows());
  if (m == 0) return true;
  if (!a.allFinite()) return false;
  const double scale = std::max(a.diagonal().cwiseAbs().maxCoeff(), 1e-300);
  Eigen::LLT<Mat> llt(a);
  if (llt.info() != Eigen::Success) return false;
  const Mat l = llt.matrixL();
  // squared pivots are the Schur complements; require them above the floor
  for (int i = 0; i < m; ++i)
    if (l(i, i) * l(i, i) <= 1e-12 * scale) return false;
  return true;
}

Mat psd_sqrt(const Mat& a) {
  if (a.rows() == 1) return Mat::Constant(1, 1, std::sqrt(std::max(a(0, 0), 0.0)));
  Eigen::SelfAdjointEigenSolver<Mat> es(a);
  const Vec root = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  const Mat& q = es.eigenvectors();
  Mat r = q * root.asDiagonal() * q.transpose();
  return 0.5 * (r + r.transpose());
}

double gram_det(const Mat& x) {
  const Mat g = x.transpose() * x;
  switch (g.rows()) {
    case 1: return g(0, 0);
    case 2: return g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0);
    default: return g.determinant();
  }
}

Mat complete_rotation(const Mat& xi) {
  const int n = static_cast<int>(xi.rows());
  const int c = static_cast<int>(xi.cols());
  Mat g(n, n);
  Eigen::HouseholderQR<Mat> qr(xi);
  const Mat q = qr.householderQ();
  // the last n-c columns of the full Q span the orthogonal complement
  g.leftCols(n - c) = q.rightCols(n - c);
  g.rightCols(c) = xi;
  if (g.determinant() < 0 && n - c > 0) g.col(0) = -g.col(0);
  return g;
}

}  // namespace matrad
