#pragma once

#include <Eigen/Dense>

#include <utility>
#include <vector>

#include "matrad/errors.hpp"

namespace matrad {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

// Real symmetric m x m matrix, stored as its packed upper triangle so that
// symmetry holds by construction.
class SymmetricMatrix {
 public:
  SymmetricMatrix() = default;
  // Accepts a square matrix that is symmetric up to rounding; the two
  // triangles are averaged. Throws DomainError otherwise.
  explicit SymmetricMatrix(const Mat& a);

  static SymmetricMatrix identity(int m);
  static SymmetricMatrix scalar(int m, double c);
  static SymmetricMatrix zero(int m) { return scalar(m, 0.0); }

  int size() const { return m_; }
  double operator()(int i, int j) const;
  Mat dense() const;
  double trace() const;
  double det() const;

 private:
  static int index(int m, int i, int j);
  int m_ = 0;
  std::vector<double> upper_;
};

// Element of the open cone: certified by a successful Cholesky factorization.
class PositiveDefiniteMatrix {
 public:
  explicit PositiveDefiniteMatrix(const SymmetricMatrix& s);
  explicit PositiveDefiniteMatrix(const Mat& a)
      : PositiveDefiniteMatrix(SymmetricMatrix(a)) {}

  const SymmetricMatrix& base() const { return base_; }
  const Mat& chol() const { return chol_; }  // lower triangular
  int size() const { return base_.size(); }
  Mat dense() const { return base_.dense(); }
  double det() const;
  double log_det() const;
  Mat inverse() const;

 private:
  SymmetricMatrix base_;
  Mat chol_;
};

class RectMatrix {
 public:
  RectMatrix() = default;
  explicit RectMatrix(const Mat& a);
  static RectMatrix zero(int n, int m) { return RectMatrix(Mat::Zero(n, m)); }

  int rows() const { return static_cast<int>(a_.rows()); }
  int cols() const { return static_cast<int>(a_.cols()); }
  const Mat& mat() const { return a_; }

 private:
  Mat a_;
};

// Orthonormal m-frame in R^n. The input is re-orthonormalized (QR with a
// positive diagonal), so a nearly orthonormal input is only polished.
class StiefelFrame {
 public:
  StiefelFrame() = default;
  explicit StiefelFrame(const Mat& v);
  static StiefelFrame canonical(int n, int m);  // [I_m; 0]

  int n() const { return static_cast<int>(v_.rows()); }
  int m() const { return static_cast<int>(v_.cols()); }
  const Mat& mat() const { return v_; }

 private:
  Mat v_;
};

// The plane {x : xi' x = t} with xi an (n-k)-frame in R^n.
class MatrixPlane {
 public:
  MatrixPlane(StiefelFrame xi, RectMatrix t, int k);

  const StiefelFrame& xi() const { return xi_; }
  const RectMatrix& t() const { return t_; }
  int k() const { return k_; }
  int n() const { return xi_.n(); }
  int m() const { return t_.cols(); }

 private:
  StiefelFrame xi_;
  RectMatrix t_;
  int k_;
};

// x = v r^{1/2} with r = x'x; RankDeficient below full column rank
std::pair<StiefelFrame, PositiveDefiniteMatrix> polar_decompose(const RectMatrix& x);

SymmetricMatrix sqrt_psd(const SymmetricMatrix& s);

// [(xi'x - t)'(xi'x - t)]^{1/2}
SymmetricMatrix matrix_distance(const RectMatrix& x, const MatrixPlane& p);
// [(x - y)'(x - y)]^{1/2}
SymmetricMatrix matrix_distance(const RectMatrix& x, const RectMatrix& y);

// Singular values above 1e-10 times the largest one.
int rank(const Mat& a);

// ---- plain-matrix helpers used throughout the numerical code ----

// Cholesky test with pivot floor 1e-12 (relative to the diagonal scale).
bool is_positive_definite(const Mat& a);
// Spectral square root, eigenvalues clamped at zero.
Mat psd_sqrt(const Mat& a);
// det(x'x)
double gram_det(const Mat& x);
// Rotation g in SO(n) whose trailing columns equal xi (n x (n-k) frame).
Mat complete_rotation(const Mat& xi);

}  // namespace matrad
