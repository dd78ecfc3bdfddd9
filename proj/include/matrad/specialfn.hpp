#pragma once

#include <cstdint>
#include <string>

#include "matrad/errors.hpp"

namespace matrad {

// Exact small rational, used for the half-integer bookkeeping d = (m+1)/2 and
// friends so that order thresholds are never compared in floating point.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rational() = default;
  Rational(std::int64_t n, std::int64_t d = 1);

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const;

  friend Rational operator+(Rational a, Rational b);
  friend Rational operator-(Rational a, Rational b);
  friend Rational operator*(Rational a, Rational b);
  friend Rational operator/(Rational a, Rational b);
  friend bool operator==(Rational a, Rational b) { return a.num == b.num && a.den == b.den; }
  friend bool operator<(Rational a, Rational b);
};

// Order alpha in {0, 1/2, ..., (m-1)/2} or alpha > (m-1)/2.
class WallachParam {
 public:
  WallachParam(int m, double alpha);

  int m() const { return m_; }
  double alpha() const { return alpha_; }
  // true for the discrete part: alpha = j/2 with j = twice() < m
  bool discrete() const { return twice_ >= 0; }
  int twice() const { return twice_; }

 private:
  int m_;
  double alpha_;
  int twice_ = -1;
};

// Dimension bookkeeping for an admissible triple (n, m, k).
struct ConeConstants {
  int n = 0, m = 0, k = 0;
  Rational d;      // (m+1)/2
  Rational delta;  // (n-k)/2 - d
  Rational p0;     // (n+m-1)/(k+m-1)
  double sigma_nm = 0;  // volume of the n x m Stiefel manifold
  double sigma_nk = 0;  // volume of the (n-k) x m Stiefel manifold

  static ConeConstants make(int n, int m, int k);
};

// True when x is (to 1e-12) an integer <= 0, i.e. a pole of Gamma.
bool at_gamma_pole(double x);

// pi^{m(m-1)/4} prod_{j<m} Gamma(alpha - j/2). Throws PoleError naming j.
double gamma_m(int m, double alpha);
double beta_m(int m, double a, double b);

// alpha (alpha + 1/2) ... (alpha + (m-1)/2)
double bernstein_b(int m, double alpha);
// rising factorial (a)_n
double pochhammer(double a, int n);

// Eigen-factor of the Cayley-Laplace operator on |x|_m^lambda.
double cayley_laplace_factor(int n, int m, double lambda);
// Double product prod_{i<m} prod_{j<k} (a - i + 2j)(a - n + 2 + 2j + i).
double big_B_k(int n, int m, int k, double alpha);

// Constants of the closed-form Radon / dual pairs; DomainError for
// lambda <= k+m-1 where the underlying integrals diverge.
double lambda1(int n, int m, int k, double lambda);
double lambda2(int n, int m, int k, double lambda);

// 2^{km} pi^{km/2} Gamma_m(n/2) / Gamma_m((n-k)/2), for 1 <= k <= n-m.
double fuglede_constant(int n, int m, int k);

// Normalizing constant of the order-alpha Riesz potential on n x m matrices.
double riesz_gamma(int n, int m, double alpha);

// Volume of V_{n,m} under the unnormalized invariant measure.
double stiefel_volume(int n, int m);

}  // namespace matrad
