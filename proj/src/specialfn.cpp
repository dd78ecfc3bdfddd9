#include "matrad/specialfn.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <numeric>

namespace matrad {

namespace {

constexpr double kPi = std::numbers::pi;

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

}  // namespace

Rational::Rational(std::int64_t n, std::int64_t d) {
  if (d == 0) throw DomainError("rational with zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  const std::int64_t g = std::gcd(n < 0 ? -n : n, d);
  num = g ? n / g : n;
  den = g ? d / g : d;
}

std::string Rational::str() const {
  return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
}

Rational operator+(Rational a, Rational b) { return Rational(a.num * b.den + b.num * a.den, a.den * b.den); }
Rational operator-(Rational a, Rational b) { return Rational(a.num * b.den - b.num * a.den, a.den * b.den); }
Rational operator*(Rational a, Rational b) { return Rational(a.num * b.num, a.den * b.den); }
Rational operator/(Rational a, Rational b) { return Rational(a.num * b.den, a.den * b.num); }
bool operator<(Rational a, Rational b) { return a.num * b.den < b.num * a.den; }

WallachParam::WallachParam(int m, double alpha) : m_(m), alpha_(alpha) {
  if (m < 1) throw DomainError("matrix size must be positive");
  const double two = 2.0 * alpha;
  const double j = std::round(two);
  if (std::abs(two - j) <= 1e-12 && j >= 0 && j <= m - 1) {
    twice_ = static_cast<int>(j);
    alpha_ = j / 2.0;
    return;
  }
  if (!(alpha > 0.5 * (m - 1)))
    throw OrderNotInWallachSet("order " + fmt(alpha) + " is outside the admissible set for m=" +
                               std::to_string(m));
}

ConeConstants ConeConstants::make(int n, int m, int k) {
  if (m < 1 || k < 1 || n < m + k)
    throw DomainError("need 1 <= k <= n-m, got n=" + std::to_string(n) + " m=" +
                      std::to_string(m) + " k=" + std::to_string(k));
  ConeConstants c;
  c.n = n;
  c.m = m;
  c.k = k;
  c.d = Rational(m + 1, 2);
  c.delta = Rational(n - k, 2) - c.d;
  c.p0 = Rational(n + m - 1, k + m - 1);
  c.sigma_nm = stiefel_volume(n, m);
  c.sigma_nk = stiefel_volume(n - k, m);
  return c;
}

bool at_gamma_pole(double x) {
  const double r = std::round(x);
  return r <= 0 && std::abs(x - r) <= 1e-12 * std::max(1.0, std::abs(x));
}

double gamma_m(int m, double alpha) {
  if (m < 1) throw DomainError("gamma_m needs m >= 1");
  double p = std::pow(kPi, 0.25 * m * (m - 1));
  for (int j = 0; j < m; ++j) {
    const double a = alpha - 0.5 * j;
    if (at_gamma_pole(a))
      throw PoleError(j, "Gamma(alpha - " + std::to_string(j) + "/2) has a pole at alpha=" + fmt(alpha));
    p *= std::tgamma(a);
  }
  return p;
}

double beta_m(int m, double a, double b) {
  return gamma_m(m, a) * gamma_m(m, b) / gamma_m(m, a + b);
}

double bernstein_b(int m, double alpha) {
  double p = 1.0;
  for (int j = 0; j < m; ++j) p *= alpha + 0.5 * j;
  return p;
}

double pochhammer(double a, int n) {
  double p = 1.0;
  for (int i = 0; i < n; ++i) p *= a + i;
  return p;
}

double cayley_laplace_factor(int n, int m, double lambda) {
  double p = (m % 2) ? -1.0 : 1.0;
  for (int i = 0; i < m; ++i) p *= (lambda + i) * (2.0 - n - lambda + i);
  return p;
}

double big_B_k(int n, int m, int k, double alpha) {
  double p = 1.0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < k; ++j) p *= (alpha - i + 2.0 * j) * (alpha - n + 2.0 + 2.0 * j + i);
  return p;
}

double lambda1(int n, int m, int k, double lambda) {
  (void)n;
  if (!(lambda > k + m - 1))
    throw DomainError("lambda=" + fmt(lambda) + " must exceed k+m-1=" + std::to_string(k + m - 1));
  return std::pow(kPi, 0.5 * k * m) * gamma_m(m, 0.5 * (lambda - k)) / gamma_m(m, 0.5 * lambda);
}

double lambda2(int n, int m, int k, double lambda) {
  if (!(lambda > k + m - 1))
    throw DomainError("lambda=" + fmt(lambda) + " must exceed k+m-1=" + std::to_string(k + m - 1));
  return gamma_m(m, 0.5 * n) * gamma_m(m, 0.5 * (lambda - k)) /
         (gamma_m(m, 0.5 * lambda) * gamma_m(m, 0.5 * (n - k)));
}

double fuglede_constant(int n, int m, int k) {
  if (m < 1 || k < 1 || k > n - m)
    throw DomainError("need 1 <= k <= n-m, got n=" + std::to_string(n) + " m=" +
                      std::to_string(m) + " k=" + std::to_string(k));
  return std::pow(2.0, k * m) * std::pow(kPi, 0.5 * k * m) * gamma_m(m, 0.5 * n) /
         gamma_m(m, 0.5 * (n - k));
}

double riesz_gamma(int n, int m, double alpha) {
  const double r = std::round(alpha);
  if (std::abs(alpha - r) <= 1e-12 * std::max(1.0, std::abs(alpha)) && r >= n - m + 1)
    throw PoleError(-1, "Gamma_m((n-alpha)/2): excluded order alpha=" + fmt(alpha));
  double num;
  try {
    num = gamma_m(m, 0.5 * alpha);
  } catch (const PoleError& e) {
    throw PoleError(e.factor(), std::string("Gamma_m(alpha/2): ") + e.what());
  }
  double den;
  try {
    den = gamma_m(m, 0.5 * (n - alpha));
  } catch (const PoleError& e) {
    throw PoleError(e.factor(), std::string("Gamma_m((n-alpha)/2): ") + e.what());
  }
  return std::pow(2.0, alpha * m) * std::pow(kPi, 0.5 * n * m) * num / den;
}

double stiefel_volume(int n, int m) {
  if (m < 1 || n < m) throw DomainError("Stiefel manifold needs n >= m >= 1");
  return std::pow(2.0, m) * std::pow(kPi, 0.5 * n * m) / gamma_m(m, 0.5 * n);
}

}  // namespace matrad
