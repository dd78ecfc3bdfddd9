#pragma once

#include <functional>
#include <optional>
#include <string>

#include "matrad/mcquad.hpp"
#include "matrad/specialfn.hpp"

namespace matrad {

// Function of r in the cone with a known shape, or an arbitrary callable.
// Every kind carries a constant multiplier coef().
class RadialFunction {
 public:
  enum class Kind {
    DetPower,         // |r|^e
    ShiftedDetPower,  // |I + r|^e
    Gaussian,         // exp(-tr r)
    IndicatorPower,   // (a - r)_+^mu, zero unless r < a
    ProductPower,     // |r|^e1 |I + r|^e2
    Custom
  };

  static RadialFunction det_power(int m, double e, double coef = 1.0);
  static RadialFunction shifted_det_power(int m, double e, double coef = 1.0);
  // |I + r|^{-lambda/2}
  static RadialFunction shifted_from_lambda(int m, double lambda) {
    return shifted_det_power(m, -0.5 * lambda);
  }
  static RadialFunction gaussian(int m, double coef = 1.0);
  static RadialFunction indicator_power(const Mat& a, double mu, double coef = 1.0);
  static RadialFunction product_power(int m, double e1, double e2, double coef = 1.0);
  static RadialFunction custom(int m, std::function<double(const Mat&)> f);

  Kind kind() const { return kind_; }
  int m() const { return m_; }
  double exponent() const { return e1_; }   // e, mu, or e1
  double exponent2() const { return e2_; }  // e2 of ProductPower
  double coef() const { return coef_; }
  const Mat& corner() const { return a_; }  // a of IndicatorPower

  RadialFunction scaled(double c) const;
  double operator()(const Mat& r) const;
  std::string describe() const;

 private:
  RadialFunction(Kind kind, int m) : kind_(kind), m_(m) {}
  Kind kind_;
  int m_;
  double e1_ = 0, e2_ = 0, coef_ = 1.0;
  Mat a_;
  std::function<double(const Mat&)> custom_;
};

// Order of a cone fractional integral: alpha in {0, 1/2, ..., (m-1)/2} or
// alpha > (m-1)/2. Throws OrderNotInWallachSet otherwise.
class FracOrder {
 public:
  FracOrder(int m, double alpha) : w_(m, alpha) {}

  double alpha() const { return w_.alpha(); }
  int m() const { return w_.m(); }
  bool is_zero() const { return w_.discrete() && w_.twice() == 0; }
  // alpha = j/2 with 0 < j < m: realized as a matrix-space integral
  bool is_half_integral() const { return w_.discrete() && w_.twice() > 0; }
  int twice() const { return w_.twice(); }

 private:
  WallachParam w_;
};

struct GGOptions {
  bool force_mc = false;           // skip the closed-form table
  ConeProposal cone{1.0, 1.0};     // proposal for shifted-cone integrals
  double student_nu = 3.0;         // importance density for the matrix-space branch
  double student_scale = 1.0;
};

// Integrand that may itself be an unbiased random estimate (for nesting).
using StochasticRadial = std::function<double(const Mat& r, SeededSampler& s)>;

// (I_+^alpha f)(s) = Gamma_m(alpha)^{-1} int_0^s f(r)|s - r|^{alpha-d} dr, or its
// half-integral form pi^{-jm/2} int_{w'w < s} f(s - w'w) dw.
MCEstimate gg_plus(const RadialFunction& f, const FracOrder& alpha, const Mat& s,
                   const MCConfig& cfg, const GGOptions& opt = {});
// (I_-^alpha f)(s) over the shifted cone s + P_m, or pi^{-jm/2} int f(s + w'w) dw.
MCEstimate gg_minus(const RadialFunction& f, const FracOrder& alpha, const Mat& s,
                    const MCConfig& cfg, const GGOptions& opt = {});

// One unbiased draw of the MC branches above; f may be stochastic.
double gg_plus_draw(const StochasticRadial& f, const FracOrder& alpha, const Mat& s,
                    SeededSampler& rng);
double gg_minus_draw(const StochasticRadial& f, const FracOrder& alpha, const Mat& s,
                     SeededSampler& rng, const GGOptions& opt = {});

// Closed forms only; false if f has none at this order.
bool gg_plus_closed(const RadialFunction& f, const FracOrder& alpha, const Mat& s, double& out);
bool gg_minus_closed(const RadialFunction& f, const FracOrder& alpha, const Mat& s, double& out);

// Image of f under I_-^alpha as a RadialFunction, for the kinds closed under it.
// Throws DivergentIntegral when the defining integral diverges.
RadialFunction gg_minus_image(const RadialFunction& f, const FracOrder& alpha);

// Cone operator det(eta_ij d/dr_ij), eta = 1 on the diagonal and 1/2 off it.
// Numeric branch: central differences on the m(m+1)/2 coordinates, m <= 2.
double d_plus_numeric(const std::function<double(const Mat&)>& f, const Mat& s);
// Symbolic branch: D_+^j f as a RadialFunction (DetPower, ShiftedDetPower,
// Gaussian, IndicatorPower). UnsupportedOrder for other kinds.
RadialFunction d_plus(const RadialFunction& f, int j = 1);
// D_- = (-1)^m D_+ per application
RadialFunction d_minus(const RadialFunction& f, int j = 1);
// Evaluate D_+^j f at s: symbolic when possible, else numeric (j = 1 only).
double d_plus_at(const RadialFunction& f, const Mat& s, int j = 1);

// Given phi = I_-^{k/2} f for a closed-form f, returns f = D_-^{k/2} phi.
// Odd k raises OddOrderUnsupported.
RadialFunction invert_gg_minus_closed(const RadialFunction& phi, int k);

}  // namespace matrad
