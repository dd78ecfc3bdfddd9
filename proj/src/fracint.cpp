#include "matrad/fracint.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <optional>

namespace matrad {

namespace {

constexpr double kPi = std::numbers::pi;

double det_of(const Mat& a) {
  switch (a.rows()) {
    case 1: return a(0, 0);
    case 2: return a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
    default: return a.determinant();
  }
}

double half_d(int m) { return 0.5 * (m + 1); }

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

Mat sym(const Mat& a) { return 0.5 * (a + a.transpose()); }

// Single-draw kernels. They hold whatever can be precomputed for fixed (alpha, s).
class PlusKernel {
 public:
  PlusKernel(const FracOrder& alpha, const Mat& s) : alpha_(alpha), s_(sym(s)) {
    const int m = alpha.m();
    if (s_.rows() != m) throw DomainError("argument has the wrong size");
    if (!is_positive_definite(s_)) throw NotPSD("left-sided integral needs s in the open cone");
    if (alpha.is_half_integral()) {
      const int j = alpha.twice();
      root_ = psd_sqrt(s_);
      scale_ = std::pow(kPi, -0.5 * j * m) * std::pow(det_of(s_), 0.5 * j) * std::pow(2.0, j * m);
    } else if (!alpha.is_zero()) {
      cone_.emplace(m, ConeDomain::interval(Mat::Zero(m, m), s_), alpha.alpha() - half_d(m));
      scale_ = 1.0 / gamma_m(m, alpha.alpha());
    }
  }

  // returns the weighted value; *accepted reports whether the draw was inside
  double draw(const StochasticRadial& f, SeededSampler& rng, bool* accepted = nullptr) const {
    const int m = alpha_.m();
    if (accepted) *accepted = true;
    if (alpha_.is_zero()) return f(s_, rng);
    if (alpha_.is_half_integral()) {
      // w = h s^{1/2} with h uniform on the box, kept when h'h < I
      const int j = alpha_.twice();
      Mat h(j, m);
      for (int c = 0; c < m; ++c)
        for (int i = 0; i < j; ++i) h(i, c) = 2.0 * rng.uniform() - 1.0;
      const Mat hh = h.transpose() * h;
      if (!is_positive_definite(Mat::Identity(m, m) - hh)) {
        if (accepted) *accepted = false;
        return 0.0;
      }
      const double v = f(s_ - root_ * hh * root_, rng);
      return v == 0.0 ? 0.0 : scale_ * v;
    }
    Mat w;
    const double wt = cone_->draw(rng, w);
    if (wt == 0.0) {
      if (accepted) *accepted = false;
      return 0.0;
    }
    const double v = f(s_ - w, rng);
    return v == 0.0 ? 0.0 : scale_ * wt * v;
  }

 private:
  FracOrder alpha_;
  Mat s_, root_;
  double scale_ = 1.0;
  std::optional<ConeSampler> cone_;
};

class MinusKernel {
 public:
  MinusKernel(const FracOrder& alpha, const Mat& s, const GGOptions& opt)
      : alpha_(alpha), s_(sym(s)) {
    const int m = alpha.m();
    if (s_.rows() != m) throw DomainError("argument has the wrong size");
    Eigen::SelfAdjointEigenSolver<Mat> es(s_);
    if (es.eigenvalues().minCoeff() < -1e-10)
      throw NotPSD("right-sided integral needs s positive semi-definite");
    if (alpha.is_half_integral()) {
      density_.emplace(
          MatrixDensity::student(alpha.twice(), m, opt.student_nu, opt.student_scale));
      scale_ = std::pow(kPi, -0.5 * alpha.twice() * m);
    } else if (!alpha.is_zero()) {
      cone_.emplace(m, ConeDomain::shifted(s_), alpha.alpha() - half_d(m), opt.cone);
      scale_ = 1.0 / gamma_m(m, alpha.alpha());
    }
  }

  double draw(const StochasticRadial& f, SeededSampler& rng) const {
    if (alpha_.is_zero()) return f(s_, rng);
    if (density_) {
      const Mat w = density_->sample(rng);
      const double v = f(s_ + w.transpose() * w, rng);
      return v == 0.0 ? 0.0 : scale_ * v * std::exp(-density_->log_density(w));
    }
    Mat r;
    const double wt = cone_->draw(rng, r);
    const double v = f(r, rng);
    return v == 0.0 ? 0.0 : scale_ * wt * v;
  }

 private:
  FracOrder alpha_;
  Mat s_;
  double scale_ = 1.0;
  std::optional<ConeSampler> cone_;
  std::optional<MatrixDensity> density_;
};

StochasticRadial deterministic(const RadialFunction& f) {
  return [&f](const Mat& r, SeededSampler&) { return f(r); };
}

}  // namespace

RadialFunction RadialFunction::det_power(int m, double e, double coef) {
  RadialFunction f(Kind::DetPower, m);
  f.e1_ = e;
  f.coef_ = coef;
  return f;
}

RadialFunction RadialFunction::shifted_det_power(int m, double e, double coef) {
  RadialFunction f(Kind::ShiftedDetPower, m);
  f.e1_ = e;
  f.coef_ = coef;
  return f;
}

RadialFunction RadialFunction::gaussian(int m, double coef) {
  RadialFunction f(Kind::Gaussian, m);
  f.coef_ = coef;
  return f;
}

RadialFunction RadialFunction::indicator_power(const Mat& a, double mu, double coef) {
  if (a.rows() != a.cols()) throw DomainError("corner must be square");
  if (!is_positive_definite(sym(a))) throw NotPSD("corner of the indicator must be positive definite");
  RadialFunction f(Kind::IndicatorPower, static_cast<int>(a.rows()));
  f.a_ = sym(a);
  f.e1_ = mu;
  f.coef_ = coef;
  return f;
}

RadialFunction RadialFunction::product_power(int m, double e1, double e2, double coef) {
  RadialFunction f(Kind::ProductPower, m);
  f.e1_ = e1;
  f.e2_ = e2;
  f.coef_ = coef;
  return f;
}

RadialFunction RadialFunction::custom(int m, std::function<double(const Mat&)> fn) {
  RadialFunction f(Kind::Custom, m);
  f.custom_ = std::move(fn);
  return f;
}

RadialFunction RadialFunction::scaled(double c) const {
  RadialFunction f = *this;
  if (kind_ == Kind::Custom) {
    auto inner = custom_;
    f.custom_ = [inner, c](const Mat& r) { return c * inner(r); };
  } else {
    f.coef_ *= c;
  }
  return f;
}

double RadialFunction::operator()(const Mat& r) const {
  switch (kind_) {
    case Kind::DetPower:
      return coef_ * std::pow(std::max(det_of(r), 0.0), e1_);
    case Kind::ShiftedDetPower:
      return coef_ * std::pow(std::max(det_of(Mat::Identity(m_, m_) + r), 0.0), e1_);
    case Kind::Gaussian:
      return coef_ * std::exp(-r.trace());
    case Kind::IndicatorPower: {
      const Mat c = a_ - r;
      if (!is_positive_definite(sym(c))) return 0.0;
      return coef_ * std::pow(det_of(c), e1_);
    }
    case Kind::ProductPower:
      return coef_ * std::pow(std::max(det_of(r), 0.0), e1_) *
             std::pow(std::max(det_of(Mat::Identity(m_, m_) + r), 0.0), e2_);
    case Kind::Custom:
      return custom_(r);
  }
  return 0.0;
}

std::string RadialFunction::describe() const {
  const std::string c = coef_ == 1.0 ? "" : num(coef_) + "*";
  switch (kind_) {
    case Kind::DetPower: return c + "|r|^" + num(e1_);
    case Kind::ShiftedDetPower: return c + "|I+r|^" + num(e1_);
    case Kind::Gaussian: return c + "exp(-tr r)";
    case Kind::IndicatorPower: return c + "(a-r)_+^" + num(e1_);
    case Kind::ProductPower: return c + "|r|^" + num(e1_) + "|I+r|^" + num(e2_);
    case Kind::Custom: return "custom";
  }
  return "?";
}

bool gg_plus_closed(const RadialFunction& f, const FracOrder& alpha, const Mat& s, double& out) {
  const int m = alpha.m();
  const double a = alpha.alpha();
  const double d = half_d(m);
  if (alpha.is_zero()) {
    out = f(s);
    return true;
  }
  switch (f.kind()) {
    case RadialFunction::Kind::DetPower: {
      const double e = f.exponent();
      if (!(e > -1.0)) throw DivergentIntegral("|r|^" + num(e) + " is not integrable at the vertex");
      out = f.coef() * gamma_m(m, e + d) / gamma_m(m, e + d + a) * std::pow(det_of(s), e + a);
      return true;
    }
    case RadialFunction::Kind::ProductPower: {
      // |r|^{b-d}|I+r|^{-(a+b)} integrates in closed form
      const double b = f.exponent() + d;
      if (std::abs(f.exponent2() + a + b) > 1e-12) return false;
      if (!(b > d - 1)) throw DivergentIntegral("power too singular at the vertex");
      out = f.coef() * gamma_m(m, b) / gamma_m(m, a + b) * std::pow(det_of(s), a + b - d) *
            std::pow(det_of(Mat::Identity(m, m) + s), -b);
      return true;
    }
    default:
      return false;
  }
}

RadialFunction gg_minus_image(const RadialFunction& f, const FracOrder& alpha) {
  const int m = alpha.m();
  const double a = alpha.alpha();
  const double d = half_d(m);
  if (alpha.is_zero()) return f;
  switch (f.kind()) {
    case RadialFunction::Kind::ShiftedDetPower:
    case RadialFunction::Kind::DetPower: {
      const double e = f.exponent();
      // decay at infinity: -2e must exceed 2 alpha + m - 1
      if (!(-2.0 * e > 2.0 * a + m - 1))
        throw DivergentIntegral("exponent " + num(-2.0 * e) + " <= 2*alpha+m-1 = " +
                                num(2.0 * a + m - 1));
      const double c = f.coef() * gamma_m(m, -e - a) / gamma_m(m, -e);
      return f.kind() == RadialFunction::Kind::DetPower
                 ? RadialFunction::det_power(m, e + a, c)
                 : RadialFunction::shifted_det_power(m, e + a, c);
    }
    case RadialFunction::Kind::Gaussian:
      return f;
    case RadialFunction::Kind::IndicatorPower: {
      const double mu = f.exponent();
      if (!(mu > -1.0)) throw DivergentIntegral("indicator power too singular at the corner");
      return RadialFunction::indicator_power(
          f.corner(), mu + a, f.coef() * gamma_m(m, mu + d) / gamma_m(m, mu + d + a));
    }
    default:
      throw UnsupportedOrder("no closed-form image for " + f.describe());
  }
}

bool gg_minus_closed(const RadialFunction& f, const FracOrder& alpha, const Mat& s, double& out) {
  if (alpha.is_zero()) {
    out = f(s);
    return true;
  }
  switch (f.kind()) {
    case RadialFunction::Kind::ShiftedDetPower:
    case RadialFunction::Kind::DetPower:
    case RadialFunction::Kind::Gaussian:
    case RadialFunction::Kind::IndicatorPower:
      out = gg_minus_image(f, alpha)(s);
      return true;
    default:
      return false;
  }
}

double gg_plus_draw(const StochasticRadial& f, const FracOrder& alpha, const Mat& s,
                    SeededSampler& rng) {
  return PlusKernel(alpha, s).draw(f, rng);
}

double gg_minus_draw(const StochasticRadial& f, const FracOrder& alpha, const Mat& s,
                     SeededSampler& rng, const GGOptions& opt) {
  return MinusKernel(alpha, s, opt).draw(f, rng);
}

MCEstimate gg_plus(const RadialFunction& f, const FracOrder& alpha, const Mat& s,
                   const MCConfig& cfg, const GGOptions& opt) {
  if (f.m() != alpha.m()) throw DomainError("function and order disagree on m");
  double v;
  if ((!opt.force_mc || alpha.is_zero()) && gg_plus_closed(f, alpha, s, v))
    return MCEstimate::exact(v);
  const PlusKernel ker(alpha, s);
  const StochasticRadial g = deterministic(f);
  const auto est = mc_integrate_multi(cfg, 2, [&](SeededSampler& rng, double* out) {
    bool acc;
    out[0] = ker.draw(g, rng, &acc);
    out[1] = acc ? 1.0 : 0.0;
  });
  if (alpha.is_half_integral() && est[1].value < 0.01)
    throw NonIntegrable("acceptance rate " + num(est[1].value) + " below 1%");
  return est[0];
}

MCEstimate gg_minus(const RadialFunction& f, const FracOrder& alpha, const Mat& s,
                    const MCConfig& cfg, const GGOptions& opt) {
  if (f.m() != alpha.m()) throw DomainError("function and order disagree on m");
  double v;
  // the precheck runs even when MC is forced
  if (gg_minus_closed(f, alpha, s, v) && (!opt.force_mc || alpha.is_zero()))
    return MCEstimate::exact(v);
  const MinusKernel ker(alpha, s, opt);
  const StochasticRadial g = deterministic(f);
  return mc_integrate(cfg, [&](SeededSampler& rng) { return ker.draw(g, rng); });
}

double d_plus_numeric(const std::function<double(const Mat&)>& f, const Mat& s0) {
  const int m = static_cast<int>(s0.rows());
  if (m > 2) throw UnsupportedOrder("numeric cone derivative is implemented for m <= 2");
  const Mat s = sym(s0);
  const double scale = std::max(1.0, s.diagonal().cwiseAbs().maxCoeff());
  // second differences want h near eps^{1/4}; one Richardson pass follows
  const double h0 = 1e-3 * scale;
  auto stencil = [&](double h) {
    if (m == 1) {
      Mat p = s, q = s;
      p(0, 0) += h;
      q(0, 0) -= h;
      return (f(p) - f(q)) / (2 * h);
    }
    auto at = [&](double d11, double d22, double d12) {
      Mat t = s;
      t(0, 0) += d11;
      t(1, 1) += d22;
      t(0, 1) += d12;
      t(1, 0) += d12;
      return f(t);
    };
    const double f1122 = (at(h, h, 0) - at(h, -h, 0) - at(-h, h, 0) + at(-h, -h, 0)) / (4 * h * h);
    const double f1212 = (at(0, 0, h) - 2 * at(0, 0, 0) + at(0, 0, -h)) / (h * h);
    return f1122 - 0.25 * f1212;
  };
  const double coarse = stencil(h0);
  const double fine = stencil(0.5 * h0);
  return (4.0 * fine - coarse) / 3.0;
}

RadialFunction d_plus(const RadialFunction& f, int j) {
  if (j < 0) throw DomainError("derivative order must be nonnegative");
  const int m = f.m();
  RadialFunction g = f;
  for (int i = 0; i < j; ++i) {
    const double e = g.exponent();
    switch (g.kind()) {
      case RadialFunction::Kind::DetPower:
        g = RadialFunction::det_power(m, e - 1, g.coef() * bernstein_b(m, e));
        break;
      case RadialFunction::Kind::ShiftedDetPower:
        g = RadialFunction::shifted_det_power(m, e - 1, g.coef() * bernstein_b(m, e));
        break;
      case RadialFunction::Kind::Gaussian:
        g = g.scaled(m % 2 ? -1.0 : 1.0);
        break;
      case RadialFunction::Kind::IndicatorPower:
        // d/ds = -d/d(a-s) in each of the m factors
        g = RadialFunction::indicator_power(g.corner(), e - 1,
                                            g.coef() * (m % 2 ? -1.0 : 1.0) * bernstein_b(m, e));
        break;
      default:
        throw UnsupportedOrder("no symbolic cone derivative for " + g.describe());
    }
  }
  return g;
}

RadialFunction d_minus(const RadialFunction& f, int j) {
  const RadialFunction g = d_plus(f, j);
  return (j * f.m()) % 2 ? g.scaled(-1.0) : g;
}

double d_plus_at(const RadialFunction& f, const Mat& s, int j) {
  switch (f.kind()) {
    case RadialFunction::Kind::DetPower:
    case RadialFunction::Kind::ShiftedDetPower:
    case RadialFunction::Kind::Gaussian:
    case RadialFunction::Kind::IndicatorPower:
      return d_plus(f, j)(s);
    default:
      break;
  }
  if (j == 0) return f(s);
  if (j != 1) throw UnsupportedOrder("numeric cone derivative supports order 1 only");
  return d_plus_numeric([&f](const Mat& r) { return f(r); }, s);
}

RadialFunction invert_gg_minus_closed(const RadialFunction& phi, int k) {
  if (k < 0) throw DomainError("order must be nonnegative");
  if (k % 2) throw OddOrderUnsupported("k=" + std::to_string(k) + " is odd");
  return d_minus(phi, k / 2);
}

}  // namespace matrad
