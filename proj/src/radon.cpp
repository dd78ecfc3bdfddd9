#include "matrad/radon.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

namespace matrad {

namespace {

constexpr double kPi = std::numbers::pi;

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

double det_of(const Mat& a) {
  switch (a.rows()) {
    case 1: return a(0, 0);
    case 2: return a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
    default: return a.determinant();
  }
}

double counterexample_profile(int n, int m, double p, const Mat& r) {
  const double g = det_of(2.0 * Mat::Identity(m, m) + r);
  return std::pow(g, -0.5 * (n + m - 1) / p) / std::log(g);
}

void need_plane_dims(int n, int m, int k) {
  if (m < 1 || k < 1 || k > n - 1)
    throw DomainError("need 1 <= k <= n-1, got n=" + std::to_string(n) + " k=" + std::to_string(k));
  (void)m;
}

double ball_volume(int dim, double r) {
  return std::pow(kPi, 0.5 * dim) * std::pow(r, dim) / std::tgamma(0.5 * dim + 1.0);
}

// radius of a uniform point of the shell a < |x| < b in R^dim
double shell_radius(int dim, double a, double b, SeededSampler& s) {
  const double lo = std::pow(a, dim), hi = std::pow(b, dim);
  return std::pow(lo + s.uniform() * (hi - lo), 1.0 / dim);
}

}  // namespace

MatrixField MatrixField::radial(int n, const RadialFunction& f0) {
  MatrixField f(Kind::RadialClosed, n, f0.m());
  if (n < f0.m()) throw DomainError("radial field needs n >= m");
  f.f0_ = f0;
  return f;
}

MatrixField MatrixField::gaussian(int n, int m, double coef) {
  MatrixField f(Kind::GaussianFull, n, m);
  f.coef_ = coef;
  return f;
}

MatrixField MatrixField::power(int n, int m, double lambda) {
  MatrixField f(Kind::PowerFull, n, m);
  f.lambda_ = lambda;
  return f;
}

MatrixField MatrixField::shifted_power(int n, int m, double lambda) {
  MatrixField f(Kind::ShiftedPowerFull, n, m);
  f.lambda_ = lambda;
  return f;
}

MatrixField MatrixField::counterexample(int n, int m, double p) {
  if (!(p >= 1.0)) throw DomainError("L^p exponent must be >= 1");
  MatrixField f(Kind::CounterexampleF, n, m);
  f.p_ = p;
  return f;
}

MatrixField MatrixField::custom(int n, int m, std::function<double(const Mat&)> fn, double lp_class) {
  MatrixField f(Kind::Custom, n, m);
  f.custom_ = std::move(fn);
  f.p_ = lp_class;
  return f;
}

RadialFunction MatrixField::profile() const {
  switch (kind_) {
    case Kind::RadialClosed: return f0_->scaled(coef_);
    case Kind::GaussianFull: return RadialFunction::gaussian(m_, coef_);
    case Kind::PowerFull: return RadialFunction::det_power(m_, -0.5 * lambda_, coef_);
    case Kind::ShiftedPowerFull: return RadialFunction::shifted_det_power(m_, -0.5 * lambda_, coef_);
    case Kind::CounterexampleF: {
      const int n = n_, m = m_;
      const double p = p_, c = coef_;
      return RadialFunction::custom(
          m, [n, m, p, c](const Mat& r) { return c * counterexample_profile(n, m, p, r); });
    }
    case Kind::Custom: break;
  }
  throw DomainError("custom field has no radial profile");
}

MatrixField MatrixField::scaled(double c) const {
  MatrixField f = *this;
  f.coef_ *= c;
  return f;
}

double MatrixField::operator()(const Mat& x) const {
  if (kind_ == Kind::Custom) return coef_ * custom_(x);
  const Mat r = x.transpose() * x;
  switch (kind_) {
    case Kind::GaussianFull: return coef_ * std::exp(-r.trace());
    case Kind::PowerFull: return coef_ * std::pow(std::max(det_of(r), 0.0), -0.5 * lambda_);
    case Kind::ShiftedPowerFull:
      return coef_ * std::pow(det_of(Mat::Identity(m_, m_) + r), -0.5 * lambda_);
    case Kind::CounterexampleF: return coef_ * counterexample_profile(n_, m_, p_, r);
    case Kind::RadialClosed: return coef_ * (*f0_)(r);
    case Kind::Custom: break;
  }
  return 0.0;
}

PlaneFunction PlaneFunction::radial(int n, int k, const RadialFunction& phi0) {
  need_plane_dims(n, phi0.m(), k);
  PlaneFunction p(Kind::RadialClosed, n, phi0.m(), k);
  p.phi0_ = phi0;
  return p;
}

PlaneFunction PlaneFunction::custom(int n, int m, int k,
                                    std::function<double(const Mat&, const Mat&)> phi) {
  need_plane_dims(n, m, k);
  PlaneFunction p(Kind::Custom, n, m, k);
  p.custom_ = std::move(phi);
  return p;
}

const RadialFunction& PlaneFunction::profile() const {
  if (!phi0_) throw DomainError("custom plane function has no radial profile");
  return *phi0_;
}

double PlaneFunction::operator()(const Mat& xi, const Mat& t) const {
  if (phi0_) return (*phi0_)(t.transpose() * t);
  return custom_(xi, t);
}

void check_radon_exists(const MatrixField& f, int k) {
  const int n = f.n(), m = f.m();
  need_plane_dims(n, m, k);
  switch (f.kind()) {
    case MatrixField::Kind::PowerFull:
    case MatrixField::Kind::ShiftedPowerFull:
      if (!(f.lambda() > k + m - 1))
        throw ExistenceViolation("lambda=" + num(f.lambda()) + " must exceed k+m-1=" +
                                 std::to_string(k + m - 1));
      break;
    case MatrixField::Kind::CounterexampleF:
    case MatrixField::Kind::Custom:
      // p < p0 = (n+m-1)/(k+m-1), compared without dividing
      if (f.lp_class() > 0 && f.lp_class() * (k + m - 1) >= (n + m - 1) * (1 - 1e-12))
        throw ExistenceViolation("f in L^p with p=" + num(f.lp_class()) + " >= p0=" +
                                 Rational(n + m - 1, k + m - 1).str());
      break;
    default:
      break;
  }
}

Mat plane_point(const Mat& rot, const Mat& w, const Mat& t, int k) {
  const int n = static_cast<int>(rot.rows());
  return rot.leftCols(k) * w + rot.rightCols(n - k) * t;
}

double radon_draw(const MatrixField& f, const Mat& rot, const Mat& t, int k, SeededSampler& rng,
                  const MatrixDensity& density) {
  const Mat w = density.sample(rng);
  const double v = f(plane_point(rot, w, t, k));
  return v == 0.0 ? 0.0 : v * std::exp(-density.log_density(w));
}

MCEstimate radon_radial(const RadialFunction& f0, int k, const Mat& s, const MCConfig& cfg,
                        const GGOptions& opt) {
  const int m = f0.m();
  const double c = std::pow(kPi, 0.5 * k * m);
  return c * gg_minus(f0, FracOrder(m, 0.5 * k), s, cfg, opt);
}

MCEstimate radon(const MatrixField& f, const MatrixPlane& plane, const MCConfig& cfg,
                 const RadonOptions& opt) {
  const int k = plane.k();
  if (f.n() != plane.n() || f.m() != plane.m()) throw DomainError("field and plane dimensions differ");
  check_radon_exists(f, k);
  const Mat& t = plane.t().mat();
  if (opt.prefer_closed && f.is_radial()) {
    const RadialFunction f0 = f.profile();
    double v;
    if (gg_minus_closed(f0, FracOrder(f.m(), 0.5 * k), t.transpose() * t, v))
      return MCEstimate::exact(std::pow(kPi, 0.5 * k * f.m()) * v);
  }
  const Mat rot = complete_rotation(plane.xi().mat());
  const MatrixDensity q = MatrixDensity::student(k, f.m(), opt.student_nu, opt.scale);
  return mc_integrate(cfg, [&](SeededSampler& s) { return radon_draw(f, rot, t, k, s, q); });
}

double dual_radon_radial(const PlaneFunction& phi, const Mat& x) {
  const int n = phi.n(), m = phi.m(), k = phi.k();
  if (x.rows() != n || x.cols() != m) throw DomainError("point has the wrong size");
  if (phi.kind() != PlaneFunction::Kind::RadialClosed)
    throw UnsupportedOrder("dual transform has no closed form for a custom function");
  if (rank(x) < m) throw RankDeficient("closed-form dual transform needs rank(x) = m");
  const RadialFunction& p0 = phi.profile();
  const double delta = 0.5 * (n - k) - 0.5 * (m + 1);
  // Phi0(s) = |s|^delta phi0(s)
  RadialFunction big = p0;
  switch (p0.kind()) {
    case RadialFunction::Kind::DetPower:
      big = RadialFunction::det_power(m, p0.exponent() + delta, p0.coef());
      break;
    case RadialFunction::Kind::ProductPower:
      big = RadialFunction::product_power(m, p0.exponent() + delta, p0.exponent2(), p0.coef());
      break;
    default:
      throw UnsupportedOrder("no closed-form dual transform for " + p0.describe());
  }
  const Mat r = x.transpose() * x;
  double v;
  if (!gg_plus_closed(big, FracOrder(m, 0.5 * k), r, v))
    throw UnsupportedOrder("no closed-form dual transform for " + p0.describe());
  const double c = gamma_m(m, 0.5 * n) / gamma_m(m, 0.5 * (n - k));
  return c * std::pow(det_of(r), 0.5 * (m + 1) - 0.5 * n) * v;
}

MCEstimate dual_radon(const PlaneFunction& phi, const Mat& x, const MCConfig& cfg, bool prefer_closed) {
  const int n = phi.n(), m = phi.m(), k = phi.k();
  if (x.rows() != n || x.cols() != m) throw DomainError("point has the wrong size");
  if (prefer_closed && phi.kind() == PlaneFunction::Kind::RadialClosed && rank(x) == m) {
    try {
      return MCEstimate::exact(dual_radon_radial(phi, x));
    } catch (const UnsupportedOrder&) {
    }
  }
  return mc_integrate(cfg, [&](SeededSampler& s) {
    const Mat xi = haar_frame(n, n - k, s);
    return phi(xi, xi.transpose() * x);
  });
}

MCEstimate shifted_dual_radon(const PlaneFunction& phi, const Mat& x, const Mat& s, const Mat& z,
                              const MCConfig& cfg) {
  const int n = phi.n(), m = phi.m(), k = phi.k();
  if (x.rows() != n || x.cols() != m) throw DomainError("point has the wrong size");
  if (z.rows() != n - k || z.cols() != m) throw DomainError("shift must be (n-k) x m");
  const Mat zz = z.transpose() * z;
  if ((zz - s).cwiseAbs().maxCoeff() > 1e-9 * std::max(1.0, s.cwiseAbs().maxCoeff()))
    throw DomainError("shift z must satisfy z'z = s");
  return mc_integrate(cfg, [&](SeededSampler& rng) {
    const Mat xi = haar_frame(n, n - k, rng);
    return phi(xi, xi.transpose() * x + z);
  });
}

MCEstimate shifted_dual_radon(const PlaneFunction& phi, const Mat& x, const Mat& s,
                              const MCConfig& cfg) {
  const int n = phi.n(), m = phi.m(), k = phi.k();
  if (n - k < m) throw DomainError("default shift needs n-k >= m");
  Mat z = Mat::Zero(n - k, m);
  z.bottomRows(m) = psd_sqrt(0.5 * (s + s.transpose()));
  return shifted_dual_radon(phi, x, z.transpose() * z, z, cfg);
}

MCEstimate spherical_mean(const MatrixField& f, const Mat& x, const Mat& r, const MCConfig& cfg,
                          bool prefer_closed) {
  const int n = f.n(), m = f.m();
  if (x.rows() != n || x.cols() != m || r.rows() != m) throw DomainError("dimensions differ");
  if (prefer_closed && f.is_radial() && x.isZero(0.0)) {
    // v'v = I, so a radial f sees only r
    return MCEstimate::exact(f.profile()(r));
  }
  const Mat root = psd_sqrt(0.5 * (r + r.transpose()));
  return mc_integrate(cfg, [&](SeededSampler& s) {
    const Mat v = haar_frame(n, m, s);
    return f(x + v * root);
  });
}

double mean_value_invert(const MatrixField& f, const Mat& x, int k, const MeanValueOptions& opt) {
  const int n = f.n(), m = f.m();
  if (k % 2) throw OddOrderUnsupported("mean-value inversion needs even k, got " + std::to_string(k));
  need_plane_dims(n, m, k);
  if (x.rows() != n || x.cols() != m) throw DomainError("point has the wrong size");
  const bool closed_kind = f.kind() == MatrixField::Kind::GaussianFull ||
                           f.kind() == MatrixField::Kind::ShiftedPowerFull;
  if (!closed_kind || !x.isZero(0.0))
    throw PipelineNotClosedForm("the shifted dual of the Radon image is not in closed form here");
  check_radon_exists(f, k);
  // at x = 0 the spherical mean F_x(s) is the profile itself
  const double pk = std::pow(kPi, 0.5 * k * m);
  const RadialFunction phi = gg_minus_image(f.profile(), FracOrder(m, 0.5 * k)).scaled(pk);
  auto at = [&](double eps) {
    const Mat s = eps * Mat::Identity(m, m);
    if (opt.numeric_derivative) {
      if (k != 2) throw UnsupportedOrder("numeric D_- is applied once only (k = 2)");
      const double sign = m % 2 ? -1.0 : 1.0;
      return sign * d_plus_numeric([&phi](const Mat& r) { return phi(r); }, s) / pk;
    }
    return invert_gg_minus_closed(phi, k)(s) / pk;
  };
  const double h = opt.h;
  // quadratic extrapolation to eps = 0 from eps = h, 2h, 4h
  return (8.0 * at(h) - 6.0 * at(2 * h) + at(4 * h)) / 3.0;
}

std::pair<MCEstimate, MCEstimate> duality_check(const MatrixField& f, const PlaneFunction& phi,
                                                const MCConfig& cfg, const DualityOptions& opt) {
  const int n = f.n(), m = f.m(), k = phi.k();
  if (phi.n() != n || phi.m() != m) throw DomainError("field and plane function dimensions differ");
  check_radon_exists(f, k);
  const MatrixDensity qx = MatrixDensity::student(n, m, opt.x_nu, opt.x_scale);
  const MatrixDensity qt = MatrixDensity::student(n - k, m, opt.t_nu, opt.t_scale);
  const MatrixDensity qw = MatrixDensity::student(k, m, opt.w_nu, opt.w_scale);
  const MCEstimate lhs = mc_integrate(cfg.fork(1), [&](SeededSampler& s) {
    const Mat x = qx.sample(s);
    const double fx = f(x);
    if (fx == 0.0) return 0.0;
    const Mat xi = haar_frame(n, n - k, s);
    return fx * phi(xi, xi.transpose() * x) * std::exp(-qx.log_density(x));
  });
  const MCEstimate rhs = mc_integrate(cfg.fork(2), [&](SeededSampler& s) {
    const Mat xi = haar_frame(n, n - k, s);
    const Mat t = qt.sample(s);
    const double pv = phi(xi, t);
    if (pv == 0.0) return 0.0;
    const Mat rot = complete_rotation(xi);
    return pv * radon_draw(f, rot, t, k, s, qw) * std::exp(-qt.log_density(t));
  });
  return {lhs, rhs};
}

GrowthReport counterexample_b_probe(double p, int n, int m, int k, const ProbeSchedule& sched,
                                    const MCConfig& cfg) {
  need_plane_dims(n, m, k);
  if (n < m) throw DomainError("need n >= m");
  if (!(p > 1.0)) throw DomainError("probe needs p > 1");
  GrowthReport rep;
  rep.p = p;
  rep.p0 = Rational(n + m - 1, k + m - 1).value();
  rep.n = n;
  rep.m = m;
  rep.k = k;

  // plane integral at t = 0 over balls |w| < R in M_{k,m}
  const int dw = k * m;
  rep.fhat_radii = sched.fhat_radii;
  MCEstimate partial = MCEstimate::exact(0.0);
  double lo = 0.0;
  for (std::size_t j = 0; j < sched.fhat_radii.size(); ++j) {
    const double hi = sched.fhat_radii[j];
    const double vol = ball_volume(dw, hi) - ball_volume(dw, lo);
    const MCEstimate shell = mc_integrate(cfg.fork(100 + j), [&](SeededSampler& s) {
      const double rho = shell_radius(dw, lo, hi, s);
      const Vec u = unit_sphere_point(dw, s);
      const Mat w = rho * Eigen::Map<const Mat>(u.data(), k, m);
      return vol * counterexample_profile(n, m, p, w.transpose() * w);
    });
    partial = partial + shell;
    rep.fhat_partial.push_back(partial);
    lo = hi;
  }
  rep.divergence_signature = rep.fhat_partial.size() > 1;
  for (std::size_t j = 1; j < rep.fhat_partial.size(); ++j) {
    const double ratio = rep.fhat_partial[j].value / rep.fhat_partial[j - 1].value;
    rep.fhat_ratios.push_back(ratio);
    rep.divergence_signature = rep.divergence_signature && ratio >= sched.growth_ratio;
  }
  rep.stabilized = !rep.fhat_ratios.empty() &&
                   std::abs(rep.fhat_ratios.back() - 1.0) <= sched.stable_tol;

  // ||F||_p^p = sigma_{n,m} int_T prod t_ii^{n-i} F0(t't)^p dt over upper-triangular
  // t with positive diagonal; shells in the Frobenius norm of t
  const int dt = m * (m + 1) / 2;
  const double sig = stiefel_volume(n, m);
  rep.norm_radii = sched.norm_radii;
  for (std::size_t j = 1; j < sched.norm_radii.size(); ++j) {
    const double a = sched.norm_radii[j - 1], b = sched.norm_radii[j];
    const double vol = (ball_volume(dt, b) - ball_volume(dt, a)) / std::pow(2.0, m);
    const MCEstimate shell = mc_integrate(cfg.fork(200 + j), [&](SeededSampler& s) {
      const double rho = shell_radius(dt, a, b, s);
      const Vec u = unit_sphere_point(dt, s);
      Mat t = Mat::Zero(m, m);
      int idx = 0;
      double jac = 1.0;
      for (int i = 0; i < m; ++i)
        for (int c = i; c < m; ++c) {
          t(i, c) = rho * (c == i ? std::abs(u(idx)) : u(idx));
          ++idx;
        }
      for (int i = 0; i < m; ++i) jac *= std::pow(t(i, i), n - i - 1);
      return vol * sig * jac * std::pow(counterexample_profile(n, m, p, t.transpose() * t), p);
    });
    rep.norm_shells.push_back(shell);
  }
  rep.norm_converges = rep.norm_shells.size() > 1;
  for (std::size_t j = 1; j < rep.norm_shells.size(); ++j) {
    const double ratio = rep.norm_shells[j].value / rep.norm_shells[j - 1].value;
    rep.norm_ratios.push_back(ratio);
    rep.norm_converges = rep.norm_converges && ratio < sched.shell_ratio;
  }
  return rep;
}

}  // namespace matrad
