#include "matrad/riesz.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <numeric>

namespace matrad {

namespace {

constexpr double kPi = std::numbers::pi;

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

bool near_int(double a, double& r) {
  r = std::round(a);
  return std::abs(a - r) <= 1e-12 * std::max(1.0, std::abs(a));
}

double det_of(const Mat& a) {
  switch (a.rows()) {
    case 1: return a(0, 0);
    case 2: return a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
    default: return a.determinant();
  }
}

// Weighted evaluation points for det(d'd) on N x m matrices; offsets are in
// units of h, weights in units of h^{-2m}.
struct Stencil {
  int rows = 0, cols = 0;
  std::vector<std::pair<std::vector<int>, double>> points;
};

Stencil cayley_stencil(int rows, int cols) {
  const int dim = rows * cols;
  std::map<std::vector<int>, double> acc;
  std::vector<int> perm(cols);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    int inversions = 0;
    for (int a = 0; a < cols; ++a)
      for (int b = a + 1; b < cols; ++b)
        if (perm[a] > perm[b]) ++inversions;
    const double sign = inversions % 2 ? -1.0 : 1.0;
    // every row tuple (i_0, ..., i_{m-1}); factor a is d_{i_a a} d_{i_a perm(a)}
    std::vector<int> rowsel(cols, 0);
    for (;;) {
      std::vector<int> mult(dim, 0);
      for (int a = 0; a < cols; ++a) {
        ++mult[rowsel[a] * cols + a];
        ++mult[rowsel[a] * cols + perm[a]];
      }
      // tensor product of 1-D central differences
      std::vector<std::pair<std::vector<int>, double>> partial{{std::vector<int>(dim, 0), sign}};
      for (int c = 0; c < dim; ++c) {
        if (mult[c] == 0) continue;
        std::vector<std::pair<int, double>> d1;
        if (mult[c] == 1) d1 = {{-1, -0.5}, {1, 0.5}};
        else if (mult[c] == 2) d1 = {{-1, 1.0}, {0, -2.0}, {1, 1.0}};
        else throw UnsupportedOrder("stencil multiplicity above 2");
        std::vector<std::pair<std::vector<int>, double>> next;
        for (const auto& [off, w] : partial)
          for (const auto& [o, v] : d1) {
            auto o2 = off;
            o2[c] = o;
            next.emplace_back(std::move(o2), w * v);
          }
        partial.swap(next);
      }
      for (auto& [off, w] : partial) acc[off] += w;

      int pos = 0;
      while (pos < cols && ++rowsel[pos] == rows) rowsel[pos++] = 0;
      if (pos == cols) break;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  Stencil st;
  st.rows = rows;
  st.cols = cols;
  for (auto& [off, w] : acc)
    if (std::abs(w) > 1e-12) st.points.emplace_back(off, w);
  return st;
}

double apply_stencil(const Stencil& st, const std::function<double(const Mat&)>& g, const Mat& x,
                     double h) {
  auto one = [&](double step) {
    double s = 0;
    Mat y(st.rows, st.cols);
    for (const auto& [off, w] : st.points) {
      for (int i = 0; i < st.rows; ++i)
        for (int a = 0; a < st.cols; ++a) y(i, a) = x(i, a) + step * off[i * st.cols + a];
      s += w * g(y);
    }
    return s / std::pow(step, 2 * st.cols);
  };
  // second-order stencil, one Richardson pass
  return (4.0 * one(0.5 * h) - one(h)) / 3.0;
}

void need_small(int rows, int cols) {
  if (rows * cols > 8)
    throw UnsupportedDimension("finite-difference Cayley-Laplace limited to nm <= 8, got " +
                               std::to_string(rows * cols));
}

// Closed-form Radon image of a radial field on (n-k) x m plane coordinates.
std::optional<RadialFunction> closed_image(const MatrixField& f, int k) {
  if (!f.is_radial()) return std::nullopt;
  try {
    return gg_minus_image(f.profile(), FracOrder(f.m(), 0.5 * k))
        .scaled(std::pow(kPi, 0.5 * k * f.m()));
  } catch (const UnsupportedOrder&) {
    return std::nullopt;
  }
}

// Integer-order potential on M_{n,m} in the frame form: one draw of
// c_{n,k,m}^{-1} E_v int g(x - v w) dw.
double integer_potential_draw(const std::function<double(const Mat&)>& g, int n, int k,
                              const Mat& x, SeededSampler& s, const MatrixDensity& q, double inv_c) {
  const Mat v = haar_frame(n, k, s);
  const Mat w = q.sample(s);
  const double val = g(x - v * w);
  return val == 0.0 ? 0.0 : inv_c * val * std::exp(-q.log_density(w));
}

MatrixDensity omega_density(int k, int m, const RieszOptions& opt) {
  if (opt.det_q > 0) return MatrixDensity::det_power(k, m, opt.det_q, opt.scale);
  return MatrixDensity::student(k, m, opt.nu, opt.scale);
}

void need_frame_order(int n, int m, int k) {
  if (k < 0 || k > n - m)
    throw OrderNotAdmissible("integer order " + std::to_string(k) + " needs 0 <= k <= n-m=" +
                             std::to_string(n - m));
}

}  // namespace

RieszWallachParam::RieszWallachParam(int n, int m, double alpha) : n_(n), m_(m), alpha_(alpha) {
  if (m < 1 || n < m) throw DomainError("need n >= m >= 1");
  const int k0 = std::min(m - 1, n - m);
  double r;
  const bool integral = near_int(alpha, r);
  if (integral && r >= 0 && r <= k0) {
    discrete_ = true;
    alpha_ = r;
    return;
  }
  if (!(alpha > m - 1))
    throw OrderNotAdmissible("alpha=" + num(alpha) + " is neither in {0..." + std::to_string(k0) +
                             "} nor above m-1=" + std::to_string(m - 1));
  if (integral && r >= n - m + 1)
    throw OrderNotAdmissible("alpha=" + num(alpha) + " is an excluded integer >= n-m+1=" +
                             std::to_string(n - m + 1));
}

double FourierClosedForm::operator()(const Mat& y) const {
  return std::pow(kPi, 0.5 * n * m) * std::exp(-0.25 * y.squaredNorm());
}

// analytic in alpha; only the poles of Gamma_m(alpha/2) are refused
double zeta_gaussian(int n, int m, double alpha) {
  return std::pow(kPi, 0.5 * n * m) * gamma_m(m, 0.5 * alpha) / gamma_m(m, 0.5 * n);
}

MCEstimate zeta_gaussian_mc(int n, int m, double alpha, const MCConfig& cfg) {
  if (!(alpha > m - 1)) throw DivergentIntegral("Gaussian zeta integral needs alpha > m-1");
  const double c = std::pow(kPi, 0.5 * n * m);
  const double e = 0.5 * (alpha - n);
  return mc_integrate(cfg, [&](SeededSampler& s) {
    const Mat x = gaussian_mat(n, m, s) * std::sqrt(0.5);
    return c * std::pow(det_of(x.transpose() * x), e);
  });
}

void check_riesz_exists(const MatrixField& f, double alpha) {
  const int n = f.n(), m = f.m();
  switch (f.kind()) {
    case MatrixField::Kind::PowerFull:
      if (!(f.lambda() > alpha + m - 1 && f.lambda() < n - m + 1))
        throw ExistenceViolation("power field needs alpha+m-1 < lambda < n-m+1, got lambda=" +
                                 num(f.lambda()));
      break;
    case MatrixField::Kind::ShiftedPowerFull:
      // in L^p for p lambda > n+m-1; some admissible p exists iff this holds
      if (!(f.lambda() * n > (n + m - 1) * (alpha + m - 1)))
        throw ExistenceViolation("lambda=" + num(f.lambda()) + " too small for order " + num(alpha));
      break;
    case MatrixField::Kind::CounterexampleF:
    case MatrixField::Kind::Custom:
      if (f.lp_class() > 0 && f.lp_class() * (alpha + m - 1) >= n * (1 - 1e-12))
        throw ExistenceViolation("f in L^p with p=" + num(f.lp_class()) + " >= n/(alpha+m-1)=" +
                                 num(n / (alpha + m - 1)));
      break;
    default:
      break;
  }
}

MCEstimate riesz_potential_int(const MatrixField& f, const Mat& x, int k, const MCConfig& cfg,
                               const RieszOptions& opt) {
  const int n = f.n(), m = f.m();
  if (x.rows() != n || x.cols() != m) throw DomainError("point has the wrong size");
  RieszWallachParam(n, m, k);
  need_frame_order(n, m, k);
  if (k == 0) return MCEstimate::exact(f(x));
  check_riesz_exists(f, k);
  const double gamma2 = std::pow(2.0, -k * (m + 1)) * std::pow(kPi, -0.5 * k * (m + n)) *
                        gamma_m(k, 0.5 * (n - m));
  const double scale = gamma2 * stiefel_volume(n, k);
  const MatrixDensity q = omega_density(k, m, opt);
  auto g = [&f](const Mat& y) { return f(y); };
  return mc_integrate(cfg, [&](SeededSampler& s) {
    return integer_potential_draw(g, n, k, x, s, q, scale);
  });
}

double cayley_laplace_numeric(const std::function<double(const Mat&)>& g, const Mat& x, double h) {
  need_small(static_cast<int>(x.rows()), static_cast<int>(x.cols()));
  return apply_stencil(cayley_stencil(static_cast<int>(x.rows()), static_cast<int>(x.cols())), g, x, h);
}

double cayley_laplace_power(int n, int m, double lambda, const Mat& x, bool numeric) {
  if (x.rows() != n || x.cols() != m) throw DomainError("point has the wrong size");
  if (rank(x) < m) throw RankDeficient("|x|^lambda is not smooth where rank(x) < m");
  if (!numeric)
    return cayley_laplace_factor(n, m, lambda) *
           std::pow(det_of(x.transpose() * x), 0.5 * (lambda - 2));
  need_small(n, m);
  Eigen::JacobiSVD<Mat> svd(x);
  const double smin = svd.singularValues()(m - 1);
  const double h = 1e-2 * std::min(1.0, smin);
  return cayley_laplace_numeric(
      [lambda](const Mat& y) { return std::pow(det_of(y.transpose() * y), 0.5 * lambda); }, x, h);
}

MCEstimate semyanistyi_p(const MatrixField& f, const MatrixPlane& plane, double alpha,
                         const MCConfig& cfg, const RieszOptions& opt) {
  const int n = plane.n(), m = plane.m(), k = plane.k(), big = n - k;
  if (f.n() != n || f.m() != m) throw DomainError("field and plane dimensions differ");
  if (big < m) throw DomainError("polar form needs n-k >= m");
  double r;
  if (!(alpha > m - 1) || (near_int(alpha, r) && r >= big - m + 1))
    throw OrderNotAdmissible("order " + num(alpha) + " outside alpha > m-1 minus {n-k-m+1, ...}");
  check_radon_exists(f, k);

  const double pre = std::pow(2.0, -m) * stiefel_volume(big, m) / riesz_gamma(big, m, alpha);
  const ConeSampler cone(m, ConeDomain::full(), 0.5 * alpha - 0.5 * (m + 1), opt.cone);
  const Mat t = plane.t().mat();
  const std::optional<RadialFunction> image = opt.prefer_closed ? closed_image(f, k) : std::nullopt;
  const Mat rot = complete_rotation(plane.xi().mat());
  const MatrixDensity q = omega_density(k, m, opt);

  return mc_integrate(cfg, [&](SeededSampler& s) {
    Mat rr;
    const double w = cone.draw(s, rr);
    if (w == 0.0) return 0.0;
    const Mat u = haar_frame(big, m, s);
    const Mat tt = t - u * psd_sqrt(rr);
    const double fh = image ? (*image)(tt.transpose() * tt) : radon_draw(f, rot, tt, k, s, q);
    return pre * w * fh;
  });
}

double semyanistyi_gaussian_origin(int n, int m, int k, double alpha) {
  const int big = n - k;
  return std::pow(kPi, 0.5 * k * m) * zeta_gaussian(big, m, alpha) / riesz_gamma(big, m, alpha);
}

std::pair<MCEstimate, MCEstimate> fuglede_check(const MatrixField& f, const Mat& x, int k, int alpha,
                                                const MCConfig& cfg, const RieszOptions& opt) {
  const int n = f.n(), m = f.m(), big = n - k;
  if (x.rows() != n || x.cols() != m) throw DomainError("point has the wrong size");
  if (alpha < 0) throw OrderNotAdmissible("order must be >= 0");
  RieszWallachParam(n, m, alpha + k);
  need_frame_order(n, m, alpha + k);
  need_frame_order(big, m, alpha);
  check_radon_exists(f, k);
  check_riesz_exists(f, alpha + k);

  const double c = fuglede_constant(n, m, k);
  const MCEstimate rhs = c * riesz_potential_int(f, x, alpha + k, cfg.fork(2), opt);

  const std::optional<RadialFunction> image = opt.prefer_closed ? closed_image(f, k) : std::nullopt;
  const MatrixDensity qw = omega_density(k, m, opt);
  const MatrixDensity qa = omega_density(std::max(alpha, 1), m, opt);
  const double inv_ca = alpha == 0 ? 1.0 : 1.0 / fuglede_constant(big, m, alpha);

  const MCEstimate lhs = mc_integrate(cfg.fork(1), [&](SeededSampler& s) {
    const Mat rot = haar_orthogonal(n, s);
    const Mat xi = rot.rightCols(big);
    auto fhat = [&](const Mat& t) {
      return image ? (*image)(t.transpose() * t) : radon_draw(f, rot, t, k, s, qw);
    };
    const Mat t0 = xi.transpose() * x;
    if (alpha == 0) return fhat(t0);
    return integer_potential_draw(fhat, big, alpha, t0, s, qa, inv_ca);
  });
  return {lhs, rhs};
}

std::pair<MCEstimate, MCEstimate> composition_check(const MatrixField& f, const Mat& x, int k,
                                                    int alpha, int beta, const MCConfig& cfg,
                                                    const RieszOptions& opt) {
  const int n = f.n(), m = f.m(), big = n - k;
  if (x.rows() != n || x.cols() != m) throw DomainError("point has the wrong size");
  if (alpha != 1 || beta != 1) throw UnsupportedOrder("composition implemented for orders (1, 1)");
  RieszWallachParam(big, m, alpha);
  RieszWallachParam(big, m, beta);
  RieszWallachParam(n, m, alpha + beta + k);
  need_frame_order(big, m, 1);
  need_frame_order(n, m, alpha + beta + k);
  if (big < m + 2) throw UnsupportedDimension("composition needs n-k >= m+2");
  check_radon_exists(f, k);
  check_riesz_exists(f, alpha + beta + k);
  const std::optional<RadialFunction> image = closed_image(f, k);
  if (!image || image->kind() != RadialFunction::Kind::Gaussian)
    throw PipelineNotClosedForm("composition needs a Gaussian Radon image");

  const double c = fuglede_constant(n, m, k);
  const MCEstimate rhs = c * riesz_potential_int(f, x, alpha + beta + k, cfg.fork(2), opt);

  // Each order-1 potential is E_v int g(t - v w) dw / c_{N,1,m}. With g Gaussian
  // the two w-integrals are done exactly:
  //   int int exp(-|t - v1 w1 - v2 w2|^2) = pi^m det(V'V)^{-m/2} exp(-|(I - P_V) t|^2).
  // The factor (1 - c^2)^{-m/2}, c = v1.v2, is cancelled by drawing c from
  // (1 - c^2)^{(N-3-m)/2} instead of the uniform law (1 - c^2)^{(N-3)/2}.
  const double s_exp = 0.5 * (big - 3 - m);
  const double wc = std::beta(0.5, s_exp + 1.0) / std::beta(0.5, 0.5 * (big - 1));
  const double c1 = fuglede_constant(big, m, 1);
  const double pre = image->coef() * std::pow(kPi, m) * wc / (c1 * c1);

  const MCEstimate lhs = mc_integrate(cfg.fork(1), [&](SeededSampler& s) {
    const Mat rot = haar_orthogonal(n, s);
    const Mat t0 = rot.rightCols(big).transpose() * x;
    const Mat fr = haar_frame(big, 2, s);  // v1 and a unit vector orthogonal to it
    const double g1 = s.gamma(0.5), g2 = s.gamma(s_exp + 1.0);
    double cs = std::sqrt(g1 / (g1 + g2));
    if (s.uniform() < 0.5) cs = -cs;
    Mat v(big, 2);
    v.col(0) = fr.col(0);
    v.col(1) = cs * fr.col(0) + std::sqrt(std::max(0.0, 1.0 - cs * cs)) * fr.col(1);
    const Mat resid = t0 - v * (v.transpose() * v).ldlt().solve(v.transpose() * t0);
    return pre * std::exp(-resid.squaredNorm());
  });
  return {lhs, rhs};
}

MCEstimate plane_wave_invert_even(const MatrixField& f, const Mat& x, int k, const MCConfig& cfg,
                                  double h) {
  const int n = f.n(), m = f.m(), big = n - k;
  if (x.rows() != n || x.cols() != m) throw DomainError("point has the wrong size");
  if (k % 2) throw OddKUnsupported("plane-wave inversion needs even k");
  if (k != 2) throw UnsupportedOrder("plane-wave inversion implemented for k = 2 only");
  need_small(big, m);
  check_radon_exists(f, k);
  const std::optional<RadialFunction> image = closed_image(f, k);
  if (!image) throw PipelineNotClosedForm("plane-wave inversion needs a closed-form Radon image");

  const Stencil st = cayley_stencil(big, m);
  const double pre = ((m * k / 2) % 2 ? -1.0 : 1.0) / fuglede_constant(n, m, k);
  auto phi = [&image](const Mat& t) { return (*image)(t.transpose() * t); };
  return mc_integrate(cfg, [&](SeededSampler& s) {
    const Mat xi = haar_frame(n, big, s);
    return pre * apply_stencil(st, phi, xi.transpose() * x, h);
  });
}

ProjectionSlice projection_slice_check(int n, int m, int k, const Mat& b, const StiefelFrame& xi,
                                       const MCConfig& cfg) {
  const int big = n - k;
  if (xi.n() != n || xi.m() != big) throw DomainError("frame must be n x (n-k)");
  if (b.rows() != big || b.cols() != m) throw DomainError("b must be (n-k) x m");
  ProjectionSlice out;
  const Mat y = xi.mat() * b;
  out.lhs = FourierClosedForm{n, m}(y);

  const RadialFunction g0 = RadialFunction::gaussian(m);
  const FracOrder half(m, 0.5 * k);
  const double ck = std::pow(kPi, 0.5 * k * m);
  const double qnorm = std::pow(kPi, 0.5 * big * m);  // 1 / density constant of N(0, 1/2)
  const auto est = mc_integrate_multi(cfg, 2, [&](SeededSampler& s, double* o) {
    const Mat t = gaussian_mat(big, m, s) * std::sqrt(0.5);
    double img;
    if (!gg_minus_closed(g0, half, t.transpose() * t, img))
      throw PipelineNotClosedForm("Gaussian Radon image");
    const double w = ck * img * qnorm * std::exp(t.squaredNorm());
    const double phase = (b.transpose() * t).trace();
    o[0] = w * std::cos(phase);
    o[1] = w * std::sin(phase);
  });
  out.re_rhs = est[0];
  out.im_rhs = est[1];
  return out;
}

}  // namespace matrad
