#include "matrad/mcquad.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <numbers>
#include <thread>

#include "matrad/specialfn.hpp"

namespace matrad {

namespace {

constexpr double kPi = std::numbers::pi;

struct Moments {
  std::uint64_t n = 0;
  std::uint64_t bad = 0;
  std::vector<double> mean, m2;
};

Moments merge(const Moments& a, const Moments& b) {
  if (a.n == 0) {
    Moments r = b;
    r.bad += a.bad;
    return r;
  }
  if (b.n == 0) {
    Moments r = a;
    r.bad += b.bad;
    return r;
  }
  Moments r;
  r.n = a.n + b.n;
  r.bad = a.bad + b.bad;
  const double na = static_cast<double>(a.n), nb = static_cast<double>(b.n);
  const double n = na + nb;
  r.mean.resize(a.mean.size());
  r.m2.resize(a.mean.size());
  for (std::size_t i = 0; i < a.mean.size(); ++i) {
    const double delta = b.mean[i] - a.mean[i];
    r.mean[i] = a.mean[i] + delta * nb / n;
    r.m2[i] = a.m2[i] + b.m2[i] + delta * delta * na * nb / n;
  }
  return r;
}

// pairwise reduction in fixed index order
Moments reduce(const std::vector<Moments>& parts, std::size_t lo, std::size_t hi) {
  if (hi - lo == 1) return parts[lo];
  const std::size_t mid = lo + (hi - lo) / 2;
  return merge(reduce(parts, lo, mid), reduce(parts, mid, hi));
}

double log_gamma_m(int m, double a) {
  double s = 0.25 * m * (m - 1) * std::log(kPi);
  for (int j = 0; j < m; ++j) s += std::lgamma(a - 0.5 * j);
  return s;
}

}  // namespace

MCEstimate operator*(double c, const MCEstimate& e) {
  return {c * e.value, std::abs(c) * e.std_err, e.n_samples};
}

MCEstimate operator+(const MCEstimate& a, const MCEstimate& b) {
  return {a.value + b.value, std::hypot(a.std_err, b.std_err), a.n_samples + b.n_samples};
}

double z_score(const MCEstimate& a, const MCEstimate& b) {
  const double se = std::hypot(a.std_err, b.std_err);
  const double diff = std::abs(a.value - b.value);
  if (se == 0) return diff == 0 ? 0.0 : std::numeric_limits<double>::infinity();
  return diff / se;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

SeededSampler::SeededSampler(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_(stream_id) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream_id),
                    static_cast<std::uint32_t>(stream_id >> 32), 0x6d617472u};
  rng_.seed(seq);
}

double SeededSampler::uniform() {
  // 53 random bits, shifted off zero
  const std::uint64_t bits = rng_() >> 11;
  return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
}

double SeededSampler::gamma(double shape) {
  std::gamma_distribution<double> g(shape, 1.0);
  return g(rng_);
}

double SeededSampler::student_t(double nu) {
  std::student_t_distribution<double> t(nu);
  return t(rng_);
}

std::vector<MCEstimate> mc_integrate_multi(
    const MCConfig& cfg, int components,
    const std::function<void(SeededSampler&, double* out)>& draw) {
  if (cfg.n_samples < 2) throw DomainError("Monte Carlo needs at least two samples");
  const std::uint64_t chunk = std::max<std::uint64_t>(cfg.chunk, 1);
  const std::uint64_t n_chunks = (cfg.n_samples + chunk - 1) / chunk;
  std::vector<Moments> parts(n_chunks);

  auto run_chunk = [&](std::uint64_t c) {
    SeededSampler s(cfg.seed, c);
    const std::uint64_t count = std::min(chunk, cfg.n_samples - c * chunk);
    Moments mo;
    mo.mean.assign(components, 0.0);
    mo.m2.assign(components, 0.0);
    std::vector<double> out(components);
    for (std::uint64_t i = 0; i < count; ++i) {
      std::fill(out.begin(), out.end(), 0.0);
      draw(s, out.data());
      bool ok = true;
      for (double v : out) ok = ok && std::isfinite(v);
      if (!ok) {
        ++mo.bad;
        std::fill(out.begin(), out.end(), 0.0);
      }
      ++mo.n;
      const double n = static_cast<double>(mo.n);
      for (int j = 0; j < components; ++j) {
        const double delta = out[j] - mo.mean[j];
        mo.mean[j] += delta / n;
        mo.m2[j] += delta * (out[j] - mo.mean[j]);
      }
    }
    parts[c] = std::move(mo);
  };

  unsigned threads = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, n_chunks));
  if (threads <= 1) {
    for (std::uint64_t c = 0; c < n_chunks; ++c) run_chunk(c);
  } else {
    std::atomic<std::uint64_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mu;
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (;;) {
          const std::uint64_t c = next.fetch_add(1);
          if (c >= n_chunks) return;
          try {
            run_chunk(c);
          } catch (...) {
            std::lock_guard<std::mutex> lock(failure_mu);
            if (!failure) failure = std::current_exception();
            next.store(n_chunks);
          }
        }
      });
    }
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
  }

  const Moments total = reduce(parts, 0, parts.size());
  if (static_cast<double>(total.bad) > 1e-3 * static_cast<double>(total.n))
    throw NonFinite(std::to_string(total.bad) + " of " + std::to_string(total.n) +
                    " draws were non-finite");
  std::vector<MCEstimate> res(components);
  const double n = static_cast<double>(total.n);
  for (int j = 0; j < components; ++j) {
    const double var = total.m2[j] / (n - 1.0);
    res[j] = {total.mean[j], std::sqrt(std::max(var, 0.0) / n), total.n};
  }
  return res;
}

MCEstimate mc_integrate(const MCConfig& cfg, const std::function<double(SeededSampler&)>& draw) {
  return mc_integrate_multi(cfg, 1, [&](SeededSampler& s, double* out) { out[0] = draw(s); })[0];
}

Mat gaussian_mat(int n, int m, SeededSampler& s) {
  Mat a(n, m);
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < n; ++i) a(i, j) = s.normal();
  return a;
}

RectMatrix sample_gaussian_matrix(int n, int m, SeededSampler& s) {
  return RectMatrix(gaussian_mat(n, m, s));
}

Mat haar_frame(int n, int m, SeededSampler& s) {
  if (m > n) throw DomainError("frame needs n >= m");
  for (;;) {
    const Mat g = gaussian_mat(n, m, s);
    Eigen::HouseholderQR<Mat> qr(g);
    const auto& qrm = qr.matrixQR();
    bool degenerate = false;
    for (int j = 0; j < m; ++j) degenerate = degenerate || qrm(j, j) == 0.0;
    if (degenerate) continue;  // measure-zero event: redraw
    Mat q = qr.householderQ() * Mat::Identity(n, m);
    for (int j = 0; j < m; ++j)
      if (qrm(j, j) < 0) q.col(j) = -q.col(j);
    return q;
  }
}

StiefelFrame sample_stiefel(int n, int m, SeededSampler& s) { return StiefelFrame(haar_frame(n, m, s)); }

Mat haar_orthogonal(int n, SeededSampler& s) { return haar_frame(n, n, s); }

Vec unit_sphere_point(int dim, SeededSampler& s) {
  for (;;) {
    Vec v(dim);
    for (int i = 0; i < dim; ++i) v(i) = s.normal();
    const double r = v.norm();
    if (r > 0) return v / r;
  }
}

MatrixDensity::MatrixDensity(Kind kind, int k, int m, double param, double scale)
    : kind_(kind), k_(k), m_(m), param_(param), scale_(scale) {
  if (k < 1 || m < 1) throw DomainError("matrix density needs positive dimensions");
  if (!(scale > 0)) throw DomainError("density scale must be positive");
  const double dim = static_cast<double>(k) * m;
  switch (kind) {
    case Kind::Gaussian:
      log_norm_ = -0.5 * dim * std::log(2 * kPi * scale * scale);
      break;
    case Kind::Student:
      if (!(param > 0)) throw DomainError("Student density needs nu > 0");
      log_norm_ = std::lgamma(0.5 * (param + dim)) - std::lgamma(0.5 * param) -
                  0.5 * dim * std::log(param * kPi) - dim * std::log(scale);
      break;
    case Kind::DetPower:
      if (!(param > m - 1)) throw DomainError("det-power density needs q > m-1");
      // normalizer of |I + w'w|^{-(q+k)/2} over k x m matrices
      log_norm_ = -(0.5 * dim * std::log(kPi) + log_gamma_m(m, 0.5 * param) -
                    log_gamma_m(m, 0.5 * (param + k))) -
                  dim * std::log(scale);
      break;
  }
}

MatrixDensity MatrixDensity::gaussian(int k, int m, double scale) {
  return MatrixDensity(Kind::Gaussian, k, m, 0.0, scale);
}
MatrixDensity MatrixDensity::student(int k, int m, double nu, double scale) {
  return MatrixDensity(Kind::Student, k, m, nu, scale);
}
MatrixDensity MatrixDensity::det_power(int k, int m, double q, double scale) {
  return MatrixDensity(Kind::DetPower, k, m, q, scale);
}

Mat MatrixDensity::sample(SeededSampler& s) const {
  switch (kind_) {
    case Kind::Gaussian:
      return scale_ * gaussian_mat(k_, m_, s);
    case Kind::Student: {
      const double g = 2.0 * s.gamma(0.5 * param_);  // chi-square with nu dof
      return (scale_ * std::sqrt(param_ / g)) * gaussian_mat(k_, m_, s);
    }
    case Kind::DetPower: {
      // Bartlett factor of a Wishart(q, I) matrix, then rows ~ N(0, W^{-1})
      Mat l = Mat::Zero(m_, m_);
      for (int i = 0; i < m_; ++i) {
        l(i, i) = std::sqrt(2.0 * s.gamma(0.5 * (param_ - i)));
        for (int j = 0; j < i; ++j) l(i, j) = s.normal();
      }
      const Mat g = gaussian_mat(k_, m_, s);
      // w' = L'^{-1} g' has covariance (L L')^{-1} = W^{-1}
      const Mat wt = l.transpose().triangularView<Eigen::Upper>().solve(g.transpose());
      return scale_ * wt.transpose();
    }
  }
  return {};
}

double MatrixDensity::log_density(const Mat& w) const {
  const double sq = w.squaredNorm();
  switch (kind_) {
    case Kind::Gaussian:
      return log_norm_ - 0.5 * sq / (scale_ * scale_);
    case Kind::Student: {
      const double dim = static_cast<double>(k_) * m_;
      return log_norm_ - 0.5 * (param_ + dim) * std::log1p(sq / (param_ * scale_ * scale_));
    }
    case Kind::DetPower: {
      const Mat a = Mat::Identity(m_, m_) + w.transpose() * w / (scale_ * scale_);
      return log_norm_ - 0.5 * (param_ + k_) * std::log(a.determinant());
    }
  }
  return 0;
}

MCEstimate integrate_matrix_space(const std::function<double(const Mat&)>& f,
                                  const MatrixDensity& density, const MCConfig& cfg) {
  return mc_integrate(cfg, [&](SeededSampler& s) {
    const Mat w = density.sample(s);
    const double v = f(w);
    if (v == 0.0) return 0.0;
    return v * std::exp(-density.log_density(w));
  });
}

ConeSampler::ConeSampler(int m, const ConeDomain& dom, double nu, const ConeProposal& prop)
    : m_(m), dom_(dom), nu_(nu), prop_(prop) {
  if (m < 1) throw DomainError("cone integration needs m >= 1");
  if (!(prop.scale > 0)) throw DomainError("proposal scale must be positive");
  // diagonal exponents of the triangular Jacobian times |t't|^nu
  for (int i = 0; i < m; ++i) {
    const double ei = 2.0 * nu + (m - i);
    if (!(ei > -1.0)) throw NonIntegrable("det power too singular at the cone vertex");
    e_.push_back(ei);
  }
  const double sc = prop.scale;
  switch (dom.kind) {
    case ConeDomain::Kind::Shifted:
      if (dom.lower.rows() != m || dom.lower.cols() != m) throw DomainError("shift has wrong size");
      [[fallthrough]];
    case ConeDomain::Kind::Full:
      for (int i = 0; i < m; ++i) {
        const double a = 0.5 * (e_[i] + 1.0);
        if (prop.tail > 0) {
          const double b = 0.5 * prop.tail;
          log_z_.push_back((e_[i] + 1.0) * std::log(sc) + std::lgamma(a) + std::lgamma(b) -
                           std::lgamma(a + b) - std::log(2.0));
        } else {
          log_z_.push_back(a * std::log(2.0 * sc * sc) + std::lgamma(a) - std::log(2.0));
        }
      }
      if (prop.tail > 0) {
        const double tau = prop.tail;
        off_log_norm_ = std::lgamma(0.5 * (tau + 1)) - std::lgamma(0.5 * tau) -
                        0.5 * std::log(tau * kPi) - std::log(sc);
      } else {
        off_log_norm_ = -0.5 * std::log(2 * kPi * sc * sc);
      }
      break;
    case ConeDomain::Kind::Interval: {
      const Mat& a = dom.lower;
      const Mat& b = dom.upper;
      if (a.rows() != m || a.cols() != m || b.rows() != m || b.cols() != m)
        throw DomainError("interval ends have wrong size");
      Mat c = b - a;
      c = 0.5 * (c + c.transpose()).eval();
      if (!is_positive_definite(c))
        throw EmptyDomain("upper end minus lower end is not positive definite");
      croot_ = psd_sqrt(c);
      // r = a + c^{1/2} u c^{1/2}, dr = |c|^d du, |r - a|^nu = |c|^nu |u|^nu
      double logw = (0.5 * (m + 1) + nu) * std::log(c.determinant()) + m * std::log(2.0) +
                    0.5 * m * (m - 1) * std::log(2.0);
      for (int i = 0; i < m; ++i) logw -= std::log(e_[i] + 1.0);
      interval_weight_ = std::exp(logw);
      break;
    }
  }
}

double ConeSampler::draw(SeededSampler& s, Mat& r) const {
  const int m = m_;
  Mat t = Mat::Zero(m, m);
  if (dom_.kind == ConeDomain::Kind::Interval) {
    for (int i = 0; i < m; ++i) {
      t(i, i) = std::pow(s.uniform(), 1.0 / (e_[i] + 1.0));
      for (int j = i + 1; j < m; ++j) t(i, j) = 2.0 * s.uniform() - 1.0;
    }
    const Mat u = t.transpose() * t;
    r = dom_.lower + croot_ * u * croot_;
    if (!is_positive_definite(Mat::Identity(m, m) - u)) return 0.0;  // outside (0, I)
    return interval_weight_;
  }
  const double sc = prop_.scale;
  const double tau = prop_.tail;
  double logw = m * std::log(2.0);
  for (int i = 0; i < m; ++i) {
    if (tau > 0) {
      const double y = s.gamma(0.5 * (e_[i] + 1.0)) / s.gamma(0.5 * tau);
      t(i, i) = sc * std::sqrt(y);
      logw += log_z_[i] + 0.5 * (e_[i] + 1.0 + tau) * std::log1p(y);
    } else {
      const double g = s.gamma(0.5 * (e_[i] + 1.0));
      t(i, i) = sc * std::sqrt(2.0 * g);
      logw += log_z_[i] + g;
    }
    for (int j = i + 1; j < m; ++j) {
      double x;
      if (tau > 0) {
        x = sc * s.student_t(tau);
        logw -= off_log_norm_ - 0.5 * (tau + 1) * std::log1p(x * x / (tau * sc * sc));
      } else {
        x = sc * s.normal();
        logw -= off_log_norm_ - 0.5 * x * x / (sc * sc);
      }
      t(i, j) = x;
    }
  }
  r = t.transpose() * t;
  if (dom_.kind == ConeDomain::Kind::Shifted) r += dom_.lower;
  return std::exp(logw);
}

MCEstimate integrate_cone(const std::function<double(const Mat&)>& g, int m, const ConeDomain& dom,
                          double nu, const MCConfig& cfg, const ConeProposal& prop) {
  const ConeSampler cs(m, dom, nu, prop);
  return mc_integrate(cfg, [&](SeededSampler& s) {
    Mat r;
    const double w = cs.draw(s, r);
    if (w == 0.0) return 0.0;
    const double v = g(r);
    return v == 0.0 ? 0.0 : v * w;
  });
}

}  // namespace matrad
