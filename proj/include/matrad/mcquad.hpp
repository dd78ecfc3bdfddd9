#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <random>
#include <string_view>
#include <vector>

#include "matrad/symcone.hpp"

namespace matrad {

// Value with its standard error. n_samples == 0 marks a closed-form value.
struct MCEstimate {
  double value = 0.0;
  double std_err = 0.0;
  std::uint64_t n_samples = 0;

  static MCEstimate exact(double v) { return {v, 0.0, 0}; }
  bool is_exact() const { return n_samples == 0; }
};

MCEstimate operator*(double c, const MCEstimate& e);
// sum of independent estimates
MCEstimate operator+(const MCEstimate& a, const MCEstimate& b);

// |a - b| / sqrt(se_a^2 + se_b^2); 0 when both are exact and equal.
double z_score(const MCEstimate& a, const MCEstimate& b);

std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t fnv1a(std::string_view s);

// Independent substream per (seed, stream_id).
class SeededSampler {
 public:
  explicit SeededSampler(std::uint64_t seed, std::uint64_t stream_id = 0);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_; }

  double normal() { return normal_(rng_); }
  double uniform();  // open interval (0, 1)
  double gamma(double shape);
  double student_t(double nu);
  std::mt19937_64& engine() { return rng_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::mt19937_64 rng_;
  std::normal_distribution<double> normal_;
};

struct MCConfig {
  std::uint64_t n_samples = 200000;
  std::uint64_t seed = 0x5eedULL;
  std::uint64_t chunk = 4096;  // draws per substream; fixed for reproducibility
  unsigned threads = 0;        // 0: hardware concurrency

  MCConfig with_samples(std::uint64_t n) const {
    MCConfig c = *this;
    c.n_samples = n;
    return c;
  }
  MCConfig with_seed(std::uint64_t s) const {
    MCConfig c = *this;
    c.seed = s;
    return c;
  }
  // derived config for an independent sub-computation
  MCConfig fork(std::uint64_t tag) const { return with_seed(splitmix64(seed ^ splitmix64(tag))); }
};

// Mean of K-component weighted draws. The draw writes K values into out.
// A draw with any non-finite component contributes zero; more than 0.1% of
// such draws raise NonFinite.
std::vector<MCEstimate> mc_integrate_multi(
    const MCConfig& cfg, int components,
    const std::function<void(SeededSampler&, double* out)>& draw);

MCEstimate mc_integrate(const MCConfig& cfg, const std::function<double(SeededSampler&)>& draw);

// ---- samplers ----

Mat gaussian_mat(int n, int m, SeededSampler& s);
RectMatrix sample_gaussian_matrix(int n, int m, SeededSampler& s);
// Haar-distributed frame (QR of a Gaussian matrix, positive R diagonal)
Mat haar_frame(int n, int m, SeededSampler& s);
StiefelFrame sample_stiefel(int n, int m, SeededSampler& s);
Mat haar_orthogonal(int n, SeededSampler& s);
// uniform point of the unit sphere in R^dim
Vec unit_sphere_point(int dim, SeededSampler& s);

// Importance density on k x m matrices.
class MatrixDensity {
 public:
  enum class Kind { Gaussian, Student, DetPower };

  // i.i.d. N(0, scale^2) entries
  static MatrixDensity gaussian(int k, int m, double scale = 1.0);
  // isotropic multivariate t with nu degrees of freedom
  static MatrixDensity student(int k, int m, double nu, double scale = 1.0);
  // density proportional to |I + w'w/scale^2|^{-(q+k)/2}, q > m-1
  static MatrixDensity det_power(int k, int m, double q, double scale = 1.0);

  Kind kind() const { return kind_; }
  int rows() const { return k_; }
  int cols() const { return m_; }
  Mat sample(SeededSampler& s) const;
  double log_density(const Mat& w) const;

 private:
  MatrixDensity(Kind kind, int k, int m, double param, double scale);
  Kind kind_;
  int k_, m_;
  double param_, scale_;
  double log_norm_ = 0;
};

// Unbiased estimate of the integral of f over k x m matrices.
MCEstimate integrate_matrix_space(const std::function<double(const Mat&)>& f,
                                  const MatrixDensity& density, const MCConfig& cfg);

// Tail model of the triangular-coordinate proposal on the cone.
struct ConeProposal {
  double scale = 1.0;
  double tail = 0.0;  // 0: Gaussian tails; > 0: power tails of that index
};

struct ConeDomain {
  enum class Kind { Full, Interval, Shifted };
  Kind kind = Kind::Full;
  Mat lower;  // a for Interval, s for Shifted
  Mat upper;  // b for Interval

  static ConeDomain full() { return {}; }
  static ConeDomain interval(const Mat& a, const Mat& b) { return {Kind::Interval, a, b}; }
  static ConeDomain shifted(const Mat& s) { return {Kind::Shifted, s, Mat()}; }
};

// Weighted draws r on the domain such that E[w g(r)] is the integral of
// g(r) |r - r0|^nu. Rejected draws have weight 0.
class ConeSampler {
 public:
  ConeSampler(int m, const ConeDomain& dom, double nu, const ConeProposal& prop = {});
  double draw(SeededSampler& s, Mat& r) const;
  int m() const { return m_; }

 private:
  int m_;
  ConeDomain dom_;
  double nu_;
  ConeProposal prop_;
  std::vector<double> e_, log_z_;
  double off_log_norm_ = 0;
  Mat croot_;
  double interval_weight_ = 0;
};

// Integral of g(r) |r - r0|^nu over the domain, r0 being the lower vertex
// (0 for the full cone). The det-power factor is absorbed by the sampler,
// so nu may make the integrand singular at the vertex (nu > -1).
MCEstimate integrate_cone(const std::function<double(const Mat&)>& g, int m, const ConeDomain& dom,
                          double nu, const MCConfig& cfg, const ConeProposal& prop = {});

}  // namespace matrad
