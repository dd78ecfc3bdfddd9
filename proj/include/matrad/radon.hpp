#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "matrad/fracint.hpp"

namespace matrad {

// Function on n x m matrices. Radial kinds expose their profile f0 with
// f(x) = f0(x'x).
class MatrixField {
 public:
  enum class Kind { RadialClosed, GaussianFull, PowerFull, ShiftedPowerFull, CounterexampleF, Custom };

  static MatrixField radial(int n, const RadialFunction& f0);
  static MatrixField gaussian(int n, int m, double coef = 1.0);            // exp(-tr x'x)
  static MatrixField power(int n, int m, double lambda);                   // |x'x|^{-lambda/2}
  static MatrixField shifted_power(int n, int m, double lambda);           // |I + x'x|^{-lambda/2}
  // |2I + x'x|^{-(n+m-1)/(2p)} / log|2I + x'x|
  static MatrixField counterexample(int n, int m, double p);
  // lp_class > 0 declares f in L^p for that p, which arms the existence guard
  static MatrixField custom(int n, int m, std::function<double(const Mat&)> f, double lp_class = 0);

  Kind kind() const { return kind_; }
  int n() const { return n_; }
  int m() const { return m_; }
  double lambda() const { return lambda_; }
  double lp_class() const { return p_; }
  bool is_radial() const { return kind_ != Kind::Custom; }
  RadialFunction profile() const;  // throws DomainError for Custom

  MatrixField scaled(double c) const;
  double operator()(const Mat& x) const;

 private:
  MatrixField(Kind kind, int n, int m) : kind_(kind), n_(n), m_(m) {}
  Kind kind_;
  int n_, m_;
  double lambda_ = 0, p_ = 0, coef_ = 1.0;
  std::optional<RadialFunction> f0_;
  std::function<double(const Mat&)> custom_;
};

// Function on matrix k-planes, phi(xi, t) with xi in V_{n,n-k}, t in M_{n-k,m}.
class PlaneFunction {
 public:
  enum class Kind { RadialClosed, Custom };

  // phi(xi, t) = phi0(t't)
  static PlaneFunction radial(int n, int k, const RadialFunction& phi0);
  // the callable must be matrix-even: phi(xi th', th t) = phi(xi, t) for th in O(n-k)
  static PlaneFunction custom(int n, int m, int k, std::function<double(const Mat&, const Mat&)> phi);

  Kind kind() const { return kind_; }
  int n() const { return n_; }
  int m() const { return m_; }
  int k() const { return k_; }
  const RadialFunction& profile() const;
  double operator()(const Mat& xi, const Mat& t) const;

 private:
  PlaneFunction(Kind kind, int n, int m, int k) : kind_(kind), n_(n), m_(m), k_(k) {}
  Kind kind_;
  int n_, m_, k_;
  std::optional<RadialFunction> phi0_;
  std::function<double(const Mat&, const Mat&)> custom_;
};

struct RadonOptions {
  bool prefer_closed = true;   // use the radial closed forms when they exist
  double student_nu = 3.0;     // importance density on the plane coordinates
  double scale = 1.0;
  GGOptions gg;
};

// Throws ExistenceViolation when f is outside the range where its plane
// integrals converge (power exponents at or below k+m-1, L^p with p >= p0).
void check_radon_exists(const MatrixField& f, int k);

// Point of the plane tau(xi, t): rot = complete_rotation(xi), x = C w + xi t.
Mat plane_point(const Mat& rot, const Mat& w, const Mat& t, int k);

MCEstimate radon(const MatrixField& f, const MatrixPlane& plane, const MCConfig& cfg,
                 const RadonOptions& opt = {});
// pi^{km/2} (I_-^{k/2} f0)(s)
MCEstimate radon_radial(const RadialFunction& f0, int k, const Mat& s, const MCConfig& cfg,
                        const GGOptions& opt = {});
// one unbiased draw of the plane integral at (rot, t)
double radon_draw(const MatrixField& f, const Mat& rot, const Mat& t, int k, SeededSampler& rng,
                  const MatrixDensity& density);

MCEstimate dual_radon(const PlaneFunction& phi, const Mat& x, const MCConfig& cfg,
                      bool prefer_closed = true);
// Exact radial path; RankDeficient when rank(x) < m, UnsupportedOrder without a closed form.
double dual_radon_radial(const PlaneFunction& phi, const Mat& x);

// Average of phi(xi, xi'x + z) with z'z = s; default z = [0; I_m] s^{1/2}.
MCEstimate shifted_dual_radon(const PlaneFunction& phi, const Mat& x, const Mat& s,
                              const MCConfig& cfg);
MCEstimate shifted_dual_radon(const PlaneFunction& phi, const Mat& x, const Mat& s, const Mat& z,
                              const MCConfig& cfg);

// Average of f(x + v r^{1/2}) over v in V_{n,m}.
MCEstimate spherical_mean(const MatrixField& f, const Mat& x, const Mat& r, const MCConfig& cfg,
                          bool prefer_closed = true);

struct MeanValueOptions {
  double h = 1e-3;               // smallest point of the limit path s = eps I
  bool numeric_derivative = false;  // apply D_- by finite differences (k = 2 only)
};

// f(x) recovered from pi^{-km/2} lim_{s -> 0} (D_-^{k/2} Phi_x)(s), Phi_x the
// shifted dual transform of the Radon image. Only pipelines that stay in closed
// form are supported.
double mean_value_invert(const MatrixField& f, const Mat& x, int k, const MeanValueOptions& opt = {});

struct DualityOptions {
  double x_nu = 3.0, x_scale = 1.0;  // importance density on M_{n,m}
  double t_nu = 3.0, t_scale = 1.0;  // on M_{n-k,m}
  double w_nu = 3.0, w_scale = 1.0;  // on M_{k,m}
};

// (int f(x) phi^(x) dx, E_xi int phi(xi,t) f^(xi,t) dt), each by MC.
std::pair<MCEstimate, MCEstimate> duality_check(const MatrixField& f, const PlaneFunction& phi,
                                                const MCConfig& cfg, const DualityOptions& opt = {});

struct ProbeSchedule {
  std::vector<double> fhat_radii{0.5, 1, 2, 4, 8};     // balls in plane coordinates
  std::vector<double> norm_radii{8, 16, 32, 64, 128};  // shells for the L^p norm
  double growth_ratio = 1.5;
  double shell_ratio = 0.9;
  double stable_tol = 1e-2;
};

struct GrowthReport {
  double p = 0, p0 = 0;
  int n = 0, m = 0, k = 0;
  std::vector<double> fhat_radii;
  std::vector<MCEstimate> fhat_partial;  // integral over the ball of each radius
  std::vector<double> fhat_ratios;       // successive partial ratios
  bool divergence_signature = false;     // every ratio >= growth_ratio
  bool stabilized = false;               // last ratio within stable_tol of 1
  std::vector<double> norm_radii;
  std::vector<MCEstimate> norm_shells;   // integral of |F|^p over each shell
  std::vector<double> norm_ratios;
  bool norm_converges = false;           // every shell ratio < shell_ratio
};

// Partial integrals of the Radon image of the L^p counterexample at t = 0 and
// of its L^p norm. Reports growth; raises nothing for p >= p0.
GrowthReport counterexample_b_probe(double p, int n, int m, int k, const ProbeSchedule& sched,
                                    const MCConfig& cfg);

}  // namespace matrad
