#pragma once

#include <functional>
#include <utility>

#include "matrad/radon.hpp"

namespace matrad {

// Order in {0, 1, ..., k0} or alpha > m-1 off the excluded integers
// n-m+1, n-m+2, ...; k0 = min(m-1, n-m). Throws OrderNotAdmissible.
class RieszWallachParam {
 public:
  RieszWallachParam(int n, int m, double alpha);
  int n() const { return n_; }
  int m() const { return m_; }
  double alpha() const { return alpha_; }
  bool discrete() const { return discrete_; }

 private:
  int n_, m_;
  double alpha_;
  bool discrete_ = false;
};

// Fourier transform of the Gaussian exp(-tr x'x) on n x m matrices.
struct FourierClosedForm {
  int n, m;
  double operator()(const Mat& y) const;  // pi^{nm/2} exp(-tr(y'y)/4)
};

struct RieszOptions {
  bool prefer_closed = true;      // closed-form Radon images inside nested integrals
  double nu = 3.0, scale = 1.0;   // Student density on the matrix-space variables
  double det_q = 0.0;             // > 0: density |I + w'w/scale^2|^{-(det_q+k)/2} instead
  ConeProposal cone{1.0, 0.0};    // cone proposal for the polar Semyanistyi form
};

// int exp(-tr x'x) |x'x|^{(alpha-n)/2} dx = pi^{nm/2} Gamma_m(alpha/2) / Gamma_m(n/2),
// convergent for alpha > m-1 and continued elsewhere; PoleError at the poles.
double zeta_gaussian(int n, int m, double alpha);
// same integral by MC, x ~ N(0, 1/2)
MCEstimate zeta_gaussian_mc(int n, int m, double alpha, const MCConfig& cfg);

// Throws ExistenceViolation unless the order-alpha Riesz potential of f converges
// (closed-form kinds only; Custom fields need a declared L^p class).
void check_riesz_exists(const MatrixField& f, double alpha);

// Riesz potential of integral order k via the average over k-frames v of
// int f(x - v w) dw. k = 0 returns f(x).
MCEstimate riesz_potential_int(const MatrixField& f, const Mat& x, int k, const MCConfig& cfg,
                               const RieszOptions& opt = {});

// Cayley-Laplace operator det(d'd) applied to |x'x|^{lambda/2}. Exact value, or
// central differences in the nm coordinates (nm <= 8).
double cayley_laplace_power(int n, int m, double lambda, const Mat& x, bool numeric = false);
// det(d'd) g at x by finite differences, step h with one Richardson pass.
double cayley_laplace_numeric(const std::function<double(const Mat&)>& g, const Mat& x, double h);

// (P^alpha f)(xi, t) for alpha > m-1, via the polar form in the (n-k) x m variable.
MCEstimate semyanistyi_p(const MatrixField& f, const MatrixPlane& plane, double alpha,
                         const MCConfig& cfg, const RieszOptions& opt = {});
// Exact P^alpha of the Gaussian at t = 0.
double semyanistyi_gaussian_origin(int n, int m, int k, double alpha);

// Both sides of  P*^alpha f^ = c_{n,k,m} I^{alpha+k} f  at x, integer alpha >= 0.
std::pair<MCEstimate, MCEstimate> fuglede_check(const MatrixField& f, const Mat& x, int k, int alpha,
                                                const MCConfig& cfg, const RieszOptions& opt = {});
// Both sides of  P*^alpha P^beta f = c_{n,k,m} I^{alpha+beta+k} f  for alpha = beta = 1 and a
// Gaussian Radon image. The left side applies the two order-1 plane potentials one after
// the other (their w-integrals in closed form), never their merged order-2 form.
std::pair<MCEstimate, MCEstimate> composition_check(const MatrixField& f, const Mat& x, int k,
                                                    int alpha, int beta, const MCConfig& cfg,
                                                    const RieszOptions& opt = {});

// f(x) = (-1)^{mk/2} c_{n,k,m}^{-1} E_xi [D~^{k/2} f^(xi, .)](xi'x), k = 2.
MCEstimate plane_wave_invert_even(const MatrixField& f, const Mat& x, int k, const MCConfig& cfg,
                                  double h = 1e-2);

struct ProjectionSlice {
  double lhs;        // Fourier transform of f at xi b
  MCEstimate re_rhs; // Fourier transform in t of the Radon image at b
  MCEstimate im_rhs;
};
ProjectionSlice projection_slice_check(int n, int m, int k, const Mat& b, const StiefelFrame& xi,
                                       const MCConfig& cfg);

}  // namespace matrad
