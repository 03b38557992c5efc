#pragma once

#include <cmath>
#include <complex>
#include <span>
#include <vector>

#include "isingff/elliptic.hpp"

namespace isingff {

using cplx = std::complex<double>;

// Antiperiodic (NS) momenta theta = (2j+1)pi/N and periodic (R) momenta
// theta = 2j pi/N, j = 0..N-1.
enum class Sector { antiperiodic, periodic };

const char* sector_name(Sector s);

// theta_j for the given sector as a double in [0, 2pi).
double momentum_angle(Sector s, int index, int n);

// Quasimomentum in units of pi/N: 2j+1 or 2j. Exact integer arithmetic
// keeps phases such as exp(i(l-1/2)theta) free of rounding drift.
int momentum_numerator(Sector s, int index);

std::vector<double> quasimomenta(Sector s, int n);

// exp(i * pi * numerator / denominator) with the numerator reduced modulo
// 2*denominator before the trigonometric call.
cplx exp_i_pi_rational(long long numerator, long long denominator);

// Validated anisotropic couplings in the ferromagnetic phase on an N-site ring.
class Couplings {
 public:
  Couplings(int n, double kx, double ky);

  int n() const { return n_; }
  double kx() const { return kx_; }
  double ky() const { return ky_; }
  // Dual coupling Kx* = artanh(exp(-2 Kx)).
  double kx_star() const { return kx_star_; }
  double sinh2kx() const { return std::sinh(2.0 * kx_); }
  double sinh2ky() const { return std::sinh(2.0 * ky_); }
  double sinh2kx_star() const { return std::sinh(2.0 * kx_star_); }
  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  // s = sinh 2Kx sinh 2Ky; the modulus is k = 1/s.
  double s() const { return sinh2kx() * sinh2ky(); }
  // |1 - s^-2|^{1/4}.
  double xi() const;
  double gamma0() const { return 2.0 * (ky_ - kx_star_); }
  double gamma_pi() const { return 2.0 * (ky_ + kx_star_); }
  const elliptic::EllipticModulus& modulus() const { return modulus_; }
  double eta() const { return eta_; }

 private:
  int n_;
  double kx_;
  double ky_;
  double kx_star_;
  double alpha_;
  double beta_;
  elliptic::EllipticModulus modulus_;
  double eta_;
};

// Dispersion gamma(theta) > 0 from the cosh relation, evaluated without
// cancellation near theta = 0.
double gamma_of_theta(double theta, const Couplings& c);
// The same relation for raw couplings; it does not require the ferromagnetic
// region.
double gamma_of_theta(double theta, double kx, double ky);

// b_theta: principal square root of the Bogoliubov ratio, Re b > 0.
cplx b_of_theta(double theta, const Couplings& c);

// Principal square root of b_theta, Re > 0.
cplx sqrt_b_of_theta(double theta, const Couplings& c);

// Uniformising parameter u_theta on [-K, K] with u_0 = -K, u_pi = 0 and
// u_{2pi - theta} = -u_theta.
double u_of_theta(double theta, const Couplings& c);

// sqrt(b) as (dn u + i k sn u cn u) / sqrt(1 - k^2 sn^4 u).
cplx sqrt_b_elliptic(double u, const Couplings& c);

// eta < 0 with sinh 2Kx = i sn(2 i eta); checked to residual 1e-11.
double eta_of_couplings(double kx, double ky);

struct SpectralPoint {
  double theta;
  int numerator;  // theta = pi * numerator / N
  double gamma;
  cplx b;
  cplx sqrt_b;
  double u;
};

SpectralPoint spectral_point(Sector s, int index, const Couplings& c);

// Precomputed spectral data for both sectors of a ring.
class SpectralTable {
 public:
  explicit SpectralTable(const Couplings& c);

  const Couplings& couplings() const { return couplings_; }
  int n() const { return couplings_.n(); }
  std::span<const SpectralPoint> points(Sector s) const;
  const SpectralPoint& point(Sector s, int index) const;
  // nu_theta = ln( prod_{a} sinh((g+g')/2) / prod_{p} sinh((g+g')/2) ).
  double nu(Sector s, int index) const;
  // sum over both sectors' gamma, used by transfer-matrix eigenvalues.
  double gamma_sum(Sector s) const;

 private:
  Couplings couplings_;
  std::vector<SpectralPoint> antiperiodic_;
  std::vector<SpectralPoint> periodic_;
  std::vector<double> nu_antiperiodic_;
  std::vector<double> nu_periodic_;
};

// nu for an arbitrary theta, summing over the sector momenta of c.n().
double nu_of_theta(double theta, const Couplings& c);

}  // namespace isingff
