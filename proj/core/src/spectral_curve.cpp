#include "isingff/spectral_curve.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "isingff/errors.hpp"

namespace isingff {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double dual_coupling(double k) { return std::atanh(std::exp(-2.0 * k)); }

double validated_modulus(int n, double kx, double ky) {
  if (n < 1) {
    throw DomainError("lattice width must be at least 1");
  }
  if (!(std::isfinite(kx) && kx > 0.0) || !(std::isfinite(ky) && ky > 0.0)) {
    throw DomainError("couplings must be positive and finite");
  }
  const double kx_star = dual_coupling(kx);
  if (!(kx_star < ky)) {
    throw DomainError("couplings are not in the ferromagnetic region (requires Kx* < Ky)");
  }
  return std::sinh(2.0 * kx_star) / std::sinh(2.0 * ky);
}

double reduce_angle(double theta) {
  double t = std::fmod(theta, kTwoPi);
  if (t < 0.0) {
    t += kTwoPi;
  }
  return t;
}

}  // namespace

const char* sector_name(Sector s) {
  return s == Sector::antiperiodic ? "antiperiodic" : "periodic";
}

int momentum_numerator(Sector s, int index) {
  return 2 * index + (s == Sector::antiperiodic ? 1 : 0);
}

double momentum_angle(Sector s, int index, int n) {
  if (n < 1 || index < 0 || index >= n) {
    throw InputError("momentum index out of range");
  }
  return kPi * momentum_numerator(s, index) / n;
}

std::vector<double> quasimomenta(Sector s, int n) {
  if (n < 1) {
    throw DomainError("lattice width must be at least 1");
  }
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    out[static_cast<std::size_t>(j)] = momentum_angle(s, j, n);
  }
  return out;
}

cplx exp_i_pi_rational(long long numerator, long long denominator) {
  const long long period = 2 * denominator;
  long long r = numerator % period;
  if (r < 0) {
    r += period;
  }
  if (r == 0) {
    return {1.0, 0.0};
  }
  if (2 * r == period) {
    return {-1.0, 0.0};
  }
  if (4 * r == period) {
    return {0.0, 1.0};
  }
  if (4 * r == 3 * period) {
    return {0.0, -1.0};
  }
  const double angle = kPi * static_cast<double>(r) / static_cast<double>(denominator);
  return {std::cos(angle), std::sin(angle)};
}

Couplings::Couplings(int n, double kx, double ky)
    : n_(n),
      kx_(kx),
      ky_(ky),
      kx_star_(0.0),
      alpha_(0.0),
      beta_(0.0),
      modulus_(validated_modulus(n, kx, ky)),
      eta_(0.0) {
  kx_star_ = dual_coupling(kx);
  alpha_ = std::tanh(kx_star_) / std::tanh(ky);
  beta_ = std::tanh(kx_star_) * std::tanh(ky);
  if (modulus_.tau_imag() < 1e-3) {
    throw DomainError("couplings too close to criticality (K'/K < 1e-3)");
  }
  eta_ = eta_of_couplings(kx, ky);
}

double Couplings::xi() const {
  const double s2 = s() * s();
  return std::pow(std::abs(1.0 - 1.0 / s2), 0.25);
}

double gamma_of_theta(double theta, const Couplings& c) {
  return gamma_of_theta(theta, c.kx(), c.ky());
}

double gamma_of_theta(double theta, double kx, double ky) {
  if (!(kx > 0.0 && ky > 0.0)) {
    throw DomainError("couplings must be positive");
  }
  const double kx_star = dual_coupling(kx);
  const double half = std::sinh(ky - kx_star);
  const double sin_half = std::sin(0.5 * theta);
  const double d = 2.0 * half * half +
                   2.0 * std::sinh(2.0 * kx_star) * std::sinh(2.0 * ky) * sin_half * sin_half;
  // acosh(1 + d) without cancellation for small d.
  return std::log1p(d + std::sqrt(d * (d + 2.0)));
}

cplx b_of_theta(double theta, const Couplings& c) {
  const cplx e = std::polar(1.0, theta);
  const cplx ec = std::conj(e);
  const double a = c.alpha();
  const double b = c.beta();
  const cplx ratio = ((1.0 - a * e) * (1.0 - b * ec)) / ((1.0 - b * e) * (1.0 - a * ec));
  const cplx root = std::sqrt(ratio);
  if (!(root.real() > 1e-14)) {
    throw DomainError("b_theta lies on the branch cut of the square root");
  }
  return root;
}

cplx sqrt_b_of_theta(double theta, const Couplings& c) {
  const cplx root = std::sqrt(b_of_theta(theta, c));
  if (!(root.real() > 1e-14)) {
    throw DomainError("sqrt(b_theta) lies on the branch cut of the square root");
  }
  return root;
}

double u_of_theta(double theta, const Couplings& c) {
  const double t = reduce_angle(theta);
  const double g = gamma_of_theta(t, c);
  const double g0 = c.gamma0();
  const double gpi = c.gamma_pi();
  const double sinh2ky = c.sinh2ky();
  const double sn = -sinh2ky * std::cos(0.5 * t) / std::sinh(0.5 * (gpi + g));
  const double cn = std::sin(0.5 * t) * std::sqrt(sinh2ky * std::sinh(gpi) /
                                                  (std::sinh(0.5 * (g + g0)) *
                                                   std::sinh(0.5 * (g + gpi))));
  // The amplitude am(u) = atan2(sn, cn) lies in [-pi/2, pi/2] because cn >= 0.
  return elliptic::incomplete_elliptic_F(std::atan2(sn, cn), c.modulus().k());
}

cplx sqrt_b_elliptic(double u, const Couplings& c) {
  const auto& m = c.modulus();
  const auto j = elliptic::jacobi(u, m);
  const double k = m.k();
  const double sn2 = j.sn * j.sn;
  return cplx(j.dn, k * j.sn * j.cn) / std::sqrt(1.0 - k * k * sn2 * sn2);
}

double eta_of_couplings(double kx, double ky) {
  const double k = validated_modulus(1, kx, ky);
  const elliptic::EllipticModulus m(k);
  const double sinh2kx = std::sinh(2.0 * kx);
  // i sn(2 i eta, k) = sc(2|eta|, k'), so 2|eta| = F(atan(sinh 2Kx), k').
  const double two_abs_eta = elliptic::incomplete_elliptic_F(std::atan(sinh2kx), m.kprime());
  const double eta = -0.5 * two_abs_eta;
  const auto j = elliptic::jacobi(cplx(0.0, 2.0 * eta), m);
  const cplx check = cplx(0.0, 1.0) * j.sn;
  const double residual = std::abs(check - sinh2kx) / std::max(1.0, sinh2kx);
  if (residual > 1e-11) {
    throw ConvergenceError("eta does not reproduce sinh 2Kx (residual " +
                           std::to_string(residual) + ")");
  }
  if (!(eta < 0.0 && eta > -0.5 * m.Kprime())) {
    throw ConvergenceError("eta outside (-K'/2, 0)");
  }
  return eta;
}

SpectralPoint spectral_point(Sector s, int index, const Couplings& c) {
  SpectralPoint p{};
  p.theta = momentum_angle(s, index, c.n());
  p.numerator = momentum_numerator(s, index);
  p.gamma = gamma_of_theta(p.theta, c);
  p.b = b_of_theta(p.theta, c);
  p.sqrt_b = sqrt_b_of_theta(p.theta, c);
  p.u = u_of_theta(p.theta, c);
  return p;
}

double nu_of_theta(double theta, const Couplings& c) {
  const double g = gamma_of_theta(theta, c);
  double acc = 0.0;
  for (int j = 0; j < c.n(); ++j) {
    const double ga = gamma_of_theta(momentum_angle(Sector::antiperiodic, j, c.n()), c);
    const double gp = gamma_of_theta(momentum_angle(Sector::periodic, j, c.n()), c);
    acc += std::log(std::sinh(0.5 * (g + ga))) - std::log(std::sinh(0.5 * (g + gp)));
  }
  return acc;
}

SpectralTable::SpectralTable(const Couplings& c) : couplings_(c) {
  const int n = c.n();
  antiperiodic_.reserve(static_cast<std::size_t>(n));
  periodic_.reserve(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    antiperiodic_.push_back(spectral_point(Sector::antiperiodic, j, c));
    periodic_.push_back(spectral_point(Sector::periodic, j, c));
  }
  auto nu_for = [&](double g) {
    double acc = 0.0;
    for (int j = 0; j < n; ++j) {
      acc += std::log(std::sinh(0.5 * (g + antiperiodic_[static_cast<std::size_t>(j)].gamma))) -
             std::log(std::sinh(0.5 * (g + periodic_[static_cast<std::size_t>(j)].gamma)));
    }
    return acc;
  };
  for (int j = 0; j < n; ++j) {
    nu_antiperiodic_.push_back(nu_for(antiperiodic_[static_cast<std::size_t>(j)].gamma));
    nu_periodic_.push_back(nu_for(periodic_[static_cast<std::size_t>(j)].gamma));
  }
}

std::span<const SpectralPoint> SpectralTable::points(Sector s) const {
  return s == Sector::antiperiodic ? std::span<const SpectralPoint>(antiperiodic_)
                                   : std::span<const SpectralPoint>(periodic_);
}

const SpectralPoint& SpectralTable::point(Sector s, int index) const {
  if (index < 0 || index >= n()) {
    throw InputError("momentum index out of range");
  }
  return points(s)[static_cast<std::size_t>(index)];
}

double SpectralTable::nu(Sector s, int index) const {
  if (index < 0 || index >= n()) {
    throw InputError("momentum index out of range");
  }
  const auto& v = s == Sector::antiperiodic ? nu_antiperiodic_ : nu_periodic_;
  return v[static_cast<std::size_t>(index)];
}

double SpectralTable::gamma_sum(Sector s) const {
  double acc = 0.0;
  for (const auto& p : points(s)) {
    acc += p.gamma;
  }
  return acc;
}

}  // namespace isingff
