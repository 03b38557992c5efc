#include "isingff/elliptic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "isingff/errors.hpp"

namespace isingff::elliptic {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr cplx kI{0.0, 1.0};

double agm(double a, double b) {
  for (int i = 0; i < 64; ++i) {
    const double an = 0.5 * (a + b);
    const double bn = std::sqrt(a * b);
    if (std::abs(an - bn) <= 4e-16 * an) {
      return 0.5 * (an + bn);
    }
    a = an;
    b = bn;
  }
  throw ConvergenceError("AGM did not converge");
}

// theta1 with z already reduced so that |Im z| <= -ln(q)/2; the terms then
// decrease monotonically from n = 0.
cplx theta1_series(cplx z, double log_q) {
  cplx sum{0.0, 0.0};
  double max_term = 0.0;
  for (int n = 0; n < 100000; ++n) {
    const double h = n + 0.5;
    const cplx term = std::exp(log_q * h * h) * std::sin((2.0 * n + 1.0) * z);
    const double mag = std::abs(term);
    sum += (n % 2 == 0) ? term : -term;
    max_term = std::max(max_term, mag);
    if (mag <= 1e-17 * std::max(std::abs(sum), max_term)) {
      return 2.0 * sum;
    }
  }
  throw ConvergenceError("theta series did not converge");
}

cplx theta1(cplx z, double q) {
  const double log_q = std::log(q);
  const double period_imag = -log_q;  // pi*tau = i*period_imag

  // Im z -> Im z - l*pi*tau using
  // theta1(z + l pi tau) = (-1)^l q^{-l^2} exp(-2 i l z) theta1(z).
  const double shifts = std::round(z.imag() / period_imag);
  if (std::abs(shifts) > 64.0) {
    throw ConvergenceError("theta argument too far from the real axis");
  }
  const int l = static_cast<int>(shifts);
  cplx zr = z - cplx(0.0, l * period_imag);

  // Re z -> Re z - r*pi using theta1(z + pi) = -theta1(z).
  const double r = std::round(zr.real() / kPi);
  zr -= r * kPi;
  const bool odd_r = std::fmod(std::abs(r), 2.0) == 1.0;

  cplx value = theta1_series(zr, log_q);
  if (l != 0) {
    // factor = (-1)^l q^{-l^2} exp(-2 i l zr), applied in log form.
    const cplx log_factor = -static_cast<double>(l) * static_cast<double>(l) * log_q -
                            2.0 * kI * static_cast<double>(l) * zr;
    value *= std::exp(log_factor);
    if (l % 2 != 0) {
      value = -value;
    }
  }
  if (odd_r) {
    value = -value;
  }
  if (!std::isfinite(value.real()) || !std::isfinite(value.imag())) {
    throw ConvergenceError("theta value overflowed");
  }
  return value;
}

}  // namespace

double complete_elliptic_K(double k) {
  if (!(k > 0.0 && k < 1.0)) {
    throw DomainError("elliptic modulus must satisfy 0 < k < 1");
  }
  const double kp = std::sqrt((1.0 - k) * (1.0 + k));
  return kPi / (2.0 * agm(1.0, kp));
}

double incomplete_elliptic_F(double phi, double k) {
  if (!(k >= 0.0 && k < 1.0)) {
    throw DomainError("elliptic modulus must satisfy 0 <= k < 1");
  }
  if (std::abs(phi) > kPi / 2 + 1e-15) {
    throw DomainError("amplitude must satisfy |phi| <= pi/2");
  }
  phi = std::clamp(phi, -kPi / 2, kPi / 2);
  return std::ellint_1(k, phi);
}

cplx theta(int index, cplx z, double q) {
  if (!(q > 0.0 && q < 0.999)) {
    throw DomainError("nome must satisfy 0 < q < 0.999");
  }
  const double log_q = std::log(q);
  const cplx half_period_tau{0.0, -0.5 * log_q};  // pi*tau/2
  switch (index) {
    case 1:
      return theta1(z, q);
    case 2:
      return theta1(z + kPi / 2, q);
    case 3:
      // exp(-i(z - pi tau/4)) = exp(-i z) q^{1/4}
      return std::exp(-kI * z + 0.25 * log_q) * theta1(z + kPi / 2 - half_period_tau, q);
    case 4:
      return kI * std::exp(-kI * z + 0.25 * log_q) * theta1(z - half_period_tau, q);
    default:
      throw DomainError("theta index must be 1, 2, 3 or 4, got " + std::to_string(index));
  }
}

EllipticModulus::EllipticModulus(double k) : k_(k) {
  if (!(k > 0.0 && k < 1.0)) {
    throw DomainError("elliptic modulus must satisfy 0 < k < 1");
  }
  kprime_ = std::sqrt((1.0 - k) * (1.0 + k));
  K_ = complete_elliptic_K(k_);
  Kprime_ = complete_elliptic_K(kprime_);
  q_ = std::exp(-kPi * Kprime_ / K_);
  if (!(q_ < 0.999)) {
    throw DomainError("modulus too close to 1: nome exceeds 0.999");
  }
  theta2_ = theta(2, 0.0, q_).real();
  theta3_ = theta(3, 0.0, q_).real();
  theta4_ = theta(4, 0.0, q_).real();
}

JacobiTriple jacobi(cplx u, const EllipticModulus& m) {
  const double K = m.K();
  const double Kp = m.Kprime();
  double re = u.real();
  double im = u.imag();
  re -= 4.0 * K * std::floor((re + 2.0 * K) / (4.0 * K));
  const double j = std::floor((im + Kp) / (2.0 * Kp));
  im -= 2.0 * Kp * j;
  const double sign = (std::fmod(std::abs(j), 2.0) == 1.0) ? -1.0 : 1.0;

  const cplx x = m.to_theta_argument(cplx(re, im));
  const double q = m.nome();
  const cplx t1 = theta(1, x, q);
  const cplx t2 = theta(2, x, q);
  const cplx t3 = theta(3, x, q);
  const cplx t4 = theta(4, x, q);
  if (std::abs(t4) <= 1e-13 * (std::abs(t1) + std::abs(t2) + std::abs(t3))) {
    throw PoleError("argument is at a pole of sn, cn, dn");
  }
  const double th2 = m.theta2_zero();
  const double th3 = m.theta3_zero();
  const double th4 = m.theta4_zero();
  return {(th3 / th2) * t1 / t4, sign * (th4 / th2) * t2 / t4, sign * (th4 / th3) * t3 / t4};
}

JacobiRealTriple jacobi(double u, const EllipticModulus& m) {
  const JacobiTriple t = jacobi(cplx(u, 0.0), m);
  return {t.sn.real(), t.cn.real(), t.dn.real()};
}

double inverse_sn_real(double s, const EllipticModulus& m) {
  if (!(std::abs(s) <= 1.0)) {
    throw DomainError("inverse_sn_real requires |s| <= 1");
  }
  double u = std::ellint_1(m.k(), std::asin(s));
  // One Newton step on sn(u) = s away from the turning points where
  // d sn/du = cn dn vanishes.
  const JacobiRealTriple t = jacobi(u, m);
  const double slope = t.cn * t.dn;
  if (std::abs(slope) > 1e-4) {
    u -= (t.sn - s) / slope;
  }
  return u;
}

}  // namespace isingff::elliptic
