#pragma once

#include <complex>

namespace isingff::elliptic {

using cplx = std::complex<double>;

// Complete elliptic integral of the first kind, K(k), by the arithmetic
// geometric mean. Requires 0 < k < 1.
double complete_elliptic_K(double k);

// Incomplete integral F(phi, k) for |phi| <= pi/2.
double incomplete_elliptic_F(double phi, double k);

// Jacobi theta functions in the convention
//   theta1(z) = 2 sum_n (-1)^n q^{(n+1/2)^2} sin((2n+1) z),  q = exp(i pi tau),
// with theta2..theta4 obtained from theta1 by half-period shifts.
// index must be in 1..4 and 0 < q < 0.999.
cplx theta(int index, cplx z, double q);

// Modulus k together with the derived periods, nome and theta constants.
class EllipticModulus {
 public:
  explicit EllipticModulus(double k);

  double k() const { return k_; }
  double kprime() const { return kprime_; }
  double K() const { return K_; }
  double Kprime() const { return Kprime_; }
  // tau = i K'/K is purely imaginary; tau_imag() returns K'/K.
  double tau_imag() const { return Kprime_ / K_; }
  double nome() const { return q_; }
  double theta2_zero() const { return theta2_; }
  double theta3_zero() const { return theta3_; }
  double theta4_zero() const { return theta4_; }

  // Rescaled argument x = u / theta3(0)^2 = pi u / (2K).
  cplx to_theta_argument(cplx u) const { return u / (theta3_ * theta3_); }

 private:
  double k_;
  double kprime_;
  double K_;
  double Kprime_;
  double q_;
  double theta2_;
  double theta3_;
  double theta4_;
};

struct JacobiTriple {
  cplx sn;
  cplx cn;
  cplx dn;
};

struct JacobiRealTriple {
  double sn;
  double cn;
  double dn;
};

// sn, cn, dn as theta quotients after reduction of u into the fundamental
// period cell. Throws PoleError within tolerance of u = 2mK + (2n+1)iK'.
JacobiTriple jacobi(cplx u, const EllipticModulus& m);
JacobiRealTriple jacobi(double u, const EllipticModulus& m);

// Principal inverse of sn on [-K, K].
double inverse_sn_real(double s, const EllipticModulus& m);

}  // namespace isingff::elliptic
