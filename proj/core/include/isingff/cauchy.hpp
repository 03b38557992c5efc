#pragma once

#include <complex>
#include <span>
#include <vector>

#include "isingff/elliptic.hpp"
#include "isingff/numerics.hpp"
#include "isingff/spectral_curve.hpp"

namespace isingff::cauchy {

using numerics::CMatrix;
using numerics::CVector;

// Points x_1..x_N, y_1..y_N, nome q and shift alpha defining the elliptic
// Cauchy matrix V_mn = theta1(x_m - y_n + alpha) / (theta1(alpha) theta1(x_m - y_n)).
struct EllipticPointConfig {
  std::vector<cplx> xs;
  std::vector<cplx> ys;
  double q;
  cplx alpha;
};

CMatrix frobenius_matrix(const EllipticPointConfig& cfg);

// Closed-form determinant. Throws DomainError when theta1(alpha) vanishes.
cplx frobenius_det(const EllipticPointConfig& cfg);

// Closed-form inverse. Throws SingularMatrixError when
// theta1(sum x - sum y + alpha) vanishes.
CMatrix frobenius_inverse(const EllipticPointConfig& cfg);

struct InterpolationSum {
  cplx sum;
  double term_scale;  // largest |term|
};

// sum_i prod_j theta1(z_i - z'_j) / prod_{j != i} theta1(z_i - z_j).
// Vanishes when sum z = sum z'; unbalanced input raises InputError.
InterpolationSum theta_interpolation_sum(std::span<const cplx> zs, std::span<const cplx> zs_prime,
                                         double q);

// prod_{i<j} sqrt(k) sn(u_i - u_j), equal to Pf[sqrt(k) sn(u_i - u_j)] for
// an even number of points.
cplx sn_pfaffian_product(std::span<const cplx> us, const elliptic::EllipticModulus& m);

// The antisymmetric matrix [sqrt(k) sn(u_i - u_j)].
CMatrix sn_pfaffian_matrix(std::span<const cplx> us, const elliptic::EllipticModulus& m);

// ----- Elliptic Cauchy matrices built from two point sets u (rows) and v
// (columns) with the same modulus.

// Phi_ij = dn(u_i - v_j) / sn(u_i - v_j).
CMatrix phi_matrix(std::span<const double> us, std::span<const double> vs,
                   const elliptic::EllipticModulus& m);
// Psi_ij = cn(u_i - v_j).
CMatrix psi_matrix(std::span<const double> us, std::span<const double> vs,
                   const elliptic::EllipticModulus& m);

// Theta-function determinant of Phi.
cplx phi_det_theta(std::span<const double> us, std::span<const double> vs,
                   const elliptic::EllipticModulus& m);
// Theta-function inverse of Phi (columns indexed by u, rows by v).
CMatrix phi_inverse_theta(std::span<const double> us, std::span<const double> vs,
                          const elliptic::EllipticModulus& m);
// Theta-function form of Psi Phi^{-1} (rows and columns indexed by u).
CMatrix psi_phi_inverse_theta(std::span<const double> us, std::span<const double> vs,
                              const elliptic::EllipticModulus& m);
// Theta-function form of Phi^{-1} Psi (rows and columns indexed by v).
CMatrix phi_inverse_psi_theta(std::span<const double> us, std::span<const double> vs,
                              const elliptic::EllipticModulus& m);

// ----- Ising specialisations: u = periodic-sector u_theta (rows of Phi),
// v = antiperiodic-sector u_theta (columns of Phi).

std::vector<double> sector_u(const SpectralTable& t, Sector s);

CMatrix ising_phi(const SpectralTable& t);
CMatrix ising_psi(const SpectralTable& t);

// x_i = u_i / theta3^2 (periodic), y_i = v_i / theta3^2 (antiperiodic); the
// configuration satisfies sum x - sum y = -pi/2.
EllipticPointConfig ising_points(const SpectralTable& t);

struct FgCoefficients {
  CVector f;  // indexed by periodic momenta
  CVector g;  // indexed by antiperiodic momenta
};
FgCoefficients fg_coefficients(const SpectralTable& t);

struct ChiKappa {
  CVector chi;    // periodic
  CVector kappa;  // antiperiodic
};
// chi_n = prod_i sn(u_n - v_i) / prod_{i != n} sn(u_n - u_i), kappa likewise.
ChiKappa chi_kappa_sn(const SpectralTable& t);
// The same coefficients through gamma and nu.
ChiKappa chi_kappa_trig(const SpectralTable& t);

// lambda(u, v) as a product over the sector points.
double lambda_sn(double u, double v, const SpectralTable& t);
// lambda_{theta theta'} = exp((nu' - nu)/2); arguments are (sector, index).
double lambda_trig(Sector s1, int i1, Sector s2, int i2, const SpectralTable& t);

// (det Phi)^2 by four routes.
cplx phi_det_squared_fg(const SpectralTable& t);
cplx phi_det_squared_sn(const SpectralTable& t);
double phi_det_squared_trig(const SpectralTable& t);

// Phi^{-1} (rows antiperiodic, columns periodic) by three closed routes.
CMatrix phi_inverse_fg(const SpectralTable& t);
CMatrix phi_inverse_sn(const SpectralTable& t);
CMatrix phi_inverse_trig(const SpectralTable& t);

// Psi Phi^{-1} (periodic x periodic).
CMatrix psi_phi_inverse_sn(const SpectralTable& t);
CMatrix psi_phi_inverse_trig(const SpectralTable& t);

// Phi^{-1} Psi (antiperiodic x antiperiodic).
CMatrix phi_inverse_psi_sn(const SpectralTable& t);
CMatrix phi_inverse_psi_trig(const SpectralTable& t);

}  // namespace isingff::cauchy
