#pragma once

// Reference implementations used only as test oracles. None of them calls
// into the library's elliptic or linear-algebra code.

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace isingff::reference {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;

// K(k) by adaptive Gauss-Kronrod quadrature of the defining integral.
double complete_K(double k);

// F(phi, k) by adaptive quadrature.
double incomplete_F(double phi, double k);

// Theta functions from their own Fourier series (no shift relations).
cplx theta(int index, cplx z, double q);

struct Jacobi {
  cplx sn;
  cplx cn;
  cplx dn;
};

// Real sn, cn from Boost.Math; dn is rebuilt from sn (Boost misreports dn at u = K).
Jacobi jacobi_real(double u, double k);

// Complex sn, cn, dn from the real functions of modulus k and k' through
// the addition theorem for x + iy.
Jacobi jacobi_complex(cplx u, double k);

// Pfaffian by expansion along the first row; exponential cost, meant for
// sizes up to 10.
cplx pfaffian_expansion(const CMatrix& a);

// Random complex matrix with entries uniform in the unit square.
CMatrix random_matrix(int rows, int cols, std::mt19937_64& rng);

}  // namespace isingff::reference
