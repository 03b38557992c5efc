#pragma once

#include <complex>

#include <Eigen/Dense>

namespace isingff::numerics {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

struct DetInverse {
  cplx det;
  CMatrix inverse;
};

// Determinant and inverse from one partially pivoted LU factorisation.
// Throws SingularMatrixError when a pivot is below 1e-13 times the largest
// row norm of the input.
DetInverse det_and_inverse(const CMatrix& m);

// Determinant only; no singularity check. Empty matrix gives 1.
cplx determinant(const CMatrix& m);

// Pfaffian of an antisymmetric matrix of even order by skew-symmetric
// Gaussian elimination with pivoting. Throws InputError when the input is
// not antisymmetric to 1e-13 relative to its largest entry. Odd order
// gives 0 and the empty matrix gives 1.
cplx pfaffian(const CMatrix& m);

// max |a_ij - b_ij| / max(max |b_ij|, floor).
double relative_matrix_error(const CMatrix& a, const CMatrix& b, double floor = 1e-300);

}  // namespace isingff::numerics
