#include "isingff/numerics.hpp"

#include <algorithm>
#include <cmath>

#include "isingff/errors.hpp"

namespace isingff::numerics {

DetInverse det_and_inverse(const CMatrix& m) {
  if (m.rows() != m.cols()) {
    throw InputError("det_and_inverse requires a square matrix");
  }
  if (m.rows() == 0) {
    return {cplx(1.0, 0.0), CMatrix(0, 0)};
  }
  const double scale = m.cwiseAbs().rowwise().sum().maxCoeff();
  Eigen::PartialPivLU<CMatrix> lu(m);
  const CMatrix& packed = lu.matrixLU();
  for (Eigen::Index i = 0; i < packed.rows(); ++i) {
    if (!(std::abs(packed(i, i)) >= 1e-13 * scale)) {
      throw SingularMatrixError("matrix is numerically singular");
    }
  }
  return {lu.determinant(), lu.inverse()};
}

cplx determinant(const CMatrix& m) {
  if (m.rows() != m.cols()) {
    throw InputError("determinant requires a square matrix");
  }
  if (m.rows() == 0) {
    return {1.0, 0.0};
  }
  return Eigen::PartialPivLU<CMatrix>(m).determinant();
}

cplx pfaffian(const CMatrix& input) {
  if (input.rows() != input.cols()) {
    throw InputError("pfaffian requires a square matrix");
  }
  const Eigen::Index n = input.rows();
  if (n == 0) {
    return {1.0, 0.0};
  }
  const double largest = input.cwiseAbs().maxCoeff();
  const double asym = (input + input.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-13 * std::max(largest, 1e-300) * 2.0) {
    throw InputError("pfaffian requires an antisymmetric matrix");
  }
  if (n % 2 == 1) {
    return {0.0, 0.0};
  }

  CMatrix a = input;
  cplx pf{1.0, 0.0};
  for (Eigen::Index k = 0; k + 1 < n; k += 2) {
    Eigen::Index offset = 0;
    a.col(k).tail(n - k - 1).cwiseAbs().maxCoeff(&offset);
    const Eigen::Index kp = k + 1 + offset;
    if (kp != k + 1) {
      a.row(k + 1).tail(n - k).swap(a.row(kp).tail(n - k));
      a.col(k + 1).tail(n - k).swap(a.col(kp).tail(n - k));
      pf = -pf;
    }
    const cplx pivot = a(k, k + 1);
    if (pivot == cplx(0.0, 0.0)) {
      return {0.0, 0.0};
    }
    pf *= pivot;
    const Eigen::Index rest = n - k - 2;
    if (rest > 0) {
      const CVector tau = a.row(k).tail(rest).transpose() / pivot;
      const CVector col = a.col(k + 1).tail(rest);
      a.bottomRightCorner(rest, rest) += tau * col.transpose() - col * tau.transpose();
    }
  }
  return pf;
}

double relative_matrix_error(const CMatrix& a, const CMatrix& b, double floor) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw InputError("matrix shapes differ");
  }
  if (a.size() == 0) {
    return 0.0;
  }
  const double ref = std::max(b.cwiseAbs().maxCoeff(), floor);
  return (a - b).cwiseAbs().maxCoeff() / ref;
}

}  // namespace isingff::numerics
