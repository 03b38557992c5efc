#include "reference.hpp"

#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/jacobi_elliptic.hpp>

namespace isingff::reference {

namespace {

double integrate_F(double phi, double k) {
  auto f = [k](double t) { return 1.0 / std::sqrt(1.0 - k * k * std::sin(t) * std::sin(t)); };
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, phi, 15, 1e-15);
}

}  // namespace

double complete_K(double k) { return integrate_F(0.5 * std::numbers::pi, k); }

double incomplete_F(double phi, double k) { return integrate_F(phi, k); }

cplx theta(int index, cplx z, double q) {
  const cplx i{0.0, 1.0};
  cplx sum{0.0, 0.0};
  for (int n = -40; n <= 40; ++n) {
    switch (index) {
      case 1: {
        const double h = n + 0.5;
        sum += std::pow(-1.0, n) * std::pow(q, h * h) * std::sin((2.0 * n + 1.0) * z);
        break;
      }
      case 2: {
        const double h = n + 0.5;
        sum += std::pow(q, h * h) * std::exp(i * (2.0 * n + 1.0) * z);
        break;
      }
      case 3:
        sum += std::pow(q, static_cast<double>(n) * n) * std::exp(2.0 * i * static_cast<double>(n) * z);
        break;
      default:
        sum += std::pow(-1.0, n) * std::pow(q, static_cast<double>(n) * n) *
               std::exp(2.0 * i * static_cast<double>(n) * z);
        break;
    }
  }
  // Summing theta1 over all integers n counts each n >= 0 term twice, which
  // supplies the factor 2 of the one-sided series.
  return sum;
}

Jacobi jacobi_real(double u, double k) {
  double cn = 0.0;
  double dn = 0.0;
  const double sn = boost::math::jacobi_elliptic(k, u, &cn, &dn);
  // Boost's dn loses about four digits at u = K; dn is positive on the real
  // line, so take it from sn instead.
  dn = std::sqrt((1.0 - k * sn) * (1.0 + k * sn));
  return {sn, cn, dn};
}

Jacobi jacobi_complex(cplx u, double k) {
  const double kp = std::sqrt((1.0 - k) * (1.0 + k));
  const Jacobi a = jacobi_real(u.real(), k);
  const Jacobi b = jacobi_real(u.imag(), kp);
  const double s = a.sn.real();
  const double c = a.cn.real();
  const double d = a.dn.real();
  const double s1 = b.sn.real();
  const double c1 = b.cn.real();
  const double d1 = b.dn.real();
  const double den = c1 * c1 + k * k * s * s * s1 * s1;
  return {cplx(s * d1, c * d * s1 * c1) / den, cplx(c * c1, -s * d * s1 * d1) / den,
          cplx(d * c1 * d1, -k * k * s * c * s1) / den};
}

cplx pfaffian_expansion(const CMatrix& a) {
  const Eigen::Index n = a.rows();
  if (n == 0) {
    return {1.0, 0.0};
  }
  if (n % 2 == 1) {
    return {0.0, 0.0};
  }
  cplx total{0.0, 0.0};
  for (Eigen::Index j = 1; j < n; ++j) {
    std::vector<Eigen::Index> keep;
    for (Eigen::Index r = 1; r < n; ++r) {
      if (r != j) {
        keep.push_back(r);
      }
    }
    CMatrix minor(n - 2, n - 2);
    for (Eigen::Index r = 0; r < n - 2; ++r) {
      for (Eigen::Index c = 0; c < n - 2; ++c) {
        minor(r, c) = a(keep[static_cast<std::size_t>(r)], keep[static_cast<std::size_t>(c)]);
      }
    }
    const double sign = (j % 2 == 1) ? 1.0 : -1.0;
    total += sign * a(0, j) * pfaffian_expansion(minor);
  }
  return total;
}

CMatrix random_matrix(int rows, int cols, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  CMatrix m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      m(r, c) = cplx(u(rng), u(rng));
    }
  }
  return m;
}

}  // namespace isingff::reference
