#include "isingff/verification.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>

#include "isingff/cauchy.hpp"
#include "isingff/elliptic.hpp"
#include "isingff/errors.hpp"
#include "isingff/form_factors.hpp"
#include "isingff/numerics.hpp"

namespace isingff {

namespace {

using numerics::CMatrix;
constexpr cplx kI{0.0, 1.0};
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double scalar_residual(cplx lhs, cplx rhs) { return std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)); }

double matrix_scale(const CMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

// Accumulates the worst residual of one named identity.
class Check {
 public:
  Check(std::string name, double tol) : name_(std::move(name)), tol_(tol) {}
  void add(double residual) {
    worst_ = std::isnan(residual) ? INFINITY : std::max(worst_, residual);
    ++samples_;
  }
  CheckResult result() const { return {name_, worst_, tol_, samples_, samples_ > 0 && worst_ <= tol_}; }

 private:
  std::string name_;
  double tol_;
  double worst_ = 0.0;
  std::size_t samples_ = 0;
};

struct Curve {
  const Couplings& c;
  double theta;
  double gamma;
  double u;
};

Curve curve_point(const Couplings& c, double theta) {
  return {c, theta, gamma_of_theta(theta, c), u_of_theta(theta, c)};
}

void elliptic_suite(const Couplings& c, const VerifyOptions& o, std::vector<CheckResult>& out) {
  std::mt19937_64 rng(o.seed);
  std::uniform_real_distribution<double> angle(0.0, kTwoPi);
  const auto& m = c.modulus();
  const double k = m.k();
  const double sk = std::sqrt(k);
  const double s2y = c.sinh2ky();
  const double g0 = c.gamma0();
  const double gpi = c.gamma_pi();
  const double rho = std::sqrt(c.sinh2ky() / c.sinh2kx());

  Check pmgq2("exp(-(gamma +- i theta)/2) = -sqrt(k) sn(u -+ i eta)", o.tolerance);
  Check snttp("sn(u - u') = sinh2Ky sin((theta - theta')/2) / sinh((gamma + gamma')/2)", o.tolerance);
  Check aux1a("sn(u + K) / sinh2Ky = sin(theta/2) / sinh((gamma + gamma0)/2)", o.tolerance);
  Check aux1b("sn u / sinh2Ky = -cos(theta/2) / sinh((gamma_pi + gamma)/2)", o.tolerance);
  Check aux1c("sn 2u / sinh2Ky = -sin theta / sinh gamma", o.tolerance);
  Check aux2("k sn^2 u = sinh((gamma_pi - gamma)/2) / sinh((gamma_pi + gamma)/2)", o.tolerance);
  Check aux4("1 - k^2 sn^2 u sn^2 u' product form", o.tolerance);
  Check sndn("cn u and dn u in terms of gamma", o.tolerance);
  Check ellb("sqrt(b)^{+-1} = (dn +- i k sn cn) / sqrt(1 - k^2 sn^4)", o.tolerance);
  Check dmat("D-type entry: dn(u - u') / sn(u - u') form", o.tolerance);
  Check cmat("C-type entry: cn(u - u') form", o.tolerance);
  Check shift("sqrt(k) sn(u - u') = 1 / sqrt(k) sn(u - u' +- iK') = rho sin / sinh", o.tolerance);

  for (int s = 0; s < o.samples; ++s) {
    const Curve p = curve_point(c, angle(rng));
    const Curve q = curve_point(c, angle(rng));
    const auto jp = elliptic::jacobi(p.u, m);
    const auto jq = elliptic::jacobi(q.u, m);

    for (int sign : {1, -1}) {
      const cplx lhs = std::exp(-0.5 * (p.gamma + static_cast<double>(sign) * kI * p.theta));
      const cplx rhs = -sk * elliptic::jacobi(cplx(p.u, -sign * c.eta()), m).sn;
      pmgq2.add(scalar_residual(lhs, rhs));
    }

    const double d_half = 0.5 * (p.theta - q.theta);
    const double sum_half = 0.5 * (p.gamma + q.gamma);
    const auto jd = elliptic::jacobi(p.u - q.u, m);
    snttp.add(scalar_residual(jd.sn, s2y * std::sin(d_half) / std::sinh(sum_half)));

    aux1a.add(scalar_residual(elliptic::jacobi(p.u + m.K(), m).sn / s2y,
                              std::sin(0.5 * p.theta) / std::sinh(0.5 * (p.gamma + g0))));
    aux1b.add(scalar_residual(jp.sn / s2y, -std::cos(0.5 * p.theta) / std::sinh(0.5 * (gpi + p.gamma))));
    aux1c.add(scalar_residual(elliptic::jacobi(2.0 * p.u, m).sn / s2y,
                              -std::sin(p.theta) / std::sinh(p.gamma)));
    aux2.add(scalar_residual(k * jp.sn * jp.sn,
                             std::sinh(0.5 * (gpi - p.gamma)) / std::sinh(0.5 * (gpi + p.gamma))));
    aux4.add(scalar_residual(1.0 - k * k * jp.sn * jp.sn * jq.sn * jq.sn,
                             std::sinh(gpi) * std::sinh(sum_half) /
                                 (std::sinh(0.5 * (gpi + p.gamma)) * std::sinh(0.5 * (gpi + q.gamma)))));

    const double cn = std::sin(0.5 * p.theta) *
                      std::sqrt(s2y * std::sinh(gpi) /
                                (std::sinh(0.5 * (p.gamma + g0)) * std::sinh(0.5 * (p.gamma + gpi))));
    const double dn = std::sqrt(std::sinh(gpi) * std::sinh(0.5 * (p.gamma + g0)) /
                                (s2y * std::sinh(0.5 * (p.gamma + gpi))));
    sndn.add(std::max(scalar_residual(jp.cn, cn), scalar_residual(jp.dn, dn)));

    const cplx root_b = sqrt_b_of_theta(p.theta, c);
    const double denom = std::sqrt(1.0 - k * k * std::pow(jp.sn, 4));
    ellb.add(std::max(scalar_residual(root_b, cplx(jp.dn, k * jp.sn * jp.cn) / denom),
                      scalar_residual(1.0 / root_b, cplx(jp.dn, -k * jp.sn * jp.cn) / denom)));

    const cplx bq = sqrt_b_of_theta(q.theta, c);
    const double root_sinh = std::sqrt(std::sinh(p.gamma) * std::sinh(q.gamma));
    const cplx d_lhs = (root_b / bq + bq / root_b) / (2.0 * std::sin(d_half));
    dmat.add(scalar_residual(d_lhs, s2y / root_sinh * jd.dn / jd.sn));
    const double s_half = 0.5 * (p.theta + q.theta);
    const cplx c_lhs = (root_b * bq - 1.0 / (root_b * bq)) / (2.0 * std::sin(s_half));
    cmat.add(scalar_residual(c_lhs, -kI * c.sinh2kx_star() / root_sinh * jd.cn));

    const cplx direct = sk * jd.sn;
    const cplx trig = rho * std::sin(d_half) / std::sinh(sum_half);
    double worst = scalar_residual(direct, trig);
    for (int sign : {1, -1}) {
      const cplx shifted = sk * elliptic::jacobi(cplx(p.u - q.u, sign * m.Kprime()), m).sn;
      worst = std::max(worst, scalar_residual(1.0 / shifted, trig));
    }
    shift.add(worst);
  }
  for (const Check* ch : {&pmgq2, &snttp, &aux1a, &aux1b, &aux1c, &aux2, &aux4, &sndn, &ellb, &dmat,
                          &cmat, &shift}) {
    out.push_back(ch->result());
  }
}

void cauchy_suite(const Couplings& c, const VerifyOptions& o, std::vector<CheckResult>& out) {
  std::mt19937_64 rng(o.seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto& m = c.modulus();
  const double q = m.nome();
  const double pi_tau = -std::log(q);
  auto random_point = [&] {
    return cplx(std::numbers::pi * unit(rng), pi_tau * (0.8 * unit(rng) - 0.4));
  };

  Check det("Frobenius determinant vs LU", o.tolerance);
  Check inv("Frobenius inverse vs LU", o.tolerance);
  Check interp("balanced theta interpolation sum / term scale", o.tolerance);
  const int configs = std::max(1, o.samples / 2);
  for (int size = 1; size <= 8; ++size) {
    for (int s = 0; s < configs; ++s) {
      cauchy::EllipticPointConfig cfg;
      for (int i = 0; i < size; ++i) {
        cfg.xs.push_back(random_point());
        cfg.ys.push_back(random_point());
      }
      cfg.q = q;
      cfg.alpha = random_point();
      const auto lu = numerics::det_and_inverse(cauchy::frobenius_matrix(cfg));
      det.add(std::abs(cauchy::frobenius_det(cfg) - lu.det) / std::abs(lu.det));
      inv.add(numerics::relative_matrix_error(cauchy::frobenius_inverse(cfg), lu.inverse));
    }
  }
  for (int size = 1; size <= 6; ++size) {
    for (int s = 0; s < configs; ++s) {
      std::vector<cplx> zs;
      std::vector<cplx> zp;
      cplx balance{0.0, 0.0};
      for (int i = 0; i < size; ++i) {
        zs.push_back(random_point());
        balance += zs.back();
      }
      for (int i = 0; i + 1 < size; ++i) {
        zp.push_back(random_point());
        balance -= zp.back();
      }
      zp.push_back(balance);
      const auto r = cauchy::theta_interpolation_sum(zs, zp, q);
      interp.add(r.term_scale > 0.0 ? std::abs(r.sum) / r.term_scale : std::abs(r.sum));
    }
  }

  Check pf("Pf[sqrt(k) sn(u_i - u_j)] = product form", o.tolerance);
  Check pf_det("Pf^2 = det", o.tolerance);
  // Two jittered rows across the period parallelogram. Points bunched along
  // the real axis make [sn(u_i - u_j)] nearly rank two for small k, which
  // loses digits to cancellation in any Pfaffian algorithm.
  std::uniform_real_distribution<double> jitter(-0.35, 0.35);
  for (int size = 2; size <= 10; size += 2) {
    const int cols = size / 2;
    for (int s = 0; s < configs; ++s) {
      std::vector<cplx> us;
      const double offset = 4.0 * m.K() * unit(rng);
      for (int i = 0; i < size; ++i) {
        const double re = offset + 2.0 * m.K() * ((i % cols) + jitter(rng)) / cols;
        const double im = m.Kprime() * (0.7 * ((i / cols) - 0.5) + 0.2 * (unit(rng) - 0.5));
        us.emplace_back(re, im);
      }
      std::shuffle(us.begin(), us.end(), rng);
      const CMatrix a = cauchy::sn_pfaffian_matrix(us, m);
      const cplx numeric = numerics::pfaffian(a);
      const cplx closed = cauchy::sn_pfaffian_product(us, m);
      pf.add(std::abs(numeric - closed) / std::abs(closed));
      const cplx d = numerics::determinant(a);
      pf_det.add(std::abs(numeric * numeric - d) / std::abs(d));
    }
  }

  const SpectralTable t(c);
  const int n = c.n();
  Check lam("lambda sn-product = exp((nu' - nu)/2)", o.tolerance);
  for (Sector s1 : {Sector::antiperiodic, Sector::periodic}) {
    for (Sector s2 : {Sector::antiperiodic, Sector::periodic}) {
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          const double sn_form = cauchy::lambda_sn(t.point(s1, i).u, t.point(s2, j).u, t);
          const double trig = cauchy::lambda_trig(s1, i, s2, j, t);
          lam.add(std::abs(sn_form - trig) / std::abs(trig));
        }
      }
    }
  }

  const auto us = cauchy::sector_u(t, Sector::periodic);
  const auto vs = cauchy::sector_u(t, Sector::antiperiodic);
  const CMatrix phi = cauchy::ising_phi(t);
  const CMatrix psi = cauchy::ising_psi(t);
  const auto lu = numerics::det_and_inverse(phi);
  const CMatrix psi_phi = psi * lu.inverse;
  const CMatrix phi_psi = lu.inverse * psi;
  // |cn| <= 1 on the real line, so the inverse sets the natural entry scale.
  const double product_floor = matrix_scale(lu.inverse);

  Check phi_det("Ising det Phi: theta form and squared forms vs LU", o.tolerance);
  phi_det.add(std::abs(cauchy::phi_det_theta(us, vs, m) - lu.det) / std::abs(lu.det));
  const cplx det2 = lu.det * lu.det;
  phi_det.add(std::abs(cauchy::phi_det_squared_fg(t) - det2) / std::abs(det2));
  phi_det.add(std::abs(cauchy::phi_det_squared_sn(t) - det2) / std::abs(det2));
  phi_det.add(std::abs(cauchy::phi_det_squared_trig(t) - det2) / std::abs(det2));

  Check phi_inv("Ising Phi^-1: theta, fg, sn and trig forms vs LU", o.tolerance);
  for (const CMatrix& candidate : {cauchy::phi_inverse_theta(us, vs, m), cauchy::phi_inverse_fg(t),
                                   cauchy::phi_inverse_sn(t), cauchy::phi_inverse_trig(t)}) {
    phi_inv.add(numerics::relative_matrix_error(candidate, lu.inverse));
  }
  Check products("Ising Psi Phi^-1 and Phi^-1 Psi closed forms vs LU", o.tolerance);
  for (const CMatrix& candidate : {cauchy::psi_phi_inverse_theta(us, vs, m),
                                   cauchy::psi_phi_inverse_sn(t), cauchy::psi_phi_inverse_trig(t)}) {
    products.add(numerics::relative_matrix_error(candidate, psi_phi, product_floor));
  }
  for (const CMatrix& candidate : {cauchy::phi_inverse_psi_theta(us, vs, m),
                                   cauchy::phi_inverse_psi_sn(t), cauchy::phi_inverse_psi_trig(t)}) {
    products.add(numerics::relative_matrix_error(candidate, phi_psi, product_floor));
  }
  Check chik("chi and kappa: sn products vs trigonometric form", o.tolerance);
  const auto ck_sn = cauchy::chi_kappa_sn(t);
  const auto ck_trig = cauchy::chi_kappa_trig(t);
  chik.add(numerics::relative_matrix_error(ck_sn.chi, ck_trig.chi));
  chik.add(numerics::relative_matrix_error(ck_sn.kappa, ck_trig.kappa));

  for (const Check* ch : {&det, &inv, &interp, &pf, &pf_det, &lam, &phi_det, &phi_inv, &products, &chik}) {
    out.push_back(ch->result());
  }
}

void rotation_suite(const Couplings& c, const VerifyOptions& o, std::vector<CheckResult>& out) {
  const SpectralTable t(c);
  Check closed_numeric("two-particle matrices: closed form vs dense inversion", o.tolerance);
  Check closed_elliptic("two-particle matrices: closed form vs elliptic route", o.tolerance);
  Check det_d("|det D|: nu product vs dense and theta routes", o.tolerance);
  for (int site = 0; site < c.n(); ++site) {
    const auto r = induced_rotation(t, site);
    const auto numeric = two_particle_matrices_numeric(r);
    const auto closed = two_particle_matrices(t, site);
    const auto elliptic = two_particle_matrices_elliptic(t, site);
    const double floor = std::max({matrix_scale(numeric.d_inv), matrix_scale(numeric.b_d_inv),
                                   matrix_scale(numeric.d_inv_c)});
    closed_numeric.add(std::max({numerics::relative_matrix_error(closed.d_inv, numeric.d_inv, floor),
                                 numerics::relative_matrix_error(closed.b_d_inv, numeric.b_d_inv, floor),
                                 numerics::relative_matrix_error(closed.d_inv_c, numeric.d_inv_c, floor)}));
    closed_elliptic.add(std::max({numerics::relative_matrix_error(closed.d_inv, elliptic.d_inv, floor),
                                  numerics::relative_matrix_error(closed.b_d_inv, elliptic.b_d_inv, floor),
                                  numerics::relative_matrix_error(closed.d_inv_c, elliptic.d_inv_c, floor)}));
    const double dense = std::abs(numerics::determinant(r.d));
    det_d.add(std::abs(abs_det_d(t) - dense) / dense);
  }
  det_d.add(std::abs(abs_det_d(t) - abs_det_d_elliptic(t)) / abs_det_d_elliptic(t));
  for (const Check* ch : {&closed_numeric, &closed_elliptic, &det_d}) {
    out.push_back(ch->result());
  }
}

void formfactor_suite(const Couplings& c, const VerifyOptions& o, std::vector<CheckResult>& out) {
  const SpectralTable t(c);
  const int n = c.n();
  Check pf_closed("ff_closed vs ff_pfaffian (closed-form pairing)", o.tolerance);
  Check pf_numeric("ff_closed vs ff_pfaffian (dense pairing)", o.tolerance);
  Check pairing("pairing matrix: elliptic assembly vs direct", o.tolerance);
  Check translation("ff at site l = exp(i l (sum theta' - sum theta)) ff at site 0", o.tolerance);

  std::vector<int> sites{0};
  if (n > 1) {
    sites.push_back(n - 1);
  }
  for (int parity : {0, 1}) {
    const auto bras = fock_states(Sector::antiperiodic, n, parity, 3);
    const auto kets = fock_states(Sector::periodic, n, parity, 3);
    for (const auto& bra : bras) {
      for (const auto& ket : kets) {
        if (bra.size() + ket.size() > 4) {
          continue;
        }
        const FormFactorSpec base(0, bra, ket, n);
        const cplx f0 = ff_closed(base, t);
        const double scale = std::max(std::abs(f0), 1e-300);
        for (int site : sites) {
          const FormFactorSpec spec(site, bra, ket, n);
          const cplx closed = ff_closed(spec, t);
          pf_closed.add(std::abs(closed - ff_pfaffian(spec, t, PairingSource::closed_form)) / scale);
          pf_numeric.add(std::abs(closed - ff_pfaffian(spec, t, PairingSource::numeric)) / scale);
          const CMatrix direct = pairing_matrix(spec, two_particle_matrices(t, site));
          pairing.add(numerics::relative_matrix_error(pairing_matrix_elliptic(spec, t), direct));
          const cplx phase =
              exp_i_pi_rational(static_cast<long long>(site) * (ket.momentum_numerator() - bra.momentum_numerator()), n);
          translation.add(std::abs(closed - phase * f0) / scale);
        }
      }
    }
  }
  for (const Check* ch : {&pf_closed, &pf_numeric, &pairing, &translation}) {
    out.push_back(ch->result());
  }
}

}  // namespace

Suite parse_suite(std::string_view name) {
  if (name == "elliptic") return Suite::elliptic;
  if (name == "cauchy") return Suite::cauchy;
  if (name == "rotation") return Suite::rotation;
  if (name == "formfactor") return Suite::formfactor;
  if (name == "all") return Suite::all;
  throw InputError("unknown suite '" + std::string(name) + "'");
}

const char* suite_name(Suite s) {
  switch (s) {
    case Suite::elliptic:
      return "elliptic";
    case Suite::cauchy:
      return "cauchy";
    case Suite::rotation:
      return "rotation";
    case Suite::formfactor:
      return "formfactor";
    case Suite::all:
      return "all";
  }
  return "unknown";
}

std::vector<CheckResult> verify_suite(Suite suite, const Couplings& c, const VerifyOptions& opts) {
  if (opts.samples < 1) {
    throw InputError("samples must be positive");
  }
  std::vector<CheckResult> out;
  if (suite == Suite::elliptic || suite == Suite::all) {
    elliptic_suite(c, opts, out);
  }
  if (suite == Suite::cauchy || suite == Suite::all) {
    cauchy_suite(c, opts, out);
  }
  if (suite == Suite::rotation || suite == Suite::all) {
    rotation_suite(c, opts, out);
  }
  if (suite == Suite::formfactor || suite == Suite::all) {
    formfactor_suite(c, opts, out);
  }
  return out;
}

}  // namespace isingff
