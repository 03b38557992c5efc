#include "isingff/form_factors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "isingff/cauchy.hpp"
#include "isingff/errors.hpp"

namespace isingff {

namespace {

constexpr cplx kI{0.0, 1.0};

// exp(-i (l - 1/2) pi num / N) for integer num.
cplx site_phase(int site, long long num, int n) {
  return exp_i_pi_rational(-static_cast<long long>(2 * site - 1) * num, 2LL * n);
}

void require_site(int site, int n) {
  if (site < 0 || site >= n) {
    throw InputError("site index out of range");
  }
}

const SpectralPoint& pt(const SpectralTable& t, Sector s, int i) { return t.point(s, i); }

cplx i_power(long long e) {
  switch (((e % 4) + 4) % 4) {
    case 0:
      return {1.0, 0.0};
    case 1:
      return {0.0, 1.0};
    case 2:
      return {-1.0, 0.0};
    default:
      return {0.0, -1.0};
  }
}

}  // namespace

InducedRotation induced_rotation(const SpectralTable& t, int site) {
  const int n = t.n();
  require_site(site, n);
  InducedRotation r{site, CMatrix(n, n), CMatrix(n, n), CMatrix(n, n), CMatrix(n, n)};
  for (int i = 0; i < n; ++i) {
    const auto& p = pt(t, Sector::periodic, i);
    for (int j = 0; j < n; ++j) {
      const auto& a = pt(t, Sector::antiperiodic, j);
      const cplx ratio = a.sqrt_b / p.sqrt_b;
      const cplx d = site_phase(site, p.numerator - a.numerator, n) /
                     (2.0 * kI * static_cast<double>(n) * std::sin(0.5 * (a.theta - p.theta))) *
                     (ratio + 1.0 / ratio);
      const cplx prod = p.sqrt_b * a.sqrt_b;
      const cplx c = site_phase(site, p.numerator + a.numerator, n) /
                     (2.0 * kI * static_cast<double>(n) * std::sin(0.5 * (p.theta + a.theta))) *
                     (prod - 1.0 / prod);
      r.d(i, j) = d;
      r.a(i, j) = std::conj(d);
      r.c(i, j) = c;
      r.b(i, j) = std::conj(c);
    }
  }
  return r;
}

TwoParticleMatrices two_particle_matrices(const SpectralTable& t, int site) {
  const int n = t.n();
  require_site(site, n);
  const double ratio = t.couplings().sinh2ky() / t.couplings().sinh2kx();
  TwoParticleMatrices m{CMatrix(n, n), CMatrix(n, n), CMatrix(n, n)};
  for (int i = 0; i < n; ++i) {
    const auto& ai = pt(t, Sector::antiperiodic, i);
    const auto& pi = pt(t, Sector::periodic, i);
    const double nu_ai = t.nu(Sector::antiperiodic, i);
    const double nu_pi = t.nu(Sector::periodic, i);
    for (int j = 0; j < n; ++j) {
      const auto& aj = pt(t, Sector::antiperiodic, j);
      const auto& pj = pt(t, Sector::periodic, j);
      const double nu_aj = t.nu(Sector::antiperiodic, j);
      const double nu_pj = t.nu(Sector::periodic, j);

      m.d_inv(i, j) = kI * site_phase(site, ai.numerator - pj.numerator, n) *
                      std::exp(0.5 * (nu_ai - nu_pj)) /
                      (n * std::sqrt(std::sinh(ai.gamma) * std::sinh(pj.gamma))) *
                      std::sinh(0.5 * (ai.gamma + pj.gamma)) / std::sin(0.5 * (ai.theta - pj.theta));

      m.b_d_inv(i, j) = i == j ? cplx(0.0, 0.0)
                               : -kI * std::conj(site_phase(site, pi.numerator + pj.numerator, n)) *
                                     ratio * std::exp(-0.5 * (nu_pi + nu_pj)) /
                                     (n * std::sqrt(std::sinh(pi.gamma) * std::sinh(pj.gamma))) *
                                     std::sin(0.5 * (pi.theta - pj.theta)) /
                                     std::sinh(0.5 * (pi.gamma + pj.gamma));

      m.d_inv_c(i, j) = i == j ? cplx(0.0, 0.0)
                               : -kI * site_phase(site, ai.numerator + aj.numerator, n) * ratio *
                                     std::exp(0.5 * (nu_ai + nu_aj)) /
                                     (n * std::sqrt(std::sinh(ai.gamma) * std::sinh(aj.gamma))) *
                                     std::sin(0.5 * (ai.theta - aj.theta)) /
                                     std::sinh(0.5 * (ai.gamma + aj.gamma));
    }
  }
  return m;
}

TwoParticleMatrices two_particle_matrices_numeric(const InducedRotation& r) {
  const auto di = numerics::det_and_inverse(r.d);
  return {di.inverse, r.b * di.inverse, di.inverse * r.c};
}

TwoParticleMatrices two_particle_matrices_elliptic(const SpectralTable& t, int site) {
  const int n = t.n();
  require_site(site, n);
  const double sinh2ky = t.couplings().sinh2ky();
  const double ratio = t.couplings().sinh2kx_star() / sinh2ky;

  // Lambda_s = diag(exp(i(l-1/2)theta) / sqrt(sinh gamma)).
  auto lambda = [&](Sector s) {
    Eigen::VectorXcd v(n);
    for (int j = 0; j < n; ++j) {
      const auto& p = pt(t, s, j);
      v(j) = std::conj(site_phase(site, p.numerator, n)) / std::sqrt(std::sinh(p.gamma));
    }
    return v;
  };
  const Eigen::VectorXcd la = lambda(Sector::antiperiodic);
  const Eigen::VectorXcd lp = lambda(Sector::periodic);

  const CMatrix phi_inv = cauchy::phi_inverse_fg(t);
  const CMatrix psi_phi_inv = cauchy::psi_phi_inverse_sn(t);
  const CMatrix phi_inv_psi = cauchy::phi_inverse_psi_sn(t);

  TwoParticleMatrices m{CMatrix(n, n), CMatrix(n, n), CMatrix(n, n)};
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      m.d_inv(i, j) = (-kI * static_cast<double>(n) / sinh2ky) / la(i) * phi_inv(i, j) /
                      std::conj(lp(j));
      m.b_d_inv(i, j) = kI * ratio * lp(i) * psi_phi_inv(i, j) / std::conj(lp(j));
      m.d_inv_c(i, j) = kI * ratio / la(i) * phi_inv_psi(i, j) * std::conj(la(j));
    }
  }
  return m;
}

double abs_det_d(const SpectralTable& t) {
  const double k = t.couplings().modulus().k();
  double log_value = std::log((1.0 - k) * (1.0 + k));
  for (int j = 0; j < t.n(); ++j) {
    log_value += t.nu(Sector::periodic, j) - t.nu(Sector::antiperiodic, j);
  }
  return std::exp(0.25 * log_value);
}

double abs_det_d_elliptic(const SpectralTable& t) {
  const int n = t.n();
  const auto us = cauchy::sector_u(t, Sector::periodic);
  const auto vs = cauchy::sector_u(t, Sector::antiperiodic);
  const double det_phi = std::abs(cauchy::phi_det_theta(us, vs, t.couplings().modulus()));
  double log_value = n * std::log(t.couplings().sinh2ky() / n) + std::log(det_phi);
  for (int j = 0; j < n; ++j) {
    log_value -= 0.5 * std::log(std::sinh(pt(t, Sector::periodic, j).gamma));
    log_value -= 0.5 * std::log(std::sinh(pt(t, Sector::antiperiodic, j).gamma));
  }
  return std::exp(log_value);
}

double vacuum_overlap(const SpectralTable& t) { return std::sqrt(abs_det_d(t)); }

FockState::FockState(Sector sector, std::vector<int> indices, int n)
    : sector_(sector), indices_(std::move(indices)) {
  for (std::size_t i = 0; i < indices_.size(); ++i) {
    if (indices_[i] < 0 || indices_[i] >= n) {
      throw InputError("momentum index out of range in Fock state");
    }
    if (i > 0 && indices_[i] <= indices_[i - 1]) {
      throw InputError("Fock state momenta must be distinct and increasing");
    }
  }
}

long long FockState::momentum_numerator() const {
  long long s = 0;
  for (int i : indices_) {
    s += isingff::momentum_numerator(sector_, i);
  }
  return s;
}

std::string FockState::to_string() const {
  std::ostringstream os;
  os << (sector_ == Sector::antiperiodic ? "a" : "p") << "{";
  for (std::size_t i = 0; i < indices_.size(); ++i) {
    os << (i ? "," : "") << indices_[i];
  }
  os << "}";
  return os.str();
}

FormFactorSpec::FormFactorSpec(int site_, FockState bra_, FockState ket_, int n)
    : site(site_), bra(std::move(bra_)), ket(std::move(ket_)) {
  require_site(site, n);
  if (bra.sector() != Sector::antiperiodic || ket.sector() != Sector::periodic) {
    throw InputError("bra must be antiperiodic and ket periodic");
  }
  if ((bra.size() + ket.size()) % 2 != 0) {
    throw InputError("form factor needs an even total particle number m + n");
  }
}

CMatrix pairing_matrix(const FormFactorSpec& spec, const TwoParticleMatrices& mats) {
  const auto& bra = spec.bra.indices();
  const auto& ket = spec.ket.indices();
  const int m = static_cast<int>(bra.size());
  const int n = static_cast<int>(ket.size());
  CMatrix r = CMatrix::Zero(m + n, m + n);
  for (int j = 0; j < m; ++j) {
    for (int k = 0; k < m; ++k) {
      r(j, k) = mats.d_inv_c(bra[j], bra[k]);
    }
    for (int k = 0; k < n; ++k) {
      r(j, m + k) = mats.d_inv(bra[j], ket[k]);
      r(m + k, j) = -mats.d_inv(bra[j], ket[k]);
    }
  }
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      r(m + j, m + k) = mats.b_d_inv(ket[j], ket[k]);
    }
  }
  return r;
}

CMatrix pairing_matrix_elliptic(const FormFactorSpec& spec, const SpectralTable& t) {
  const auto& bra = spec.bra.indices();
  const auto& ket = spec.ket.indices();
  const int m = static_cast<int>(bra.size());
  const int n = static_cast<int>(ket.size());
  const int size = m + n;
  const int sites = t.n();
  const auto& mod = t.couplings().modulus();
  const double rho = std::sqrt(t.couplings().sinh2ky() / t.couplings().sinh2kx());

  std::vector<cplx> us(static_cast<std::size_t>(size));
  Eigen::VectorXcd omega(size);
  for (int j = 0; j < m; ++j) {
    const auto& p = pt(t, Sector::antiperiodic, bra[j]);
    us[static_cast<std::size_t>(j)] = cplx(p.u, mod.Kprime());
    omega(j) = -site_phase(spec.site, p.numerator, sites) *
               std::exp(0.5 * t.nu(Sector::antiperiodic, bra[j])) /
               std::sqrt(sites * std::sinh(p.gamma));
  }
  for (int j = 0; j < n; ++j) {
    const auto& p = pt(t, Sector::periodic, ket[j]);
    us[static_cast<std::size_t>(m + j)] = cplx(p.u, 0.0);
    omega(m + j) = std::conj(site_phase(spec.site, p.numerator, sites)) *
                   std::exp(-0.5 * t.nu(Sector::periodic, ket[j])) /
                   std::sqrt(sites * std::sinh(p.gamma));
  }
  const CMatrix rt = cauchy::sn_pfaffian_matrix(us, mod);
  return (-kI * rho) * omega.asDiagonal() * rt * omega.asDiagonal();
}

cplx ff_pfaffian(const FormFactorSpec& spec, const TwoParticleMatrices& mats, double vacuum) {
  return vacuum * numerics::pfaffian(pairing_matrix(spec, mats));
}

cplx ff_pfaffian(const FormFactorSpec& spec, const SpectralTable& t, PairingSource source) {
  if (source == PairingSource::closed_form) {
    return ff_pfaffian(spec, two_particle_matrices(t, spec.site), vacuum_overlap(t));
  }
  const InducedRotation r = induced_rotation(t, spec.site);
  const auto mats = two_particle_matrices_numeric(r);
  const double vacuum = std::sqrt(std::abs(numerics::determinant(r.d)));
  return ff_pfaffian(spec, mats, vacuum);
}

cplx ff_closed(const FormFactorSpec& spec, const SpectralTable& t) {
  const auto& bra = spec.bra.indices();
  const auto& ket = spec.ket.indices();
  const long long m = static_cast<long long>(bra.size());
  const long long n = static_cast<long long>(ket.size());
  const int sites = t.n();
  const double ratio = t.couplings().sinh2ky() / t.couplings().sinh2kx();

  cplx value = i_power(2 * m * n - (m + n) / 2) * vacuum_overlap(t);
  value *= std::pow(ratio, static_cast<double>((m - n) * (m - n)) / 4.0);
  for (int j : bra) {
    const auto& p = pt(t, Sector::antiperiodic, j);
    value *= site_phase(spec.site, p.numerator, sites) *
             std::exp(0.5 * t.nu(Sector::antiperiodic, j)) / std::sqrt(sites * std::sinh(p.gamma));
  }
  for (int j : ket) {
    const auto& p = pt(t, Sector::periodic, j);
    value *= std::conj(site_phase(spec.site, p.numerator, sites)) *
             std::exp(-0.5 * t.nu(Sector::periodic, j)) / std::sqrt(sites * std::sinh(p.gamma));
  }
  auto same_sector = [&](Sector s, const std::vector<int>& idx) {
    double acc = 1.0;
    for (std::size_t i = 0; i < idx.size(); ++i) {
      for (std::size_t j = i + 1; j < idx.size(); ++j) {
        const auto& pi = pt(t, s, idx[i]);
        const auto& pj = pt(t, s, idx[j]);
        acc *= std::sin(0.5 * (pi.theta - pj.theta)) / std::sinh(0.5 * (pi.gamma + pj.gamma));
      }
    }
    return acc;
  };
  value *= same_sector(Sector::antiperiodic, bra) * same_sector(Sector::periodic, ket);
  for (int i : bra) {
    const auto& a = pt(t, Sector::antiperiodic, i);
    for (int j : ket) {
      const auto& p = pt(t, Sector::periodic, j);
      value *= std::sinh(0.5 * (a.gamma + p.gamma)) / std::sin(0.5 * (a.theta - p.theta));
    }
  }
  return value;
}

std::vector<FockState> fock_states(Sector s, int n, int parity, int max_particles) {
  if (n < 1) {
    throw DomainError("lattice width must be at least 1");
  }
  const int top = max_particles < 0 ? n : std::min(n, max_particles);
  std::vector<FockState> out;
  for (int size = parity % 2; size <= top; size += 2) {
    std::vector<int> idx(static_cast<std::size_t>(size));
    for (int i = 0; i < size; ++i) {
      idx[static_cast<std::size_t>(i)] = i;
    }
    while (true) {
      out.emplace_back(s, idx, n);
      int pos = size - 1;
      while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == n - size + pos) {
        --pos;
      }
      if (pos < 0) {
        break;
      }
      ++idx[static_cast<std::size_t>(pos)];
      for (int i = pos + 1; i < size; ++i) {
        idx[static_cast<std::size_t>(i)] = idx[static_cast<std::size_t>(i - 1)] + 1;
      }
    }
  }
  return out;
}

}  // namespace isingff
