#include "isingff/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "isingff/errors.hpp"

namespace isingff::oracle {

namespace {

constexpr cplx kI{0.0, 1.0};

// Levels closer than this in ln(lambda) are diagonalised together.
constexpr double kLevelGroupTol = 1e-8;
// Predicted levels within this distance are label candidates.
constexpr double kLevelMatchTol = 1e-7;
constexpr double kPhaseGroupTol = 1e-8;
constexpr double kOccupationTol = 1e-6;

int bit(Eigen::Index b, int j) { return static_cast<int>((b >> j) & 1); }

RMatrix permute_rows(const RMatrix& x, const std::vector<Eigen::Index>& map) {
  RMatrix out(x.rows(), x.cols());
  for (Eigen::Index b = 0; b < x.rows(); ++b) {
    out.row(b) = x.row(map[static_cast<std::size_t>(b)]);
  }
  return out;
}

RMatrix matrix_power(const RMatrix& base, int exponent) {
  RMatrix result = RMatrix::Identity(base.rows(), base.cols());
  RMatrix acc = base;
  while (exponent > 0) {
    if (exponent & 1) {
      result = result * acc;
    }
    exponent >>= 1;
    if (exponent > 0) {
      acc = acc * acc;
    }
  }
  return result;
}

// Groups of consecutive sorted values whose neighbours differ by at most tol.
std::vector<std::pair<Eigen::Index, Eigen::Index>> cluster(const Eigen::VectorXd& sorted, double tol) {
  std::vector<std::pair<Eigen::Index, Eigen::Index>> out;
  Eigen::Index start = 0;
  for (Eigen::Index i = 1; i <= sorted.size(); ++i) {
    if (i == sorted.size() || sorted(i) - sorted(i - 1) > tol) {
      out.emplace_back(start, i - start);
      start = i;
    }
  }
  return out;
}

struct Prediction {
  FockState state;
  double log_eigenvalue;
  long long momentum;  // total momentum numerator mod 2N
  int z2;
  bool used;
};

long long mod_positive(long long a, long long m) { return ((a % m) + m) % m; }

}  // namespace

SpinOperatorSet::SpinOperatorSet(const Couplings& c, int eps_y)
    : n_(c.n()), eps_y_(eps_y), dim_(0) {
  if (eps_y != 1 && eps_y != -1) {
    throw InputError("eps_y must be +1 or -1");
  }
  if (n_ > kMaxOracleSites) {
    throw ResourceError("oracle limited to N <= " + std::to_string(kMaxOracleSites));
  }
  dim_ = Eigen::Index{1} << n_;

  Eigen::VectorXd half_vy(dim_);
  for (Eigen::Index b = 0; b < dim_; ++b) {
    double bond_sum = 0.0;
    for (int j = 0; j < n_; ++j) {
      const double next = j + 1 < n_ ? spin(j + 1, b) : eps_y_ * spin(0, b);
      bond_sum += spin(j, b) * next;
    }
    half_vy(b) = std::exp(0.5 * c.ky() * bond_sum);
  }

  const double ch = std::cosh(c.kx_star());
  const double sh = std::sinh(c.kx_star());
  std::vector<double> vx_by_distance(static_cast<std::size_t>(n_ + 1));
  std::vector<double> vx_inv_by_distance(static_cast<std::size_t>(n_ + 1));
  for (int h = 0; h <= n_; ++h) {
    vx_by_distance[static_cast<std::size_t>(h)] = std::pow(ch, n_ - h) * std::pow(sh, h);
    vx_inv_by_distance[static_cast<std::size_t>(h)] = std::pow(ch, n_ - h) * std::pow(-sh, h);
  }
  const double prefactor = std::pow(2.0 * c.sinh2kx(), 0.5 * n_);

  v_.resize(dim_, dim_);
  v_inv_.resize(dim_, dim_);
  for (Eigen::Index a = 0; a < dim_; ++a) {
    for (Eigen::Index b = 0; b < dim_; ++b) {
      const auto h = static_cast<std::size_t>(__builtin_popcountll(static_cast<unsigned long long>(a ^ b)));
      v_(a, b) = prefactor * half_vy(a) * vx_by_distance[h] * half_vy(b);
      v_inv_(a, b) = vx_inv_by_distance[h] / (prefactor * half_vy(a) * half_vy(b));
    }
  }

  t_map_.resize(static_cast<std::size_t>(dim_));
  t_inv_map_.resize(static_cast<std::size_t>(dim_));
  for (Eigen::Index b = 0; b < dim_; ++b) {
    Eigen::Index image = 0;
    for (int j = 0; j + 1 < n_; ++j) {
      image |= static_cast<Eigen::Index>(bit(b, j + 1)) << j;
    }
    int last = bit(b, 0);
    if (eps_y_ == -1) {
      last ^= 1;
    }
    image |= static_cast<Eigen::Index>(last) << (n_ - 1);
    t_map_[static_cast<std::size_t>(b)] = image;
  }
  for (Eigen::Index b = 0; b < dim_; ++b) {
    t_inv_map_[static_cast<std::size_t>(t_map_[static_cast<std::size_t>(b)])] = b;
  }
}

double SpinOperatorSet::spin(int site, Eigen::Index b) const {
  return bit(b, site) ? -1.0 : 1.0;
}

CMatrix SpinOperatorSet::apply_u(const CMatrix& x) const {
  CMatrix out(x.rows(), x.cols());
  for (Eigen::Index b = 0; b < dim_; ++b) {
    out.row(b) = x.row(flip_all(b));
  }
  return out;
}

CMatrix SpinOperatorSet::apply_t(const CMatrix& x) const {
  CMatrix out(x.rows(), x.cols());
  for (Eigen::Index b = 0; b < dim_; ++b) {
    out.row(b) = x.row(t_map_[static_cast<std::size_t>(b)]);
  }
  return out;
}

CMatrix SpinOperatorSet::apply_t_inverse(const CMatrix& x) const {
  CMatrix out(x.rows(), x.cols());
  for (Eigen::Index b = 0; b < dim_; ++b) {
    out.row(b) = x.row(t_inv_map_[static_cast<std::size_t>(b)]);
  }
  return out;
}

CMatrix SpinOperatorSet::apply_spin(int site, const CMatrix& x) const {
  if (site < 0 || site >= n_) {
    throw InputError("site index out of range");
  }
  CMatrix out = x;
  for (Eigen::Index b = 0; b < dim_; ++b) {
    if (bit(b, site)) {
      out.row(b) *= -1.0;
    }
  }
  return out;
}

CVector SpinOperatorSet::apply_p(int j, const CVector& x) const {
  const Eigen::Index mask = (Eigen::Index{1} << j) - 1;
  CVector out(dim_);
  for (Eigen::Index b = 0; b < dim_; ++b) {
    out(b) = spin(j, b) * x(b ^ mask);
  }
  return out;
}

CVector SpinOperatorSet::apply_q(int j, const CVector& x) const {
  const Eigen::Index mask = (Eigen::Index{1} << (j + 1)) - 1;
  CVector out(dim_);
  for (Eigen::Index b = 0; b < dim_; ++b) {
    out(b) = -kI * spin(j, b) * x(b ^ mask);
  }
  return out;
}

CVector SpinOperatorSet::apply_annihilator(int numerator, cplx sqrt_b, const CVector& x) const {
  CVector p_theta = CVector::Zero(dim_);
  CVector q_theta = CVector::Zero(dim_);
  for (int j = 0; j < n_; ++j) {
    const cplx phase = exp_i_pi_rational(-static_cast<long long>(j) * numerator, n_);
    p_theta += phase * apply_p(j, x);
    q_theta += phase * apply_q(j, x);
  }
  const double norm = 1.0 / std::sqrt(static_cast<double>(n_));
  const cplx e = exp_i_pi_rational(numerator, n_);
  return 0.5 * norm * (e / sqrt_b * p_theta + kI * sqrt_b * q_theta);
}

CommutatorNorms commutator_norms(const SpinOperatorSet& ops) {
  const CMatrix v = ops.transfer().cast<cplx>();
  const CMatrix id = CMatrix::Identity(ops.dim(), ops.dim());
  const CMatrix u = ops.apply_u(id);
  const CMatrix t = ops.apply_t(id);
  CommutatorNorms out{};
  out.vu = (v * u - u * v).cwiseAbs().maxCoeff() / v.cwiseAbs().maxCoeff();
  out.vt = (v * t - t * v).cwiseAbs().maxCoeff() / v.cwiseAbs().maxCoeff();
  out.tu = (t * u - u * t).cwiseAbs().maxCoeff();
  double worst = 0.0;
  for (int l = 0; l < ops.n(); ++l) {
    const CMatrix s = ops.apply_spin(l, id);
    worst = std::max(worst, (s * u + u * s).cwiseAbs().maxCoeff());
  }
  out.spin_u_anticommutator = worst;
  return out;
}

LabeledSpectrum::LabeledSpectrum(std::vector<LabeledEigenstate> states, int n, int eps_y)
    : states_(std::move(states)), n_(n), eps_y_(eps_y) {
  for (std::size_t i = 0; i < states_.size(); ++i) {
    index_[{static_cast<int>(states_[i].sector), states_[i].momenta}] = i;
  }
}

std::optional<std::size_t> LabeledSpectrum::index_of(const FockState& s) const {
  const auto it = index_.find({static_cast<int>(s.sector()), s.indices()});
  if (it == index_.end()) {
    return std::nullopt;
  }
  return it->second;
}

const LabeledEigenstate& LabeledSpectrum::find(const FockState& s) const {
  const auto idx = index_of(s);
  if (!idx) {
    throw InputError("state " + s.to_string() + " is not an eigenstate for eps_y = " +
                     std::to_string(eps_y_));
  }
  return states_[*idx];
}

double predicted_log_eigenvalue(const FockState& s, const SpectralTable& t) {
  const auto& c = t.couplings();
  double value = 0.5 * c.n() * std::log(2.0 * c.sinh2kx()) + 0.5 * t.gamma_sum(s.sector());
  for (int i : s.indices()) {
    value -= t.point(s.sector(), i).gamma;
  }
  return value;
}

LabeledSpectrum labeled_spectrum(const SpinOperatorSet& ops, const SpectralTable& t) {
  const int n = ops.n();
  if (t.n() != n) {
    throw InputError("spectral table and operators have different N");
  }
  const int eps_y = ops.eps_y();
  const int parity = eps_y == 1 ? 0 : 1;
  const long long two_n = 2LL * n;

  std::vector<Prediction> predictions;
  for (Sector s : {Sector::antiperiodic, Sector::periodic}) {
    for (auto& st : fock_states(s, n, parity)) {
      const int charge = (s == Sector::antiperiodic ? 1 : -1) * (st.size() % 2 == 0 ? 1 : -1);
      const double lev = predicted_log_eigenvalue(st, t);
      const long long mom = mod_positive(st.momentum_numerator(), two_n);
      predictions.push_back({std::move(st), lev, mom, charge, false});
    }
  }

  // g = V/c - c V^{-1} has the eigenvectors of V and a spectrum centred on
  // zero, which keeps small eigenvalues of V accurate.
  const RMatrix& v = ops.transfer();
  const RMatrix& v_inv = ops.transfer_inverse();
  const double c = std::sqrt(v.norm() / v_inv.norm());
  RMatrix g = v / c - c * v_inv;
  g = 0.5 * (g + g.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<RMatrix> es(g);
  if (es.info() != Eigen::Success) {
    throw ConvergenceError("transfer matrix diagonalisation failed");
  }
  Eigen::VectorXd log_levels(ops.dim());
  for (Eigen::Index i = 0; i < ops.dim(); ++i) {
    log_levels(i) = std::log(c) + std::asinh(0.5 * es.eigenvalues()(i));
  }

  // Hermitian combination of T with generic weights: eigenvalues of T are
  // e^{i phi}, mapped to cos(phi) + w sin(phi), which separates the N-th
  // roots of unity for this choice of w.
  constexpr double w = 0.3819660112501051;

  std::vector<LabeledEigenstate> states;
  for (const auto& [start, count] : cluster(log_levels, kLevelGroupTol)) {
    const CMatrix q = es.eigenvectors().middleCols(start, count).cast<cplx>();
    const double level = log_levels.segment(start, count).mean();
    const CMatrix tq = ops.apply_t(q);
    const CMatrix tb = q.adjoint() * tq;
    CMatrix h = 0.5 * (tb + tb.adjoint()) + w * (tb - tb.adjoint()) / (2.0 * kI);
    h = 0.5 * (h + h.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<CMatrix> th(h);
    const CMatrix q2 = q * th.eigenvectors();

    for (const auto& [ts, tc] : cluster(th.eigenvalues(), kPhaseGroupTol)) {
      const CMatrix qt = q2.middleCols(ts, tc);
      CMatrix ub = qt.adjoint() * ops.apply_u(qt);
      ub = 0.5 * (ub + ub.adjoint()).eval();
      Eigen::SelfAdjointEigenSolver<CMatrix> uh(ub);
      const CMatrix q3 = qt * uh.eigenvectors();

      for (const auto& [us, uc] : cluster(uh.eigenvalues(), 0.5)) {
        const CMatrix block = q3.middleCols(us, uc);
        const int z2 = uh.eigenvalues()(us) > 0.0 ? 1 : -1;
        const cplx tval = (block.col(0).adjoint() * ops.apply_t(block.col(0)))(0, 0);
        const long long mom =
            mod_positive(std::llround(-std::arg(tval) * n / std::numbers::pi), two_n);
        if (std::abs(tval - exp_i_pi_rational(-mom, n)) > 1e-6) {
          throw AmbiguityError("translation eigenvalue is not a 2N-th root of unity");
        }
        const Sector sector = z2 == eps_y ? Sector::antiperiodic : Sector::periodic;

        std::vector<std::size_t> candidates;
        for (std::size_t i = 0; i < predictions.size(); ++i) {
          const auto& p = predictions[i];
          if (!p.used && p.z2 == z2 && p.momentum == mom &&
              std::abs(p.log_eigenvalue - level) <= kLevelMatchTol * std::max(1.0, std::abs(level))) {
            candidates.push_back(i);
          }
        }
        if (candidates.size() < static_cast<std::size_t>(uc)) {
          throw AmbiguityError("eigenvector block has fewer label candidates than states");
        }

        if (uc == 1 && candidates.size() == 1) {
          auto& p = predictions[candidates.front()];
          p.used = true;
          states.push_back({block.col(0), sector, p.state.indices(), level, tval, z2, false});
          continue;
        }

        // Number-operator tiebreak inside the block.
        std::vector<CMatrix> psi_block;
        for (int j = 0; j < n; ++j) {
          const auto& sp = t.point(sector, j);
          CMatrix out(block.rows(), block.cols());
          for (Eigen::Index col = 0; col < block.cols(); ++col) {
            out.col(col) = ops.apply_annihilator(sp.numerator, sp.sqrt_b, block.col(col));
          }
          psi_block.push_back(std::move(out));
        }
        CMatrix weighted = CMatrix::Zero(uc, uc);
        for (int j = 0; j < n; ++j) {
          weighted += std::ldexp(1.0, j - n) * (psi_block[static_cast<std::size_t>(j)].adjoint() *
                                                psi_block[static_cast<std::size_t>(j)]);
        }
        weighted = 0.5 * (weighted + weighted.adjoint()).eval();
        Eigen::SelfAdjointEigenSolver<CMatrix> nh(weighted);
        for (Eigen::Index col = 0; col < uc; ++col) {
          const CVector y = block * nh.eigenvectors().col(col);
          std::vector<int> occupied;
          for (int j = 0; j < n; ++j) {
            const CVector py =
                ops.apply_annihilator(t.point(sector, j).numerator, t.point(sector, j).sqrt_b, y);
            const double occ = py.squaredNorm();
            if (std::abs(occ - std::round(occ)) > kOccupationTol) {
              throw AmbiguityError("non-integral fermion occupation in degenerate block");
            }
            if (occ > 0.5) {
              occupied.push_back(j);
            }
          }
          auto it = std::find_if(candidates.begin(), candidates.end(), [&](std::size_t i) {
            return !predictions[i].used && predictions[i].state.indices() == occupied &&
                   predictions[i].state.sector() == sector;
          });
          if (it == candidates.end()) {
            throw AmbiguityError("occupation pattern does not match any candidate label");
          }
          predictions[*it].used = true;
          states.push_back({y, sector, occupied, level, tval, z2, true});
        }
      }
    }
  }
  for (const auto& p : predictions) {
    if (!p.used) {
      throw AmbiguityError("predicted state " + p.state.to_string() + " was not found");
    }
  }
  return LabeledSpectrum(std::move(states), n, eps_y);
}

double oracle_ff_modulus(const SpinOperatorSet& ops, const LabeledSpectrum& spectrum,
                         const FormFactorSpec& spec) {
  const auto& bra = spectrum.find(spec.bra);
  const auto& ket = spectrum.find(spec.ket);
  const CMatrix sk = ops.apply_spin(spec.site, ket.vector);
  return std::abs(bra.vector.dot(sk.col(0)));
}

cplx oracle_matrix_element(const SpinOperatorSet& ops, const LabeledSpectrum& spectrum,
                           std::size_t a, std::size_t b, int site) {
  const auto& states = spectrum.states();
  if (a >= states.size() || b >= states.size()) {
    throw InputError("spectrum index out of range");
  }
  const CMatrix sb = ops.apply_spin(site, states[b].vector);
  return states[a].vector.dot(sb.col(0));
}

double oracle_correlation(const SpinOperatorSet& ops, int m_height, int dx, int dy, int eps_x) {
  if (ops.n() > 10) {
    throw ResourceError("oracle correlation limited to N <= 10");
  }
  if (m_height < 1 || m_height > 64) {
    throw ResourceError("oracle correlation limited to 1 <= M <= 64");
  }
  if (dx < 0 || dx > m_height) {
    throw InputError("dx must satisfy 0 <= dx <= M");
  }
  if (eps_x != 1 && eps_x != -1) {
    throw InputError("eps_x must be +1 or -1");
  }
  const Eigen::Index dim = ops.dim();
  const int n = ops.n();
  const int shift = ((dy % n) + n) % n;

  const RMatrix& v = ops.transfer();
  const RMatrix vn = v / v.cwiseAbs().rowwise().sum().maxCoeff();
  const RMatrix p1 = matrix_power(vn, dx);
  RMatrix p2 = matrix_power(vn, m_height - dx);

  std::vector<Eigen::Index> u_map(static_cast<std::size_t>(dim));
  std::vector<Eigen::Index> t_map(static_cast<std::size_t>(dim));
  std::vector<Eigen::Index> t_inv_map(static_cast<std::size_t>(dim));
  for (Eigen::Index b = 0; b < dim; ++b) {
    u_map[static_cast<std::size_t>(b)] = ops.flip_all(b);
    t_map[static_cast<std::size_t>(b)] = ops.translate(b);
    t_inv_map[static_cast<std::size_t>(ops.translate(b))] = b;
  }
  auto scale_rows_by_spin0 = [&](RMatrix& x) {
    for (Eigen::Index b = 0; b < dim; ++b) {
      x.row(b) *= ops.spin(0, b);
    }
  };

  // Right factor: T^{-dy} V^{M-dx} U^e, built by left multiplications on U^e.
  RMatrix right = p2;
  if (eps_x == -1) {
    // (X U)[:, c] = X[:, u(c)].
    RMatrix tmp(dim, dim);
    for (Eigen::Index col = 0; col < dim; ++col) {
      tmp.col(col) = right.col(ops.flip_all(col));
    }
    right = tmp;
  }
  for (int i = 0; i < shift; ++i) {
    right = permute_rows(right, t_inv_map);
  }
  scale_rows_by_spin0(right);
  for (int i = 0; i < shift; ++i) {
    right = permute_rows(right, t_map);
  }
  RMatrix full = p1 * right;
  scale_rows_by_spin0(full);
  const double numerator = full.trace();

  const RMatrix vm = matrix_power(vn, m_height);
  double denominator = 0.0;
  for (Eigen::Index b = 0; b < dim; ++b) {
    denominator += eps_x == -1 ? vm(u_map[static_cast<std::size_t>(b)], b) : vm(b, b);
  }
  if (denominator == 0.0) {
    throw DomainError("partition function vanishes for this boundary condition");
  }
  return numerator / denominator;
}

}  // namespace isingff::oracle
