#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "isingff/form_factors.hpp"
#include "isingff/spectral_curve.hpp"

namespace isingff::oracle {

using RMatrix = Eigen::MatrixXd;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

inline constexpr int kMaxOracleSites = 12;

// Dense operators on the 2^N spin basis. Basis index b has bit j set when
// sigma_j = -1. Vectors are functions f(sigma_0, ..., sigma_{N-1}).
class SpinOperatorSet {
 public:
  SpinOperatorSet(const Couplings& c, int eps_y);

  int n() const { return n_; }
  int eps_y() const { return eps_y_; }
  Eigen::Index dim() const { return dim_; }

  // V = (2 sinh 2Kx)^{N/2} Vy^{1/2} Vx Vy^{1/2} and its exact inverse.
  const RMatrix& transfer() const { return v_; }
  const RMatrix& transfer_inverse() const { return v_inv_; }

  double spin(int site, Eigen::Index b) const;
  // (U f)(b) = f(flip_all(b)).
  Eigen::Index flip_all(Eigen::Index b) const { return b ^ (dim_ - 1); }
  // (T f)(b) = f(translate(b)), (T f)(s_0..s_{N-1}) = f(s_1, ..., s_{N-1}, eps_y s_0).
  Eigen::Index translate(Eigen::Index b) const { return t_map_[static_cast<std::size_t>(b)]; }

  // Left multiplication of a block of column vectors.
  CMatrix apply_u(const CMatrix& x) const;
  CMatrix apply_t(const CMatrix& x) const;
  CMatrix apply_t_inverse(const CMatrix& x) const;
  CMatrix apply_spin(int site, const CMatrix& x) const;

  // Majorana generators p_j = C_0...C_{j-1} s_j and q_j = i C_0...C_j s_j.
  CVector apply_p(int j, const CVector& x) const;
  CVector apply_q(int j, const CVector& x) const;
  // Fermion annihilation operator psi_theta for quasimomentum pi*num/N with
  // Bogoliubov coefficient sqrt(b_theta).
  CVector apply_annihilator(int numerator, cplx sqrt_b, const CVector& x) const;

 private:
  int n_;
  int eps_y_;
  Eigen::Index dim_;
  RMatrix v_;
  RMatrix v_inv_;
  std::vector<Eigen::Index> t_map_;
  std::vector<Eigen::Index> t_inv_map_;
};

// Largest entrywise commutator norms among V, U and T, plus the spin/U
// anticommutator.
struct CommutatorNorms {
  double vu;
  double vt;
  double tu;
  double spin_u_anticommutator;
};
CommutatorNorms commutator_norms(const SpinOperatorSet& ops);

struct LabeledEigenstate {
  CVector vector;
  Sector sector;
  std::vector<int> momenta;  // strictly increasing indices into the sector
  double log_eigenvalue;     // ln of the V eigenvalue
  cplx translation;          // <v|T|v>
  int z2;                    // U eigenvalue
  bool needed_number_tiebreak;
};

class LabeledSpectrum {
 public:
  LabeledSpectrum(std::vector<LabeledEigenstate> states, int n, int eps_y);

  const std::vector<LabeledEigenstate>& states() const { return states_; }
  int n() const { return n_; }
  int eps_y() const { return eps_y_; }
  // Throws InputError when the state is not part of this spectrum.
  const LabeledEigenstate& find(const FockState& s) const;
  std::optional<std::size_t> index_of(const FockState& s) const;

 private:
  std::vector<LabeledEigenstate> states_;
  int n_;
  int eps_y_;
  std::map<std::pair<int, std::vector<int>>, std::size_t> index_;
};

// Simultaneous eigenbasis of V, T and U labelled by Fock momenta. States
// that (V, T, U) leave degenerate are separated by diagonalising a generic
// weighted sum of fermion number operators inside the block.
LabeledSpectrum labeled_spectrum(const SpinOperatorSet& ops, const SpectralTable& t);

// Predicted ln of the V eigenvalue of a Fock state.
double predicted_log_eigenvalue(const FockState& s, const SpectralTable& t);

// |<bra| s_l |ket>|.
double oracle_ff_modulus(const SpinOperatorSet& ops, const LabeledSpectrum& spectrum,
                         const FormFactorSpec& spec);

// <A| s_l |B> for two spectrum entries.
cplx oracle_matrix_element(const SpinOperatorSet& ops, const LabeledSpectrum& spectrum,
                           std::size_t a, std::size_t b, int site);

// Tr[s_0 V^dx T^dy s_0 T^-dy V^(M-dx) U^e] / Tr[V^M U^e], e = (1 - eps_x)/2,
// from dense matrix powers.
double oracle_correlation(const SpinOperatorSet& ops, int m_height, int dx, int dy, int eps_x);

}  // namespace isingff::oracle
