#pragma once

#include <complex>
#include <string>
#include <vector>

#include "isingff/numerics.hpp"
#include "isingff/spectral_curve.hpp"

namespace isingff {

using numerics::CMatrix;

// Blocks of the Bogoliubov rotation induced by the spin operator s_l between
// the periodic (rows) and antiperiodic (columns) fermion bases.
struct InducedRotation {
  int site;
  CMatrix a;
  CMatrix b;
  CMatrix c;
  CMatrix d;
};

InducedRotation induced_rotation(const SpectralTable& t, int site);

// The matrices entering the two-particle form factors: D^{-1} (antiperiodic x
// periodic), B D^{-1} (periodic x periodic) and D^{-1} C (antiperiodic x
// antiperiodic).
struct TwoParticleMatrices {
  CMatrix d_inv;
  CMatrix b_d_inv;
  CMatrix d_inv_c;
};

// Closed factorised expressions in terms of theta, gamma and nu.
TwoParticleMatrices two_particle_matrices(const SpectralTable& t, int site);
// Dense inversion of the induced rotation.
TwoParticleMatrices two_particle_matrices_numeric(const InducedRotation& r);
// Through the elliptic Cauchy matrices Phi and Psi.
TwoParticleMatrices two_particle_matrices_elliptic(const SpectralTable& t, int site);

// |det D| from the nu-product formula; equals |<vac_a| s_l |vac_p>|^2.
double abs_det_d(const SpectralTable& t);
// |det D| through det Phi in theta functions.
double abs_det_d_elliptic(const SpectralTable& t);
// <vac_a| s_l |vac_p> = |det D|^{1/2}.
double vacuum_overlap(const SpectralTable& t);

// A set of occupied quasimomenta in one sector, stored as strictly
// increasing indices into that sector's momentum list.
class FockState {
 public:
  FockState(Sector sector, std::vector<int> indices, int n);

  Sector sector() const { return sector_; }
  const std::vector<int>& indices() const { return indices_; }
  int size() const { return static_cast<int>(indices_.size()); }
  // Total momentum in units of pi/N (not reduced).
  long long momentum_numerator() const;
  std::string to_string() const;

 private:
  Sector sector_;
  std::vector<int> indices_;
};

// <bra| s_site |ket> with bra antiperiodic (m particles) and ket periodic (n
// particles), m + n even. The bra ordering is psi_{theta_1} ... psi_{theta_m}
// acting on the antiperiodic vacuum, with increasing theta.
struct FormFactorSpec {
  FormFactorSpec(int site, FockState bra, FockState ket, int n);

  int site;
  FockState bra;
  FockState ket;
};

enum class PairingSource { closed_form, numeric };

// The antisymmetric (m+n) x (m+n) pairing matrix whose Pfaffian gives the
// form factor up to the vacuum overlap.
CMatrix pairing_matrix(const FormFactorSpec& spec, const TwoParticleMatrices& mats);

// The same matrix assembled from [sqrt(k) sn(u_i - u_j)] with the bra
// parameters shifted by iK'.
CMatrix pairing_matrix_elliptic(const FormFactorSpec& spec, const SpectralTable& t);

// Form factor from the Pfaffian of the pairing matrix.
cplx ff_pfaffian(const FormFactorSpec& spec, const SpectralTable& t,
                 PairingSource source = PairingSource::closed_form);
cplx ff_pfaffian(const FormFactorSpec& spec, const TwoParticleMatrices& mats, double vacuum);

// Factorised closed form.
cplx ff_closed(const FormFactorSpec& spec, const SpectralTable& t);

// All Fock states of a sector with the requested particle-number parity
// (0 even, 1 odd), ordered by particle number then lexicographically.
// max_particles < 0 means no cutoff.
std::vector<FockState> fock_states(Sector s, int n, int parity, int max_particles = -1);

}  // namespace isingff
