#include <gtest/gtest.h>

#include <cmath>

#include "isingff/errors.hpp"
#include "isingff/form_factors.hpp"

namespace {

using isingff::CMatrix;
using isingff::Couplings;
using isingff::cplx;
using isingff::FockState;
using isingff::FormFactorSpec;
using isingff::Sector;
using isingff::SpectralTable;

double max_abs(const CMatrix& m) { return m.cwiseAbs().maxCoeff(); }

TEST(InducedRotation, BlockRelations) {
  const Couplings c(6, 0.3, 0.9);
  const SpectralTable t(c);
  for (int site : {0, 2, 5}) {
    const auto r = isingff::induced_rotation(t, site);
    const CMatrix id = CMatrix::Identity(6, 6);
    EXPECT_LT(max_abs(r.a * r.b.transpose() + r.b * r.a.transpose()), 1e-11);
    EXPECT_LT(max_abs(r.c * r.d.transpose() + r.d * r.c.transpose()), 1e-11);
    EXPECT_LT(max_abs(r.a * r.d.transpose() + r.b * r.c.transpose() - id), 1e-11);
    EXPECT_LT(max_abs(r.a.conjugate() - r.d), 1e-14);
    EXPECT_LT(max_abs(r.b.conjugate() - r.c), 1e-14);
    EXPECT_LT(max_abs(r.c * r.c.adjoint() - (id - r.d * r.d.adjoint())), 1e-11);
  }
}

TEST(InducedRotation, SingleSiteHasUnitD) {
  const Couplings c(1, 0.4, 0.7);
  const SpectralTable t(c);
  const auto r = isingff::induced_rotation(t, 0);
  EXPECT_NEAR(std::abs(r.d(0, 0)), 1.0, 1e-14);
  EXPECT_THROW(isingff::induced_rotation(t, 1), isingff::InputError);
}

TEST(TwoParticle, ClosedInverseInvertsD) {
  for (int n = 1; n <= 8; ++n) {
    const Couplings c(n, 0.7, 0.8);
    const SpectralTable t(c);
    for (int site : {0, n - 1}) {
      const auto r = isingff::induced_rotation(t, site);
      const auto m = isingff::two_particle_matrices(t, site);
      EXPECT_LT(max_abs(m.d_inv * r.d - CMatrix::Identity(n, n)), 1e-10) << n;
    }
  }
}

TEST(TwoParticle, PeriodicPairingIsAntisymmetric) {
  const Couplings c(5, 0.5, 0.5);
  const SpectralTable t(c);
  const auto m = isingff::two_particle_matrices(t, 2);
  const double scale = max_abs(m.b_d_inv);
  EXPECT_LT(max_abs(m.b_d_inv + m.b_d_inv.transpose()), 1e-14 * scale);
  EXPECT_LT(max_abs(m.d_inv_c + m.d_inv_c.transpose()), 1e-14 * max_abs(m.d_inv_c));
  for (int i = 0; i < 5; ++i) {
    EXPECT_EQ(std::abs(m.b_d_inv(i, i)), 0.0);
  }
}

TEST(TwoParticle, ThreeRoutesAgree) {
  for (int n = 2; n <= 6; ++n) {
    const Couplings c(n, 0.3, 0.9);
    const SpectralTable t(c);
    const auto closed = isingff::two_particle_matrices(t, 1);
    const auto numeric = isingff::two_particle_matrices_numeric(isingff::induced_rotation(t, 1));
    const auto elliptic = isingff::two_particle_matrices_elliptic(t, 1);
    const double scale = std::max({max_abs(numeric.d_inv), max_abs(numeric.b_d_inv), max_abs(numeric.d_inv_c)});
    EXPECT_LT(max_abs(closed.d_inv - numeric.d_inv), 1e-10 * scale);
    EXPECT_LT(max_abs(closed.b_d_inv - numeric.b_d_inv), 1e-10 * scale);
    EXPECT_LT(max_abs(closed.d_inv_c - numeric.d_inv_c), 1e-10 * scale);
    EXPECT_LT(max_abs(closed.d_inv - elliptic.d_inv), 1e-10 * scale);
    EXPECT_LT(max_abs(closed.b_d_inv - elliptic.b_d_inv), 1e-10 * scale);
    EXPECT_LT(max_abs(closed.d_inv_c - elliptic.d_inv_c), 1e-10 * scale);
  }
}

TEST(Vacuum, SingleSiteOverlapIsOne) {
  const Couplings c(1, 0.5, 0.5);
  const SpectralTable t(c);
  EXPECT_NEAR(isingff::vacuum_overlap(t), 1.0, 1e-12);
}

TEST(Vacuum, MatchesDenseDeterminant) {
  for (int n = 1; n <= 8; ++n) {
    const Couplings c(n, 0.4, 0.7);
    const SpectralTable t(c);
    const double dense = std::abs(isingff::induced_rotation(t, 0).d.partialPivLu().determinant());
    EXPECT_NEAR(isingff::abs_det_d(t), dense, 1e-10 * dense) << n;
    EXPECT_NEAR(isingff::abs_det_d_elliptic(t), dense, 1e-10 * dense) << n;
    EXPECT_NEAR(isingff::vacuum_overlap(t), std::sqrt(dense), 1e-10) << n;
  }
}

TEST(Vacuum, ApproachesSpontaneousMagnetisation) {
  const Couplings c(64, 0.5, 0.5);
  const SpectralTable t(c);
  const double yang = std::pow(1.0 - 1.0 / (c.s() * c.s()), 0.125);
  EXPECT_LT(std::abs(isingff::vacuum_overlap(t) - yang), 1e-6);
}

FockState ap(std::vector<int> idx, int n) { return FockState(Sector::antiperiodic, std::move(idx), n); }
FockState pp(std::vector<int> idx, int n) { return FockState(Sector::periodic, std::move(idx), n); }

TEST(FormFactor, VacuumToVacuum) {
  const Couplings c(4, 0.7, 0.8);
  const SpectralTable t(c);
  const FormFactorSpec spec(0, ap({}, 4), pp({}, 4), 4);
  const double vac = isingff::vacuum_overlap(t);
  EXPECT_LT(std::abs(isingff::ff_closed(spec, t) - vac), 1e-12);
  EXPECT_LT(std::abs(isingff::ff_pfaffian(spec, t) - vac), 1e-12);
}

TEST(FormFactor, TwoBraParticlesFromDInvC) {
  const Couplings c(4, 0.4, 0.7);
  const SpectralTable t(c);
  const FormFactorSpec spec(0, ap({0, 1}, 4), pp({}, 4), 4);
  const auto m = isingff::two_particle_matrices(t, 0);
  const double expected = isingff::vacuum_overlap(t) * std::abs(m.d_inv_c(0, 1));
  EXPECT_NEAR(std::abs(isingff::ff_pfaffian(spec, t)), expected, 1e-12);
  EXPECT_NEAR(std::abs(isingff::ff_closed(spec, t)), expected, 1e-12);
}

TEST(FormFactor, ClosedMatchesPfaffianUpToFourParticles) {
  for (int n = 1; n <= 6; ++n) {
    const Couplings c(n, 0.3, 0.9);
    const SpectralTable t(c);
    for (int parity : {0, 1}) {
      for (const auto& bra : isingff::fock_states(Sector::antiperiodic, n, parity, 4)) {
        for (const auto& ket : isingff::fock_states(Sector::periodic, n, parity, 4)) {
          if (bra.size() + ket.size() > 4) {
            continue;
          }
          const FormFactorSpec spec(n / 2, bra, ket, n);
          const cplx closed = isingff::ff_closed(spec, t);
          const double scale = std::abs(closed);
          EXPECT_LT(std::abs(closed - isingff::ff_pfaffian(spec, t)), 1e-10 * scale)
              << bra.to_string() << " " << ket.to_string();
          EXPECT_LT(std::abs(closed - isingff::ff_pfaffian(spec, t, isingff::PairingSource::numeric)),
                    1e-10 * scale);
        }
      }
    }
  }
}

TEST(FormFactor, TranslationPhase) {
  const int n = 5;
  const Couplings c(n, 0.5, 0.5);
  const SpectralTable t(c);
  const FockState bra = ap({1, 4}, n);
  const FockState ket = pp({0, 3}, n);
  const cplx f0 = isingff::ff_closed(FormFactorSpec(0, bra, ket, n), t);
  for (int l = 1; l < n; ++l) {
    const cplx phase =
        isingff::exp_i_pi_rational(static_cast<long long>(l) * (ket.momentum_numerator() - bra.momentum_numerator()), n);
    EXPECT_LT(std::abs(isingff::ff_closed(FormFactorSpec(l, bra, ket, n), t) - phase * f0), 1e-12 * std::abs(f0));
  }
}

TEST(FockStates, EnumerationCountsAndOrder) {
  const auto even = isingff::fock_states(Sector::periodic, 6, 0);
  EXPECT_EQ(even.size(), 32u);
  EXPECT_EQ(even.front().size(), 0);
  const auto odd = isingff::fock_states(Sector::antiperiodic, 6, 1, 1);
  EXPECT_EQ(odd.size(), 6u);
  for (std::size_t i = 1; i < even.size(); ++i) {
    EXPECT_LE(even[i - 1].size(), even[i].size());
  }
}

TEST(FockStates, Validation) {
  EXPECT_THROW(ap({2, 1}, 4), isingff::InputError);
  EXPECT_THROW(ap({1, 1}, 4), isingff::InputError);
  EXPECT_THROW(pp({4}, 4), isingff::InputError);
  EXPECT_THROW(pp({-1}, 4), isingff::InputError);
  EXPECT_EQ(ap({0, 2}, 4).momentum_numerator(), 1 + 5);
  EXPECT_THROW(FormFactorSpec(0, ap({0}, 4), pp({}, 4), 4), isingff::InputError);
  EXPECT_THROW(FormFactorSpec(0, pp({}, 4), pp({}, 4), 4), isingff::InputError);
  EXPECT_THROW(FormFactorSpec(4, ap({}, 4), pp({}, 4), 4), isingff::InputError);
}

}  // namespace
