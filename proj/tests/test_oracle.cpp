#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "isingff/correlation.hpp"
#include "isingff/errors.hpp"
#include "isingff/oracle.hpp"

namespace {

using isingff::Couplings;
using isingff::cplx;
using isingff::FockState;
using isingff::FormFactorSpec;
using isingff::Sector;
using isingff::SpectralTable;
namespace orc = isingff::oracle;

TEST(Operators, SingleSiteTransferMatrix) {
  const Couplings c(1, 0.4, 0.7);
  for (int eps_y : {1, -1}) {
    const orc::SpinOperatorSet ops(c, eps_y);
    const double g = std::exp(eps_y * 0.7);
    const auto& v = ops.transfer();
    ASSERT_EQ(v.rows(), 2);
    EXPECT_NEAR(v(0, 0), g * std::exp(0.4), 1e-14);
    EXPECT_NEAR(v(1, 1), g * std::exp(0.4), 1e-14);
    EXPECT_NEAR(v(0, 1), g * std::exp(-0.4), 1e-14);
    EXPECT_NEAR(v(1, 0), g * std::exp(-0.4), 1e-14);
  }
}

TEST(Operators, ExactInverseAndSymmetry) {
  const Couplings c(5, 0.5, 0.5);
  const orc::SpinOperatorSet ops(c, 1);
  const auto& v = ops.transfer();
  EXPECT_LT((v - v.transpose()).cwiseAbs().maxCoeff(), 1e-15 * v.cwiseAbs().maxCoeff());
  EXPECT_LT((v * ops.transfer_inverse() - orc::RMatrix::Identity(32, 32)).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_GT(Eigen::SelfAdjointEigenSolver<orc::RMatrix>(v).eigenvalues().minCoeff(), 0.0);
}

TEST(Operators, SymmetriesCommute) {
  for (int eps_y : {1, -1}) {
    const orc::SpinOperatorSet ops(Couplings(6, 0.3, 0.9), eps_y);
    const auto norms = orc::commutator_norms(ops);
    EXPECT_LT(norms.vu, 1e-12);
    EXPECT_LT(norms.vt, 1e-12);
    EXPECT_LT(norms.tu, 1e-12);
    EXPECT_LT(norms.spin_u_anticommutator, 1e-12);
  }
}

TEST(Operators, SizeAndSignLimits) {
  EXPECT_THROW(orc::SpinOperatorSet(Couplings(13, 0.5, 0.5), 1), isingff::ResourceError);
  EXPECT_THROW(orc::SpinOperatorSet(Couplings(3, 0.5, 0.5), 0), isingff::InputError);
}

// All 2^N eigenvalues of V against the predicted Fock values, without
// going through the labelling.
TEST(Spectrum, EigenvalueMultisetMatchesPrediction) {
  for (int n = 1; n <= 8; ++n) {
    const Couplings c(n, 0.7, 0.8);
    const SpectralTable t(c);
    for (int eps_y : {1, -1}) {
      const orc::SpinOperatorSet ops(c, eps_y);
      Eigen::VectorXd dense = Eigen::SelfAdjointEigenSolver<orc::RMatrix>(ops.transfer(), Eigen::EigenvaluesOnly)
                                  .eigenvalues()
                                  .array()
                                  .log();
      std::vector<double> observed(dense.begin(), dense.end());
      std::vector<double> predicted;
      for (Sector s : {Sector::antiperiodic, Sector::periodic}) {
        for (const auto& st : isingff::fock_states(s, n, eps_y == 1 ? 0 : 1)) {
          predicted.push_back(orc::predicted_log_eigenvalue(st, t));
        }
      }
      ASSERT_EQ(observed.size(), predicted.size());
      std::sort(observed.begin(), observed.end());
      std::sort(predicted.begin(), predicted.end());
      for (std::size_t i = 0; i < observed.size(); ++i) {
        EXPECT_NEAR(observed[i], predicted[i], 1e-9 * std::max(1.0, std::abs(predicted[i]))) << n;
      }
    }
  }
}

TEST(Spectrum, VacuumQuantumNumbers) {
  const Couplings c(4, 0.4, 0.7);
  const SpectralTable t(c);
  const orc::SpinOperatorSet ops(c, 1);
  const auto sp = orc::labeled_spectrum(ops, t);
  EXPECT_EQ(sp.states().size(), 16u);
  const auto& vac = sp.find(FockState(Sector::antiperiodic, {}, 4));
  EXPECT_EQ(vac.z2, 1);
  EXPECT_LT(std::abs(vac.translation - 1.0), 1e-10);
  for (const auto& s : sp.states()) {
    EXPECT_LE(s.log_eigenvalue, vac.log_eigenvalue + 1e-12);
  }
  EXPECT_EQ(sp.find(FockState(Sector::periodic, {}, 4)).z2, -1);
}

TEST(Spectrum, EvenSectorStateCount) {
  const Couplings c(5, 0.3, 0.9);
  const SpectralTable t(c);
  const auto sp = orc::labeled_spectrum(orc::SpinOperatorSet(c, 1), t);
  int a_count = 0;
  for (const auto& s : sp.states()) {
    EXPECT_EQ(s.momenta.size() % 2, 0u);
    a_count += s.sector == Sector::antiperiodic;
  }
  EXPECT_EQ(a_count, 16);
  EXPECT_EQ(sp.states().size(), 32u);
}

TEST(Spectrum, OddStatesAbsentFromEvenSector) {
  const Couplings c(3, 0.5, 0.5);
  const SpectralTable t(c);
  const auto sp = orc::labeled_spectrum(orc::SpinOperatorSet(c, 1), t);
  EXPECT_FALSE(sp.index_of(FockState(Sector::antiperiodic, {1}, 3)).has_value());
  EXPECT_THROW(sp.find(FockState(Sector::periodic, {0}, 3)), isingff::InputError);
}

TEST(MatrixElements, SingleSiteVacuumOverlap) {
  const Couplings c(1, 0.5, 0.5);
  const SpectralTable t(c);
  const orc::SpinOperatorSet ops(c, 1);
  const auto sp = orc::labeled_spectrum(ops, t);
  const FormFactorSpec spec(0, FockState(Sector::antiperiodic, {}, 1), FockState(Sector::periodic, {}, 1), 1);
  EXPECT_NEAR(orc::oracle_ff_modulus(ops, sp, spec), 1.0, 1e-12);
}

TEST(MatrixElements, SameSectorElementsVanish) {
  const Couplings c(4, 0.7, 0.8);
  const SpectralTable t(c);
  const orc::SpinOperatorSet ops(c, 1);
  const auto sp = orc::labeled_spectrum(ops, t);
  const std::size_t a0 = *sp.index_of(FockState(Sector::antiperiodic, {}, 4));
  const std::size_t a2 = *sp.index_of(FockState(Sector::antiperiodic, {0, 3}, 4));
  const std::size_t p0 = *sp.index_of(FockState(Sector::periodic, {}, 4));
  for (int l = 0; l < 4; ++l) {
    EXPECT_LT(std::abs(orc::oracle_matrix_element(ops, sp, a0, a2, l)), 1e-12);
    EXPECT_LT(std::abs(orc::oracle_matrix_element(ops, sp, a0, a0, l)), 1e-12);
    EXPECT_GT(std::abs(orc::oracle_matrix_element(ops, sp, a0, p0, l)), 0.5);
  }
}

TEST(MatrixElements, OddSectorAgreesWithClosedForm) {
  const Couplings c(4, 0.3, 0.9);
  const SpectralTable t(c);
  const orc::SpinOperatorSet ops(c, -1);
  const auto sp = orc::labeled_spectrum(ops, t);
  const FormFactorSpec spec(1, FockState(Sector::antiperiodic, {2}, 4), FockState(Sector::periodic, {1}, 4), 4);
  const double expected = std::abs(isingff::ff_closed(spec, t));
  EXPECT_NEAR(orc::oracle_ff_modulus(ops, sp, spec), expected, 1e-8 * expected);
}

TEST(Correlation, CoincidentSpinsGiveOne) {
  const orc::SpinOperatorSet ops(Couplings(4, 0.5, 0.5), 1);
  for (int eps_x : {1, -1}) {
    EXPECT_NEAR(orc::oracle_correlation(ops, 5, 0, 0, eps_x), 1.0, 1e-12);
  }
}

TEST(Correlation, ReflectionInvariance) {
  const orc::SpinOperatorSet ops(Couplings(5, 0.4, 0.7), 1);
  for (int dy = 1; dy < 5; ++dy) {
    EXPECT_NEAR(orc::oracle_correlation(ops, 6, 2, dy, 1), orc::oracle_correlation(ops, 6, 2, 5 - dy, 1), 1e-12);
  }
}

TEST(Correlation, ConvergesAsHeightGrows) {
  const Couplings c(4, 0.3, 0.9);
  const orc::SpinOperatorSet ops(c, 1);
  const double far = orc::oracle_correlation(ops, 64, 1, 1, 1);
  EXPECT_LT(std::abs(orc::oracle_correlation(ops, 48, 1, 1, 1) - far),
            std::abs(orc::oracle_correlation(ops, 8, 1, 1, 1) - far));
  const SpectralTable t(c);
  EXPECT_NEAR(isingff::two_point_correlation(t, 64, 1, 1, 1, 1).value, far, 1e-10);
}

TEST(Correlation, Limits) {
  const orc::SpinOperatorSet big(Couplings(11, 0.5, 0.5), 1);
  EXPECT_THROW(orc::oracle_correlation(big, 4, 1, 0, 1), isingff::ResourceError);
  const orc::SpinOperatorSet ops(Couplings(3, 0.5, 0.5), 1);
  EXPECT_THROW(orc::oracle_correlation(ops, 65, 1, 0, 1), isingff::ResourceError);
  EXPECT_THROW(orc::oracle_correlation(ops, 4, 5, 0, 1), isingff::InputError);
}

TEST(Trace, SpectralTraceMatchesDensePower) {
  const Couplings c(4, 0.7, 0.8);
  const SpectralTable t(c);
  for (int eps_y : {1, -1}) {
    const orc::SpinOperatorSet ops(c, eps_y);
    const orc::RMatrix v3 = ops.transfer() * ops.transfer() * ops.transfer();
    const orc::CMatrix u = ops.apply_u(orc::CMatrix::Identity(16, 16));
    for (int eps_x : {1, -1}) {
      const double dense = eps_x == 1 ? v3.trace() : (v3.cast<cplx>() * u).trace().real();
      const auto tr = isingff::spectral_trace(t, 3, eps_x, eps_y);
      EXPECT_NEAR(tr.sign * std::exp(tr.log_abs), dense, 1e-10 * std::abs(dense));
    }
  }
}

}  // namespace
