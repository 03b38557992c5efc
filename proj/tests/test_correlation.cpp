#include <gtest/gtest.h>

#include <cmath>

#include "isingff/correlation.hpp"
#include "isingff/errors.hpp"
#include "isingff/oracle.hpp"

namespace {

using isingff::Couplings;
using isingff::SpectralTable;
using isingff::two_point_correlation;

TEST(Correlation, CoincidentSpinsGiveOne) {
  const SpectralTable t(Couplings(5, 0.4, 0.7));
  for (int eps_x : {1, -1}) {
    for (int eps_y : {1, -1}) {
      const auto r = two_point_correlation(t, 3, 0, 0, eps_x, eps_y);
      EXPECT_NEAR(r.value, 1.0, 1e-12);
      EXPECT_FALSE(r.truncated);
      EXPECT_EQ(r.tail_bound, 0.0);
    }
  }
}

TEST(Correlation, AgreesWithOracleInBothParitySectors) {
  const Couplings c(4, 0.5, 0.5);
  const SpectralTable t(c);
  for (int eps_y : {1, -1}) {
    const isingff::oracle::SpinOperatorSet ops(c, eps_y);
    for (int eps_x : {1, -1}) {
      for (int dx = 0; dx <= 5; ++dx) {
        for (int dy = 0; dy < 4; ++dy) {
          const auto r = two_point_correlation(t, 5, dx, dy, eps_x, eps_y);
          EXPECT_NEAR(r.value, isingff::oracle::oracle_correlation(ops, 5, dx, dy, eps_x), 1e-10)
              << eps_x << " " << eps_y << " " << dx << " " << dy;
          EXPECT_LT(r.imag_residual, 1e-12);
        }
      }
    }
  }
}

TEST(Correlation, ReflectionInvariance) {
  const SpectralTable t(Couplings(6, 0.3, 0.9));
  for (int dy = 1; dy < 6; ++dy) {
    EXPECT_NEAR(two_point_correlation(t, 4, 1, dy, 1, 1).value, two_point_correlation(t, 4, 1, 6 - dy, 1, 1).value,
                1e-13);
  }
}

TEST(Correlation, TruncationStaysWithinTailBound) {
  const SpectralTable t(Couplings(8, 0.7, 0.8));
  const auto full = two_point_correlation(t, 6, 2, 3, 1, 1);
  for (int cutoff : {0, 2, 4, 6}) {
    const auto cut = two_point_correlation(t, 6, 2, 3, 1, 1, cutoff);
    EXPECT_TRUE(cut.truncated);
    EXPECT_LE(std::abs(cut.value - full.value), cut.tail_bound + 1e-14) << cutoff;
    EXPECT_LT(cut.states_used, full.states_used);
  }
  EXPECT_FALSE(two_point_correlation(t, 6, 2, 3, 1, 1, 8).truncated);
}

TEST(Correlation, LooseTruncationWarns) {
  const SpectralTable t(Couplings(8, 0.5, 0.5));
  const auto r = two_point_correlation(t, 6, 2, 1, 1, 1, 0);
  EXPECT_GT(r.tail_bound, isingff::kTruncationWarningBound);
  EXPECT_FALSE(r.warning.empty());
}

TEST(Correlation, WideRingsUseDefaultCutoff) {
  const SpectralTable t(Couplings(11, 0.3, 0.9));
  const auto r = two_point_correlation(t, 8, 1, 0, 1, 1);
  EXPECT_TRUE(r.truncated);
  EXPECT_GT(r.value, 0.0);
  EXPECT_LT(r.value, 1.0);
}

TEST(Correlation, RejectsBadInput) {
  const SpectralTable t(Couplings(4, 0.5, 0.5));
  EXPECT_THROW(two_point_correlation(t, 4, 5, 0, 1, 1), isingff::DomainError);
  EXPECT_THROW(two_point_correlation(t, 0, 0, 0, 1, 1), isingff::DomainError);
  EXPECT_THROW(two_point_correlation(t, 4, 1, 0, 0, 1), isingff::InputError);
  EXPECT_THROW(two_point_correlation(t, 4, 1, 0, 1, 1, -1), isingff::InputError);
}

TEST(Correlation, PairBudgetIsEnforcedBeforeEnumeration) {
  const SpectralTable t(Couplings(40, 0.5, 0.5));
  EXPECT_THROW(two_point_correlation(t, 4, 1, 0, 1, 1, 8), isingff::ResourceError);
}

TEST(Correlation, RepeatedEvaluationIsBitIdentical) {
  const SpectralTable t(Couplings(7, 0.4, 0.7));
  const double a = two_point_correlation(t, 5, 2, 3, -1, 1).value;
  const double b = two_point_correlation(t, 5, 2, 3, -1, 1).value;
  EXPECT_EQ(a, b);
}

}  // namespace
