#include <gtest/gtest.h>

#include "isingff/errors.hpp"
#include "isingff/verification.hpp"

namespace {

using isingff::Couplings;
using isingff::Suite;

TEST(Verification, SuiteNamesRoundTrip) {
  for (Suite s : {Suite::elliptic, Suite::cauchy, Suite::rotation, Suite::formfactor, Suite::all}) {
    EXPECT_EQ(isingff::parse_suite(isingff::suite_name(s)), s);
  }
  EXPECT_THROW(isingff::parse_suite("modular"), isingff::InputError);
}

TEST(Verification, AllSuitesPass) {
  for (auto [kx, ky] : {std::pair{0.3, 0.9}, std::pair{0.5, 0.5}, std::pair{0.7, 0.8}}) {
    for (int n : {1, 4, 5}) {
      const auto results = isingff::verify_suite(Suite::all, Couplings(n, kx, ky), {1e-10, 7, 20});
      EXPECT_FALSE(results.empty());
      for (const auto& r : results) {
        EXPECT_TRUE(r.passed) << r.name << " residual " << r.max_residual << " at N=" << n;
        EXPECT_GT(r.samples, 0u);
      }
    }
  }
}

TEST(Verification, TightToleranceFails) {
  const auto results = isingff::verify_suite(Suite::elliptic, Couplings(3, 0.5, 0.5), {0.0, 7, 20});
  bool any_failed = false;
  for (const auto& r : results) {
    any_failed = any_failed || !r.passed;
  }
  EXPECT_TRUE(any_failed);
}

TEST(Verification, SeedDeterminesResiduals) {
  const Couplings c(4, 0.4, 0.7);
  const auto a = isingff::verify_suite(Suite::cauchy, c, {1e-10, 11, 10});
  const auto b = isingff::verify_suite(Suite::cauchy, c, {1e-10, 11, 10});
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].max_residual, b[i].max_residual);
  }
  EXPECT_THROW(isingff::verify_suite(Suite::elliptic, c, {1e-10, 11, 0}), isingff::InputError);
}

}  // namespace
