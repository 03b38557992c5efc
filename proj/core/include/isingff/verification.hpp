#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "isingff/spectral_curve.hpp"

namespace isingff {

struct CheckResult {
  std::string name;
  double max_residual;
  double tolerance;
  std::size_t samples;
  bool passed;
};

enum class Suite { elliptic, cauchy, rotation, formfactor, all };

// "elliptic", "cauchy", "rotation", "formfactor" or "all"; InputError otherwise.
Suite parse_suite(std::string_view name);
const char* suite_name(Suite s);

struct VerifyOptions {
  double tolerance = 1e-10;
  std::uint64_t seed = 20240601;
  // Random points per identity in the elliptic suite and random
  // configurations per size in the cauchy suite.
  int samples = 100;
};

// Runs the identity checks of one suite. Residuals are relative,
// |lhs - rhs| / max(1, |rhs|) for scalars and the largest entry difference
// over the largest reference entry for matrices.
std::vector<CheckResult> verify_suite(Suite suite, const Couplings& c, const VerifyOptions& opts = {});

}  // namespace isingff
