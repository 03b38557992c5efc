#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "isingff/spectral_curve.hpp"

namespace isingff {

// Above this width the full Fock sum is replaced by a particle-number cutoff.
inline constexpr int kFullEnumerationMaxSites = 10;
inline constexpr int kDefaultParticleCutoff = 4;

struct CorrelationResult {
  double value;
  // |Im| of the spectral sum relative to the denominator; zero in exact
  // arithmetic.
  double imag_residual;
  // Upper bound on |exact - value| from the omitted states; 0 when the sum
  // is complete.
  double tail_bound;
  bool truncated;
  std::size_t states_used;
  // Non-empty when tail_bound exceeds kTruncationWarningBound.
  std::string warning;
};

inline constexpr double kTruncationWarningBound = 1e-8;

// <s_{0,0} s_{dx,dy}> on an N x M torus, from the trace ratio
// Tr[s_0 V^dx T^dy s_0 T^-dy V^(M-dx) U^e] / Tr[V^M U^e], e = (1 - eps_x)/2,
// with eps_y selecting even (+1) or odd (-1) particle numbers. States are
// enumerated completely for N <= 10 unless a cutoff is supplied.
CorrelationResult two_point_correlation(const SpectralTable& t, int m_height, int dx, int dy,
                                        int eps_x, int eps_y,
                                        std::optional<int> particle_cutoff = std::nullopt);

// Tr[V^M U^e] restricted to the eps_y particle parity, as sign * exp(log_abs).
struct SpectralTrace {
  double log_abs;
  int sign;
};
SpectralTrace spectral_trace(const SpectralTable& t, int m_height, int eps_x, int eps_y);

}  // namespace isingff
