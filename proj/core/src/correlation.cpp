#include "isingff/correlation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "isingff/errors.hpp"
#include "isingff/form_factors.hpp"

namespace isingff {

namespace {

constexpr double kMaxPairCount = 2e8;

// Fixed-order pairwise summation; the result depends only on the term order.
cplx pairwise_sum(const cplx* first, std::size_t count) {
  if (count <= 8) {
    cplx acc{0.0, 0.0};
    for (std::size_t i = 0; i < count; ++i) {
      acc += first[i];
    }
    return acc;
  }
  const std::size_t half = count / 2;
  return pairwise_sum(first, half) + pairwise_sum(first + half, count - half);
}

cplx pairwise_sum(const std::vector<cplx>& terms) { return pairwise_sum(terms.data(), terms.size()); }

struct StateData {
  FockState state;
  double log_weight;  // ln(Lambda / Lambda_max)
  long long momentum;
  double z2;
};

// Elementary symmetric polynomials e_0..e_N of xs.
std::vector<double> elementary_symmetric(const std::vector<double>& xs) {
  std::vector<double> e(xs.size() + 1, 0.0);
  e[0] = 1.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t k = i + 1; k >= 1; --k) {
      e[k] += xs[i] * e[k - 1];
    }
  }
  return e;
}

struct SectorWeights {
  double log_vacuum;  // ln(Lambda_vac / Lambda_max)
  std::vector<double> gammas;
};

// Sum of (Lambda/Lambda_max)^power over states with more than `cutoff`
// particles of the given parity.
double omitted_weight(const SectorWeights& w, int parity, int cutoff, int power) {
  std::vector<double> xs;
  xs.reserve(w.gammas.size());
  for (double g : w.gammas) {
    xs.push_back(std::exp(-power * g));
  }
  const auto e = elementary_symmetric(xs);
  double acc = 0.0;
  for (std::size_t k = static_cast<std::size_t>(cutoff) + 1; k < e.size(); ++k) {
    if (static_cast<int>(k % 2) == parity) {
      acc += e[k];
    }
  }
  return std::exp(power * w.log_vacuum) * acc;
}

// Largest Lambda/Lambda_max among omitted states, 0 when nothing is omitted.
double omitted_max(const SectorWeights& w, int parity, int cutoff) {
  int k = cutoff + 1;
  if (k % 2 != parity) {
    ++k;
  }
  if (k > static_cast<int>(w.gammas.size())) {
    return 0.0;
  }
  std::vector<double> sorted = w.gammas;
  std::sort(sorted.begin(), sorted.end());
  double acc = 0.0;
  for (int i = 0; i < k; ++i) {
    acc += sorted[static_cast<std::size_t>(i)];
  }
  return std::exp(w.log_vacuum - acc);
}

// Sum over all states of one parity of (Lambda/Lambda_max)^M.
double sector_trace(const SectorWeights& w, int parity, int m_height) {
  double plus = 1.0;
  double minus = 1.0;
  for (double g : w.gammas) {
    const double x = std::exp(-m_height * g);
    plus *= 1.0 + x;
    minus *= 1.0 - x;
  }
  const double sum = parity == 0 ? 0.5 * (plus + minus) : 0.5 * (plus - minus);
  return std::exp(m_height * w.log_vacuum) * sum;
}

struct Weights {
  SectorWeights a;
  SectorWeights p;
  double log_max;  // ln Lambda_max without the common (N/2) ln(2 sinh 2Kx)
};

Weights sector_weights(const SpectralTable& t) {
  Weights w;
  for (const auto& pt : t.points(Sector::antiperiodic)) {
    w.a.gammas.push_back(pt.gamma);
  }
  for (const auto& pt : t.points(Sector::periodic)) {
    w.p.gammas.push_back(pt.gamma);
  }
  const double la = 0.5 * t.gamma_sum(Sector::antiperiodic);
  const double lp = 0.5 * t.gamma_sum(Sector::periodic);
  w.log_max = std::max(la, lp);
  w.a.log_vacuum = la - w.log_max;
  w.p.log_vacuum = lp - w.log_max;
  return w;
}

void validate_signs(int eps_x, int eps_y) {
  if ((eps_x != 1 && eps_x != -1) || (eps_y != 1 && eps_y != -1)) {
    throw InputError("eps_x and eps_y must be +1 or -1");
  }
}

// Normalised Tr[V^M U^e]; U is +(-1)^k on antiperiodic and -(-1)^k on
// periodic states.
double normalised_trace(const Weights& w, int m_height, int eps_x, int parity) {
  const double u_a = parity == 0 ? 1.0 : -1.0;
  const double u_p = -u_a;
  const bool with_u = eps_x == -1;
  return sector_trace(w.a, parity, m_height) * (with_u ? u_a : 1.0) +
         sector_trace(w.p, parity, m_height) * (with_u ? u_p : 1.0);
}

std::vector<StateData> state_data(const SpectralTable& t, Sector s, const SectorWeights& w,
                                  int parity, int cutoff) {
  std::vector<StateData> out;
  for (auto& st : fock_states(s, t.n(), parity, cutoff)) {
    double lw = w.log_vacuum;
    for (int i : st.indices()) {
      lw -= t.point(s, i).gamma;
    }
    const double sign = st.size() % 2 == 0 ? 1.0 : -1.0;
    const double z2 = (s == Sector::antiperiodic ? 1.0 : -1.0) * sign;
    const long long mom = st.momentum_numerator();
    out.push_back({std::move(st), lw, mom, z2});
  }
  return out;
}

double state_count(int n, int parity, int cutoff) {
  double total = 0.0;
  double binom = 1.0;  // C(n, k)
  for (int k = 0; k <= std::min(n, cutoff); ++k) {
    if (k % 2 == parity) {
      total += binom;
    }
    binom = binom * (n - k) / (k + 1);
  }
  return total;
}

}  // namespace

SpectralTrace spectral_trace(const SpectralTable& t, int m_height, int eps_x, int eps_y) {
  validate_signs(eps_x, eps_y);
  if (m_height < 1) {
    throw DomainError("M must be at least 1");
  }
  const Weights w = sector_weights(t);
  const double value = normalised_trace(w, m_height, eps_x, eps_y == 1 ? 0 : 1);
  const auto& c = t.couplings();
  const double log_common = 0.5 * c.n() * std::log(2.0 * c.sinh2kx()) + w.log_max;
  if (value == 0.0) {
    return {-INFINITY, 0};
  }
  return {m_height * log_common + std::log(std::abs(value)), value > 0.0 ? 1 : -1};
}

CorrelationResult two_point_correlation(const SpectralTable& t, int m_height, int dx, int dy,
                                        int eps_x, int eps_y, std::optional<int> particle_cutoff) {
  validate_signs(eps_x, eps_y);
  if (m_height < 1) {
    throw DomainError("M must be at least 1");
  }
  if (dx < 0 || dx > m_height) {
    throw DomainError("dx must satisfy 0 <= dx <= M");
  }
  const int n = t.n();
  const int parity = eps_y == 1 ? 0 : 1;
  int cutoff = -1;
  if (particle_cutoff) {
    if (*particle_cutoff < 0) {
      throw InputError("particle cutoff must be non-negative");
    }
    cutoff = *particle_cutoff;
  } else if (n > kFullEnumerationMaxSites) {
    cutoff = kDefaultParticleCutoff;
  }
  const bool truncated = cutoff >= 0 && cutoff < n;
  const int effective_cutoff = truncated ? cutoff : n;

  const double states_per_sector = state_count(n, parity, effective_cutoff);
  if (states_per_sector * states_per_sector > kMaxPairCount) {
    throw ResourceError("correlation sum exceeds the pair budget; lower the particle cutoff");
  }
  const Weights w = sector_weights(t);
  const auto a_states = state_data(t, Sector::antiperiodic, w.a, parity, effective_cutoff);
  const auto p_states = state_data(t, Sector::periodic, w.p, parity, effective_cutoff);

  const bool with_u = eps_x == -1;
  const int lower = m_height - dx;
  std::vector<cplx> row_sums;
  row_sums.reserve(a_states.size());
  std::vector<double> kept_mass;
  kept_mass.reserve(a_states.size());
  std::vector<cplx> terms(p_states.size());
  std::vector<cplx> masses(p_states.size());
  for (const auto& a : a_states) {
    for (std::size_t j = 0; j < p_states.size(); ++j) {
      const auto& b = p_states[j];
      const FormFactorSpec spec(0, a.state, b.state, n);
      const double f2 = std::norm(ff_closed(spec, t));
      const cplx phase = exp_i_pi_rational(-static_cast<long long>(dy) * (b.momentum - a.momentum), n);
      const cplx forward = std::exp(dx * b.log_weight + lower * a.log_weight) * phase *
                           (with_u ? a.z2 : 1.0);
      const cplx backward = std::exp(dx * a.log_weight + lower * b.log_weight) * std::conj(phase) *
                            (with_u ? b.z2 : 1.0);
      terms[j] = f2 * (forward + backward);
      masses[j] = f2;
    }
    row_sums.push_back(pairwise_sum(terms));
    kept_mass.push_back(pairwise_sum(masses).real());
  }
  const cplx numerator = pairwise_sum(row_sums);
  const double denominator = normalised_trace(w, m_height, eps_x, parity);
  if (denominator == 0.0) {
    throw DomainError("partition function vanishes for this boundary condition");
  }

  CorrelationResult out{};
  out.value = numerator.real() / denominator;
  out.imag_residual = std::abs(numerator.imag() / denominator);
  out.truncated = truncated;
  out.states_used = a_states.size() + p_states.size();
  out.tail_bound = 0.0;
  if (truncated) {
    // Omitted pairs have an omitted antiperiodic state (bounded through the
    // sum rule over all periodic states) or a kept antiperiodic state with an
    // omitted periodic partner (bounded by the missing mass of its row).
    double bound = omitted_weight(w.a, parity, cutoff, lower) + omitted_weight(w.a, parity, cutoff, dx);
    const double rho = omitted_max(w.p, parity, cutoff);
    for (std::size_t i = 0; i < a_states.size(); ++i) {
      const double missing = std::max(0.0, 1.0 - kept_mass[i]);
      const double lw = a_states[i].log_weight;
      bound += missing * (std::pow(rho, dx) * std::exp(lower * lw) +
                          std::exp(dx * lw) * std::pow(rho, lower));
    }
    out.tail_bound = bound / std::abs(denominator);
    if (out.tail_bound > kTruncationWarningBound) {
      std::ostringstream os;
      os << "particle cutoff " << cutoff << " leaves a tail bound of " << out.tail_bound;
      out.warning = os.str();
    }
  }
  return out;
}

}  // namespace isingff
