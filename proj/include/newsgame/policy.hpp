#pragma once

// Policy stage: the challenger's best response to the incumbent's proposal,
// the incumbent's optimum, and the closed-form equilibrium proposals.

#include <algorithm>
#include <cmath>
#include <vector>

#include "newsgame/communication.hpp"
#include "newsgame/errors.hpp"
#include "newsgame/model.hpp"

namespace newsgame {

enum class CostRegime { low, mid, high };

inline constexpr const char* to_string(CostRegime r) {
  switch (r) {
    case CostRegime::low: return "low";
    case CostRegime::mid: return "mid";
    case CostRegime::high: return "high";
  }
  return "?";
}

struct EquilibriumProfile {
  PolicyPair q;
  CostRegime regime = CostRegime::low;
  double k_bar = 0.0;
  double eta = 0.0;
  PoolingStructure pooling;
};

/// Quality threshold below which the challenger wins under the sender-preferred
/// communication equilibrium at q. This is the challenger's value in the
/// threshold normalization; higher is better for the challenger.
inline double challenger_value(const ModelParams& p, const PolicyPair& q) {
  const Thresholds t = thresholds(p, q);
  const double s = lie_reach(p);
  if (t.tau_v > t.tau_m) {
    const double r = std::min(t.tau_v + 0.5 * s, 2.0 * t.tau_v - t.tau_m);
    return std::max(r - s, t.tau_m);
  }
  if (t.tau_v < t.tau_m) {
    const double r = std::max(t.tau_v - 0.5 * s, 2.0 * t.tau_v - t.tau_m);
    return std::min(r + s, t.tau_m);
  }
  return t.tau_v;
}

inline double challenger_win_probability(const ModelParams& p, const PolicyPair& q) {
  const double thr = std::clamp(challenger_value(p, q), -p.phi, p.phi);
  return (thr + p.phi) / (2.0 * p.phi);
}

/// Best challenger proposal among q_c <= q_i.
inline double br_left(const ModelParams& p, double q_i) {
  const double e = eta(p);
  if (q_i <= p.phi_m) return q_i;
  if (q_i <= p.phi_m + e) return p.phi_m;
  if (q_i <= p.phi_v + e) return q_i - e;
  return p.phi_v;
}

/// Best challenger proposal among q_c >= q_i.
inline double br_right(const ModelParams& p, double q_i) {
  const double cutoff = p.phi_v - std::sqrt(lie_reach(p) / (2.0 * p.gamma));
  return q_i < cutoff ? p.phi_v : q_i;
}

/// Cutoffs of the challenger's best response.
struct BestResponseCutoffs {
  double q_bar_prime = 0.0;    ///< used when k >= k_bar
  double q_bar_second = 0.0;   ///< used when k <= k_bar
  double q_bar_third = 0.0;    ///< used when k <= k_bar
};

inline BestResponseCutoffs best_response_cutoffs(const ModelParams& p) {
  const double e = eta(p);
  const double a = std::pow(p.xi / (p.gamma * p.gamma * p.k), 0.25);
  return {p.phi_v + e - a, 0.5 * (p.phi_v + p.phi_m) - e, p.phi_m + e};
}

/// Challenger's best response to q_i in [phi_m, phi_v]. At a cutoff the
/// challenger is indifferent and picks the proposal closer to phi_m.
inline double best_response(const ModelParams& p, double q_i) {
  if (!(q_i >= p.phi_m && q_i <= p.phi_v))
    throw DomainError("incumbent proposal " + detail::fmt_double(q_i) + " outside [phi_m, phi_v]");
  const double e = eta(p);
  const BestResponseCutoffs c = best_response_cutoffs(p);
  if (p.k >= k_bar(p)) return q_i < c.q_bar_prime ? p.phi_v : q_i - e;
  if (q_i < c.q_bar_second) return p.phi_v;
  if (q_i <= c.q_bar_third) return p.phi_m;
  return q_i - e;
}

/// Incumbent's value when the challenger best-responds: minus the challenger's threshold.
inline double incumbent_value(const ModelParams& p, double q_i) {
  return -challenger_value(p, {q_i, best_response(p, q_i)});
}

inline CostRegime cost_regime(const ModelParams& p) {
  const double kb = k_bar(p);
  if (p.k <= 0.25 * kb) return CostRegime::low;
  if (p.k <= kb) return CostRegime::mid;
  return CostRegime::high;
}

inline EquilibriumProfile equilibrium_policies(const ModelParams& p) {
  EquilibriumProfile out;
  out.k_bar = k_bar(p);
  out.eta = eta(p);
  out.regime = cost_regime(p);
  switch (out.regime) {
    case CostRegime::low:
      out.q = {p.phi_m, p.phi_m};
      break;
    case CostRegime::mid:
      out.q = {0.5 * (p.phi_v + p.phi_m) - out.eta, p.phi_m};
      break;
    case CostRegime::high: {
      const double a = std::pow(p.xi / (p.gamma * p.gamma * p.k), 0.25);
      out.q = {p.phi_v + out.eta - a, p.phi_v - a};
      break;
    }
  }
  out.pooling = pooling_structure(p, out.q);
  return out;
}

/// Whether an equilibrium exists for the given state-space width.
inline bool existence_condition(const ModelParams& p) {
  const double d2 = p.bliss_gap() * p.bliss_gap();
  const double bound = std::min(p.gamma * d2 + 0.5 * lie_reach(p), 3.0 * p.gamma * d2);
  return p.phi >= bound;
}

namespace detail {

inline std::vector<double> policy_grid(const ModelParams& p, double step) {
  if (!(step > 0.0 && step <= 1.0)) throw DomainError("grid step must lie in (0, 1]");
  const auto n = static_cast<std::size_t>(std::ceil(1.0 / step - 1e-9));
  std::vector<double> g(n + 1);
  const double d = p.bliss_gap();
  for (std::size_t j = 0; j <= n; ++j)
    g[j] = j == n ? p.phi_v : p.phi_m + d * static_cast<double>(j) / static_cast<double>(n);
  return g;
}

inline double payoff_scale(const ModelParams& p) {
  return p.gamma * p.bliss_gap() * p.bliss_gap() + p.phi;
}

}  // namespace detail

/// Simultaneous play: is (phi_m, phi_m) a mutual best response on a policy grid
/// with spacing step * (phi_v - phi_m)?
inline bool simultaneous_convergence_check(const ModelParams& p, double step = 1e-3) {
  validate_params(p);
  const std::vector<double> grid = detail::policy_grid(p, step);
  const double tol = kIdentityTol * detail::payoff_scale(p);
  const double v0 = challenger_value(p, {p.phi_m, p.phi_m});
  for (double x : grid) {
    if (challenger_value(p, {p.phi_m, x}) > v0 + tol) return false;
    if (challenger_value(p, {x, p.phi_m}) < v0 - tol) return false;
  }
  return true;
}

/// Simultaneous play with k >= k_bar: true iff no grid pair is a mutual best response.
inline bool no_pure_equilibrium_check(const ModelParams& p, double step = 1e-3) {
  validate_params(p);
  if (p.k < k_bar(p))
    throw DomainError("no-pure-equilibrium check requires k >= k_bar (k = " +
                      detail::fmt_double(p.k) + ", k_bar = " + detail::fmt_double(k_bar(p)) + ")");
  const std::vector<double> grid = detail::policy_grid(p, step);
  const std::size_t n = grid.size();
  const double tol = kIdentityTol * detail::payoff_scale(p);
  std::vector<double> row_max(n, -HUGE_VAL);
  std::vector<double> col_min(n, HUGE_VAL);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      const double v = challenger_value(p, {grid[a], grid[b]});
      row_max[a] = std::max(row_max[a], v);
      col_min[b] = std::min(col_min[b], v);
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      const double v = challenger_value(p, {grid[a], grid[b]});
      if (v >= row_max[a] - tol && v <= col_min[b] + tol) return false;
    }
  }
  return true;
}

}  // namespace newsgame
