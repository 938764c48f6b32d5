#pragma once

// Voter welfare, persuasion rate and victory probabilities along the
// equilibrium path, and the regulator's choice of the cost intensity k.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <optional>
#include <utility>
#include <vector>

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

#include "newsgame/errors.hpp"
#include "newsgame/model.hpp"
#include "newsgame/policy.hpp"

namespace newsgame {

/// Upper end of every search over k.
inline constexpr double kDefaultKMax = 1e8;

struct WelfareReport {
  double k = 0.0;
  double welfare = 0.0;
  double persuasion_rate = 0.0;
  double incumbent_win_prob = 0.0;
  Interval payoff_set;  ///< [welfare, phi/4], closed
};

struct WelfareOptions {
  bool subtract_transfer = false;  ///< subtract xi (outlet's gain treated as an inefficient transfer)
};

/// Expected voter payoff when the challenger wins exactly below `threshold`.
inline double voter_payoff_given_threshold(const ModelParams& p, const PolicyPair& q,
                                           double threshold) {
  const double thr = std::clamp(threshold, -p.phi, p.phi);
  const double win_c = (thr + p.phi) / (2.0 * p.phi);
  const double dc = p.phi_v - q.q_c;
  const double di = p.phi_v - q.q_i;
  return win_c * (-p.gamma * dc * dc) + (1.0 - win_c) * (-p.gamma * di * di + 0.5 * (p.phi + thr));
}

/// Expected voter payoff at arbitrary proposals under sender-preferred reporting.
inline double expected_voter_payoff(const ModelParams& p, const PolicyPair& q) {
  return voter_payoff_given_threshold(p, q, challenger_value(p, q));
}

inline double complete_info_welfare(const ModelParams& p) { return 0.25 * p.phi; }

inline WelfareReport welfare(const ModelParams& p, WelfareOptions opt = {}) {
  const EquilibriumProfile eq = equilibrium_policies(p);
  const Thresholds t = thresholds(p, eq.q);
  WelfareReport r;
  r.k = p.k;
  r.welfare = voter_payoff_given_threshold(p, eq.q, t.tau_m);
  if (opt.subtract_transfer) r.welfare -= p.xi;
  r.persuasion_rate = (t.tau_m - t.tau_v) / (2.0 * p.phi);
  r.incumbent_win_prob = (p.phi - t.tau_m) / (2.0 * p.phi);
  r.payoff_set = {r.welfare, complete_info_welfare(p)};
  return r;
}

inline double persuasion_rate(const ModelParams& p) { return welfare(p).persuasion_rate; }
inline double incumbent_win_probability(const ModelParams& p) { return welfare(p).incumbent_win_prob; }

/// `count` points spaced evenly in log k over [lo, hi], endpoints included.
inline std::vector<double> log_grid(double lo, double hi, std::size_t count) {
  if (!(lo > 0.0 && hi >= lo) || count == 0) throw DomainError("invalid log grid");
  std::vector<double> g(count);
  if (count == 1) {
    g[0] = lo;
    return g;
  }
  const double a = std::log(lo);
  const double b = std::log(hi);
  for (std::size_t j = 0; j < count; ++j)
    g[j] = std::exp(a + (b - a) * static_cast<double>(j) / static_cast<double>(count - 1));
  g.front() = lo;
  g.back() = hi;
  return g;
}

// ---------------------------------------------------------------------------
// No-media benchmark

struct NoMediaComparison {
  double baseline = 0.0;               ///< welfare without an outlet
  double condition = 0.0;              ///< -gamma (phi_v - phi_m)^2 + phi/4
  std::optional<double> k_prime;       ///< W(k') = 0 when condition < 0
};

inline NoMediaComparison no_media_comparison(const ModelParams& p, double k_max = kDefaultKMax) {
  validate_primitives(p);
  NoMediaComparison out;
  const double d = p.bliss_gap();
  out.condition = -p.gamma * d * d + 0.25 * p.phi;
  if (!(out.condition < 0.0)) return out;

  const auto w = [&](double log_k) { return welfare(p.with_k(std::exp(log_k))).welfare; };
  const double lo = std::log(0.25 * k_bar(p));
  const double hi = std::log(k_max);
  if (!(w(hi) > 0.0))
    throw SearchError("no sign change of welfare on (k_bar/4, K_max]; K_max = " +
                      detail::fmt_double(k_max));
  const auto bracket = boost::math::tools::bisect(
      w, lo, hi, boost::math::tools::eps_tolerance<double>(std::numeric_limits<double>::digits));
  const double ka = std::exp(bracket.first);
  const double kb = std::exp(bracket.second);
  out.k_prime = std::abs(w(bracket.first)) <= std::abs(w(bracket.second)) ? ka : kb;
  return out;
}

// ---------------------------------------------------------------------------
// Regulation

struct RegulationResult {
  double k_star = 0.0;
  double iota_at = 0.0;
};

/// The incumbent is indifferent over (0, k_bar/4]; returns k_bar/4.
inline RegulationResult incumbent_regulation(const ModelParams& p, double k_max = kDefaultKMax,
                                             std::size_t grid_points = 400) {
  validate_primitives(p);
  const double kq = 0.25 * k_bar(p);
  for (double k : log_grid(kq, k_max, grid_points + 1)) {
    if (k <= kq) continue;
    const double iota = incumbent_win_probability(p.with_k(k));
    if (!(iota < 0.5))
      throw SearchError("incumbent win probability " + detail::fmt_double(iota) +
                        " not below 1/2 at k = " + detail::fmt_double(k));
  }
  return {kq, incumbent_win_probability(p.with_k(kq))};
}

namespace detail {

/// Brent refinement of f over log k between grid neighbours of index j.
template <class F>
std::pair<double, double> refine_log_min(F f, const std::vector<double>& grid, std::size_t j) {
  const double a = std::log(grid[j == 0 ? 0 : j - 1]);
  const double b = std::log(grid[std::min(j + 1, grid.size() - 1)]);
  const auto g = [&](double lk) { return f(std::exp(lk)); };
  const auto r = boost::math::tools::brent_find_minima(g, a, b, 40);
  const double k_ref = std::exp(r.first);
  if (r.second <= f(grid[j])) return {k_ref, r.second};
  return {grid[j], f(grid[j])};
}

}  // namespace detail

/// Minimizer of the incumbent's win probability over [k_bar/4, K_max].
inline RegulationResult challenger_regulation(const ModelParams& p, double k_max = kDefaultKMax,
                                              std::size_t grid_points = 2000) {
  validate_primitives(p);
  const double kb = k_bar(p);
  const std::vector<double> grid = log_grid(0.25 * kb, k_max, grid_points);
  const auto iota = [&](double k) { return incumbent_win_probability(p.with_k(k)); };
  std::size_t best = 0;
  double best_v = iota(grid[0]);
  for (std::size_t j = 1; j < grid.size(); ++j) {
    const double v = iota(grid[j]);
    if (v < best_v) {
      best_v = v;
      best = j;
    }
  }
  if (best + 1 == grid.size())
    throw SearchError("minimizer of iota pinned to K_max = " + detail::fmt_double(k_max));
  const auto [k_star, v] = detail::refine_log_min(iota, grid, best);
  if (!(k_star > kb))
    throw SearchError("minimizer of iota at k = " + detail::fmt_double(k_star) +
                      " does not exceed k_bar = " + detail::fmt_double(kb));
  return {k_star, v};
}

/// Electoral response to the regulator: nu(k) = y + x * normal_pdf(k; k_v, sigma).
struct NuExtensionParams {
  double y = 0.0;
  double x = 0.0;
  double k_v = 1.0;
  double sigma = 1.0;
};

inline double normal_pdf(double v, double mean, double sd) {
  const double z = (v - mean) / sd;
  return std::exp(-0.5 * z * z) / (std::sqrt(2.0 * std::numbers::pi) * sd);
}

inline double nu(const NuExtensionParams& n, double k) {
  return n.y + n.x * normal_pdf(k, n.k_v, n.sigma);
}

inline double iota_hat(const ModelParams& p, const NuExtensionParams& n, double k) {
  return incumbent_win_probability(p.with_k(k)) + nu(n, k);
}

inline void validate_nu(const NuExtensionParams& n) {
  detail::require_finite(n.y, "nu.y");
  detail::require_finite(n.x, "nu.x");
  detail::require_finite(n.k_v, "nu.k_v");
  detail::require_finite(n.sigma, "nu.sigma");
  if (!(n.x > 0.0)) throw DomainError("nu.x must be positive");
  if (!(n.k_v > 0.0)) throw DomainError("nu.k_v must be positive");
  if (!(n.sigma > 0.0)) throw DomainError("nu.sigma must be positive");
}

/// Global maximizer of iota_hat over [k_bar/400, K_max].
inline RegulationResult nu_extension_optimum(const ModelParams& p, const NuExtensionParams& n,
                                             double k_max = kDefaultKMax,
                                             std::size_t grid_points = 20000) {
  validate_primitives(p);
  validate_nu(n);
  const double kb = k_bar(p);
  std::vector<double> grid = log_grid(kb / 400.0, k_max, grid_points);
  grid.push_back(0.25 * kb);
  std::sort(grid.begin(), grid.end());
  const auto neg = [&](double k) { return -iota_hat(p, n, k); };
  std::size_t best = 0;
  double best_v = HUGE_VAL;
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double v = neg(grid[j]);
    if (!(v <= 0.0 && v >= -1.0))
      throw DomainError("iota_hat = " + detail::fmt_double(-v) + " outside [0, 1] at k = " +
                        detail::fmt_double(grid[j]));
    if (v < best_v) {
      best_v = v;
      best = j;
    }
  }
  const auto [k_star, v] = detail::refine_log_min(neg, grid, best);
  return {k_star, -v};
}

}  // namespace newsgame
