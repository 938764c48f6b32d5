#pragma once

// Brute-force checks of the closed forms: grid best responses, quadrature
// welfare and no-deviation scans for every player.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/math/tools/minima.hpp>

#include "newsgame/communication.hpp"
#include "newsgame/errors.hpp"
#include "newsgame/model.hpp"
#include "newsgame/policy.hpp"

namespace newsgame {

struct CheckResult {
  std::string name;
  bool passed = false;
  double max_violation = 0.0;
  std::string location;
};

struct VerificationReport {
  std::vector<CheckResult> checks;
  double grid_step = 0.0;
  double tolerance = 0.0;

  bool all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
  }
  const CheckResult* find(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }
};

struct GridBestResponse {
  double q_c = 0.0;
  double value = 0.0;
};

namespace detail {

/// Challenger threshold read off the pooling interval.
inline double pooled_threshold(const ModelParams& p, const PolicyPair& q) {
  const PoolingStructure ps = pooling_structure(p, q);
  switch (ps.case_tag) {
    case PoolingCase::voter_above: return ps.pool_lo;
    case PoolingCase::voter_below: return ps.pool_hi;
    case PoolingCase::aligned: break;
  }
  return thresholds(p, q).tau_v;
}

}  // namespace detail

/// Challenger's best response found on a grid over [phi_m, phi_v] with spacing
/// step * (phi_v - phi_m). Every discrete local maximum is polished with a
/// bounded Brent search; ties go to the proposal closer to phi_m.
inline GridBestResponse grid_best_response(const ModelParams& p, double q_i, double step = 1e-3) {
  const std::vector<double> grid = detail::policy_grid(p, step);
  const std::size_t n = grid.size();
  const auto value = [&](double q_c) { return detail::pooled_threshold(p, {q_i, q_c}); };
  std::vector<double> v(n);
  for (std::size_t j = 0; j < n; ++j) v[j] = value(grid[j]);

  const double tie = 1e-9 * detail::payoff_scale(p);
  GridBestResponse best{grid[0], v[0]};
  const auto consider = [&](double q_c, double val) {
    if (val > best.value + tie || (val >= best.value - tie && q_c < best.q_c)) best = {q_c, val};
  };
  for (std::size_t j = 0; j < n; ++j) {
    const bool left_ok = j == 0 || v[j] >= v[j - 1];
    const bool right_ok = j + 1 == n || v[j] >= v[j + 1];
    if (!(left_ok && right_ok)) continue;
    consider(grid[j], v[j]);
    const double a = grid[j == 0 ? 0 : j - 1];
    const double b = grid[j + 1 == n ? j : j + 1];
    if (a < b) {
      const auto r = boost::math::tools::brent_find_minima(
          [&](double x) { return -value(x); }, a, b, 40);
      consider(r.first, -r.second);
    }
  }
  return best;
}

/// Midpoint-rule voter welfare at proposals q, sender-preferred or generic
/// reporting.
inline double quadrature_welfare(const ModelParams& p, const PolicyPair& q, std::size_t n,
                                 std::optional<double> lambda = std::nullopt) {
  if (n < 1000) throw DomainError("quadrature needs at least 1000 nodes");
  const CommunicationEquilibrium eq = lambda ? CommunicationEquilibrium(p, q, *lambda)
                                             : CommunicationEquilibrium(p, q);
  const double h = 2.0 * p.phi / static_cast<double>(n);
  double sum = 0.0;
  double comp = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double theta = -p.phi + (static_cast<double>(j) + 0.5) * h;
    const double u = voter_utility(p, eq.ballot(eq.report(theta)), theta, q);
    const double t = sum + u;
    comp += std::abs(sum) >= std::abs(u) ? (sum - t) + u : (u - t) + sum;
    sum = t;
  }
  return (sum + comp) / static_cast<double>(n);
}

struct VerifyOptions {
  double step = 1e-3;
  double tol = 1e-3;
  std::size_t theta_points = 801;
  std::size_t report_points = 2001;
  std::size_t br_points = 101;
  std::optional<PolicyPair> profile;  ///< checked instead of the closed-form equilibrium
};

namespace detail {

inline std::string at(const char* a, double x) { return std::string(a) + "=" + fmt_double(x); }

inline std::string at(const char* a, double x, const char* b, double y) {
  return at(a, x) + " " + at(b, y);
}

inline CheckResult finish(std::string name, double worst, std::string where, double tol) {
  return {std::move(name), worst <= tol, worst, std::move(where)};
}

}  // namespace detail

/// Runs every no-deviation and consistency check at p.k. Failures are reported,
/// never thrown.
inline VerificationReport verify_equilibrium(const ModelParams& p, const VerifyOptions& opt = {}) {
  validate_params(p);
  VerificationReport rep;
  rep.grid_step = opt.step;
  rep.tolerance = opt.tol;
  const PolicyPair q = opt.profile ? *opt.profile : equilibrium_policies(p).q;
  const double scale = detail::payoff_scale(p);
  const double s = lie_reach(p);
  const CommunicationEquilibrium eq(p, q);

  {  // outlet
    double worst = -HUGE_VAL;
    std::string where;
    std::vector<double> reports;
    reports.reserve(opt.report_points + 1);
    const double r_lo = -p.phi - s;
    const double r_hi = p.phi + s;
    for (std::size_t j = 0; j < opt.report_points; ++j)
      reports.push_back(r_lo + (r_hi - r_lo) * static_cast<double>(j) /
                                   static_cast<double>(opt.report_points - 1));
    reports.push_back(eq.pooled_report());
    for (std::size_t a = 0; a < opt.theta_points; ++a) {
      const double theta =
          -p.phi + 2.0 * p.phi * static_cast<double>(a) / static_cast<double>(opt.theta_points - 1);
      const double r0 = eq.report(theta);
      const double u0 = outlet_utility(p, r0, eq.ballot(r0), theta, q);
      for (double r : reports) {
        const double gain = (outlet_utility(p, r, eq.ballot(r), theta, q) - u0) / p.xi;
        if (gain > worst) {
          worst = gain;
          where = detail::at("theta", theta, "r", r);
        }
      }
    }
    rep.checks.push_back(detail::finish("outlet_no_deviation", worst, where, opt.tol));
  }

  const std::vector<double> grid = detail::policy_grid(p, opt.step);

  {  // challenger
    const double v0 = challenger_value(p, q);
    double worst = -HUGE_VAL;
    std::string where;
    for (double x : grid) {
      const double gain = (challenger_value(p, {q.q_i, x}) - v0) / scale;
      if (gain > worst) {
        worst = gain;
        where = detail::at("q_c", x);
      }
    }
    rep.checks.push_back(detail::finish("challenger_no_deviation", worst, where, opt.tol));
  }

  {  // incumbent, anticipating the challenger's best response
    double worst = -HUGE_VAL;
    std::string where;
    const bool inside = q.q_i >= p.phi_m && q.q_i <= p.phi_v;
    if (!inside) {
      worst = HUGE_VAL;
      where = detail::at("q_i", q.q_i) + " outside [phi_m, phi_v]";
    } else {
      const double v0 = incumbent_value(p, q.q_i);
      for (double x : grid) {
        const double gain = (incumbent_value(p, x) - v0) / scale;
        if (gain > worst) {
          worst = gain;
          where = detail::at("q_i", x);
        }
      }
    }
    rep.checks.push_back(detail::finish("incumbent_no_deviation", worst, where, opt.tol));
  }

  {  // beliefs after the pooled report
    double worst = 0.0;
    std::string where = "no pooling";
    if (eq.pools()) {
      worst = std::abs(eq.pool().midpoint() - eq.thresholds().tau_v) / scale;
      where = detail::at("pool_lo", eq.pool().lo, "pool_hi", eq.pool().hi);
    }
    rep.checks.push_back(detail::finish("belief_consistency", worst, where, opt.tol));
  }

  {  // closed-form vs grid best response
    double worst = -HUGE_VAL;
    std::string where;
    const std::size_t m = std::max<std::size_t>(opt.br_points, 2);
    const double d = p.bliss_gap();
    for (std::size_t j = 0; j < m; ++j) {
      const double q_i = j + 1 == m ? p.phi_v
                                    : p.phi_m + d * static_cast<double>(j) / static_cast<double>(m - 1);
      const GridBestResponse g = grid_best_response(p, q_i, opt.step);
      const double b = best_response(p, q_i);
      // Indifference points admit several maximizers.
      const bool tied = challenger_value(p, {q_i, b}) >= g.value - 1e-9 * scale;
      const double excess = tied ? 0.0 : std::max(0.0, std::abs(g.q_c - b) / d - opt.step);
      if (excess > worst) {
        worst = excess;
        where = detail::at("q_i", q_i);
      }
    }
    rep.checks.push_back(detail::finish("best_response_agreement", worst, where, opt.tol));
  }
  return rep;
}

}  // namespace newsgame
