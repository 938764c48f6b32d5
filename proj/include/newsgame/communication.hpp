#pragma once

// Equilibrium of the communication subgame for fixed proposals: the outlet
// pools states around the voter's threshold into a single report, and reports
// truthfully elsewhere.

#include <algorithm>
#include <cmath>

#include "newsgame/errors.hpp"
#include "newsgame/model.hpp"

namespace newsgame {

enum class PoolingCase {
  voter_below,  ///< tau_v < tau_m (challenger proposes the lower policy)
  voter_above,  ///< tau_v > tau_m (challenger proposes the higher policy)
  aligned,      ///< tau_v == tau_m, identical proposals
};

inline constexpr const char* to_string(PoolingCase c) {
  switch (c) {
    case PoolingCase::voter_below: return "voter-below";
    case PoolingCase::voter_above: return "voter-above";
    case PoolingCase::aligned: return "aligned";
  }
  return "?";
}

inline PoolingCase pooling_case(const Thresholds& t) {
  if (t.tau_v < t.tau_m) return PoolingCase::voter_below;
  if (t.tau_v > t.tau_m) return PoolingCase::voter_above;
  return PoolingCase::aligned;
}

/// Lowest (l) and highest (h) misreporting types for a report r: the states at
/// which delivering r costs exactly xi, clamped at tau_m. The caller picks the
/// bound that matches its case.
struct MisreportingBounds {
  double lowest = 0.0;
  double highest = 0.0;
};

inline MisreportingBounds misreporting_bounds(const ModelParams& p, const PolicyPair& q, double r) {
  const double tau_m = thresholds(p, q).tau_m;
  const double s = lie_reach(p);
  return {std::max(r - s, tau_m), std::min(r + s, tau_m)};
}

/// Pooling report r* and the open interval of states that deliver it.
struct PoolingStructure {
  double r_star = 0.0;
  double pool_lo = 0.0;
  double pool_hi = 0.0;
  PoolingCase case_tag = PoolingCase::aligned;

  Interval interval() const { return {pool_lo, pool_hi}; }
};

inline PoolingStructure pooling_structure(const ModelParams& p, const PolicyPair& q) {
  const Thresholds t = thresholds(p, q);
  const double s = lie_reach(p);
  switch (pooling_case(t)) {
    case PoolingCase::voter_below: {
      const double r = std::max(t.tau_v - 0.5 * s, 2.0 * t.tau_v - t.tau_m);
      return {r, r, std::min(r + s, t.tau_m), PoolingCase::voter_below};
    }
    case PoolingCase::voter_above: {
      const double r = std::min(t.tau_v + 0.5 * s, 2.0 * t.tau_v - t.tau_m);
      return {r, std::max(r - s, t.tau_m), r, PoolingCase::voter_above};
    }
    case PoolingCase::aligned: break;
  }
  return {t.tau_v, t.tau_v, t.tau_v, PoolingCase::aligned};
}

/// One member of the family of intuitive equilibria, indexed by the voter's
/// expectation `lambda` after the pooled report.
///
/// When tau_m <= tau_v, lambda ranges over [tau_v, tau_v + sqrt(xi/k)/2] and
/// states in (l(r_hat), r_hat) pool at r_hat = min{lambda + sqrt(xi/k)/2,
/// 2 lambda - tau_m}. The opposite orientation is the reflection theta -> -theta
/// with the candidates swapped: lambda ranges over [tau_v - sqrt(xi/k)/2, tau_v]
/// and states in (r_hat, h(r_hat)) pool at r_hat = max{lambda - sqrt(xi/k)/2,
/// 2 lambda - tau_m}. At the extreme lambda (no persuasion at all) the boundary
/// type joins the pool.
struct GenericEquilibrium {
  double lambda = 0.0;
  double r_hat = 0.0;
  double pool_lo = 0.0;
  double pool_hi = 0.0;
  bool closed_lo = false;
  bool closed_hi = false;
  bool pooled_elects_incumbent = true;
};

/// Closed interval of admissible lambda values for proposals q.
inline Interval lambda_range(const ModelParams& p, const PolicyPair& q) {
  const Thresholds t = thresholds(p, q);
  const double half = 0.5 * lie_reach(p);
  if (t.tau_m <= t.tau_v) return {t.tau_v, t.tau_v + half};
  return {t.tau_v - half, t.tau_v};
}

inline GenericEquilibrium generic_equilibrium(const ModelParams& p, const PolicyPair& q,
                                              double lambda) {
  const Thresholds t = thresholds(p, q);
  const Interval range = lambda_range(p, q);
  if (!(lambda >= range.lo && lambda <= range.hi))
    throw DomainError("lambda " + detail::fmt_double(lambda) + " outside admissible range [" +
                      detail::fmt_double(range.lo) + ", " + detail::fmt_double(range.hi) + "]");
  const double s = lie_reach(p);
  GenericEquilibrium g;
  g.lambda = lambda;
  if (t.tau_m <= t.tau_v) {
    g.r_hat = std::min(lambda + 0.5 * s, 2.0 * lambda - t.tau_m);
    g.pool_lo = std::max(g.r_hat - s, t.tau_m);
    g.pool_hi = g.r_hat;
    g.closed_lo = lambda == range.hi;
    g.pooled_elects_incumbent = true;
  } else {
    g.r_hat = std::max(lambda - 0.5 * s, 2.0 * lambda - t.tau_m);
    g.pool_lo = g.r_hat;
    g.pool_hi = std::min(g.r_hat + s, t.tau_m);
    g.closed_hi = lambda == range.lo;
    g.pooled_elects_incumbent = false;
  }
  return g;
}

/// Record of one play of the communication subgame.
struct ReportingOutcome {
  double theta = 0.0;
  double report = 0.0;
  Candidate ballot = Candidate::challenger;
  bool misreported = false;
  bool persuaded = false;
  double outlet_cost = 0.0;
};

/// Reporting rule and ballot of one communication equilibrium, precomputed for
/// fixed (params, proposals) so that repeated plays are cheap.
///
/// Ballot convention: the pooled report elects the candidate the outlet endorses
/// over the pool (voter indifference goes to the outlet). Reports inside the
/// pool other than the pooled one are off path and elect the other candidate,
/// so no pooled state gains by leaving the pool. Every remaining report is read
/// literally.
class CommunicationEquilibrium {
 public:
  /// Sender-preferred equilibrium.
  CommunicationEquilibrium(const ModelParams& p, const PolicyPair& q)
      : p_(p), q_(q), t_(newsgame::thresholds(p, q)) {
    const PoolingStructure ps = pooling_structure(p, q);
    r_hat_ = ps.r_star;
    lo_ = ps.pool_lo;
    hi_ = ps.pool_hi;
    pools_ = ps.case_tag != PoolingCase::aligned;
    elects_incumbent_ = ps.case_tag == PoolingCase::voter_above;
  }

  /// Generic equilibrium with voter expectation `lambda` after the pooled report.
  CommunicationEquilibrium(const ModelParams& p, const PolicyPair& q, double lambda)
      : p_(p), q_(q), t_(newsgame::thresholds(p, q)) {
    const GenericEquilibrium g = generic_equilibrium(p, q, lambda);
    r_hat_ = g.r_hat;
    lo_ = g.pool_lo;
    hi_ = g.pool_hi;
    closed_lo_ = g.closed_lo;
    closed_hi_ = g.closed_hi;
    pools_ = lo_ < hi_;
    elects_incumbent_ = g.pooled_elects_incumbent;
  }

  const ModelParams& params() const { return p_; }
  const PolicyPair& proposals() const { return q_; }
  const Thresholds& thresholds() const { return t_; }
  bool pools() const { return pools_; }
  double pooled_report() const { return r_hat_; }
  Interval pool() const { return {lo_, hi_}; }

  bool in_pool(double theta) const {
    if (!pools_) return false;
    const bool above_lo = lo_ < theta || (closed_lo_ && theta == lo_);
    const bool below_hi = theta < hi_ || (closed_hi_ && theta == hi_);
    return above_lo && below_hi;
  }

  double report(double theta) const { return in_pool(theta) ? r_hat_ : theta; }

  Candidate ballot(double r) const {
    if (!pools_) return r > t_.tau_v ? Candidate::incumbent : Candidate::challenger;
    if (elects_incumbent_) return r >= r_hat_ ? Candidate::incumbent : Candidate::challenger;
    return r > r_hat_ ? Candidate::incumbent : Candidate::challenger;
  }

  Candidate endorsed(double theta) const {
    return theta > t_.tau_m ? Candidate::incumbent : Candidate::challenger;
  }

  ReportingOutcome classify(double theta) const {
    ReportingOutcome out;
    out.theta = theta;
    out.report = report(theta);
    out.ballot = ballot(out.report);
    out.misreported = out.report != theta;
    const double lo = std::min(t_.tau_v, t_.tau_m);
    const double hi = std::max(t_.tau_v, t_.tau_m);
    out.persuaded = lo < theta && theta < hi && out.ballot == endorsed(theta);
    const double d = out.report - theta;
    out.outlet_cost = p_.k * d * d;
    return out;
  }

 private:
  ModelParams p_;
  PolicyPair q_;
  Thresholds t_;
  double r_hat_ = 0.0;
  double lo_ = 0.0;
  double hi_ = 0.0;
  bool closed_lo_ = false;
  bool closed_hi_ = false;
  bool pools_ = false;
  bool elects_incumbent_ = false;
};

namespace detail {

inline void require_state(const ModelParams& p, double theta) {
  if (!(theta >= -p.phi && theta <= p.phi))
    throw DomainError("state " + fmt_double(theta) + " outside [-phi, phi] = [" +
                      fmt_double(-p.phi) + ", " + fmt_double(p.phi) + "]");
}

}  // namespace detail

inline double reporting_rule(const ModelParams& p, double theta, const PolicyPair& q) {
  detail::require_state(p, theta);
  return CommunicationEquilibrium(p, q).report(theta);
}

inline Candidate ballot(const ModelParams& p, double r, const PolicyPair& q) {
  return CommunicationEquilibrium(p, q).ballot(r);
}

inline ReportingOutcome classify_outcome(const ModelParams& p, double theta, const PolicyPair& q) {
  detail::require_state(p, theta);
  return CommunicationEquilibrium(p, q).classify(theta);
}

inline double generic_rule(const ModelParams& p, double theta, const PolicyPair& q, double lambda) {
  detail::require_state(p, theta);
  return CommunicationEquilibrium(p, q, lambda).report(theta);
}

}  // namespace newsgame
