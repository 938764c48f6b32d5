#pragma once

// Primitives of the election game with a costly-misreporting media outlet:
// parameters, payoffs, indifference thresholds and full-persuasion tests.

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "newsgame/errors.hpp"

namespace newsgame {

/// Relative tolerance for algebraic identities and closed-form boundary tests.
inline constexpr double kIdentityTol = 1e-12;

enum class Candidate { incumbent, challenger };

inline constexpr const char* to_string(Candidate c) {
  return c == Candidate::incumbent ? "i" : "c";
}

/// Primitive tuple of the model. `k` is the misreporting-cost intensity; the
/// other fields are fixed across comparative-statics sweeps.
struct ModelParams {
  double phi_v = 1.0;  ///< voter bliss policy
  double phi_m = 0.0;  ///< outlet bliss policy
  double gamma = 1.0;  ///< weight of policy relative to quality
  double xi = 1.0;     ///< outlet's gain when its endorsed candidate wins
  double phi = 4.0;    ///< half-width of the state space [-phi, phi]
  double k = 1.0;      ///< misreporting-cost intensity

  double bliss_gap() const { return phi_v - phi_m; }

  ModelParams with_k(double new_k) const {
    ModelParams p = *this;
    p.k = new_k;
    return p;
  }

  friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

/// Committed proposals of incumbent and challenger.
struct PolicyPair {
  double q_i = 0.0;
  double q_c = 0.0;

  friend bool operator==(const PolicyPair&, const PolicyPair&) = default;
};

struct Thresholds {
  double tau_v = 0.0;  ///< voter prefers the incumbent iff theta > tau_v
  double tau_m = 0.0;  ///< outlet endorses the incumbent iff theta > tau_m
};

/// Open interval (lo, hi); empty when lo >= hi.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  bool empty() const { return !(lo < hi); }
  bool contains(double x) const { return lo < x && x < hi; }
  double length() const { return empty() ? 0.0 : hi - lo; }
  double midpoint() const { return 0.5 * (lo + hi); }
};

// ---------------------------------------------------------------------------
// Derived scalars

/// Cost threshold separating the policy regimes: xi / (gamma^2 (phi_v - phi_m)^4).
inline double k_bar(const ModelParams& p) {
  const double d2 = p.bliss_gap() * p.bliss_gap();
  return p.xi / (p.gamma * p.gamma * d2 * d2);
}

/// Largest misreport the outlet would ever pay for: sqrt(xi / k).
inline double lie_reach(const ModelParams& p) { return std::sqrt(p.xi / p.k); }

/// Undercutting gap eta(k) = sqrt(xi/k) / (4 gamma (phi_v - phi_m)).
inline double eta(const ModelParams& p) {
  return lie_reach(p) / (4.0 * p.gamma * p.bliss_gap());
}

// ---------------------------------------------------------------------------
// Validation

namespace detail {

inline std::string fmt_double(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

inline void require_finite(double x, const char* name) {
  if (!std::isfinite(x)) throw DomainError(std::string(name) + " must be finite");
}

}  // namespace detail

/// Checks every invariant of ModelParams except the cost intensity `k`.
inline void validate_primitives(const ModelParams& p) {
  detail::require_finite(p.phi_v, "phi_v");
  detail::require_finite(p.phi_m, "phi_m");
  detail::require_finite(p.gamma, "gamma");
  detail::require_finite(p.xi, "xi");
  detail::require_finite(p.phi, "phi");
  if (!(p.phi_m < p.phi_v))
    throw DomainError("bliss ordering violated: phi_m (" + detail::fmt_double(p.phi_m) +
                      ") must be below phi_v (" + detail::fmt_double(p.phi_v) + ")");
  if (!(p.gamma > 0.0)) throw DomainError("gamma must be positive");
  if (!(p.xi > 0.0)) throw DomainError("xi must be positive");
  const double bound = 3.0 * p.gamma * p.bliss_gap() * p.bliss_gap();
  if (!(p.phi >= bound))
    throw DomainError("influential bound violated: phi (" + detail::fmt_double(p.phi) +
                      ") < 3 gamma (phi_v - phi_m)^2 (" + detail::fmt_double(bound) + ")");
}

inline void validate_params(const ModelParams& p) {
  validate_primitives(p);
  if (!std::isfinite(p.k) || !(p.k > 0.0))
    throw DomainError("k must be positive and finite (got " + detail::fmt_double(p.k) + ")");
}

// ---------------------------------------------------------------------------
// Payoffs

inline double voter_utility(const ModelParams& p, Candidate b, double theta, const PolicyPair& q) {
  const double q_b = b == Candidate::incumbent ? q.q_i : q.q_c;
  const double d = p.phi_v - q_b;
  return -p.gamma * d * d + (b == Candidate::incumbent ? theta : 0.0);
}

inline Thresholds thresholds(const ModelParams& p, const PolicyPair& q) {
  const double diff = q.q_c - q.q_i;
  const double sum = q.q_c + q.q_i;
  return {p.gamma * (2.0 * p.phi_v - sum) * diff, p.gamma * (2.0 * p.phi_m - sum) * diff};
}

/// The outlet's preferred candidate; the boundary theta == tau_m goes to the challenger.
inline Candidate endorsed_candidate(const ModelParams& p, double theta, const PolicyPair& q) {
  return theta > thresholds(p, q).tau_m ? Candidate::incumbent : Candidate::challenger;
}

inline double outlet_utility(const ModelParams& p, double r, Candidate b, double theta,
                             const PolicyPair& q) {
  const double gain = b == endorsed_candidate(p, theta, q) ? p.xi : 0.0;
  return gain - p.k * (r - theta) * (r - theta);
}

/// States where voter and outlet disagree on the better candidate.
inline Interval conflict_set(const ModelParams& p, const PolicyPair& q) {
  const Thresholds t = thresholds(p, q);
  return {std::min(t.tau_v, t.tau_m), std::max(t.tau_v, t.tau_m)};
}

/// Largest k at which the outlet persuades in every conflict state; +inf when
/// the thresholds coincide.
inline double full_persuasion_threshold(const ModelParams& p, const PolicyPair& q) {
  const Thresholds t = thresholds(p, q);
  const double gap = t.tau_v - t.tau_m;
  if (gap == 0.0) return std::numeric_limits<double>::infinity();
  return p.xi / (4.0 * gap * gap);
}

/// Full persuasion expressed on the proposal distance. Equality counts as
/// full persuasion, with slack for rounding in the proposals themselves.
inline bool full_persuasion_condition(const ModelParams& p, const PolicyPair& q) {
  const double dq = std::abs(q.q_c - q.q_i);
  const double d = std::abs(p.phi_m - p.phi_v);
  const double bound = std::sqrt(p.xi / p.k) / (4.0 * p.gamma * d);
  const double slack = 8.0 * std::numeric_limits<double>::epsilon() * (std::abs(q.q_i) + std::abs(q.q_c));
  return dq <= bound * (1.0 + kIdentityTol) + slack;
}

}  // namespace newsgame
