// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "newsgame/newsgame.hpp"
#include "support/oracles.hpp"

using namespace newsgame;

namespace {

const ModelParams P0{};

ModelParams p0k(double k) { return P0.with_k(k); }

struct Outcome {
  bool passed = true;
  std::ostringstream detail;

  void require(bool cond, const std::string& what) {
    if (!cond && passed) detail << "first failure: " << what << "; ";
    passed = passed && cond;
  }
};

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

const std::vector<double>& k_grid() {
  static const std::vector<double> g = log_grid(1e-3, 1e6, 400);
  return g;
}

unsigned worker_count() { return std::max(1u, std::thread::hardware_concurrency()); }

Outcome regimes() {
  Outcome o;
  o.require(k_bar(P0) == 1.0, "k_bar = 1");
  const PolicyPair a = equilibrium_policies(p0k(0.1)).q;
  const PolicyPair b = equilibrium_policies(p0k(0.5)).q;
  const PolicyPair c = equilibrium_policies(p0k(4)).q;
  o.require(a == PolicyPair{0, 0}, "q*(0.1) = (0,0)");
  o.require(near(b.q_i, 0.14645, 1e-5) && near(b.q_c, 0.0, 1e-5), "q*(0.5)");
  o.require(near(c.q_i, 0.41789, 1e-5) && near(c.q_c, 0.29289, 1e-5), "q*(4)");
  o.detail << "q*(0.5)=(" << b.q_i << "," << b.q_c << ") q*(4)=(" << c.q_i << "," << c.q_c << ")";
  return o;
}

Outcome oracle_equivalence() {
  Outcome o;
  std::mt19937_64 rng(20261018);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  for (double k : {0.125, 0.5, 4.0}) {
    const ModelParams p = p0k(k);
    for (int j = 0; j < 100; ++j) {
      const double q_i = p.phi_m + p.bliss_gap() * u(rng);
      const double gap = std::abs(grid_best_response(p, q_i, 1e-3).q_c - best_response(p, q_i));
      worst = std::max(worst, gap);
      o.require(gap <= 1e-3 * p.bliss_gap() + 1e-12, "grid best response at k=" + std::to_string(k));
    }
  }
  std::vector<ModelParams> bases{P0};
  while (bases.size() < 3) bases.push_back(oracles::random_params(rng));
  int runs = 0;
  for (const ModelParams& base : bases) {
    const double kb = k_bar(base);
    for (double m : {0.125, 0.25, 0.5, 1.0, 2.0, 4.0, 100.0}) {
      const VerificationReport rep = verify_equilibrium(base.with_k(m * kb));
      ++runs;
      for (const CheckResult& c : rep.checks)
        o.require(c.passed, c.name + " at k/k_bar=" + std::to_string(m));
    }
  }
  o.detail << "max BR gap " << worst << ", " << runs << " verifications";
  return o;
}

Outcome welfare_law() {
  Outcome o;
  const double kb = k_bar(P0);
  const double flat = welfare(p0k(0.25 * kb)).welfare;
  double prev = -HUGE_VAL;
  for (double k : k_grid()) {
    const double w = welfare(p0k(k)).welfare;
    if (k <= 0.25 * kb) o.require(near(w, flat, 1e-12), "flat at k=" + std::to_string(k));
    else o.require(w > prev, "increasing at k=" + std::to_string(k));
    prev = w;
  }
  const double top = welfare(p0k(1e6)).welfare;
  o.require(near(top, P0.phi / 4, 1e-2), "W(1e6) near phi/4");
  o.detail << "W(1e6)=" << top;
  return o;
}

Outcome persuasion_shape() {
  Outcome o;
  const double kb = k_bar(P0);
  const std::vector<double>& g = k_grid();
  std::vector<double> chi;
  for (double k : g) chi.push_back(welfare(p0k(k)).persuasion_rate);
  for (std::size_t j = 0; j < g.size(); ++j)
    if (g[j] <= 0.25 * kb) o.require(chi[j] == 0.0, "chi = 0 at k=" + std::to_string(g[j]));
  const std::size_t top = std::max_element(chi.begin(), chi.end()) - chi.begin();
  o.require(top > 0 && top + 1 < g.size(), "interior maximum");
  o.require(g[top - 1] <= kb && kb <= g[top + 1], "maximum within one grid point of k_bar");
  for (std::size_t j = 1; j < g.size(); ++j) {
    if (g[j] <= 0.25 * kb) continue;
    if (j <= top) o.require(chi[j] > chi[j - 1], "rising before the maximum");
    else o.require(chi[j] < chi[j - 1], "falling after the maximum");
  }
  o.require(chi.back() < 1e-3, "chi(1e6) < 1e-3");
  o.detail << "argmax k=" << g[top] << " chi=" << chi[top] << ", chi(1e6)=" << chi.back();
  return o;
}

Outcome non_monotonicity() {
  Outcome o;
  const double kb = k_bar(P0);
  std::vector<double> inside;
  for (double k : k_grid())
    if (0.25 * kb < k && k < kb) inside.push_back(k);
  bool found = false;
  for (std::size_t a = 0; a < inside.size() && !found; ++a) {
    for (std::size_t b = a + 1; b < inside.size() && !found; ++b) {
      const WelfareReport w1 = welfare(p0k(inside[a]));
      const WelfareReport w2 = welfare(p0k(inside[b]));
      if (w2.persuasion_rate > w1.persuasion_rate && w2.welfare > w1.welfare) {
        found = true;
        o.detail << "k1=" << inside[a] << " k2=" << inside[b] << " chi " << w1.persuasion_rate << "->"
                 << w2.persuasion_rate << " W " << w1.welfare << "->" << w2.welfare;
      }
    }
  }
  o.require(found, "pair with higher chi and higher welfare");
  return o;
}

Outcome regulation() {
  Outcome o;
  const double kb = k_bar(P0);
  for (double k : k_grid()) {
    const double iota = incumbent_win_probability(p0k(k));
    if (k <= 0.25 * kb) o.require(iota == 0.5, "iota = 1/2 at k=" + std::to_string(k));
    else o.require(iota < 0.5, "iota < 1/2 at k=" + std::to_string(k));
  }
  o.require(near(incumbent_win_probability(p0k(1e6)), 0.5, 1e-3), "iota(1e6) near 1/2");
  const RegulationResult s6 = nu_extension_optimum(P0, {-0.006, 0.2, 10.0, 6.0});
  const RegulationResult s8 = nu_extension_optimum(P0, {-0.006, 0.2, 10.0, 8.0});
  o.require(near(s6.k_star, 10.5, 0.2), "sigma=6 optimum");
  o.require(near(s8.k_star, 0.25, 0.05), "sigma=8 optimum");
  o.detail << "sigma=6 k*=" << s6.k_star << ", sigma=8 k*=" << s8.k_star;
  return o;
}

Outcome monte_carlo() {
  Outcome o;
  const auto within = [](const Estimate& e, double target) {
    return std::abs(e.mean - target) <= 4.0 * e.standard_error;
  };
  const auto run = [&](double k, std::uint64_t n, std::uint64_t seed) {
    SimulationConfig cfg;
    cfg.n_draws = n;
    cfg.seed = seed;
    cfg.threads = worker_count();
    const SimulationSummary s = simulate(p0k(k), cfg);
    const WelfareReport w = welfare(p0k(k));
    const std::string at = " at k=" + std::to_string(k) + " n=" + std::to_string(n);
    o.require(within(s.mean_voter_payoff, w.welfare), "payoff" + at);
    o.require(within(s.persuasion_frequency, w.persuasion_rate), "persuasion" + at);
    o.require(within(s.incumbent_win_share, w.incumbent_win_prob), "win share" + at);
    if (k == 0.1) o.require(s.misreport_frequency.mean == 0.0, "no misreporting at k=0.1");
    o.detail << "k=" << k << " n=" << n << " payoff z="
             << (s.mean_voter_payoff.standard_error > 0
                     ? (s.mean_voter_payoff.mean - w.welfare) / s.mean_voter_payoff.standard_error
                     : 0.0)
             << "; ";
  };
  run(0.1, 1000000, 101);
  run(1.0, 1000000, 102);
  run(4.0, 1000000, 103);
  run(4.0, 10000000, 104);
  return o;
}

Outcome belief_consistency() {
  Outcome o;
  std::mt19937_64 rng(8);
  int pooled = 0;
  double worst = 0.0;
  for (int trial = 0; trial < 100000; ++trial) {
    const ModelParams p = oracles::random_params(rng);
    const PolicyPair q = oracles::random_policies(p, rng);
    const PoolingStructure ps = pooling_structure(p, q);
    if (ps.case_tag == PoolingCase::aligned) continue;
    ++pooled;
    const double tau_v = thresholds(p, q).tau_v;
    const double err = std::abs(ps.interval().midpoint() - tau_v);
    worst = std::max(worst, err);
    o.require(err <= 1e-12 * (1 + std::abs(tau_v)), "midpoint at trial " + std::to_string(trial));
  }
  o.detail << pooled << " pooled draws, max error " << worst;
  return o;
}

Outcome simultaneous_play() {
  Outcome o;
  for (double k : {0.1, 0.25}) o.require(simultaneous_convergence_check(p0k(k), 1e-3), "convergence at k=" + std::to_string(k));
  for (double k : {1.0, 2.0, 10.0}) o.require(no_pure_equilibrium_check(p0k(k), 1e-3), "no pure equilibrium at k=" + std::to_string(k));
  return o;
}

Outcome no_media_threshold() {
  Outcome o;
  ModelParams p3 = P0;
  p3.phi = 3.0;
  const NoMediaComparison c = no_media_comparison(p3);
  o.require(c.k_prime.has_value(), "k' found for phi=3");
  if (c.k_prime) {
    const double w = welfare(p3.with_k(*c.k_prime)).welfare;
    o.require(std::abs(w) <= 1e-10, "|W(k')| <= 1e-10");
    for (double k : k_grid())
      if (k < *c.k_prime) o.require(welfare(p3.with_k(k)).welfare < 0.0, "W < 0 at k=" + std::to_string(k));
    o.detail << "k'=" << *c.k_prime << " W(k')=" << w << "; ";
  }
  const NoMediaComparison base = no_media_comparison(P0);
  o.require(!base.k_prime, "no k' at the baseline");
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"closed-form regimes", regimes},
      {"oracle equivalence", oracle_equivalence},
      {"welfare law", welfare_law},
      {"persuasion-rate shape", persuasion_shape},
      {"non-monotonicity", non_monotonicity},
      {"regulation", regulation},
      {"Monte Carlo consistency", monte_carlo},
      {"belief consistency", belief_consistency},
      {"simultaneous play", simultaneous_play},
      {"no-media threshold", no_media_threshold},
  };
  int failures = 0;
  for (std::size_t j = 0; j < criteria.size(); ++j) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[j].second();
    } catch (const std::exception& e) {
      o.passed = false;
      o.detail << "exception: " << e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s %zu %s (%.2fs) %s\n", o.passed ? "PASS" : "FAIL", j + 1, criteria[j].first, secs,
                o.detail.str().c_str());
    failures += o.passed ? 0 : 1;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
