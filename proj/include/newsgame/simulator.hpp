#pragma once

// Seeded Monte Carlo play of the full game at a fixed k.
//
// Draw j uses SplitMix64 evaluated at seed + (j + 1) * golden_gamma, so any
// draw can be produced without generating its predecessors. Draws are summed
// in fixed chunks whose partial sums are merged in chunk order; the summary is
// therefore bit-identical for every thread count.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "newsgame/communication.hpp"
#include "newsgame/errors.hpp"
#include "newsgame/model.hpp"
#include "newsgame/parallel.hpp"
#include "newsgame/policy.hpp"

namespace newsgame {

inline constexpr std::uint64_t kSplitMixGamma = 0x9E3779B97F4A7C15ULL;

inline constexpr std::uint64_t splitmix64_mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Uniform [0, 1) double for draw `index` of stream `seed`.
inline constexpr double uniform_draw(std::uint64_t seed, std::uint64_t index) {
  const std::uint64_t bits = splitmix64_mix(seed + (index + 1) * kSplitMixGamma);
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

struct SimulationConfig {
  std::uint64_t n_draws = 1'000'000;
  std::uint64_t seed = 0x5EED;
  std::optional<double> lambda_override;
  std::optional<PolicyPair> policy_override;
  unsigned threads = 1;
  std::uint64_t chunk_size = 65536;
};

struct Estimate {
  double mean = 0.0;
  double standard_error = 0.0;
};

struct SimulationSummary {
  std::uint64_t n_draws = 0;
  PolicyPair q;
  Estimate mean_voter_payoff;
  Estimate incumbent_win_share;
  Estimate persuasion_frequency;
  Estimate misreport_frequency;
  Estimate mean_outlet_cost;
};

namespace detail {

/// Neumaier compensated sum.
struct CompensatedSum {
  double sum = 0.0;
  double comp = 0.0;

  void add(double x) {
    const double t = sum + x;
    comp += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
    sum = t;
  }
  double value() const { return sum + comp; }
};

struct Moments {
  CompensatedSum s1;
  CompensatedSum s2;

  void add(double x) {
    s1.add(x);
    s2.add(x * x);
  }
  void merge(const Moments& o) {
    s1.add(o.s1.value());
    s2.add(o.s2.value());
  }
  Estimate estimate(std::uint64_t n) const {
    const double nn = static_cast<double>(n);
    const double mean = s1.value() / nn;
    if (n < 2) return {mean, 0.0};
    const double var = std::max(0.0, (s2.value() - nn * mean * mean) / (nn - 1.0));
    return {mean, std::sqrt(var / nn)};
  }
};

struct ChunkMoments {
  Moments payoff, win, persuaded, misreported, cost;
};

}  // namespace detail

inline SimulationSummary simulate(const ModelParams& p, const SimulationConfig& cfg) {
  validate_params(p);
  if (!existence_condition(p)) throw DomainError("no equilibrium exists at these parameters");
  if (cfg.n_draws == 0) throw DomainError("n_draws must be at least 1");
  if (cfg.chunk_size == 0) throw DomainError("chunk_size must be at least 1");

  const PolicyPair q = cfg.policy_override ? *cfg.policy_override : equilibrium_policies(p).q;
  const CommunicationEquilibrium eq = cfg.lambda_override
                                          ? CommunicationEquilibrium(p, q, *cfg.lambda_override)
                                          : CommunicationEquilibrium(p, q);

  const std::uint64_t chunks = (cfg.n_draws + cfg.chunk_size - 1) / cfg.chunk_size;
  std::vector<detail::ChunkMoments> parts(chunks);
  parallel_for(static_cast<std::size_t>(chunks), cfg.threads, [&](std::size_t c) {
    detail::ChunkMoments m;
    const std::uint64_t begin = c * cfg.chunk_size;
    const std::uint64_t end = std::min(cfg.n_draws, begin + cfg.chunk_size);
    for (std::uint64_t j = begin; j < end; ++j) {
      const double theta = -p.phi + 2.0 * p.phi * uniform_draw(cfg.seed, j);
      const ReportingOutcome o = eq.classify(theta);
      m.payoff.add(voter_utility(p, o.ballot, theta, q));
      m.win.add(o.ballot == Candidate::incumbent ? 1.0 : 0.0);
      m.persuaded.add(o.persuaded ? 1.0 : 0.0);
      m.misreported.add(o.misreported ? 1.0 : 0.0);
      m.cost.add(o.outlet_cost);
    }
    parts[c] = m;
  });

  detail::ChunkMoments total;
  for (const auto& m : parts) {
    total.payoff.merge(m.payoff);
    total.win.merge(m.win);
    total.persuaded.merge(m.persuaded);
    total.misreported.merge(m.misreported);
    total.cost.merge(m.cost);
  }
  SimulationSummary out;
  out.n_draws = cfg.n_draws;
  out.q = q;
  out.mean_voter_payoff = total.payoff.estimate(cfg.n_draws);
  out.incumbent_win_share = total.win.estimate(cfg.n_draws);
  out.persuasion_frequency = total.persuaded.estimate(cfg.n_draws);
  out.misreport_frequency = total.misreported.estimate(cfg.n_draws);
  out.mean_outlet_cost = total.cost.estimate(cfg.n_draws);
  return out;
}

}  // namespace newsgame
