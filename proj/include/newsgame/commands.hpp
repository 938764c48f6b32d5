#pragma once

// Subcommand bodies shared by the command-line tool and the tests. Each
// returns a Table; the caller chooses the output format.

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "newsgame/config.hpp"
#include "newsgame/errors.hpp"
#include "newsgame/model.hpp"
#include "newsgame/oracle.hpp"
#include "newsgame/parallel.hpp"
#include "newsgame/policy.hpp"
#include "newsgame/simulator.hpp"
#include "newsgame/tables.hpp"
#include "newsgame/welfare.hpp"

namespace newsgame {

inline std::vector<double> sweep_grid(const SweepSettings& s) {
  if (!s.k_values.empty()) {
    std::vector<double> ks = s.k_values;
    std::sort(ks.begin(), ks.end());
    ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
    return ks;
  }
  if (s.spacing == Spacing::log) return log_grid(s.k_min, s.k_max, s.points);
  std::vector<double> ks(s.points);
  for (std::size_t j = 0; j < s.points; ++j)
    ks[j] = s.points == 1 ? s.k_min
                          : s.k_min + (s.k_max - s.k_min) * static_cast<double>(j) /
                                          static_cast<double>(s.points - 1);
  return ks;
}

struct SweepRecord {
  double k = 0.0;
  double q_i_star = 0.0;
  double q_c_star = 0.0;
  double tau_v = 0.0;
  double tau_m = 0.0;
  double r_star = 0.0;
  double chi = 0.0;
  double iota = 0.0;
  double welfare = 0.0;
  CostRegime regime = CostRegime::low;
};

inline SweepRecord sweep_record(const ModelParams& p, WelfareOptions opt = {}) {
  const EquilibriumProfile eq = equilibrium_policies(p);
  const Thresholds t = thresholds(p, eq.q);
  const WelfareReport w = welfare(p, opt);
  return {p.k,        eq.q.q_i, eq.q.q_c,          t.tau_v,     t.tau_m,
          eq.pooling.r_star, w.persuasion_rate, w.incumbent_win_prob, w.welfare, eq.regime};
}

inline const std::vector<std::string>& sweep_columns() {
  static const std::vector<std::string> cols{"k",     "q_i_star", "q_c_star", "tau_v",   "tau_m",
                                             "r_star", "chi",     "iota",     "welfare", "regime"};
  return cols;
}

inline Table run_sweep(const Config& cfg, unsigned threads = 1) {
  validate_primitives(cfg.model);
  const std::vector<double> ks = sweep_grid(cfg.sweep);
  const WelfareOptions opt{cfg.sweep.subtract_transfer};
  std::vector<SweepRecord> recs(ks.size());
  std::vector<std::string> errors(ks.size());
  parallel_for(ks.size(), threads, [&](std::size_t j) {
    const ModelParams p = cfg.model.with_k(ks[j]);
    if (!cfg.sweep.row_errors) {
      validate_params(p);
      recs[j] = sweep_record(p, opt);
      return;
    }
    try {
      validate_params(p);
      recs[j] = sweep_record(p, opt);
    } catch (const DomainError& e) {
      recs[j] = SweepRecord{};
      recs[j].k = ks[j];
      errors[j] = e.what();
    }
  });
  Table t;
  t.columns = sweep_columns();
  if (cfg.sweep.row_errors) t.columns.push_back("error");
  for (std::size_t j = 0; j < ks.size(); ++j) {
    const SweepRecord& r = recs[j];
    std::vector<Cell> row{r.k,   r.q_i_star, r.q_c_star, r.tau_v,   r.tau_m,
                          r.r_star, r.chi,   r.iota,     r.welfare, std::string(to_string(r.regime))};
    if (cfg.sweep.row_errors) row.emplace_back(errors[j]);
    t.add_row(std::move(row));
  }
  return t;
}

inline Table run_equilibrium(const Config& cfg) {
  const ModelParams& p = cfg.model;
  validate_params(p);
  const EquilibriumProfile eq = equilibrium_policies(p);
  const Thresholds t = thresholds(p, eq.q);
  const WelfareReport w = welfare(p);
  Table out;
  out.columns = {"k",     "regime", "k_bar",   "eta",     "q_i_star", "q_c_star", "tau_v",
                 "tau_m", "r_star", "pool_lo", "pool_hi", "chi",      "iota",     "welfare"};
  out.add_row({p.k, std::string(to_string(eq.regime)), eq.k_bar, eq.eta, eq.q.q_i, eq.q.q_c, t.tau_v,
               t.tau_m, eq.pooling.r_star, eq.pooling.pool_lo, eq.pooling.pool_hi,
               w.persuasion_rate, w.incumbent_win_prob, w.welfare});
  return out;
}

struct VerifyRun {
  Table table;
  bool all_passed = true;
};

inline std::vector<double> verify_k_values(const Config& cfg) {
  if (!cfg.verify.k_values.empty()) return cfg.verify.k_values;
  const double kb = k_bar(cfg.model);
  return {kb / 8, kb / 4, kb / 2, kb, 2 * kb, 4 * kb, 100 * kb};
}

inline VerifyRun run_verify(const Config& cfg) {
  validate_primitives(cfg.model);
  VerifyRun run;
  run.table.columns = {"k", "check", "passed", "max_violation", "tolerance", "location"};
  for (double k : verify_k_values(cfg)) {
    const ModelParams p = cfg.model.with_k(k);
    VerifyOptions opt;
    opt.step = cfg.verify.step;
    opt.tol = cfg.verify.tol;
    if (cfg.verify.perturb_q_i != 0.0) {
      PolicyPair q = equilibrium_policies(p).q;
      q.q_i += cfg.verify.perturb_q_i;
      opt.profile = q;
    }
    const VerificationReport rep = verify_equilibrium(p, opt);
    for (const auto& c : rep.checks)
      run.table.add_row({k, c.name, c.passed, c.max_violation, rep.tolerance, c.location});
    run.all_passed = run.all_passed && rep.all_passed();
  }
  return run;
}

inline Table run_simulate(const Config& cfg, unsigned threads = 1) {
  const ModelParams p = cfg.model.with_k(cfg.simulate.k.value_or(cfg.model.k));
  SimulationConfig sc;
  sc.n_draws = cfg.simulate.n_draws;
  sc.seed = cfg.simulate.seed;
  sc.lambda_override = cfg.simulate.lambda;
  sc.policy_override = cfg.simulate.policy;
  sc.threads = threads;
  const SimulationSummary s = simulate(p, sc);
  Table t;
  t.columns = {"statistic", "mean", "standard_error", "k", "n_draws", "seed"};
  const auto add = [&](const char* name, const Estimate& e) {
    t.add_row({std::string(name), e.mean, e.standard_error, p.k,
               static_cast<std::int64_t>(s.n_draws), std::to_string(sc.seed)});
  };
  add("mean_voter_payoff", s.mean_voter_payoff);
  add("incumbent_win_share", s.incumbent_win_share);
  add("persuasion_frequency", s.persuasion_frequency);
  add("misreport_frequency", s.misreport_frequency);
  add("mean_outlet_cost", s.mean_outlet_cost);
  return t;
}

inline Table run_regulate(const Config& cfg) {
  const ModelParams& p = cfg.model;
  validate_primitives(p);
  const RegulateSettings& r = cfg.regulate;
  Table t;
  t.columns = {"record", "k", "value"};
  const RegulationResult inc = incumbent_regulation(p, r.k_max);
  t.add_row({std::string("incumbent_optimum"), inc.k_star, inc.iota_at});
  const RegulationResult ch = challenger_regulation(p, r.k_max);
  t.add_row({std::string("challenger_optimum"), ch.k_star, ch.iota_at});
  if (r.nu) {
    const RegulationResult nu_opt = nu_extension_optimum(p, *r.nu, r.k_max);
    t.add_row({std::string("nu_optimum"), nu_opt.k_star, nu_opt.iota_at});
  }
  const double kb = k_bar(p);
  for (double k : log_grid(kb / 400.0, std::min(r.k_max, 1e4 * kb), r.curve_points)) {
    t.add_row({std::string("iota"), k, incumbent_win_probability(p.with_k(k))});
    if (r.nu) t.add_row({std::string("iota_hat"), k, iota_hat(p, *r.nu, k)});
  }
  return t;
}

}  // namespace newsgame
