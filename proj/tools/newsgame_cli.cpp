// newsgame: command-line front end for sweeps, verification, simulation and
// regulation searches.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "newsgame/newsgame.hpp"

namespace {

enum ExitCode { kOk = 0, kCheckFailed = 1, kConfigError = 2, kDomainError = 3 };

unsigned resolve_threads(std::optional<unsigned> flag) {
  if (flag) return std::max(*flag, 1u);
  if (const char* env = std::getenv("NEWSGAME_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v >= 1) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
    throw newsgame::ConfigError("NEWSGAME_THREADS", "expected a positive integer");
  }
  return std::max(std::thread::hardware_concurrency(), 1u);
}

newsgame::Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw newsgame::ConfigError(path, "cannot open config file");
  return newsgame::parse_config(in);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Election game with a costly-misreporting media outlet"};
  app.set_version_flag("--version", std::string(NEWSGAME_VERSION));
  app.require_subcommand(1, 1);
  app.fallthrough();

  std::string config_path;
  std::string out_path;
  std::string format = "csv";
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;
  app.add_option("--config", config_path, "INI configuration file")->required()->check(CLI::ExistingFile);
  app.add_option("--out", out_path, "output file (default: stdout)");
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"csv", "jsonl"}));
  app.add_option("--seed", seed, "RNG seed (simulate only)");
  app.add_option("--threads", threads, "worker threads (fallback: NEWSGAME_THREADS)")
      ->check(CLI::PositiveNumber);

  auto* sweep = app.add_subcommand("sweep", "equilibrium policies and welfare over a k grid");
  auto* verify = app.add_subcommand("verify", "brute-force equilibrium checks; exit 1 on failure");
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo play at one k");
  auto* regulate = app.add_subcommand("regulate", "regulator optima and win-probability curves");
  auto* equilibrium = app.add_subcommand("equilibrium", "equilibrium profile at [model] k");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    newsgame::Config cfg = load_config(config_path);
    if (seed) cfg.simulate.seed = *seed;
    const unsigned n_threads = resolve_threads(threads);
    const auto fmt = format == "jsonl" ? newsgame::OutputFormat::jsonl : newsgame::OutputFormat::csv;

    newsgame::Table table;
    int code = kOk;
    if (*sweep) {
      table = newsgame::run_sweep(cfg, n_threads);
    } else if (*verify) {
      newsgame::VerifyRun run = newsgame::run_verify(cfg);
      table = std::move(run.table);
      if (!run.all_passed) code = kCheckFailed;
    } else if (*simulate) {
      table = newsgame::run_simulate(cfg, n_threads);
    } else if (*regulate) {
      table = newsgame::run_regulate(cfg);
    } else if (*equilibrium) {
      table = newsgame::run_equilibrium(cfg);
    }

    if (out_path.empty()) {
      newsgame::write_table(std::cout, table, fmt);
    } else {
      std::ofstream out(out_path);
      if (!out) throw newsgame::ConfigError(out_path, "cannot open output file");
      newsgame::write_table(out, table, fmt);
    }
    return code;
  } catch (const newsgame::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const newsgame::DomainError& e) {
    std::cerr << "domain error: " << e.what() << '\n';
    return kDomainError;
  } catch (const newsgame::SearchError& e) {
    std::cerr << "search error: " << e.what() << '\n';
    return kDomainError;
  }
}
