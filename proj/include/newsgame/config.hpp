#pragma once

// INI run configuration. Sections: [model], [sweep], [simulate], [regulate],
// [verify]. Unknown sections and keys are rejected.

#include <charconv>
#include <cmath>
#include <cstdint>
#include <istream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "newsgame/errors.hpp"
#include "newsgame/model.hpp"
#include "newsgame/welfare.hpp"

namespace newsgame {

enum class Spacing { log, linear };

struct SweepSettings {
  std::vector<double> k_values;  ///< explicit list; overrides the range when non-empty
  double k_min = 0.01;
  double k_max = 100.0;
  std::uint64_t points = 200;
  Spacing spacing = Spacing::log;
  bool row_errors = false;
  bool subtract_transfer = false;
};

struct SimulateSettings {
  std::optional<double> k;  ///< defaults to model.k
  std::uint64_t n_draws = 1'000'000;
  std::uint64_t seed = 0x5EED;
  std::optional<double> lambda;
  std::optional<PolicyPair> policy;
};

struct RegulateSettings {
  double k_max = kDefaultKMax;
  std::uint64_t curve_points = 200;
  std::optional<NuExtensionParams> nu;
};

struct VerifySettings {
  std::vector<double> k_values;  ///< empty means multiples {1/8, 1/4, 1/2, 1, 2, 4, 100} of k_bar
  double step = 1e-3;
  double tol = 1e-3;
  double perturb_q_i = 0.0;
};

struct Config {
  ModelParams model;
  SweepSettings sweep;
  SimulateSettings simulate;
  RegulateSettings regulate;
  VerifySettings verify;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

inline double parse_real(const std::string& path, std::string_view text) {
  text = trim(text);
  double v = 0.0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || end != text.data() + text.size())
    throw ConfigError(path, "expected a number, got '" + std::string(text) + "'");
  if (!std::isfinite(v)) throw ConfigError(path, "value must be finite");
  return v;
}

inline std::uint64_t parse_count(const std::string& path, std::string_view text) {
  text = trim(text);
  std::uint64_t v = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || end != text.data() + text.size())
    throw ConfigError(path, "expected a non-negative integer, got '" + std::string(text) + "'");
  return v;
}

inline bool parse_bool(const std::string& path, std::string_view text) {
  text = trim(text);
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw ConfigError(path, "expected true or false, got '" + std::string(text) + "'");
}

inline std::vector<double> parse_list(const std::string& path, std::string_view text) {
  std::vector<double> out;
  if (trim(text).empty()) throw ConfigError(path, "list is empty");
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto item = text.substr(start, comma == std::string_view::npos ? std::string_view::npos
                                                                         : comma - start);
    out.push_back(parse_real(path, item));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

/// Key/value view of one section that tracks which keys were consumed.
class Section {
 public:
  Section(std::string name, const boost::property_tree::ptree* tree)
      : name_(std::move(name)), tree_(tree) {}

  std::optional<std::string> raw(const std::string& key) {
    known_.insert(key);
    if (!tree_) return std::nullopt;
    const auto it = tree_->find(key);
    if (it == tree_->not_found()) return std::nullopt;
    return it->second.data();
  }
  std::string path(const std::string& key) const { return name_ + "." + key; }

  void real(const std::string& key, double& out) {
    if (auto v = raw(key)) out = parse_real(path(key), *v);
  }
  void real(const std::string& key, std::optional<double>& out) {
    if (auto v = raw(key)) out = parse_real(path(key), *v);
  }
  void count(const std::string& key, std::uint64_t& out) {
    if (auto v = raw(key)) out = parse_count(path(key), *v);
  }
  void flag(const std::string& key, bool& out) {
    if (auto v = raw(key)) out = parse_bool(path(key), *v);
  }
  void list(const std::string& key, std::vector<double>& out) {
    if (auto v = raw(key)) out = parse_list(path(key), *v);
  }

  void reject_unknown() const {
    if (!tree_) return;
    for (const auto& [key, child] : *tree_)
      if (!known_.count(key)) throw ConfigError(path(key), "unknown key");
  }

 private:
  std::string name_;
  const boost::property_tree::ptree* tree_;
  std::set<std::string> known_;
};

inline void require_positive(const std::string& path, double v) {
  if (!(v > 0.0)) throw ConfigError(path, "must be positive");
}

}  // namespace detail

/// Parses INI text. Model invariants are checked separately by validate_config.
inline Config parse_config(std::istream& in) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError("line " + std::to_string(e.line()), e.message());
  }
  static const std::set<std::string> sections{"model", "sweep", "simulate", "regulate", "verify"};
  for (const auto& [name, child] : tree) {
    if (child.empty() && !child.data().empty()) throw ConfigError(name, "key outside any section");
    if (!sections.count(name)) throw ConfigError(name, "unknown section");
  }
  const auto section = [&](const char* name) {
    const auto it = tree.find(name);
    return detail::Section(name, it == tree.not_found() ? nullptr : &it->second);
  };

  Config cfg;
  {
    auto s = section("model");
    s.real("phi_v", cfg.model.phi_v);
    s.real("phi_m", cfg.model.phi_m);
    s.real("gamma", cfg.model.gamma);
    s.real("xi", cfg.model.xi);
    s.real("phi", cfg.model.phi);
    s.real("k", cfg.model.k);
    s.reject_unknown();
  }
  {
    auto s = section("sweep");
    auto& w = cfg.sweep;
    s.list("k_values", w.k_values);
    s.real("k_min", w.k_min);
    s.real("k_max", w.k_max);
    s.count("points", w.points);
    if (auto v = s.raw("spacing")) {
      const auto t = detail::trim(*v);
      if (t == "log") w.spacing = Spacing::log;
      else if (t == "linear") w.spacing = Spacing::linear;
      else throw ConfigError(s.path("spacing"), "expected log or linear");
    }
    s.flag("row_errors", w.row_errors);
    s.flag("subtract_transfer", w.subtract_transfer);
    s.reject_unknown();
    for (double k : w.k_values) detail::require_positive(s.path("k_values"), k);
    detail::require_positive(s.path("k_min"), w.k_min);
    if (!(w.k_max >= w.k_min)) throw ConfigError(s.path("k_max"), "must be at least k_min");
    if (w.points == 0) throw ConfigError(s.path("points"), "must be at least 1");
  }
  {
    auto s = section("simulate");
    auto& m = cfg.simulate;
    s.real("k", m.k);
    s.count("n_draws", m.n_draws);
    s.count("seed", m.seed);
    s.real("lambda", m.lambda);
    std::optional<double> qi, qc;
    s.real("q_i", qi);
    s.real("q_c", qc);
    s.reject_unknown();
    if (qi.has_value() != qc.has_value())
      throw ConfigError(s.path(qi ? "q_c" : "q_i"), "q_i and q_c must be given together");
    if (qi) m.policy = PolicyPair{*qi, *qc};
    if (m.k) detail::require_positive(s.path("k"), *m.k);
    if (m.n_draws == 0) throw ConfigError(s.path("n_draws"), "must be at least 1");
  }
  {
    auto s = section("regulate");
    auto& r = cfg.regulate;
    s.real("k_max", r.k_max);
    s.count("curve_points", r.curve_points);
    std::optional<double> y, x, kv, sigma;
    s.real("nu_y", y);
    s.real("nu_x", x);
    s.real("nu_k_v", kv);
    s.real("nu_sigma", sigma);
    s.reject_unknown();
    const int given = int(y.has_value()) + int(x.has_value()) + int(kv.has_value()) +
                      int(sigma.has_value());
    if (given != 0 && given != 4)
      throw ConfigError("regulate.nu", "nu_y, nu_x, nu_k_v and nu_sigma must be given together");
    if (given == 4) {
      detail::require_positive(s.path("nu_x"), *x);
      detail::require_positive(s.path("nu_k_v"), *kv);
      detail::require_positive(s.path("nu_sigma"), *sigma);
      r.nu = NuExtensionParams{*y, *x, *kv, *sigma};
    }
    detail::require_positive(s.path("k_max"), r.k_max);
    if (r.curve_points < 2) throw ConfigError(s.path("curve_points"), "must be at least 2");
  }
  {
    auto s = section("verify");
    auto& v = cfg.verify;
    s.list("k_values", v.k_values);
    s.real("step", v.step);
    s.real("tol", v.tol);
    s.real("perturb_q_i", v.perturb_q_i);
    s.reject_unknown();
    for (double k : v.k_values) detail::require_positive(s.path("k_values"), k);
    if (!(v.step > 0.0 && v.step <= 1.0)) throw ConfigError(s.path("step"), "must lie in (0, 1]");
    detail::require_positive(s.path("tol"), v.tol);
  }
  return cfg;
}

inline Config parse_config(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in);
}

/// Model invariants; throws DomainError.
inline void validate_config(const Config& cfg) { validate_params(cfg.model); }

}  // namespace newsgame
