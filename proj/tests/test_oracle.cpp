#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <vector>

#include "newsgame/oracle.hpp"
#include "newsgame/welfare.hpp"
#include "support/oracles.hpp"

using namespace newsgame;
using Catch::Approx;

namespace {

const ModelParams P0{};

ModelParams p0k(double k) { return P0.with_k(k); }

std::vector<ModelParams> verification_params() {
  std::vector<ModelParams> out{P0};
  std::mt19937_64 rng(61);
  while (out.size() < 3) out.push_back(oracles::random_params(rng));
  return out;
}

}  // namespace

TEST_CASE("grid best response examples") {
  CHECK(grid_best_response(p0k(4), 0.2).q_c == 1.0);
  CHECK(grid_best_response(p0k(4), 0.7).q_c == Approx(0.575).margin(1e-3));
  CHECK(grid_best_response(p0k(0.1), 0.1).q_c == 0.0);
}

TEST_CASE("grid and closed-form best responses agree", "[property]") {
  std::mt19937_64 rng(62);
  std::vector<ModelParams> ps{p0k(0.1), p0k(0.5), p0k(4)};
  for (int j = 0; j < 3; ++j) ps.push_back(oracles::random_params(rng));
  for (const ModelParams& p : ps) {
    const double d = p.bliss_gap();
    for (int a = 0; a <= 1000; a += 3) {
      const double q_i = p.phi_m + d * a / 1000.0;
      REQUIRE(grid_best_response(p, q_i, 1e-3).q_c ==
              Approx(best_response(p, q_i)).margin(1e-3 * d + 1e-12));
    }
  }
}

TEST_CASE("quadrature welfare") {
  CHECK(quadrature_welfare(p0k(2), {0, 0}, 1000) == Approx(0.0).margin(1e-12));
  const PolicyPair q4 = equilibrium_policies(p0k(4)).q;
  CHECK(quadrature_welfare(p0k(4), q4, 1000000) == Approx(0.57829).margin(1e-5));
  CHECK(quadrature_welfare(p0k(4), {1, 1}, 1000) == Approx(1.0).margin(1e-12));
  CHECK_THROWS_AS(quadrature_welfare(p0k(4), q4, 999), DomainError);
}

TEST_CASE("quadrature converges to the closed form along a sweep", "[property]") {
  for (double k : log_grid(0.01, 1e4, 60)) {
    const ModelParams p = p0k(k);
    const std::size_t n = 200000;
    const double quad = quadrature_welfare(p, equilibrium_policies(p).q, n);
    REQUIRE(quad == Approx(welfare(p).welfare).margin(std::max(1e-6, 10.0 / n)));
  }
}

TEST_CASE("verification passes at every regime", "[property]") {
  for (const ModelParams& base : verification_params()) {
    const double kb = k_bar(base);
    for (double m : {0.125, 0.25, 0.5, 1.0, 2.0, 4.0, 100.0}) {
      const VerificationReport rep = verify_equilibrium(base.with_k(m * kb));
      INFO("k/k_bar = " << m);
      for (const auto& c : rep.checks) {
        INFO(c.name << " " << c.max_violation << " at " << c.location);
        REQUIRE(c.passed);
        REQUIRE(c.passed == (c.max_violation <= rep.tolerance));
      }
      REQUIRE(rep.checks.size() == 5);
    }
  }
}

TEST_CASE("challenger gains nothing by moving to phi_v at low cost") {
  const VerificationReport rep = verify_equilibrium(p0k(0.1));
  CHECK(rep.all_passed());
  CHECK(rep.find("challenger_no_deviation")->max_violation <= 0.0);
  CHECK(challenger_value(p0k(0.1), {0, 1}) < challenger_value(p0k(0.1), {0, 0}));
}

TEST_CASE("verification detects a perturbed incumbent") {
  const PolicyPair q = equilibrium_policies(p0k(4)).q;
  VerifyOptions opt;
  opt.profile = PolicyPair{q.q_i + 0.05, q.q_c};
  const VerificationReport rep = verify_equilibrium(p0k(4), opt);
  CHECK_FALSE(rep.all_passed());
  const CheckResult* inc = rep.find("incumbent_no_deviation");
  REQUIRE(inc);
  CHECK_FALSE(inc->passed);
  CHECK(inc->max_violation > 0.0);
  CHECK(rep.find("no_such_check") == nullptr);
}

TEST_CASE("verification reports a proposal outside the bliss interval") {
  VerifyOptions opt;
  opt.profile = PolicyPair{1.5, 0.5};
  const VerificationReport rep = verify_equilibrium(p0k(4), opt);
  CHECK_FALSE(rep.find("incumbent_no_deviation")->passed);
}
