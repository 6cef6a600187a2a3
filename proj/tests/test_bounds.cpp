#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <boost/math/distributions/binomial.hpp>
#include <cmath>

#include "otm/bounds.hpp"

using namespace otm;

namespace {

AdaptiveRule rule_named(const std::string& name) {
  for (auto& r : builtin_adaptive_rules())
    if (r.name == name) return r;
  throw std::runtime_error("no rule " + name);
}

}  // namespace

TEST_CASE("bound formula examples") {
  CHECK(azuma_supermartingale_bound(100, 10.0) == doctest::Approx(0.60653).epsilon(1e-5));
  CHECK(std::abs(azuma_supermartingale_bound(100, 10.0) - std::exp(-0.5)) <= 1e-15);
  CHECK(azuma_supermartingale_bound(7, 0.0) == 1.0);
  CHECK(azuma_supermartingale_bound(100000, 500.0) == doctest::Approx(0.2865).epsilon(1e-4));
  CHECK(log_azuma_supermartingale_bound(100000, 500.0) == doctest::Approx(-1.25));
  CHECK_THROWS_AS(azuma_supermartingale_bound(0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(azuma_supermartingale_bound(10, -1.0), std::invalid_argument);
}

TEST_CASE("bound is decreasing in t and increasing in n") {
  for (std::size_t n = 10; n <= 10000; n *= 10) {
    double previous = 2.0;
    for (double t = 0.0; t <= 300.0; t += 0.5) {
      const double b = azuma_supermartingale_bound(n, t);
      CHECK(b <= previous);
      if (t > 0.0) CHECK(b < azuma_supermartingale_bound(n * 10, t));
      previous = b;
    }
  }
}

TEST_CASE("tail slack and t grid") {
  CHECK(tail_within_bound(0.5, 0.5, 1000));
  CHECK(tail_within_bound(0.5 + 3.0 * std::sqrt(0.25 / 1000) - 1e-12, 0.5, 1000));
  CHECK_FALSE(tail_within_bound(0.6, 0.5, 1000));
  const auto g = standard_t_grid(100);
  REQUIRE(g.size() == 4);
  CHECK(g[0] == 5.0);
  CHECK(g[1] == 10.0);
  CHECK(g[2] == 20.0);
  CHECK(g[3] == 30.0);
}

TEST_CASE("builtin rules never exceed the cap") {
  for (const auto& rule : builtin_adaptive_rules()) {
    for (std::size_t i = 0; i < 50; ++i)
      for (std::size_t s = 0; s <= i; ++s) {
        History h{i, s, static_cast<int>(s % 2)};
        const double p = rule.probability(h, 0.7);
        CHECK(p >= 0.0);
        CHECK(p <= 0.7);
      }
  }
  CHECK(builtin_adaptive_rules().size() >= 4);
}

TEST_CASE("saturating rule at cap 1/2, n=1000, t=50") {
  const AdaptiveBernoulliSpec spec = constant_cap_spec(1000, 0.5, rule_named("saturating"));
  const std::vector<double> t{50.0};
  const auto checks = verify_tail(spec, t, 20000, 5);
  REQUIRE(checks.size() == 1);
  CHECK(checks[0].bound == doctest::Approx(std::exp(-1.25)));
  CHECK(checks[0].passed);
  // Independent oracle: P[Bin(1000, 1/2) >= 550].
  const double exact =
      boost::math::cdf(boost::math::complement(boost::math::binomial(1000, 0.5), 549.0));
  CHECK(std::abs(checks[0].empirical - exact) <= 4.0 * std::sqrt(exact * (1 - exact) / 20000) + 1e-4);
}

TEST_CASE("zero rule has an empty tail") {
  const auto checks = verify_tail(constant_cap_spec(200, 0.3, rule_named("zero")), standard_t_grid(200), 1000, 1);
  for (const auto& c : checks) {
    CHECK(c.empirical == 0.0);
    CHECK(c.passed);
  }
}

TEST_CASE("every builtin rule passes at the standard grid") {
  for (double cap : {0.5, 0.854}) {
    for (const auto& rule : builtin_adaptive_rules()) {
      const auto checks = verify_tail(constant_cap_spec(300, cap, rule), standard_t_grid(300), 5000, 9);
      for (const auto& c : checks) CHECK_MESSAGE(c.passed, rule.name);
    }
  }
}

TEST_CASE("verify_tail is deterministic across worker counts") {
  const auto spec = constant_cap_spec(100, 0.5, rule_named("catch-up"));
  const auto grid = standard_t_grid(100);
  const auto a = verify_tail(spec, grid, 3000, 17, 1);
  const auto b = verify_tail(spec, grid, 3000, 17, 4);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].empirical == b[i].empirical);
}

TEST_CASE("verify_tail argument checks") {
  const auto spec = constant_cap_spec(10, 0.5, rule_named("saturating"));
  const std::vector<double> t{1.0};
  CHECK_THROWS_AS(verify_tail(spec, t, 999, 1), std::invalid_argument);
  AdaptiveBernoulliSpec bad = spec;
  bad.caps.pop_back();
  CHECK_THROWS_AS(verify_tail(bad, t, 1000, 1), std::invalid_argument);
  bad = spec;
  bad.caps[0] = 1.5;
  CHECK_THROWS_AS(verify_tail(bad, t, 1000, 1), std::invalid_argument);
}
