#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <boost/math/distributions/binomial.hpp>
#include <cmath>

#include "otm/binomial.hpp"

using namespace otm;

namespace {

double boost_sf(std::size_t n, std::size_t k, double p) {
  if (k == 0) return 1.0;
  return boost::math::cdf(boost::math::complement(boost::math::binomial(static_cast<double>(n), p),
                                                  static_cast<double>(k - 1)));
}

double boost_cdf(std::size_t n, std::size_t k, double p) {
  return boost::math::cdf(boost::math::binomial(static_cast<double>(n), p), static_cast<double>(k));
}

}  // namespace

TEST_CASE("log-sum accumulator") {
  LogSumAccumulator acc;
  CHECK(std::isinf(acc.log()));
  CHECK(acc.value() == 0.0);
  acc.add(std::log(0.25));
  acc.add(std::log(0.5));
  acc.add(-std::numeric_limits<double>::infinity());
  CHECK(acc.value() == doctest::Approx(0.75));
  LogSumAccumulator tiny;
  tiny.add(-1000.0);
  tiny.add(-1000.0);
  CHECK(tiny.log() == doctest::Approx(-1000.0 + std::log(2.0)));
}

TEST_CASE("log factorials") {
  const auto lf = log_factorials(20);
  CHECK(lf[0] == 0.0);
  CHECK(lf[5] == doctest::Approx(std::log(120.0)));
  CHECK(lf[20] == doctest::Approx(std::log(2432902008176640000.0)));
}

TEST_CASE("pmf edge probabilities") {
  CHECK(std::exp(log_binomial_pmf(10, 0, 0.0)) == 1.0);
  CHECK(std::isinf(log_binomial_pmf(10, 1, 0.0)));
  CHECK(std::exp(log_binomial_pmf(10, 10, 1.0)) == 1.0);
  CHECK(std::exp(log_binomial_pmf(4, 2, 0.5)) == doctest::Approx(6.0 / 16.0));
  CHECK(std::isinf(log_binomial_pmf(4, 5, 0.5)));
}

TEST_CASE("upper tail P[Bin(100, 1/2) >= 85]") {
  const double v = binomial_sf(100, 85, 0.5);
  CHECK(std::abs(v / 2.4127107519685975e-13 - 1.0) <= 1e-6);
  CHECK(std::abs(v / boost_sf(100, 85, 0.5) - 1.0) <= 1e-10);
}

TEST_CASE("tails agree with the boost oracle over a grid") {
  for (std::size_t n : {1u, 2u, 7u, 20u, 99u, 100u, 500u, 2000u}) {
    for (double p : {0.0, 0.01, 0.14644660940672624, 0.5, 0.8535533905932737, 0.99, 1.0}) {
      for (std::size_t k = 0; k <= n; k += std::max<std::size_t>(1, n / 37)) {
        const double sf = binomial_sf(n, k, p), osf = boost_sf(n, k, p);
        const double cdf = binomial_cdf(n, k, p), ocdf = boost_cdf(n, k, p);
        if (osf > 1e-300) CHECK(std::abs(sf - osf) <= 1e-9 * osf + 1e-15);
        else CHECK(sf <= 1e-290);
        if (ocdf > 1e-300) CHECK(std::abs(cdf - ocdf) <= 1e-9 * ocdf + 1e-15);
        else CHECK(cdf <= 1e-290);
      }
    }
  }
}

TEST_CASE("log tails stay finite below double range") {
  const double l = log_binomial_sf(1000000, 500000, 0.1);
  CHECK(std::isfinite(l));
  CHECK(l < -100000.0);
  CHECK(binomial_sf(10, 11, 0.5) == 0.0);
  CHECK(binomial_sf(10, 0, 0.5) == 1.0);
  CHECK(binomial_cdf(10, 10, 0.3) == doctest::Approx(1.0));
}

TEST_CASE("pmf matches the boost oracle to near machine precision") {
  for (std::size_t n : {3u, 16u, 40u, 90u, 600u, 5000u, 100000u}) {
    for (double p : {0.001, 0.14644660940672624, 0.5, 0.97}) {
      const boost::math::binomial dist(static_cast<double>(n), p);
      for (std::size_t k = 0; k <= n; k += std::max<std::size_t>(1, n / 53)) {
        const double oracle = boost::math::pdf(dist, static_cast<double>(k));
        if (oracle < 1e-280) continue;
        CHECK(std::abs(std::exp(log_binomial_pmf(n, k, p)) / oracle - 1.0) <= 1e-12);
      }
    }
  }
}
