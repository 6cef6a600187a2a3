#pragma once

// Exact binomial and multinomial tails evaluated in log space.

#include <cstddef>
#include <limits>
#include <vector>

namespace otm {

/// Streaming log-sum-exp with Neumaier-compensated accumulation.
class LogSumAccumulator {
 public:
  void add(double log_term) noexcept;
  /// log of the accumulated sum; -inf when empty.
  double log() const noexcept;
  double value() const noexcept;

 private:
  double max_ = -std::numeric_limits<double>::infinity();
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// log(n!) for 0..n, built from lgamma.
std::vector<double> log_factorials(std::size_t n);

double log_binomial_pmf(std::size_t n, std::size_t k, double p);

/// log P[Bin(n, p) <= k].
double log_binomial_cdf(std::size_t n, std::size_t k, double p);
/// log P[Bin(n, p) >= k].
double log_binomial_sf(std::size_t n, std::size_t k, double p);

double binomial_cdf(std::size_t n, std::size_t k, double p);
double binomial_sf(std::size_t n, std::size_t k, double p);

}  // namespace otm
