#include "otm/binomial.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace otm {

void LogSumAccumulator::add(double log_term) noexcept {
  if (log_term == -std::numeric_limits<double>::infinity()) return;
  if (log_term > max_) {
    const double scale = std::exp(max_ - log_term);
    sum_ *= scale;
    comp_ *= scale;
    max_ = log_term;
  }
  const double x = std::exp(log_term - max_);
  const double t = sum_ + x;
  if (std::abs(sum_) >= std::abs(x)) comp_ += (sum_ - t) + x;
  else comp_ += (x - t) + sum_;
  sum_ = t;
}

double LogSumAccumulator::log() const noexcept {
  const double s = sum_ + comp_;
  if (s <= 0.0) return -std::numeric_limits<double>::infinity();
  return max_ + std::log(s);
}

double LogSumAccumulator::value() const noexcept { return std::exp(log()); }

std::vector<double> log_factorials(std::size_t n) {
  std::vector<double> lf(n + 1);
  for (std::size_t i = 0; i <= n; ++i) lf[i] = std::lgamma(static_cast<double>(i) + 1.0);
  return lf;
}

namespace {

// log(n!) - log(sqrt(2 pi n) (n / e)^n), following Loader's saddle-point method.
double stirling_error(double n) {
  constexpr double s0 = 1.0 / 12, s1 = 1.0 / 360, s2 = 1.0 / 1260, s3 = 1.0 / 1680, s4 = 1.0 / 1188;
  if (n <= 15.0) return std::lgamma(n + 1.0) - (n + 0.5) * std::log(n) + n - 0.5 * std::log(2.0 * std::numbers::pi);
  const double nn = n * n;
  if (n > 500) return (s0 - s1 / nn) / n;
  if (n > 80) return (s0 - (s1 - s2 / nn) / nn) / n;
  if (n > 35) return (s0 - (s1 - (s2 - s3 / nn) / nn) / nn) / n;
  return (s0 - (s1 - (s2 - (s3 - s4 / nn) / nn) / nn) / nn) / n;
}

// x log(x / m) + m - x without cancellation near x = m.
double deviance_term(double x, double m) {
  if (std::abs(x - m) < 0.1 * (x + m)) {
    double v = (x - m) / (x + m);
    double s = (x - m) * v;
    double ej = 2.0 * x * v;
    v *= v;
    for (int j = 1; j < 1000; ++j) {
      ej *= v;
      const double next = s + ej / (2 * j + 1);
      if (next == s) return next;
      s = next;
    }
    return s;
  }
  return x * std::log(x / m) + m - x;
}

}  // namespace

double log_binomial_pmf(std::size_t n, std::size_t k, double p) {
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  if (k > n) return kNegInf;
  if (p <= 0.0) return k == 0 ? 0.0 : kNegInf;
  if (p >= 1.0) return k == n ? 0.0 : kNegInf;
  const double dn = static_cast<double>(n), dk = static_cast<double>(k);
  if (k == 0) return dn * std::log1p(-p);
  if (k == n) return dn * std::log(p);
  const double q = 1.0 - p;
  const double lc = stirling_error(dn) - stirling_error(dk) - stirling_error(dn - dk) - deviance_term(dk, dn * p) -
                    deviance_term(dn - dk, dn * q);
  return lc - 0.5 * (std::log(2.0 * std::numbers::pi) + std::log(dk) + std::log1p(-dk / dn));
}

namespace {

// Sums pmf over [lo, hi] walking the recurrence pmf(k+1)/pmf(k) from the
// largest term outward, which keeps every term relative to the maximum.
double log_pmf_range(std::size_t n, std::size_t lo, std::size_t hi, double p) {
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  if (lo > hi || lo > n) return kNegInf;
  hi = std::min(hi, n);
  if (p <= 0.0) return lo == 0 ? 0.0 : kNegInf;
  if (p >= 1.0) return hi == n ? 0.0 : kNegInf;
  const double mode = std::floor((static_cast<double>(n) + 1.0) * p);
  const std::size_t anchor = std::clamp(static_cast<std::size_t>(std::max(mode, 0.0)), lo, hi);
  const double log_ratio_base = std::log(p) - std::log1p(-p);
  LogSumAccumulator acc;
  const double la = log_binomial_pmf(n, anchor, p);
  acc.add(la);
  double l = la;
  for (std::size_t k = anchor; k < hi; ++k) {
    l += std::log(static_cast<double>(n - k)) - std::log(static_cast<double>(k + 1)) + log_ratio_base;
    acc.add(l);
  }
  l = la;
  for (std::size_t k = anchor; k > lo; --k) {
    l += std::log(static_cast<double>(k)) - std::log(static_cast<double>(n - k + 1)) - log_ratio_base;
    acc.add(l);
  }
  return acc.log();
}

}  // namespace

double log_binomial_cdf(std::size_t n, std::size_t k, double p) { return log_pmf_range(n, 0, k, p); }

double log_binomial_sf(std::size_t n, std::size_t k, double p) {
  if (k == 0) return 0.0;
  return log_pmf_range(n, k, n, p);
}

double binomial_cdf(std::size_t n, std::size_t k, double p) { return std::min(1.0, std::exp(log_binomial_cdf(n, k, p))); }

double binomial_sf(std::size_t n, std::size_t k, double p) { return std::min(1.0, std::exp(log_binomial_sf(n, k, p))); }

}  // namespace otm
