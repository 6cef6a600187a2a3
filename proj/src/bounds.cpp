#include "otm/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "otm/parallel.hpp"
#include "otm/random.hpp"

namespace otm {

double log_azuma_supermartingale_bound(std::size_t n, double t) {
  if (n < 1) throw std::invalid_argument("azuma bound: n must be >= 1");
  if (!(t >= 0.0)) throw std::invalid_argument("azuma bound: t must be >= 0");
  return -(t * t) / (2.0 * static_cast<double>(n));
}

double azuma_supermartingale_bound(std::size_t n, double t) {
  return std::exp(log_azuma_supermartingale_bound(n, t));
}

std::vector<AdaptiveRule> builtin_adaptive_rules() {
  return {
      {"saturating", [](const History&, double cap) { return cap; }},
      {"zero", [](const History&, double) { return 0.0; }},
      // Success probability halves after every success so far.
      {"decay-after-success",
       [](const History& h, double cap) { return cap * std::pow(0.5, static_cast<double>(h.successes)); }},
      {"alternating", [](const History& h, double cap) { return h.index % 2 == 0 ? cap : 0.25 * cap; }},
      // Saturates while behind the running mean of caps, idles when ahead.
      {"catch-up",
       [](const History& h, double cap) {
         return static_cast<double>(h.successes) < cap * static_cast<double>(h.index) ? cap : 0.5 * cap;
       }},
  };
}

AdaptiveBernoulliSpec constant_cap_spec(std::size_t n, double cap, AdaptiveRule rule) {
  return {n, std::vector<double>(n, cap), std::move(rule)};
}

bool tail_within_bound(double empirical, double bound, std::size_t trials) {
  return empirical <= bound + 3.0 * std::sqrt(bound * (1.0 - bound) / static_cast<double>(trials));
}

std::vector<double> standard_t_grid(std::size_t n) {
  const double s = std::sqrt(static_cast<double>(n));
  return {0.5 * s, s, 2.0 * s, 3.0 * s};
}

std::vector<TailCheck> verify_tail(const AdaptiveBernoulliSpec& spec, std::span<const double> t_grid,
                                   std::size_t trials, std::uint64_t seed, unsigned workers) {
  if (trials < 1000) throw std::invalid_argument("verify_tail: trials must be >= 1000");
  if (spec.caps.size() != spec.n) throw std::invalid_argument("verify_tail: cap sequence length != n");
  for (double c : spec.caps)
    if (!(c >= 0.0 && c <= 1.0)) throw std::invalid_argument("verify_tail: caps must lie in [0, 1]");

  double cap_sum = 0.0;
  for (double c : spec.caps) cap_sum += c;

  constexpr std::size_t kChunks = 64;
  std::vector<std::vector<std::size_t>> counts(kChunks, std::vector<std::size_t>(t_grid.size(), 0));
  const CounterRng root = CounterRng(seed).child(stream_tag("verify-tail"));
  parallel_for(kChunks, workers, [&](std::size_t c) {
    const std::size_t begin = trials * c / kChunks;
    const std::size_t end = trials * (c + 1) / kChunks;
    for (std::size_t trial = begin; trial < end; ++trial) {
      const CounterRng rng = root.child(trial);
      History h;
      for (std::size_t i = 0; i < spec.n; ++i) {
        h.index = i;
        const double p = std::clamp(spec.rule.probability(h, spec.caps[i]), 0.0, spec.caps[i]);
        const int x = rng.uniform(i) < p ? 1 : 0;
        h.successes += static_cast<std::size_t>(x);
        h.last = x;
      }
      const double deviation = static_cast<double>(h.successes) - cap_sum;
      for (std::size_t j = 0; j < t_grid.size(); ++j)
        if (deviation >= t_grid[j]) ++counts[c][j];
    }
  });

  std::vector<TailCheck> out;
  out.reserve(t_grid.size());
  for (std::size_t j = 0; j < t_grid.size(); ++j) {
    std::size_t hits = 0;
    for (const auto& c : counts) hits += c[j];
    TailCheck tc;
    tc.t = t_grid[j];
    tc.bound = azuma_supermartingale_bound(spec.n, std::max(0.0, t_grid[j]));
    tc.empirical = static_cast<double>(hits) / static_cast<double>(trials);
    tc.trials = trials;
    tc.passed = tail_within_bound(tc.empirical, tc.bound, trials);
    out.push_back(tc);
  }
  return out;
}

}  // namespace otm
