#pragma once

// Supermartingale Azuma-Hoeffding tail bound and Monte Carlo checks of it
// against adaptively chosen Bernoulli processes.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace otm {

/// exp(-t^2 / (2n)): bound on P[sum X_i - sum p_i >= t] when each X_i has
/// conditional success probability at most p_i given the prefix.
double azuma_supermartingale_bound(std::size_t n, double t);
double log_azuma_supermartingale_bound(std::size_t n, double t);

/// What an adaptive rule may look at: the prefix summary before step `index`.
struct History {
  std::size_t index = 0;
  std::size_t successes = 0;
  int last = -1;  // -1 before the first step
};

/// Maps the history and the step's cap to the success probability actually
/// used. The simulator clamps the result to [0, cap].
struct AdaptiveRule {
  std::string name;
  std::function<double(const History&, double cap)> probability;
};

/// Built-in rules: saturating, zero, decay-after-success, alternating,
/// catch-up.
std::vector<AdaptiveRule> builtin_adaptive_rules();

struct AdaptiveBernoulliSpec {
  std::size_t n = 0;
  std::vector<double> caps;
  AdaptiveRule rule;
};

AdaptiveBernoulliSpec constant_cap_spec(std::size_t n, double cap, AdaptiveRule rule);

struct TailCheck {
  double t = 0.0;
  double bound = 0.0;
  double empirical = 0.0;
  std::size_t trials = 0;
  bool passed = false;
};

/// One-sided slack: empirical <= bound + 3 sqrt(bound (1 - bound) / trials).
bool tail_within_bound(double empirical, double bound, std::size_t trials);

/// {0.5, 1, 2, 3} * sqrt(n).
std::vector<double> standard_t_grid(std::size_t n);

/// Simulates sum X_i - sum p_i and checks the empirical tail at each t.
/// Deterministic in seed regardless of worker count. trials must be >= 1000.
std::vector<TailCheck> verify_tail(const AdaptiveBernoulliSpec& spec, std::span<const double> t_grid,
                                   std::size_t trials, std::uint64_t seed, unsigned workers = 1);

}  // namespace otm
