// Acceptance gate: one PASS/FAIL line per criterion, exit 1 if any fails.

#include <algorithm>
#include <boost/math/distributions/binomial.hpp>
#include <cmath>
#include <filesystem>
#include <fmt/core.h>
#include <functional>
#include <map>
#include <numbers>
#include <thread>

#include "otm/adversary.hpp"
#include "otm/bounds.hpp"
#include "otm/disturbance.hpp"
#include "otm/experiments.hpp"
#include "otm/parallel.hpp"
#include "otm/protocol.hpp"
#include "otm/qrac.hpp"

using namespace otm;
namespace fs = std::filesystem;

namespace {

const double kCos2 = std::pow(std::cos(std::numbers::pi / 8), 2);
const unsigned kWorkers = std::max(2u, std::thread::hardware_concurrency());

struct Outcome {
  bool pass = true;
  std::string detail;
};

void require(Outcome& o, bool ok, const std::string& what) {
  if (!ok) {
    o.pass = false;
    o.detail += (o.detail.empty() ? "" : "; ") + std::string("failed: ") + what;
  }
}

void note(Outcome& o, const std::string& what) { o.detail += (o.detail.empty() ? "" : "; ") + what; }

Outcome qrac_optimum() {
  Outcome o;
  double worst = 0.0;
  for (int b0 = 0; b0 < 2; ++b0)
    for (int b1 = 0; b1 < 2; ++b1)
      for (int alpha = 0; alpha < 2; ++alpha)
        worst = std::max(worst, std::abs(decode_prob(alpha, encode(b0, b1)) - kCos2));
  require(o, worst <= 1e-12, "matching decode equals cos^2(pi/8)");
  note(o, fmt::format("max deviation {:.3g}", worst));
  return o;
}

Outcome program_reproduction() {
  Outcome o;
  MultistartConfig mc;
  mc.workers = kWorkers;
  const OptimizationReport ms = solve_multistart(1000, 1, mc);
  const OptimizationReport de = solve_evolution(10000, kEvolutionPopulation, 1);
  for (const auto* r : {&ms, &de}) {
    require(o, r->objective >= 0.24 && r->objective <= 0.27, "objective in [0.24, 0.27]");
    require(o, r->constraint_value >= 0.83, "constraint >= 0.83");
  }
  require(o, std::abs(ms.objective - de.objective) <= 0.01, "solvers agree within 0.01");
  note(o, fmt::format("multistart {:.10f}, evolution {:.10f} after {} generations", ms.objective, de.objective,
                      de.restarts_or_generations));
  return o;
}

Outcome conjecture_evidence() {
  Outcome o;
  const CertifierSummary net = certify_net(0.05, kDefaultRecoveryThreshold, kWorkers);
  require(o, net.points_feasible > 0, "net has a threshold-meeting point");
  require(o, net.net_max <= 0.30, "net_max <= 0.30");
  const ClaimSweep sweep = sweep_claim(1000000, 2, kDefaultRecoveryThreshold, kWorkers);
  require(o, sweep.violations == 0, "claim holds on 10^6 sampled POVMs");
  note(o, fmt::format("net points {}, feasible {}, net_max {}; sweep met {}, max {:.4f}", net.points_total,
                      net.points_feasible, net.net_max, sweep.constraint_met, sweep.max_objective_when_met));
  return o;
}

Outcome projective_collapse() {
  Outcome o;
  const PovmParams z = z_basis_params();
  require(o, std::abs(objective(z).value) <= 1e-10, "objective 0");
  require(o, std::abs(constraint(z) - kCos2) <= 1e-10, "constraint cos^2(pi/8)");
  require(o, constraint(z) >= 0.83, "constraint >= 0.83");
  return o;
}

Outcome correctness_tails() {
  Outcome o;
  constexpr std::size_t n = 20, trials = 100000, chunks = 64;
  const ExperimentMessages messages;
  std::vector<std::size_t> hits(chunks, 0);
  const CounterRng root(3);
  parallel_for(chunks, kWorkers, [&](std::size_t c) {
    for (std::size_t t = trials * c / chunks; t < trials * (c + 1) / chunks; ++t) {
      const CounterRng trial = root.child(t);
      OtmInstance inst = otm_prep(n, messages.m0, messages.m1, trial.bits(0));
      const int alpha = static_cast<int>(t & 1);
      const auto reply = otm_read(inst, alpha, trial.child(1));
      if (reply && *reply == (alpha == 0 ? messages.m0 : messages.m1)) ++hits[c];
    }
  });
  std::size_t total = 0;
  for (auto h : hits) total += h;
  const double mc = static_cast<double>(total) / trials;
  const double exact = honest_success_exact(n);
  const double sigma = std::sqrt(exact * (1 - exact) / trials);
  require(o, std::abs(mc - exact) <= 3 * sigma, "Monte Carlo within 3 sigma at n=20");
  require(o, honest_success_exact(1000000) >= 1 - 1e-6, "success at n=10^6 >= 1 - 1e-6");
  const std::size_t crossover = correctness_crossover(1e-6);
  note(o, fmt::format("n=20 exact {:.5f} mc {:.5f}; failure <= 1e-6 from n={}", exact, mc, crossover));
  return o;
}

Outcome proof_constants() {
  Outcome o;
  const LemmaBound l = lemma_acc_input_bound();
  require(o, std::abs(l.mean_cap - 0.8444) <= 1e-12 && l.mean_cap <= 0.845, "lemma cap 0.8444");
  require(o, std::abs(guess_bound(0.3) - 0.65) <= 1e-12, "guess bound 0.65");
  const SoundnessFraction f = soundness_fraction();
  require(o, std::abs(f.fraction - 0.82) <= 1e-12 && f.fraction <= 0.85, "soundness fraction 0.82");
  return o;
}

Outcome adversary_tails() {
  Outcome o;
  const double p = attack_unlock_probs(z_basis_strategy(), 100).p_unlock1;
  const double oracle = boost::math::cdf(boost::math::complement(boost::math::binomial(100, 0.5), 84));
  require(o, std::abs(p / oracle - 1) <= 1e-6, "p_unlock1 matches cumulative binomial");
  double previous = 1.0;
  for (std::size_t n = 20; n <= 200; n += 20) {
    const double q = attack_unlock_probs(z_basis_strategy(), n).p_unlock1;
    require(o, q <= previous, fmt::format("nonincreasing at n={}", n));
    previous = q;
  }
  note(o, fmt::format("p_unlock1(100) = {:.6e}", p));
  return o;
}

Outcome simulator_indistinguishability() {
  Outcome o;
  constexpr std::size_t trials = 100000;
  for (const auto& a : builtin_adversaries()) {
    const HybridReport r = simulator_experiment(*a, 100, trials, 4, kWorkers);
    const double exact = a->exact_accepting_probability(100);
    require(o, r.sim_total_variation <= simulator_tv_allowance(exact, trials), a->label());
    note(o, fmt::format("{} tv {:.4g}", a->label(), r.sim_total_variation));
  }
  return o;
}

Outcome azuma_tails() {
  Outcome o;
  const auto grid = standard_t_grid(1000);
  std::size_t checks = 0;
  for (const auto& rule : builtin_adaptive_rules()) {
    for (double cap : {0.5, 0.854}) {
      for (const auto& c : verify_tail(constant_cap_spec(1000, cap, rule), grid, 100000, 5, kWorkers)) {
        require(o, c.passed, fmt::format("{} cap {} t {:.3f}", rule.name, cap, c.t));
        ++checks;
      }
    }
  }
  const double spot = azuma_supermartingale_bound(100, 10);
  require(o, std::abs(spot - std::exp(-0.5)) <= 1e-12, "bound exp(-0.5) at (100, 10)");
  note(o, fmt::format("{} tail checks; spot {:.5f}", checks, spot));
  return o;
}

std::map<std::string, std::string> run_pipeline(const ExperimentConfig& config, unsigned workers) {
  for (const auto& cmd : pipeline_commands()) run_command(cmd, config, {workers, false});
  run_command("report", config, {workers, false});
  std::map<std::string, std::string> files;
  for (const auto& e : fs::directory_iterator(config.output_dir))
    files[e.path().filename().string()] = read_text_file(e.path().string());
  return files;
}

Outcome determinism() {
  Outcome o;
  ExperimentConfig config;
  config.output_dir = (fs::temp_directory_path() / "otm-acceptance-determinism").string();
  fs::remove_all(config.output_dir);
  const auto first = run_pipeline(config, 1);
  const auto second = run_pipeline(config, kWorkers);
  require(o, first.size() == second.size(), "same file set");
  for (const auto& [name, bytes] : first) {
    const auto it = second.find(name);
    require(o, it != second.end() && it->second == bytes, name + " identical");
  }
  note(o, fmt::format("{} files compared, workers 1 vs {}", first.size(), kWorkers));
  fs::remove_all(config.output_dir);
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"qrac optimum", qrac_optimum},
      {"disturbance optimum reproduction", program_reproduction},
      {"objective bound evidence", conjecture_evidence},
      {"projective collapse witness", projective_collapse},
      {"correctness tails", correctness_tails},
      {"proof constants", proof_constants},
      {"adversary tails", adversary_tails},
      {"simulator indistinguishability", simulator_indistinguishability},
      {"adaptive tail bounds", azuma_tails},
      {"determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    fmt::print("{} {:2} {}: {}\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail);
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
