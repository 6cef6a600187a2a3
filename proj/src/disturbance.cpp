#include "otm/disturbance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "otm/error.hpp"
#include "otm/nelder_mead.hpp"
#include "otm/parallel.hpp"
#include "otm/qrac.hpp"

namespace otm {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Evaluation of a point that is already known to be a valid POVM.
struct Evaluation {
  double objective = 0.0;
  int argmax_b0 = 0;
  double constraint = 0.0;
};

Evaluation evaluate(const PovmParams& p) {
  const ObjectiveValue o = objective(p);
  return {o.value, o.argmax_b0, constraint(p)};
}

// Fixed chunk count for deterministic reductions independent of workers.
constexpr std::size_t kReduceChunks = 256;

}  // namespace

double PovmParams::radius() const noexcept { return std::sqrt(vx * vx + vy * vy + vz * vz); }

bool PovmParams::feasible(double tol) const noexcept {
  const double r = radius();
  return std::isfinite(a0) && std::isfinite(r) && a0 - r >= -tol && a0 + r <= 1.0 + tol;
}

QubitPovm PovmParams::povm() const {
  if (!feasible()) throw Error(ErrorCode::InfeasiblePovm, "PovmParams: E0 outside [0, I]");
  return QubitPovm::from_effect(HermitianOp2::from_bloch(a0, BlochVector{vx, vy, vz}));
}

PovmParams PovmParams::repaired() const noexcept {
  PovmParams p = *this;
  p.a0 = std::clamp(std::isfinite(a0) ? a0 : 0.5, 0.0, 1.0);
  const double cap = std::min(p.a0, 1.0 - p.a0);
  const double r = radius();
  if (!std::isfinite(r)) {
    p.vx = p.vy = p.vz = 0.0;
  } else if (r > cap) {
    const double s = r > 0.0 ? cap / r : 0.0;
    p.vx *= s;
    p.vy *= s;
    p.vz *= s;
  }
  return p;
}

PovmParams z_basis_params() noexcept { return {0.5, 0.0, 0.0, 0.5}; }
PovmParams trivial_params() noexcept { return {0.5, 0.0, 0.0, 0.0}; }

ObjectiveValue objective(const PovmParams& params) {
  const QubitPovm povm = params.povm();
  ObjectiveValue best{-1.0, 0};
  for (int b0 = 0; b0 < 2; ++b0) {
    const double t = trace_distance(post_measurement_mixture(povm, encode(b0, 0).rho),
                                    post_measurement_mixture(povm, encode(b0, 1).rho));
    if (t > best.value) best = {t, b0};
  }
  best.value = std::clamp(best.value, 0.0, 1.0);
  return best;
}

double constraint(const PovmParams& params) {
  const QubitPovm povm = params.povm();
  return 0.5 * (trace_product(povm.e0(), mixture_rho(0)) + trace_product(povm.e1(), mixture_rho(1)));
}

std::string_view to_string(SolverKind kind) noexcept {
  switch (kind) {
    case SolverKind::multistart: return "multistart";
    case SolverKind::evolution: return "evolution";
    case SolverKind::net: return "net";
  }
  return "unknown";
}

PovmParams sample_feasible_params(RngStream& rng) {
  const double a0 = rng.next_uniform();
  // Marsaglia's method for a uniform direction on the sphere.
  double u = 0.0, w = 0.0, s = 2.0;
  while (s >= 1.0 || s == 0.0) {
    u = rng.next_uniform(-1.0, 1.0);
    w = rng.next_uniform(-1.0, 1.0);
    s = u * u + w * w;
  }
  const double k = 2.0 * std::sqrt(1.0 - s);
  const double r = rng.next_uniform() * std::min(a0, 1.0 - a0);
  return {a0, r * u * k, r * w * k, r * (1.0 - 2.0 * s)};
}

// ---------------------------------------------------------------------------
// Multistart simplex refinement

namespace {

struct RestartOutcome {
  PovmParams params;
  Evaluation eval;
  bool feasible = false;
};

// Moves a point that misses the threshold by at most kConstraintTol toward
// the Z-basis POVM until it meets the threshold exactly. Convex combinations
// of valid POVMs stay valid.
PovmParams lift_to_threshold(const PovmParams& p, double threshold) {
  if (constraint(p) >= threshold || constraint(p) < threshold - kConstraintTol) return p;
  const PovmParams z = z_basis_params();
  if (constraint(z) < threshold) return p;
  auto blend = [&](double t) {
    return PovmParams{p.a0 + t * (z.a0 - p.a0), p.vx + t * (z.vx - p.vx), p.vy + t * (z.vy - p.vy),
                      p.vz + t * (z.vz - p.vz)};
  };
  double lo = 0.0, hi = 1.0;
  for (int k = 0; k < 200 && hi - lo > 0.0; ++k) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (constraint(blend(mid)) >= threshold ? hi : lo) = mid;
  }
  return blend(hi);
}

RestartOutcome refine_once(const PovmParams& start, const MultistartConfig& cfg) {
  double weight = cfg.penalty_weight;
  auto penalized = [&](const std::array<double, 4>& x) {
    const PovmParams raw = PovmParams::from_array(x);
    const PovmParams p = raw.repaired();
    const Evaluation e = evaluate(p);
    double dist = 0.0;
    for (std::size_t k = 0; k < 4; ++k) dist += std::pow(x[k] - p.to_array()[k], 2);
    return -e.objective + weight * std::max(0.0, cfg.threshold - e.constraint) + 10.0 * std::sqrt(dist);
  };
  SimplexOptions opt{cfg.initial_step, cfg.relative_tolerance, cfg.max_iterations};

  PovmParams current = start.repaired();
  for (int escalation = 0;; ++escalation) {
    auto r = nelder_mead<4>(penalized, current.to_array(), opt);
    // A second pass from the converged point guards against a collapsed simplex.
    opt.initial_step = cfg.initial_step * 0.1;
    r = nelder_mead<4>(penalized, r.x, opt);
    current = PovmParams::from_array(r.x).repaired();
    const double violation = cfg.threshold - constraint(current);
    if (violation <= cfg.escalation_violation || escalation >= cfg.max_escalations) break;
    weight *= 2.0;
  }
  RestartOutcome out;
  out.params = lift_to_threshold(current, cfg.threshold);
  out.eval = evaluate(out.params);
  out.feasible = out.eval.constraint >= cfg.threshold;
  return out;
}

}  // namespace

OptimizationReport solve_multistart(std::size_t restarts, std::uint64_t seed, const MultistartConfig& config) {
  if (restarts < 1) throw std::invalid_argument("solve_multistart: restarts must be >= 1");
  const auto t0 = Clock::now();
  const CounterRng root = CounterRng(seed).child(stream_tag("multistart"));
  std::vector<RestartOutcome> outcomes(restarts);
  parallel_for(restarts, config.workers, [&](std::size_t i) {
    PovmParams start;
    if (config.start) {
      start = *config.start;
    } else {
      RngStream rng(root.child(i));
      start = sample_feasible_params(rng);
    }
    outcomes[i] = refine_once(start, config);
  });

  const RestartOutcome* best = nullptr;
  for (const auto& o : outcomes)
    if (o.feasible && (!best || o.eval.objective > best->eval.objective)) best = &o;
  if (!best) throw Error(ErrorCode::NoFeasiblePoint, "solve_multistart: no restart ended feasible");

  OptimizationReport rep;
  rep.best_params = best->params;
  rep.objective = best->eval.objective;
  rep.constraint_value = best->eval.constraint;
  rep.argmax_b0 = best->eval.argmax_b0;
  rep.solver = SolverKind::multistart;
  rep.restarts_or_generations = restarts;
  rep.seed = seed;
  rep.wall_time = seconds_since(t0);
  return rep;
}

// ---------------------------------------------------------------------------
// Differential evolution

namespace {

struct Member {
  PovmParams params;
  Evaluation eval;
  double violation = 0.0;
  bool feasible() const noexcept { return violation <= 0.0; }
};

Member make_member(const PovmParams& p, double threshold) {
  Member m{p, evaluate(p), 0.0};
  m.violation = std::max(0.0, threshold - m.eval.constraint);
  return m;
}

// Feasibility-first comparison: does `a` at least match `b`?
bool at_least_as_good(const Member& a, const Member& b) {
  if (a.feasible() != b.feasible()) return a.feasible();
  if (a.feasible()) return a.eval.objective >= b.eval.objective;
  return a.violation <= b.violation;
}

bool strictly_better(const Member& a, const Member& b) {
  if (a.feasible() != b.feasible()) return a.feasible();
  if (a.feasible()) return a.eval.objective > b.eval.objective;
  return a.violation < b.violation;
}

}  // namespace

OptimizationReport solve_evolution(std::size_t generations_max, std::size_t population, std::uint64_t seed,
                                   const EvolutionConfig& cfg) {
  if (population < 8) throw std::invalid_argument("solve_evolution: population must be >= 8");
  const auto t0 = Clock::now();
  const CounterRng root = CounterRng(seed).child(stream_tag("evolution"));

  std::vector<Member> pop;
  pop.reserve(population);
  for (std::size_t i = 0; i < population; ++i) {
    PovmParams p;
    if (cfg.initial_point) {
      p = cfg.initial_point->repaired();
    } else {
      RngStream rng(root.child(stream_tag("init")).child(i));
      p = sample_feasible_params(rng);
    }
    pop.push_back(make_member(p, cfg.threshold));
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < population; ++i)
    if (strictly_better(pop[i], pop[best])) best = i;

  std::size_t gen = 0;
  const CounterRng gen_root = root.child(stream_tag("generations"));
  while (gen < generations_max) {
    const CounterRng g = gen_root.child(gen);
    ++gen;
    RngStream grng(g.child(stream_tag("weight")));
    const double weight = cfg.mutation_lo + (cfg.mutation_hi - cfg.mutation_lo) * grng.next_uniform();
    for (std::size_t i = 0; i < population; ++i) {
      RngStream rng(g.child(i));
      std::size_t r1, r2;
      do r1 = rng.next_below(population); while (r1 == i);
      do r2 = rng.next_below(population); while (r2 == i || r2 == r1);
      const auto xb = pop[best].params.to_array();
      const auto x1 = pop[r1].params.to_array();
      const auto x2 = pop[r2].params.to_array();
      auto trial = pop[i].params.to_array();
      const std::size_t forced = rng.next_below(4);
      for (std::size_t k = 0; k < 4; ++k) {
        const double u = rng.next_uniform();
        if (k == forced || u < cfg.crossover) trial[k] = xb[k] + weight * (x1[k] - x2[k]);
      }
      Member cand = make_member(PovmParams::from_array(trial).repaired(), cfg.threshold);
      if (at_least_as_good(cand, pop[i])) {
        pop[i] = cand;
        if (strictly_better(pop[i], pop[best])) best = i;
      }
    }
    bool all_feasible = true;
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (const auto& m : pop) {
      all_feasible = all_feasible && m.feasible();
      lo = std::min(lo, m.eval.objective);
      hi = std::max(hi, m.eval.objective);
    }
    if (all_feasible && hi - lo <= cfg.tolerance) break;
  }

  if (!pop[best].feasible()) throw Error(ErrorCode::NoFeasiblePoint, "solve_evolution: no feasible member");
  OptimizationReport rep;
  rep.best_params = pop[best].params;
  rep.objective = pop[best].eval.objective;
  rep.constraint_value = pop[best].eval.constraint;
  rep.argmax_b0 = pop[best].eval.argmax_b0;
  rep.solver = SolverKind::evolution;
  rep.restarts_or_generations = gen;
  rep.seed = seed;
  rep.wall_time = seconds_since(t0);
  return rep;
}

// ---------------------------------------------------------------------------
// Grid certifier

CertifierSummary certify_net(double grid_step, double threshold, unsigned workers) {
  if (!(grid_step > 0.0 && grid_step <= 0.25))
    throw std::invalid_argument("certify_net: grid_step must lie in (0, 0.25]");
  const std::size_t na = static_cast<std::size_t>(std::floor(1.0 / grid_step + 1e-9)) + 1;
  const std::size_t nv = static_cast<std::size_t>(std::floor(2.0 / grid_step + 1e-9)) + 1;

  struct Shard {
    std::size_t feasible = 0;
    double best = -1.0;
    PovmParams arg;
    int arg_b0 = 0;
  };
  std::vector<Shard> shards(na);
  parallel_for(na, workers, [&](std::size_t ia) {
    Shard& s = shards[ia];
    const double a0 = static_cast<double>(ia) * grid_step;
    for (std::size_t ix = 0; ix < nv; ++ix)
      for (std::size_t iy = 0; iy < nv; ++iy)
        for (std::size_t iz = 0; iz < nv; ++iz) {
          const PovmParams p{a0, -1.0 + static_cast<double>(ix) * grid_step,
                             -1.0 + static_cast<double>(iy) * grid_step,
                             -1.0 + static_cast<double>(iz) * grid_step};
          if (!p.feasible()) continue;
          if (constraint(p) < threshold) continue;
          ++s.feasible;
          const ObjectiveValue o = objective(p);
          if (o.value > s.best) {
            s.best = o.value;
            s.arg = p;
            s.arg_b0 = o.argmax_b0;
          }
        }
  });

  CertifierSummary sum;
  sum.grid_step = grid_step;
  sum.points_total = na * nv * nv * nv;
  double best = -1.0;
  for (const auto& s : shards) {
    sum.points_feasible += s.feasible;
    if (s.feasible > 0 && s.best > best) {
      best = s.best;
      sum.net_argmax = s.arg;
      sum.net_argmax_b0 = s.arg_b0;
    }
  }
  sum.net_max = std::max(best, 0.0);
  return sum;
}

double guess_bound(double objective_bound) {
  if (!(objective_bound >= 0.0 && objective_bound <= 1.0))
    throw std::invalid_argument("guess_bound: bound must lie in [0, 1]");
  return 0.5 * (1.0 + objective_bound);
}

ClaimInstance verify_claim_instance(const PovmParams& params, double threshold) {
  const Evaluation e = evaluate(params);
  return {e.constraint, e.objective, e.constraint < threshold || e.objective <= kConjecturedObjectiveBound};
}

ClaimSweep sweep_claim(std::size_t samples, std::uint64_t seed, double threshold, unsigned workers) {
  const CounterRng root = CounterRng(seed).child(stream_tag("claim-sweep"));
  std::vector<ClaimSweep> parts(kReduceChunks);
  parallel_for(kReduceChunks, workers, [&](std::size_t c) {
    ClaimSweep& part = parts[c];
    part.max_objective_when_met = -1.0;
    const std::size_t begin = samples * c / kReduceChunks;
    const std::size_t end = samples * (c + 1) / kReduceChunks;
    for (std::size_t i = begin; i < end; ++i) {
      RngStream rng(root.child(i));
      const PovmParams p = sample_feasible_params(rng);
      const ClaimInstance ci = verify_claim_instance(p, threshold);
      ++part.samples;
      if (ci.constraint >= threshold) {
        ++part.constraint_met;
        if (ci.objective > part.max_objective_when_met) {
          part.max_objective_when_met = ci.objective;
          part.worst = p;
        }
      }
      if (!ci.claim_holds) ++part.violations;
    }
  });
  ClaimSweep total;
  total.max_objective_when_met = -1.0;
  for (const auto& p : parts) {
    total.samples += p.samples;
    total.constraint_met += p.constraint_met;
    total.violations += p.violations;
    if (p.max_objective_when_met > total.max_objective_when_met) {
      total.max_objective_when_met = p.max_objective_when_met;
      total.worst = p.worst;
    }
  }
  total.max_objective_when_met = std::max(total.max_objective_when_met, 0.0);
  return total;
}

}  // namespace otm
