#pragma once

// The disturbance program: over two-outcome qubit POVMs that recover b0 with
// probability at least a threshold (0.83 by default), maximize the trace
// distance between the post-measurement mixtures of encode(b0, 0) and
// encode(b0, 1).

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

#include "otm/qmath.hpp"
#include "otm/random.hpp"

namespace otm {

inline constexpr double kDefaultRecoveryThreshold = 0.83;
/// Slack allowed on the recovery constraint when classifying solver output.
inline constexpr double kConstraintTol = 1e-6;

/// E0 = a0 * I + v . sigma, E1 = I - E0.
struct PovmParams {
  double a0 = 0.5;
  double vx = 0.0;
  double vy = 0.0;
  double vz = 0.0;

  double radius() const noexcept;
  /// a0 - |v| >= -tol and a0 + |v| <= 1 + tol.
  bool feasible(double tol = kPsdTol) const noexcept;
  /// Throws Error(InfeasiblePovm) when not feasible.
  QubitPovm povm() const;
  /// Nearest-in-direction feasible point: a0 clamped to [0, 1], v radially
  /// shrunk to min(a0, 1 - a0).
  PovmParams repaired() const noexcept;

  std::array<double, 4> to_array() const noexcept { return {a0, vx, vy, vz}; }
  static PovmParams from_array(const std::array<double, 4>& x) noexcept { return {x[0], x[1], x[2], x[3]}; }

  friend bool operator==(const PovmParams&, const PovmParams&) = default;
};

/// a0 = 1/2, v = (0, 0, 1/2): the Z-basis projective measurement.
PovmParams z_basis_params() noexcept;
/// E0 = E1 = I/2.
PovmParams trivial_params() noexcept;

struct ObjectiveValue {
  double value = 0.0;
  int argmax_b0 = 0;
};

/// max over b0 of T(M(encode(b0,0)), M(encode(b0,1))) with M the post-measurement
/// mixture. Ties go to b0 = 0. Throws Error(InfeasiblePovm).
ObjectiveValue objective(const PovmParams& params);

/// (Tr[E0 rho0] + Tr[E1 rho1]) / 2. Throws Error(InfeasiblePovm).
double constraint(const PovmParams& params);

enum class SolverKind { multistart, evolution, net };
std::string_view to_string(SolverKind kind) noexcept;

struct OptimizationReport {
  PovmParams best_params;
  double objective = 0.0;
  double constraint_value = 0.0;
  int argmax_b0 = 0;
  SolverKind solver = SolverKind::multistart;
  std::size_t restarts_or_generations = 0;
  std::uint64_t seed = 0;
  double wall_time = 0.0;  // seconds
};

struct MultistartConfig {
  double threshold = kDefaultRecoveryThreshold;
  double penalty_weight = 10.0;
  /// The weight doubles when the violation at convergence exceeds this.
  double escalation_violation = 1e-4;
  int max_escalations = 3;
  double relative_tolerance = 1e-8;
  int max_iterations = 2000;
  double initial_step = 0.05;
  /// When set, every restart starts here instead of at a random point.
  std::optional<PovmParams> start;
  unsigned workers = 1;
};

/// Best feasible result of derivative-free simplex refinements of an exact
/// penalty from random feasible starts. Deterministic in seed regardless of
/// worker count. Throws Error(NoFeasiblePoint) if no restart ends feasible.
OptimizationReport solve_multistart(std::size_t restarts, std::uint64_t seed,
                                    const MultistartConfig& config = {});

struct EvolutionConfig {
  double threshold = kDefaultRecoveryThreshold;
  /// Mutation weight is drawn per generation from [lo, hi].
  double mutation_lo = 0.5;
  double mutation_hi = 1.0;
  double crossover = 0.7;
  /// Stop early once the feasible population's objective spread is below this.
  double tolerance = 1e-12;
  /// When set, the whole initial population is copies of this point.
  std::optional<PovmParams> initial_point;
};

/// Differential evolution (best/1/bin) over (a0, vx, vy, vz). Infeasible trial
/// vectors are repaired; selection uses feasibility-first rules on the recovery
/// constraint. Throws Error(NoFeasiblePoint); throws std::invalid_argument if
/// population < 8.
OptimizationReport solve_evolution(std::size_t generations_max, std::size_t population,
                                   std::uint64_t seed, const EvolutionConfig& config = {});

struct CertifierSummary {
  double grid_step = 0.0;
  std::size_t points_total = 0;
  std::size_t points_feasible = 0;
  double net_max = 0.0;
  PovmParams net_argmax;
  int net_argmax_b0 = 0;
};

/// Exhaustive grid evaluation: a0 over [0, 1] and each v component over
/// [-1, 1] in steps of grid_step. Points that are valid POVMs and meet the
/// threshold are scored. The maximum is evidence, not a bound.
CertifierSummary certify_net(double grid_step, double threshold = kDefaultRecoveryThreshold,
                             unsigned workers = 1);

/// (1 + objective_bound) / 2: best guessing probability for the second bit.
double guess_bound(double objective_bound);

struct ClaimInstance {
  double constraint = 0.0;
  double objective = 0.0;
  bool claim_holds = false;
};

inline constexpr double kConjecturedObjectiveBound = 0.3;

/// The claim holds when the constraint is unmet or the objective is <= 0.3.
ClaimInstance verify_claim_instance(const PovmParams& params,
                                    double threshold = kDefaultRecoveryThreshold);

struct ClaimSweep {
  std::size_t samples = 0;
  std::size_t constraint_met = 0;
  std::size_t violations = 0;
  double max_objective_when_met = 0.0;
  PovmParams worst;
};

/// verify_claim_instance on `samples` uniformly sampled feasible POVMs.
ClaimSweep sweep_claim(std::size_t samples, std::uint64_t seed,
                       double threshold = kDefaultRecoveryThreshold, unsigned workers = 1);

/// a0 ~ U[0,1], direction uniform on the sphere, |v| ~ U[0, min(a0, 1 - a0)].
PovmParams sample_feasible_params(RngStream& rng);

}  // namespace otm
