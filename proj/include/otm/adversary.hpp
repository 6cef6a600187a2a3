#pragma once

// Soundness-side experiments against product (per-qubit) attack strategies.

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "otm/protocol.hpp"
#include "otm/qmath.hpp"

namespace otm {

struct GuessPair {
  int g0 = 0;
  int g1 = 0;
};

/// Identical attack applied to every qubit: measure `first` (outcome c), then
/// measure `second[c]` on the post-measurement state (outcome d), and guess
/// (r0[i], r1[i]) = guesses[c][d].
struct ProductStrategy {
  std::string label;
  QubitPovm first;
  std::array<QubitPovm, 2> second;
  std::array<std::array<GuessPair, 2>, 2> guesses{};
  /// The oracle the strategy is honest about wanting; the other one is attacked.
  int target_alpha = 0;
};

/// One measurement; guesses depend on its outcome only.
ProductStrategy single_measurement_strategy(std::string label, const QubitPovm& povm,
                                            std::array<GuessPair, 2> guess_by_outcome, int target_alpha = 0);
/// Z-basis measurement, both guesses equal to the outcome.
ProductStrategy z_basis_strategy();
/// Uninformative POVM (I/2, I/2) with constant guesses 0.
ProductStrategy trivial_strategy();
/// Projective measurement onto psi_theta / psi_theta^perp.
ProductStrategy angle_strategy(double theta, std::array<GuessPair, 2> guess_by_outcome);
/// Recover b0 with `first` (guess0 = c), then guess b1 with an X-basis
/// measurement of the disturbed state (guess1 = d).
ProductStrategy sequential_strategy(std::string label, const QubitPovm& first);

/// Per-qubit joint correctness distribution, averaged over uniform (r0[i], r1[i]).
struct PerBitJoint {
  double both = 0.0;
  double only0 = 0.0;
  double only1 = 0.0;
  double neither = 0.0;

  double q0() const noexcept { return both + only0; }
  double q1() const noexcept { return both + only1; }
};

PerBitJoint per_bit_joint(const ProductStrategy& strategy);

inline constexpr double kProfileThreshold = 0.83;

struct SuccessProfile {
  std::vector<double> p;
  double threshold = kProfileThreshold;
  std::vector<std::size_t> set_lo;  // p_i < threshold
  std::vector<std::size_t> set_hi;  // p_i >= threshold

  static SuccessProfile from_probabilities(std::vector<double> p, double threshold = kProfileThreshold);
};

/// Exact p_i = P[guess_alpha = r_alpha[i]]; identical across i for product strategies.
SuccessProfile profile_of(const ProductStrategy& strategy, int alpha, std::size_t n);

struct LemmaBound {
  double mean_cap = 0.0;
  bool holds = false;
};

/// 0.854 * 3/5 + 0.83 * 2/5 against the 0.845 cap.
LemmaBound lemma_acc_input_bound();
/// exp(-(0.85 n - 0.845 n)^2 / (2n)).
double lemma_exponent_bound(std::size_t n);
double log_lemma_exponent_bound(std::size_t n);

struct SoundnessFraction {
  double fraction = 0.0;
  bool holds = false;
};

/// 2/5 + 7/10 * 3/5 against the 0.85 acceptance fraction.
SoundnessFraction soundness_fraction();
/// Mean per-bit success cap when bits outside the high set are guessed
/// perfectly and bits inside it with probability hi_cap.
double per_bit_mean_cap(double hi_cap);

struct HybridReport {
  std::string strategy_label;
  std::size_t n = 0;
  std::size_t trials = 0;  // 0 for exact reports
  double p_unlock0 = 0.0;
  double p_unlock1 = 0.0;
  double p_unlock_both = 0.0;
  double sim_total_variation = 0.0;
};

/// Number of correct bits needed to unlock: n - floor(0.15 n).
std::size_t unlock_requirement(std::size_t n) noexcept;

/// log P[A >= k and B >= k] where the per-bit (A, B) indicators follow `joint`.
double log_joint_unlock_probability(const PerBitJoint& joint, std::size_t n, std::size_t k);

/// Exact unlock probabilities for a product strategy querying each oracle once
/// with its guess string. The simulated view differs from the real one exactly
/// when the non-target oracle accepts, so sim_total_variation = p_unlock of
/// that oracle.
HybridReport attack_unlock_probs(const ProductStrategy& strategy, std::size_t n);

/// The projective measurement (0.01 degree sweep by default) and outcome-to-
/// guess map that maximize min(q0, q1).
ProductStrategy best_single_angle_strategy(double step_degrees = 0.01);

struct CorollaryCheck {
  double q0 = 0.0;
  double q1 = 0.0;
  bool applies = false;  // q0 >= 0.83
  bool holds = true;     // !applies || q1 <= 0.65 + 1e-6
};

CorollaryCheck corollary_check(const ProductStrategy& strategy);

// ---------------------------------------------------------------------------
// Interactive experiments

/// Measurement-only access to a product state. Each measurement applies the
/// Lueders update and consumes one keyed random draw.
class QubitRegister {
 public:
  QubitRegister(std::vector<HermitianOp2> states, CounterRng rng);

  std::size_t size() const noexcept { return states_.size(); }
  int measure(std::size_t i, const QubitPovm& povm);

 private:
  std::vector<HermitianOp2> states_;
  CounterRng rng_;
  std::uint64_t draws_ = 0;
};

struct QueryLogEntry {
  int oracle_id = 0;
  bool accepted = false;
};

/// The adversary's handle on the two oracles. Keeps a combined query log.
class OracleAccess {
 public:
  OracleAccess(FuzzyLockOracle& oracle0, FuzzyLockOracle& oracle1);

  std::optional<Message> query(int oracle_id, const BitString& x);
  std::size_t n() const noexcept { return oracle0_->n(); }
  const std::vector<QueryLogEntry>& log() const noexcept { return log_; }

 private:
  FuzzyLockOracle* oracle0_;
  FuzzyLockOracle* oracle1_;
  std::vector<QueryLogEntry> log_;
};

/// Hybrid positions in a combined query log: the first accepting query to
/// either oracle, and the first later accepting query to the other oracle.
struct HybridIndices {
  std::optional<std::size_t> first_accepting;
  std::optional<int> first_oracle;
  std::optional<std::size_t> first_accepting_other;
};

HybridIndices hybrid_indices(const std::vector<QueryLogEntry>& log);

class Adversary {
 public:
  virtual ~Adversary() = default;

  virtual std::string label() const = 0;
  virtual int target_alpha() const { return 0; }
  /// Upper bound on replies returned by run(); the output alphabet is
  /// 4^max_queries (each reply is bottom, m_target, m_other or other).
  virtual std::size_t max_queries() const = 0;
  /// Exact probability of an accepting query to oracle 1 - target_alpha.
  virtual double exact_accepting_probability(std::size_t n) const = 0;
  virtual std::vector<std::optional<Message>> run(QubitRegister& qubits, OracleAccess& oracles,
                                                  RngStream& coins) const = 0;
};

inline constexpr std::uint64_t kMaxOutputAlphabet = std::uint64_t{1} << 16;

/// 4^max_queries, saturating.
std::uint64_t output_alphabet_size(const Adversary& adversary);

std::unique_ptr<Adversary> make_honest_reader(int alpha);
/// Honest read of oracle 0 plus one query to oracle 1 with a uniform string.
std::unique_ptr<Adversary> make_random_query_adversary();
std::unique_ptr<Adversary> make_null_adversary();
/// Measures with the strategy and queries the target oracle, then the other.
std::unique_ptr<Adversary> make_product_adversary(ProductStrategy strategy);

/// The adversaries the experiment CLI runs by default.
std::vector<std::unique_ptr<Adversary>> builtin_adversaries();

struct ExperimentMessages {
  Message m0 = Message::from_text("one-time memory: message zero");
  Message m1 = Message::from_text("one-time memory: message one");
};

/// Runs the adversary against real instances and against the simulator's
/// instances (m_{1-alpha} replaced by a uniform message, oracle 1 - alpha in
/// null mode). Both worlds share per-trial seeds. Reports the empirical
/// total variation between the output distributions and real-world unlock
/// rates. Throws Error(OutputSpaceTooLarge) when the alphabet exceeds 2^16.
HybridReport simulator_experiment(const Adversary& adversary, std::size_t n, std::size_t trials,
                                  std::uint64_t seed, unsigned workers = 1, const ExperimentMessages& messages = {});

/// exact + 3 sqrt(exact (1 - exact) / trials).
double simulator_tv_allowance(double exact_accepting_probability, std::size_t trials);

}  // namespace otm
