#include "otm/adversary.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

#include "otm/binomial.hpp"
#include "otm/bounds.hpp"
#include "otm/error.hpp"
#include "otm/parallel.hpp"
#include "otm/qrac.hpp"

namespace otm {

namespace {

QubitPovm trivial_povm() { return QubitPovm::from_effect(0.5 * HermitianOp2::identity()); }

constexpr double kQracCeiling = 0.854;
constexpr double kLowFraction = 0.4;   // |P_{<0.83}| / n
constexpr double kHighFraction = 0.6;  // |P_{>=0.83}| / n
constexpr double kAcceptFraction = 0.85;
constexpr double kLemmaMeanCap = 0.845;
constexpr double kGuessableFraction = 0.7;
constexpr double kCorollaryCap = 0.65;

}  // namespace

ProductStrategy single_measurement_strategy(std::string label, const QubitPovm& povm,
                                            std::array<GuessPair, 2> guess_by_outcome, int target_alpha) {
  const QubitPovm t = trivial_povm();
  return ProductStrategy{std::move(label),
                         povm,
                         {t, t},
                         {{{guess_by_outcome[0], guess_by_outcome[0]}, {guess_by_outcome[1], guess_by_outcome[1]}}},
                         target_alpha};
}

ProductStrategy z_basis_strategy() {
  return single_measurement_strategy("z-basis", decoding_basis(0).effects, {GuessPair{0, 0}, GuessPair{1, 1}});
}

ProductStrategy trivial_strategy() {
  return single_measurement_strategy("trivial", trivial_povm(), {GuessPair{0, 0}, GuessPair{0, 0}});
}

ProductStrategy angle_strategy(double theta, std::array<GuessPair, 2> guess_by_outcome) {
  return single_measurement_strategy("angle", QubitPovm::projective(std::cos(theta), std::sin(theta)),
                                     guess_by_outcome);
}

ProductStrategy sequential_strategy(std::string label, const QubitPovm& first) {
  const QubitPovm x = decoding_basis(1).effects;
  return ProductStrategy{std::move(label),
                         first,
                         {x, x},
                         {{{GuessPair{0, 0}, GuessPair{0, 1}}, {GuessPair{1, 0}, GuessPair{1, 1}}}},
                         0};
}

PerBitJoint per_bit_joint(const ProductStrategy& s) {
  PerBitJoint j;
  for (int b0 = 0; b0 < 2; ++b0)
    for (int b1 = 0; b1 < 2; ++b1) {
      const HermitianOp2& rho = encode(b0, b1).rho;
      for (int c = 0; c < 2; ++c) {
        const HermitianOp2 branch = post_measurement_branch(s.first, c, rho);
        for (int d = 0; d < 2; ++d) {
          const double p = 0.25 * std::max(0.0, trace_product(s.second[c].effect(d), branch));
          const GuessPair g = s.guesses[c][d];
          const bool ok0 = g.g0 == b0, ok1 = g.g1 == b1;
          if (ok0 && ok1) j.both += p;
          else if (ok0) j.only0 += p;
          else if (ok1) j.only1 += p;
          else j.neither += p;
        }
      }
    }
  return j;
}

SuccessProfile SuccessProfile::from_probabilities(std::vector<double> p, double threshold) {
  SuccessProfile sp;
  sp.threshold = threshold;
  for (std::size_t i = 0; i < p.size(); ++i) (p[i] < threshold ? sp.set_lo : sp.set_hi).push_back(i);
  sp.p = std::move(p);
  return sp;
}

SuccessProfile profile_of(const ProductStrategy& strategy, int alpha, std::size_t n) {
  if (alpha != 0 && alpha != 1) throw std::invalid_argument("profile_of: alpha must be 0 or 1");
  const PerBitJoint j = per_bit_joint(strategy);
  return SuccessProfile::from_probabilities(std::vector<double>(n, alpha == 0 ? j.q0() : j.q1()));
}

LemmaBound lemma_acc_input_bound() {
  const double cap = kQracCeiling * kHighFraction + kProfileThreshold * kLowFraction;
  return {cap, cap <= kLemmaMeanCap};
}

double log_lemma_exponent_bound(std::size_t n) {
  const double t = (kAcceptFraction - kLemmaMeanCap) * static_cast<double>(n);
  return log_azuma_supermartingale_bound(n, t);
}

double lemma_exponent_bound(std::size_t n) { return std::exp(log_lemma_exponent_bound(n)); }

SoundnessFraction soundness_fraction() {
  const double f = kLowFraction + kGuessableFraction * kHighFraction;
  return {f, f <= kAcceptFraction};
}

double per_bit_mean_cap(double hi_cap) { return kLowFraction * 1.0 + kHighFraction * hi_cap; }

std::size_t unlock_requirement(std::size_t n) noexcept { return n - FuzzyLockOracle::threshold_for(n); }

double log_joint_unlock_probability(const PerBitJoint& joint, std::size_t n, std::size_t k) {
  const auto lf = log_factorials(n);
  auto lg = [](double p) { return p > 0.0 ? std::log(p) : -std::numeric_limits<double>::infinity(); };
  const double l11 = lg(joint.both), l10 = lg(joint.only0), l01 = lg(joint.only1), l00 = lg(joint.neither);
  auto term = [](std::size_t count, double logp) { return count == 0 ? 0.0 : static_cast<double>(count) * logp; };
  LogSumAccumulator acc;
  // A = n11 + n10, B = n11 + n01.
  for (std::size_t j = 0; j <= n; ++j) {
    const std::size_t need = k > j ? k - j : 0;
    for (std::size_t a = need; a + j <= n; ++a) {
      for (std::size_t b = need; a + b + j <= n; ++b) {
        const std::size_t rest = n - j - a - b;
        const double l = lf[n] - lf[j] - lf[a] - lf[b] - lf[rest] + term(j, l11) + term(a, l10) + term(b, l01) +
                         term(rest, l00);
        acc.add(l);
      }
    }
  }
  return acc.log();
}

HybridReport attack_unlock_probs(const ProductStrategy& strategy, std::size_t n) {
  if (n < 1) throw std::invalid_argument("attack_unlock_probs: n must be >= 1");
  const PerBitJoint j = per_bit_joint(strategy);
  const std::size_t k = unlock_requirement(n);
  HybridReport r;
  r.strategy_label = strategy.label;
  r.n = n;
  r.trials = 0;
  r.p_unlock0 = binomial_sf(n, k, std::clamp(j.q0(), 0.0, 1.0));
  r.p_unlock1 = binomial_sf(n, k, std::clamp(j.q1(), 0.0, 1.0));
  r.p_unlock_both = std::min({std::exp(log_joint_unlock_probability(j, n, k)), r.p_unlock0, r.p_unlock1});
  r.sim_total_variation = strategy.target_alpha == 0 ? r.p_unlock1 : r.p_unlock0;
  return r;
}

ProductStrategy best_single_angle_strategy(double step_degrees) {
  if (!(step_degrees > 0.0)) throw std::invalid_argument("best_single_angle_strategy: step must be positive");
  const std::size_t steps = static_cast<std::size_t>(std::llround(180.0 / step_degrees));
  double best_score = -1.0;
  double best_theta = 0.0;
  std::array<GuessPair, 2> best_map{};
  for (std::size_t s = 0; s < steps; ++s) {
    const double theta = static_cast<double>(s) * step_degrees * std::numbers::pi / 180.0;
    const QubitPovm m = QubitPovm::projective(std::cos(theta), std::sin(theta));
    for (int code = 0; code < 16; ++code) {
      const std::array<GuessPair, 2> map{GuessPair{code & 1, (code >> 1) & 1},
                                         GuessPair{(code >> 2) & 1, (code >> 3) & 1}};
      const PerBitJoint j = per_bit_joint(single_measurement_strategy("", m, map));
      const double score = std::min(j.q0(), j.q1());
      if (score > best_score + 1e-15) {
        best_score = score;
        best_theta = theta;
        best_map = map;
      }
    }
  }
  ProductStrategy s = angle_strategy(best_theta, best_map);
  s.label = "best-single-angle";
  return s;
}

CorollaryCheck corollary_check(const ProductStrategy& strategy) {
  const PerBitJoint j = per_bit_joint(strategy);
  CorollaryCheck c;
  c.q0 = j.q0();
  c.q1 = j.q1();
  c.applies = c.q0 >= kProfileThreshold;
  c.holds = !c.applies || c.q1 <= kCorollaryCap + 1e-6;
  return c;
}

// ---------------------------------------------------------------------------

QubitRegister::QubitRegister(std::vector<HermitianOp2> states, CounterRng rng)
    : states_(std::move(states)), rng_(rng) {}

int QubitRegister::measure(std::size_t i, const QubitPovm& povm) {
  HermitianOp2& rho = states_.at(i);
  const int outcome = sample_outcome(povm, rho, rng_.uniform(draws_++));
  const HermitianOp2 branch = post_measurement_branch(povm, outcome, rho);
  const double p = branch.trace();
  rho = p > 0.0 ? (1.0 / p) * branch : branch;
  return outcome;
}

OracleAccess::OracleAccess(FuzzyLockOracle& oracle0, FuzzyLockOracle& oracle1)
    : oracle0_(&oracle0), oracle1_(&oracle1) {}

std::optional<Message> OracleAccess::query(int oracle_id, const BitString& x) {
  if (oracle_id != 0 && oracle_id != 1) throw std::invalid_argument("OracleAccess: oracle id must be 0 or 1");
  auto reply = (oracle_id == 0 ? oracle0_ : oracle1_)->query(x);
  log_.push_back({oracle_id, reply.has_value()});
  return reply;
}

HybridIndices hybrid_indices(const std::vector<QueryLogEntry>& log) {
  HybridIndices h;
  for (std::size_t i = 0; i < log.size(); ++i) {
    if (!log[i].accepted) continue;
    if (!h.first_accepting) {
      h.first_accepting = i;
      h.first_oracle = log[i].oracle_id;
    } else if (log[i].oracle_id != *h.first_oracle) {
      h.first_accepting_other = i;
      break;
    }
  }
  return h;
}

std::uint64_t output_alphabet_size(const Adversary& adversary) {
  std::uint64_t size = 1;
  for (std::size_t q = 0; q < adversary.max_queries(); ++q) {
    size *= 4;
    if (size > kMaxOutputAlphabet) return kMaxOutputAlphabet + 1;
  }
  return size;
}

namespace {

class HonestReader final : public Adversary {
 public:
  explicit HonestReader(int alpha) : alpha_(alpha) {}
  std::string label() const override { return alpha_ == 0 ? "honest-reader-0" : "honest-reader-1"; }
  int target_alpha() const override { return alpha_; }
  std::size_t max_queries() const override { return 1; }
  double exact_accepting_probability(std::size_t) const override { return 0.0; }
  std::vector<std::optional<Message>> run(QubitRegister& q, OracleAccess& o, RngStream&) const override {
    BitString x(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) x.set(i, q.measure(i, decoding_basis(alpha_).effects));
    return {o.query(alpha_, x)};
  }

 private:
  int alpha_;
};

class RandomQuery final : public Adversary {
 public:
  std::string label() const override { return "random-query"; }
  std::size_t max_queries() const override { return 2; }
  double exact_accepting_probability(std::size_t n) const override {
    return binomial_sf(n, unlock_requirement(n), 0.5);
  }
  std::vector<std::optional<Message>> run(QubitRegister& q, OracleAccess& o, RngStream& coins) const override {
    BitString x(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) x.set(i, q.measure(i, decoding_basis(0).effects));
    auto r0 = o.query(0, x);
    auto r1 = o.query(1, BitString::random(q.size(), coins));
    return {r0, r1};
  }
};

class NullAdversary final : public Adversary {
 public:
  std::string label() const override { return "null"; }
  std::size_t max_queries() const override { return 0; }
  double exact_accepting_probability(std::size_t) const override { return 0.0; }
  std::vector<std::optional<Message>> run(QubitRegister&, OracleAccess&, RngStream&) const override { return {}; }
};

class ProductAdversary final : public Adversary {
 public:
  explicit ProductAdversary(ProductStrategy s) : s_(std::move(s)) {}
  std::string label() const override { return s_.label; }
  int target_alpha() const override { return s_.target_alpha; }
  std::size_t max_queries() const override { return 2; }
  double exact_accepting_probability(std::size_t n) const override {
    return attack_unlock_probs(s_, n).sim_total_variation;
  }
  std::vector<std::optional<Message>> run(QubitRegister& q, OracleAccess& o, RngStream&) const override {
    BitString g0(q.size()), g1(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) {
      const int c = q.measure(i, s_.first);
      const int d = q.measure(i, s_.second[c]);
      g0.set(i, s_.guesses[c][d].g0);
      g1.set(i, s_.guesses[c][d].g1);
    }
    const int a = s_.target_alpha;
    auto first = o.query(a, a == 0 ? g0 : g1);
    auto second = o.query(1 - a, a == 0 ? g1 : g0);
    return {first, second};
  }

 private:
  ProductStrategy s_;
};

}  // namespace

std::unique_ptr<Adversary> make_honest_reader(int alpha) {
  if (alpha != 0 && alpha != 1) throw std::invalid_argument("make_honest_reader: alpha must be 0 or 1");
  return std::make_unique<HonestReader>(alpha);
}
std::unique_ptr<Adversary> make_random_query_adversary() { return std::make_unique<RandomQuery>(); }
std::unique_ptr<Adversary> make_null_adversary() { return std::make_unique<NullAdversary>(); }
std::unique_ptr<Adversary> make_product_adversary(ProductStrategy strategy) {
  return std::make_unique<ProductAdversary>(std::move(strategy));
}

std::vector<std::unique_ptr<Adversary>> builtin_adversaries() {
  std::vector<std::unique_ptr<Adversary>> out;
  out.push_back(make_honest_reader(0));
  out.push_back(make_random_query_adversary());
  out.push_back(make_null_adversary());
  out.push_back(make_product_adversary(z_basis_strategy()));
  out.push_back(make_product_adversary(best_single_angle_strategy()));
  return out;
}

double simulator_tv_allowance(double p, std::size_t trials) {
  return p + 3.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
}

HybridReport simulator_experiment(const Adversary& adversary, std::size_t n, std::size_t trials, std::uint64_t seed,
                                  unsigned workers, const ExperimentMessages& messages) {
  if (trials < 1) throw std::invalid_argument("simulator_experiment: trials must be >= 1");
  if (output_alphabet_size(adversary) > kMaxOutputAlphabet)
    throw Error(ErrorCode::OutputSpaceTooLarge, "simulator_experiment: output alphabet exceeds 2^16");
  const int alpha = adversary.target_alpha();
  const Message& m_target = alpha == 0 ? messages.m0 : messages.m1;
  const Message& m_other = alpha == 0 ? messages.m1 : messages.m0;
  const std::size_t queries = adversary.max_queries();

  auto classify = [&](const std::vector<std::optional<Message>>& replies) {
    std::uint32_t symbol = 0, place = 1;
    for (std::size_t q = 0; q < queries; ++q) {
      std::uint32_t cls = 0;
      if (q < replies.size() && replies[q]) cls = *replies[q] == m_target ? 1 : *replies[q] == m_other ? 2 : 3;
      symbol += cls * place;
      place *= 4;
    }
    return symbol;
  };

  struct Chunk {
    std::map<std::uint32_t, std::int64_t> diff;  // real count - simulated count
    std::size_t unlock0 = 0, unlock1 = 0, both = 0;
  };
  constexpr std::size_t kChunks = 64;
  std::vector<Chunk> chunks(kChunks);
  const CounterRng root = CounterRng(seed).child(stream_tag("simulator-experiment"));

  parallel_for(kChunks, workers, [&](std::size_t c) {
    Chunk& ch = chunks[c];
    for (std::size_t t = trials * c / kChunks; t < trials * (c + 1) / kChunks; ++t) {
      const CounterRng trial = root.child(t);
      const std::uint64_t inst_seed = trial.bits(0);
      auto states_of = [](const OtmInstance& inst) {
        std::vector<HermitianOp2> s;
        s.reserve(inst.n);
        for (const auto& q : inst.qubits) s.push_back(q.rho);
        return s;
      };

      // Real world.
      OtmInstance real = otm_prep(n, messages.m0, messages.m1, inst_seed);
      QubitRegister real_reg(states_of(real), trial.child(1));
      OracleAccess real_access(real.oracle0, real.oracle1);
      RngStream real_coins(trial.child(2));
      const std::uint32_t real_symbol = classify(adversary.run(real_reg, real_access, real_coins));
      bool acc0 = false, acc1 = false;
      for (const auto& e : real_access.log()) (e.oracle_id == 0 ? acc0 : acc1) |= e.accepted;
      ch.unlock0 += acc0;
      ch.unlock1 += acc1;
      ch.both += acc0 && acc1;

      // Simulated world: same r strings, fresh uniform message behind a null oracle.
      RngStream msg_rng(trial.child(3));
      const Message fake = Message::random(m_other.size(), msg_rng);
      OtmInstance sim = otm_prep(n, alpha == 0 ? messages.m0 : fake, alpha == 1 ? messages.m1 : fake, inst_seed);
      sim.oracle(1 - alpha) = FuzzyLockOracle(1 - alpha == 0 ? sim.r0 : sim.r1, fake, OracleMode::null);
      QubitRegister sim_reg(states_of(sim), trial.child(1));
      OracleAccess sim_access(sim.oracle0, sim.oracle1);
      RngStream sim_coins(trial.child(2));
      const std::uint32_t sim_symbol = classify(adversary.run(sim_reg, sim_access, sim_coins));

      ch.diff[real_symbol] += 1;
      ch.diff[sim_symbol] -= 1;
    }
  });

  std::map<std::uint32_t, std::int64_t> diff;
  std::size_t u0 = 0, u1 = 0, ub = 0;
  for (const auto& ch : chunks) {
    for (const auto& [k, v] : ch.diff) diff[k] += v;
    u0 += ch.unlock0;
    u1 += ch.unlock1;
    ub += ch.both;
  }
  std::int64_t abs_sum = 0;
  for (const auto& [k, v] : diff) abs_sum += v < 0 ? -v : v;

  const double dt = static_cast<double>(trials);
  HybridReport r;
  r.strategy_label = adversary.label();
  r.n = n;
  r.trials = trials;
  r.p_unlock0 = static_cast<double>(u0) / dt;
  r.p_unlock1 = static_cast<double>(u1) / dt;
  r.p_unlock_both = static_cast<double>(ub) / dt;
  r.sim_total_variation = static_cast<double>(abs_sum) / (2.0 * dt);
  return r;
}

}  // namespace otm
