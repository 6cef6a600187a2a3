#pragma once

// One-time memory from QRAC-encoded random strings and two FuzzyLock oracles.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "otm/qrac.hpp"
#include "otm/random.hpp"

namespace otm {

/// Fixed-length bit string, one byte per bit.
class BitString {
 public:
  BitString() = default;
  explicit BitString(std::size_t n) : bits_(n, 0) {}
  explicit BitString(std::vector<std::uint8_t> bits);

  std::size_t size() const noexcept { return bits_.size(); }
  int operator[](std::size_t i) const noexcept { return bits_[i]; }
  void set(std::size_t i, int bit) noexcept { bits_[i] = static_cast<std::uint8_t>(bit & 1); }

  /// Number of differing positions. Throws std::invalid_argument on length mismatch.
  std::size_t hamming(const BitString& other) const;

  /// Bits packed MSB-first into octets, lowercase base16; trailing pad bits are 0.
  std::string to_hex() const;
  static BitString from_hex(std::string_view hex, std::size_t n);

  static BitString random(std::size_t n, RngStream& rng);

  friend bool operator==(const BitString&, const BitString&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

inline constexpr std::size_t kDefaultMaxMessageOctets = 64;

/// Octet-string message; equality is bitwise.
class Message {
 public:
  Message() = default;
  /// Throws std::invalid_argument if longer than max_octets.
  explicit Message(std::vector<std::uint8_t> bytes, std::size_t max_octets = kDefaultMaxMessageOctets);
  static Message from_text(std::string_view text);
  static Message from_hex(std::string_view hex);
  static Message random(std::size_t octets, RngStream& rng);

  const std::vector<std::uint8_t>& bytes() const noexcept { return bytes_; }
  std::size_t size() const noexcept { return bytes_.size(); }
  std::string to_hex() const;

  friend bool operator==(const Message&, const Message&) = default;

 private:
  std::vector<std::uint8_t> bytes_;
};

enum class OracleMode { real, null };

struct QueryRecord {
  BitString query;
  std::optional<Message> reply;  // nullopt is the bottom reply
};

/// Classical-query FuzzyLock: releases m when the query is within
/// floor(0.15 n) of r in Hamming distance. Null mode always replies bottom.
/// Every query is appended to the transcript.
class FuzzyLockOracle {
 public:
  FuzzyLockOracle(BitString r, Message m, OracleMode mode = OracleMode::real);

  /// floor((1 - 0.85) n) computed exactly as floor(15 n / 100).
  static std::size_t threshold_for(std::size_t n) noexcept;

  std::optional<Message> query(const BitString& x);
  /// Whether `x` would be accepted in real mode, without recording.
  bool accepts(const BitString& x) const;

  std::size_t n() const noexcept { return r_.size(); }
  std::size_t threshold() const noexcept { return threshold_; }
  OracleMode mode() const noexcept { return mode_; }
  const std::vector<QueryRecord>& transcript() const noexcept { return transcript_; }
  void clear_transcript() noexcept { transcript_.clear(); }

 private:
  BitString r_;
  Message m_;
  std::size_t threshold_;
  OracleMode mode_;
  std::vector<QueryRecord> transcript_;
};

struct OtmInstance {
  std::size_t n = 0;
  BitString r0, r1;
  std::vector<QracState> qubits;
  FuzzyLockOracle oracle0;
  FuzzyLockOracle oracle1;
  std::uint64_t seed = 0;
  Message m0, m1;

  FuzzyLockOracle& oracle(int alpha) { return alpha == 0 ? oracle0 : oracle1; }
  const FuzzyLockOracle& oracle(int alpha) const { return alpha == 0 ? oracle0 : oracle1; }
};

/// Samples r0, r1 from seed, encodes qubit i as encode(r0[i], r1[i]) and wraps
/// (r0, m0), (r1, m1) in real-mode oracles.
OtmInstance otm_prep(std::size_t n, const Message& m0, const Message& m1, std::uint64_t seed);

/// Honest read: measure every qubit in basis alpha (draw i keyed by (rng, i))
/// and query oracle alpha with the result.
std::optional<Message> otm_read(OtmInstance& inst, int alpha, const CounterRng& rng);

/// sin^2(pi/8): per-qubit error probability of the honest reader.
double honest_bit_error() noexcept;
/// 0.15 - sin^2(pi/8).
double correctness_margin() noexcept;

/// P[Bin(n, sin^2(pi/8)) <= floor(0.15 n)].
double honest_success_exact(std::size_t n);
/// P[Bin(n, sin^2(pi/8)) > floor(0.15 n)], accurate far below 1e-16.
double honest_failure_exact(std::size_t n);
/// exp(-2 n delta^2), delta = correctness_margin(); bounds honest_failure_exact.
double chernoff_failure_bound(std::size_t n);

/// Smallest multiple of `step` with honest_failure_exact(n) <= target.
std::size_t correctness_crossover(double target, std::size_t step = 20);

/// {n, r0, r1, seed, m0, m1}; bit strings hex-packed, messages base16.
std::string instance_to_json(const OtmInstance& inst);
/// Rebuilds qubits and fresh real-mode oracles. Throws std::invalid_argument.
OtmInstance instance_from_json(std::string_view json);

/// CSV with header query_hex,reply,oracle_id,index. Bottom replies are "bot".
std::string transcripts_to_csv(const OtmInstance& inst);

}  // namespace otm
