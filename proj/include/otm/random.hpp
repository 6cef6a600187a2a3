#pragma once

#include <cstdint>
#include <string_view>

namespace otm {

/// SplitMix64 finalizer. Bijective on 64-bit words.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Derives an independent child key from (parent, stream).
constexpr std::uint64_t derive_key(std::uint64_t parent, std::uint64_t stream) noexcept {
  return splitmix64(splitmix64(parent) ^ (stream * 0xd1342543de82ef95ULL + 0x632be59bd9b4e019ULL));
}

/// Stable 64-bit tag for a label (FNV-1a), used to name random streams.
constexpr std::uint64_t stream_tag(std::string_view label) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : label) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Counter-based generator: the i-th draw is a pure function of (key, i), so
/// draws can be taken in any order and from any thread.
class CounterRng {
 public:
  constexpr CounterRng() = default;
  constexpr explicit CounterRng(std::uint64_t key) noexcept : key_(key) {}

  constexpr std::uint64_t key() const noexcept { return key_; }

  constexpr std::uint64_t bits(std::uint64_t counter) const noexcept {
    return splitmix64(key_ ^ splitmix64(counter));
  }

  /// Uniform double in [0, 1) with 53 random bits.
  constexpr double uniform(std::uint64_t counter) const noexcept {
    return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
  }

  constexpr CounterRng child(std::uint64_t stream) const noexcept {
    return CounterRng(derive_key(key_, stream));
  }

 private:
  std::uint64_t key_ = 0;
};

/// Sequential view over a CounterRng for code that consumes draws in order.
class RngStream {
 public:
  constexpr explicit RngStream(CounterRng rng) noexcept : rng_(rng) {}

  constexpr std::uint64_t next_bits() noexcept { return rng_.bits(counter_++); }
  constexpr double next_uniform() noexcept { return rng_.uniform(counter_++); }
  double next_uniform(double lo, double hi) noexcept { return lo + (hi - lo) * next_uniform(); }
  constexpr int next_bit() noexcept { return static_cast<int>(next_bits() >> 63); }

  /// Uniform index in [0, bound).
  std::uint64_t next_below(std::uint64_t bound) noexcept;

  constexpr std::uint64_t consumed() const noexcept { return counter_; }

 private:
  CounterRng rng_;
  std::uint64_t counter_ = 0;
};

}  // namespace otm
