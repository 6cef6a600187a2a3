#include "otm/random.hpp"

namespace otm {

std::uint64_t RngStream::next_below(std::uint64_t bound) noexcept {
  if (bound <= 1) return 0;
  // Rejection sampling keeps the result exactly uniform.
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  for (;;) {
    const std::uint64_t x = next_bits();
    if (x < limit) return x % bound;
  }
}

}  // namespace otm
