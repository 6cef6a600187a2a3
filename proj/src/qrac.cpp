#include "otm/qrac.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace otm {

namespace {

int checked_bit(int b, const char* what) {
  if (b != 0 && b != 1) throw std::invalid_argument(std::string(what) + ": bit must be 0 or 1");
  return b;
}

std::array<QracState, 4> make_states() {
  std::array<QracState, 4> states;
  for (int b0 = 0; b0 < 2; ++b0)
    for (int b1 = 0; b1 < 2; ++b1)
      states[2 * b0 + b1] = QracState{b0, b1, real_pure_state(encoding_angle(b0, b1).radians())};
  return states;
}

struct CodeTables {
  std::array<QracState, 4> states = make_states();
  std::array<DecodingBasis, 2> bases{
      DecodingBasis{0, QubitPovm::projective(1.0, 0.0)},
      DecodingBasis{1, QubitPovm::projective(std::cos(std::numbers::pi / 4.0), std::sin(std::numbers::pi / 4.0))}};
  std::array<HermitianOp2, 2> mixtures{0.5 * (states[0].rho + states[1].rho),
                                       0.5 * (states[2].rho + states[3].rho)};
};

const CodeTables& tables() {
  static const CodeTables t;
  return t;
}

}  // namespace

double qrac_success_probability() noexcept {
  const double c = std::cos(std::numbers::pi / 8.0);
  return c * c;
}

double EighthTurn::radians() const noexcept { return eighths * std::numbers::pi / 8.0; }

HermitianOp2 real_pure_state(double theta) {
  return HermitianOp2::projector(std::cos(theta), std::sin(theta));
}

EighthTurn encoding_angle(int b0, int b1) {
  checked_bit(b0, "encoding_angle");
  checked_bit(b1, "encoding_angle");
  static constexpr std::array<int, 4> kEighths{1, -1, -5, 5};
  return {kEighths[2 * b0 + b1]};
}

QracState encode(int b0, int b1) {
  checked_bit(b0, "encode");
  checked_bit(b1, "encode");
  return tables().states[2 * b0 + b1];
}

const DecodingBasis& decoding_basis(int alpha) {
  return tables().bases[checked_bit(alpha, "decoding_basis")];
}

double decode_prob(int alpha, const QracState& state) {
  const int target = checked_bit(alpha, "decode_prob") == 0 ? state.b0 : state.b1;
  return born_prob(decoding_basis(alpha).effects.effect(target), state.rho);
}

int sample_decode(int alpha, const QracState& state, const CounterRng& rng, std::uint64_t index) {
  return sample_outcome(decoding_basis(alpha).effects, state.rho, rng.uniform(index));
}

HermitianOp2 mixture_rho(int b0) { return tables().mixtures[checked_bit(b0, "mixture_rho")]; }

}  // namespace otm
