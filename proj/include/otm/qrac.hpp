#pragma once

// The optimal 2 -> 1 quantum random access code: four real pure states at
// angles +-pi/8, +-5pi/8 and two mutually unbiased decoding bases.

#include <cstdint>

#include "otm/qmath.hpp"
#include "otm/random.hpp"

namespace otm {

/// cos^2(pi/8): success probability of either decoding basis.
double qrac_success_probability() noexcept;

/// An angle stored as an integer multiple of pi/8.
struct EighthTurn {
  int eighths = 0;
  double radians() const noexcept;
};

/// |psi_theta><psi_theta| with psi_theta = cos(theta)|0> + sin(theta)|1>.
HermitianOp2 real_pure_state(double theta);

struct QracState {
  int b0 = 0;
  int b1 = 0;
  HermitianOp2 rho;
};

/// The code angle for (b0, b1).
EighthTurn encoding_angle(int b0, int b1);

QracState encode(int b0, int b1);

struct DecodingBasis {
  int alpha = 0;
  QubitPovm effects;
};

/// alpha = 0: Z basis. alpha = 1: projectors onto psi_{pi/4}, psi_{-pi/4}.
const DecodingBasis& decoding_basis(int alpha);

/// Probability that measuring in basis alpha returns bit b_alpha.
double decode_prob(int alpha, const QracState& state);

/// Outcome of measuring `state.rho` in basis alpha. The draw is keyed by
/// (rng, index) so results do not depend on evaluation order.
int sample_decode(int alpha, const QracState& state, const CounterRng& rng, std::uint64_t index);

/// rho_{b0} = (encode(b0, 0) + encode(b0, 1)) / 2.
HermitianOp2 mixture_rho(int b0);

}  // namespace otm
