#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <set>

#include "otm/parallel.hpp"
#include "otm/qrac.hpp"
#include "otm/random.hpp"

using namespace otm;

namespace {

const double kCos2 = std::pow(std::cos(std::numbers::pi / 8), 2);

Vec2 psi(double theta) { return {Complex(std::cos(theta)), Complex(std::sin(theta))}; }

double overlap2(const Vec2& a, const Vec2& b) { return std::norm(std::conj(a[0]) * b[0] + std::conj(a[1]) * b[1]); }

}  // namespace

TEST_CASE("counter rng is order independent and keyed") {
  const CounterRng a(42), b(42), c(43);
  CHECK(a.bits(7) == b.bits(7));
  CHECK(a.bits(7) != c.bits(7));
  CHECK(a.child(1).key() != a.child(2).key());
  RngStream s(a);
  for (std::uint64_t i = 0; i < 5; ++i) CHECK(s.next_bits() == a.bits(i));
  CHECK(s.consumed() == 5);
  for (int i = 0; i < 1000; ++i) {
    const double u = a.uniform(static_cast<std::uint64_t>(i));
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
  RngStream t(CounterRng(5));
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 10000; ++i) {
    const auto k = t.next_below(7);
    CHECK(k < 7);
    seen.insert(k);
  }
  CHECK(seen.size() == 7);
  CHECK(stream_tag("a") != stream_tag("b"));
}

TEST_CASE("parallel_for covers each index once for any worker count") {
  for (unsigned w : {1u, 2u, 3u, 8u}) {
    std::vector<int> hits(103, 0);
    parallel_for(hits.size(), w, [&](std::size_t i) { hits[i] += 1; });
    for (int h : hits) CHECK(h == 1);
  }
  CHECK_THROWS_AS(parallel_for(10, 2, [](std::size_t i) {
                    if (i == 5) throw std::runtime_error("boom");
                  }),
                  std::runtime_error);
}

TEST_CASE("encode produces the code states") {
  const QracState s00 = encode(0, 0);
  CHECK(s00.rho.approx_equal(HermitianOp2::projector(std::cos(std::numbers::pi / 8), std::sin(std::numbers::pi / 8))));
  CHECK(encode(0, 1).rho.approx_equal(real_pure_state(-std::numbers::pi / 8)));
  for (int b0 = 0; b0 < 2; ++b0)
    for (int b1 = 0; b1 < 2; ++b1) {
      const QracState s = encode(b0, b1);
      CHECK(s.b0 == b0);
      CHECK(s.b1 == b1);
      CHECK(s.rho.trace() == doctest::Approx(1.0));
      const auto ev = s.rho.eigenvalues();
      CHECK(std::abs(ev[0]) <= kPsdTol);
      CHECK(std::abs(ev[1] - 1.0) <= kPsdTol);
      const int e = encoding_angle(b0, b1).eighths;
      CHECK((e == 1 || e == -1 || e == 5 || e == -5));
    }
  std::set<int> angles;
  for (int k = 0; k < 4; ++k) angles.insert(encoding_angle(k >> 1, k & 1).eighths);
  CHECK(angles == std::set<int>{1, -1, 5, -5});
  CHECK_THROWS_AS(encode(2, 0), std::invalid_argument);
}

TEST_CASE("decoding bases") {
  const auto& z = decoding_basis(0);
  CHECK(z.alpha == 0);
  CHECK(z.effects.e0().approx_equal(HermitianOp2(1.0, 0.0, 0.0)));
  const auto& x = decoding_basis(1);
  CHECK(x.alpha == 1);
  CHECK(x.effects.e0().approx_equal(real_pure_state(std::numbers::pi / 4)));
  CHECK(x.effects.e1().approx_equal(real_pure_state(-std::numbers::pi / 4)));
  for (int a = 0; a < 2; ++a)
    for (int o = 0; o < 2; ++o) CHECK(decoding_basis(a).effects.effect(o).det() == doctest::Approx(0.0));
}

TEST_CASE("decode_prob examples against the Born-rule oracle") {
  CHECK(decode_prob(0, encode(0, 0)) == doctest::Approx(kCos2).epsilon(1e-12));
  CHECK(decode_prob(1, encode(0, 0)) ==
        doctest::Approx(overlap2(psi(std::numbers::pi / 4), psi(std::numbers::pi / 8))).epsilon(1e-12));
  CHECK(decode_prob(0, encode(1, 1)) == doctest::Approx(std::pow(std::sin(5 * std::numbers::pi / 8), 2)).epsilon(1e-12));
}

TEST_CASE("every matching bit decodes with cos^2(pi/8); the other bit is unbiased") {
  double ceiling = 0.0;
  for (int b0 = 0; b0 < 2; ++b0)
    for (int b1 = 0; b1 < 2; ++b1)
      for (int alpha = 0; alpha < 2; ++alpha) {
        const double p = decode_prob(alpha, encode(b0, b1));
        CHECK(std::abs(p - kCos2) <= 1e-12);
        ceiling = std::max(ceiling, p);
        // Oracle: basis vectors psi_0 / psi_{pi/2} or psi_{pi/4} / psi_{-pi/4}.
        const double base = alpha == 0 ? 0.0 : std::numbers::pi / 4;
        const Vec2 target = psi(((alpha == 0 ? b0 : b1) == 0) ? base : base - std::numbers::pi / 2);
        const Vec2 state = psi(encoding_angle(b0, b1).radians());
        CHECK(std::abs(overlap2(target, state) - p) <= 1e-12);
      }
  CHECK(ceiling < 0.854);
  for (int alpha = 0; alpha < 2; ++alpha)
    for (int other = 0; other < 2; ++other) {
      double guess = 0.0;
      for (int measured = 0; measured < 2; ++measured) {
        const QracState s = alpha == 0 ? encode(measured, other) : encode(other, measured);
        guess += 0.5 * born_prob(decoding_basis(alpha).effects.effect(other), s.rho);
      }
      CHECK(std::abs(guess - 0.5) <= 1e-12);
    }
}

TEST_CASE("mixture_rho and the constraint identity") {
  auto [a0, v0] = mixture_rho(0).to_bloch();
  CHECK(a0 == doctest::Approx(0.5));
  CHECK(std::abs(v0.x) < 1e-12);
  CHECK(std::abs(v0.y) < 1e-12);
  CHECK(v0.z == doctest::Approx(0.5 / std::sqrt(2.0)).epsilon(1e-12));
  auto [a1, v1] = mixture_rho(1).to_bloch();
  CHECK(a1 == doctest::Approx(0.5));
  CHECK(v1.z == doctest::Approx(-0.5 / std::sqrt(2.0)).epsilon(1e-12));
  const HermitianOp2 p0(1.0, 0.0, 0.0), p1(0.0, 1.0, 0.0);
  CHECK(trace_product(p0, mixture_rho(0)) == doctest::Approx((1.0 + 1.0 / std::sqrt(2.0)) / 2.0).epsilon(1e-12));
  CHECK(std::abs(0.5 * (trace_product(p0, mixture_rho(0)) + trace_product(p1, mixture_rho(1))) - kCos2) <= 1e-12);
}

TEST_CASE("sample_decode") {
  const CounterRng rng(2024);
  const QracState zero{0, 0, HermitianOp2(1.0, 0.0, 0.0)};
  for (std::uint64_t i = 0; i < 1000; ++i) CHECK(sample_decode(0, zero, rng, i) == 0);

  constexpr std::uint64_t kSamples = 1000000;
  std::uint64_t hits = 0;
  const QracState s = encode(0, 0);
  for (std::uint64_t i = 0; i < kSamples; ++i) hits += sample_decode(0, s, rng, i) == 0;
  CHECK(std::abs(static_cast<double>(hits) / kSamples - kCos2) <= 0.002);

  for (std::uint64_t i = 0; i < 100; ++i) CHECK(sample_decode(1, s, rng, i) == sample_decode(1, s, CounterRng(2024), i));
}
