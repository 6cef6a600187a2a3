#pragma once

// Independent oracles for tests: dense Eigen linear algebra and a separate
// random source (std::mt19937_64) that shares nothing with the library RNG.

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <random>

#include "otm/qmath.hpp"

namespace otm::testing {

using Mat2 = Eigen::Matrix2cd;

inline Mat2 dense(const HermitianOp2& m) {
  Mat2 d;
  d << m.a00(), m.a01(), m.a10(), m.a11();
  return d;
}

inline HermitianOp2 from_dense(const Mat2& d) {
  return HermitianOp2(d(0, 0).real(), d(1, 1).real(), 0.5 * (d(0, 1) + std::conj(d(1, 0))));
}

inline Eigen::Vector2d dense_eigenvalues(const Mat2& d) {
  Eigen::SelfAdjointEigenSolver<Mat2> es(d);
  return es.eigenvalues();
}

/// 0.5 * sum |lambda_i| of (a - b), via Eigen.
inline double oracle_trace_distance(const HermitianOp2& a, const HermitianOp2& b) {
  const auto ev = dense_eigenvalues(dense(a) - dense(b));
  return 0.5 * (std::abs(ev(0)) + std::abs(ev(1)));
}

inline double max_entry_diff(const Mat2& a, const Mat2& b) { return (a - b).cwiseAbs().maxCoeff(); }

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : gen_(seed) {}

  double uniform(double lo = 0.0, double hi = 1.0) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }
  double normal() { return std::normal_distribution<double>()(gen_); }

  Eigen::Vector2cd pure_vector() {
    Eigen::Vector2cd v(std::complex<double>(normal(), normal()), std::complex<double>(normal(), normal()));
    return v.normalized();
  }
  HermitianOp2 pure_state() {
    const auto v = pure_vector();
    return HermitianOp2::projector(v(0), v(1));
  }
  /// G G^dagger / Tr, G with Gaussian entries.
  HermitianOp2 density() {
    Mat2 g;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) g(i, j) = {normal(), normal()};
    Mat2 r = g * g.adjoint();
    r /= r.trace().real();
    return from_dense(r);
  }
  /// PSD with eigenvalues spread over [0, scale], including rank-deficient cases.
  HermitianOp2 psd(double scale = 1.0) {
    const auto v = pure_vector();
    Eigen::Vector2cd w(-std::conj(v(1)), std::conj(v(0)));
    const double l0 = uniform() < 0.1 ? 0.0 : scale * uniform();
    const double l1 = scale * uniform();
    return from_dense(l0 * v * v.adjoint() + l1 * w * w.adjoint());
  }
  /// Random effect with 0 <= E <= I.
  HermitianOp2 effect() { return psd(1.0); }

  std::mt19937_64& engine() { return gen_; }

 private:
  std::mt19937_64 gen_;
};

inline double pi() { return std::acos(-1.0); }

}  // namespace otm::testing
