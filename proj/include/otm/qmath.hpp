#pragma once

// Exact 2x2 Hermitian linear algebra for single-qubit states and effects.

#include <array>
#include <complex>
#include <utility>

namespace otm {

using Complex = std::complex<double>;

/// Tolerance for positivity / completeness classification.
inline constexpr double kPsdTol = 1e-9;
/// Tolerance for algebraic identities.
inline constexpr double kNumTol = 1e-10;

struct BlochVector {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double norm() const noexcept;
  friend bool operator==(const BlochVector&, const BlochVector&) = default;
};

/// A 2x2 complex Hermitian operator stored as (a00, a11, a01); a10 = conj(a01).
/// Immutable value type.
class HermitianOp2 {
 public:
  constexpr HermitianOp2() = default;
  /// Throws std::invalid_argument on non-finite entries.
  HermitianOp2(double a00, double a11, Complex a01);

  static HermitianOp2 identity() { return {1.0, 1.0, Complex{}}; }
  static HermitianOp2 zero() { return {}; }
  /// |psi><psi| for psi = (c0, c1); the vector is normalized first.
  static HermitianOp2 projector(Complex c0, Complex c1);
  /// a0 * I + v . sigma
  static HermitianOp2 from_bloch(double a0, const BlochVector& v);

  double a00() const noexcept { return a00_; }
  double a11() const noexcept { return a11_; }
  Complex a01() const noexcept { return a01_; }
  Complex a10() const noexcept { return std::conj(a01_); }
  Complex operator()(int row, int col) const noexcept;

  double trace() const noexcept { return a00_ + a11_; }
  double det() const noexcept { return a00_ * a11_ - std::norm(a01_); }

  /// (a0, v) such that self = a0 * I + v . sigma.
  std::pair<double, BlochVector> to_bloch() const noexcept;
  /// Eigenvalues in ascending order.
  std::array<double, 2> eigenvalues() const noexcept;

  bool is_psd(double tol = kPsdTol) const noexcept;
  bool is_density(double tol = kPsdTol) const noexcept;
  bool is_povm_element(double tol = kPsdTol) const noexcept;
  bool approx_equal(const HermitianOp2& other, double tol = kNumTol) const noexcept;
  /// Largest entrywise modulus of (self - other).
  double max_abs_diff(const HermitianOp2& other) const noexcept;

  friend HermitianOp2 operator+(const HermitianOp2& a, const HermitianOp2& b);
  friend HermitianOp2 operator-(const HermitianOp2& a, const HermitianOp2& b);
  friend HermitianOp2 operator*(double s, const HermitianOp2& a);
  friend bool operator==(const HermitianOp2&, const HermitianOp2&) = default;

 private:
  double a00_ = 0.0;
  double a11_ = 0.0;
  Complex a01_{};
};

using Vec2 = std::array<Complex, 2>;

struct Eigensystem2 {
  std::array<double, 2> values;  // ascending
  std::array<Vec2, 2> vectors;   // orthonormal, first nonzero component real >= 0
};

Eigensystem2 eig_hermitian2(const HermitianOp2& m);

/// PSD square root. Eigenvalues in [-kPsdTol, 0) are clamped to zero; more
/// negative ones throw Error(NotPsd).
HermitianOp2 principal_sqrt(const HermitianOp2& m);

/// s * m * s for Hermitian s and m (the result is Hermitian).
HermitianOp2 sandwich(const HermitianOp2& s, const HermitianOp2& m);

/// Tr[a * b] for Hermitian a and b.
double trace_product(const HermitianOp2& a, const HermitianOp2& b) noexcept;

/// Half the trace norm of (rho - sigma). Inputs need not have unit trace.
double trace_distance(const HermitianOp2& rho, const HermitianOp2& sigma) noexcept;

/// Tr[effect * state] clamped to [0, 1]. Throws InvalidEffect / InvalidState.
double born_prob(const HermitianOp2& effect, const HermitianOp2& state);

/// Two-outcome POVM with validated positivity and completeness.
class QubitPovm {
 public:
  /// Throws Error(InvalidPovm) unless both are effects summing to I.
  QubitPovm(const HermitianOp2& e0, const HermitianOp2& e1);
  /// (e0, I - e0).
  static QubitPovm from_effect(const HermitianOp2& e0);
  /// Projective measurement {|psi><psi|, I - |psi><psi|}.
  static QubitPovm projective(Complex c0, Complex c1);

  const HermitianOp2& effect(int outcome) const noexcept { return outcome == 0 ? e0_ : e1_; }
  const HermitianOp2& sqrt_effect(int outcome) const noexcept { return outcome == 0 ? s0_ : s1_; }
  const HermitianOp2& e0() const noexcept { return e0_; }
  const HermitianOp2& e1() const noexcept { return e1_; }

  /// The same measurement with outcome labels exchanged.
  QubitPovm relabeled() const;

 private:
  HermitianOp2 e0_, e1_;
  HermitianOp2 s0_, s1_;
};

/// sqrt(E0) rho sqrt(E0) + sqrt(E1) rho sqrt(E1). The outer Naimark isometry is
/// omitted; trace distance does not see it.
HermitianOp2 post_measurement_mixture(const QubitPovm& povm, const HermitianOp2& state);

/// Unnormalized post-measurement branch sqrt(E_c) rho sqrt(E_c).
HermitianOp2 post_measurement_branch(const QubitPovm& povm, int outcome, const HermitianOp2& state);

/// Samples an outcome of `povm` on `state` from a uniform draw u in [0, 1).
int sample_outcome(const QubitPovm& povm, const HermitianOp2& state, double u);

}  // namespace otm
