#include "otm/qmath.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "otm/error.hpp"

namespace otm {

namespace {

using Mat2 = std::array<std::array<Complex, 2>, 2>;

Mat2 to_mat(const HermitianOp2& m) {
  return {{{Complex(m.a00()), m.a01()}, {m.a10(), Complex(m.a11())}}};
}

Mat2 mul(const Mat2& a, const Mat2& b) {
  Mat2 r{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
  return r;
}

// Fixes the global phase so the first nonzero component is real and >= 0.
Vec2 normalize_phase(Vec2 v) {
  const double n = std::sqrt(std::norm(v[0]) + std::norm(v[1]));
  v[0] /= n;
  v[1] /= n;
  const Complex lead = std::abs(v[0]) > 1e-300 ? v[0] : v[1];
  const Complex phase = std::conj(lead) / std::abs(lead);
  v[0] *= phase;
  v[1] *= phase;
  if (std::abs(v[0]) > 1e-300) v[0] = Complex(std::abs(v[0]), 0.0);
  else v[1] = Complex(std::abs(v[1]), 0.0);
  return v;
}

}  // namespace

double BlochVector::norm() const noexcept { return std::sqrt(x * x + y * y + z * z); }

HermitianOp2::HermitianOp2(double a00, double a11, Complex a01) : a00_(a00), a11_(a11), a01_(a01) {
  if (!std::isfinite(a00) || !std::isfinite(a11) || !std::isfinite(a01.real()) ||
      !std::isfinite(a01.imag()))
    throw std::invalid_argument("HermitianOp2: non-finite entry");
}

HermitianOp2 HermitianOp2::projector(Complex c0, Complex c1) {
  const double n = std::norm(c0) + std::norm(c1);
  if (!(n > 0.0)) throw std::invalid_argument("HermitianOp2::projector: zero vector");
  return {std::norm(c0) / n, std::norm(c1) / n, c0 * std::conj(c1) / n};
}

HermitianOp2 HermitianOp2::from_bloch(double a0, const BlochVector& v) {
  return {a0 + v.z, a0 - v.z, Complex(v.x, -v.y)};
}

Complex HermitianOp2::operator()(int row, int col) const noexcept {
  if (row == 0) return col == 0 ? Complex(a00_) : a01_;
  return col == 0 ? a10() : Complex(a11_);
}

std::pair<double, BlochVector> HermitianOp2::to_bloch() const noexcept {
  return {0.5 * (a00_ + a11_), BlochVector{a01_.real(), -a01_.imag(), 0.5 * (a00_ - a11_)}};
}

std::array<double, 2> HermitianOp2::eigenvalues() const noexcept {
  const double a0 = 0.5 * (a00_ + a11_);
  const double r = std::hypot(0.5 * (a00_ - a11_), std::abs(a01_));
  return {a0 - r, a0 + r};
}

bool HermitianOp2::is_psd(double tol) const noexcept { return eigenvalues()[0] >= -tol; }

bool HermitianOp2::is_density(double tol) const noexcept {
  return is_psd(tol) && std::abs(trace() - 1.0) <= tol;
}

bool HermitianOp2::is_povm_element(double tol) const noexcept {
  const auto ev = eigenvalues();
  return ev[0] >= -tol && ev[1] <= 1.0 + tol;
}

double HermitianOp2::max_abs_diff(const HermitianOp2& o) const noexcept {
  return std::max({std::abs(a00_ - o.a00_), std::abs(a11_ - o.a11_), std::abs(a01_ - o.a01_)});
}

bool HermitianOp2::approx_equal(const HermitianOp2& o, double tol) const noexcept {
  return max_abs_diff(o) <= tol;
}

HermitianOp2 operator+(const HermitianOp2& a, const HermitianOp2& b) {
  return {a.a00_ + b.a00_, a.a11_ + b.a11_, a.a01_ + b.a01_};
}

HermitianOp2 operator-(const HermitianOp2& a, const HermitianOp2& b) {
  return {a.a00_ - b.a00_, a.a11_ - b.a11_, a.a01_ - b.a01_};
}

HermitianOp2 operator*(double s, const HermitianOp2& a) {
  return {s * a.a00_, s * a.a11_, s * a.a01_};
}

Eigensystem2 eig_hermitian2(const HermitianOp2& m) {
  const auto [a0, v] = m.to_bloch();
  const double r = v.norm();
  Eigensystem2 es{{a0 - r, a0 + r}, {}};
  if (r == 0.0) {
    es.vectors = {Vec2{Complex(1.0), Complex(0.0)}, Vec2{Complex(0.0), Complex(1.0)}};
    return es;
  }
  const Complex w(v.x, v.y);  // x + i y
  Vec2 up, down;
  if (v.z >= 0.0) {
    up = {Complex(r + v.z), w};
    down = {-std::conj(w), Complex(r + v.z)};
  } else {
    up = {std::conj(w), Complex(r - v.z)};
    down = {Complex(r - v.z), -w};
  }
  es.vectors = {normalize_phase(down), normalize_phase(up)};
  return es;
}

HermitianOp2 principal_sqrt(const HermitianOp2& m) {
  const auto [a0, v] = m.to_bloch();
  const double r = v.norm();
  const double lo = a0 - r;
  const double hi = a0 + r;
  if (lo < -kPsdTol)
    throw Error(ErrorCode::NotPsd, "principal_sqrt: eigenvalue " + std::to_string(lo));
  const double s0 = std::sqrt(std::max(lo, 0.0));
  const double s1 = std::sqrt(std::max(hi, 0.0));
  if (r == 0.0) return HermitianOp2(s0, s0, Complex{});
  // (s1 - s0) / (2r) equals 1 / (s1 + s0) when nothing was clamped; the latter
  // does not cancel.
  const double coef = (lo >= 0.0 && s0 + s1 > 0.0) ? 1.0 / (s0 + s1) : (s1 - s0) / (2.0 * r);
  const double mid = 0.5 * (s0 + s1);
  return HermitianOp2::from_bloch(mid, BlochVector{coef * v.x, coef * v.y, coef * v.z});
}

HermitianOp2 sandwich(const HermitianOp2& s, const HermitianOp2& m) {
  const Mat2 sm = to_mat(s);
  const Mat2 r = mul(mul(sm, to_mat(m)), sm);
  const Complex off = 0.5 * (r[0][1] + std::conj(r[1][0]));
  return {r[0][0].real(), r[1][1].real(), off};
}

double trace_product(const HermitianOp2& a, const HermitianOp2& b) noexcept {
  return a.a00() * b.a00() + a.a11() * b.a11() + 2.0 * (a.a01() * std::conj(b.a01())).real();
}

double trace_distance(const HermitianOp2& rho, const HermitianOp2& sigma) noexcept {
  // Eigenvalues of the difference are a0 -/+ |v|; half the sum of their
  // moduli is max(|a0|, |v|).
  const double d00 = rho.a00() - sigma.a00();
  const double d11 = rho.a11() - sigma.a11();
  const double a0 = 0.5 * (d00 + d11);
  const double r = std::hypot(0.5 * (d00 - d11), std::abs(rho.a01() - sigma.a01()));
  return std::max(std::abs(a0), r);
}

double born_prob(const HermitianOp2& effect, const HermitianOp2& state) {
  if (!effect.is_povm_element()) throw Error(ErrorCode::InvalidEffect, "born_prob: not an effect");
  if (!state.is_density()) throw Error(ErrorCode::InvalidState, "born_prob: not a density operator");
  return std::clamp(trace_product(effect, state), 0.0, 1.0);
}

QubitPovm::QubitPovm(const HermitianOp2& e0, const HermitianOp2& e1) : e0_(e0), e1_(e1) {
  if (!e0.is_povm_element() || !e1.is_povm_element())
    throw Error(ErrorCode::InvalidPovm, "QubitPovm: element outside [0, I]");
  if (!(e0 + e1).approx_equal(HermitianOp2::identity(), kPsdTol))
    throw Error(ErrorCode::InvalidPovm, "QubitPovm: elements do not sum to I");
  s0_ = principal_sqrt(e0);
  s1_ = principal_sqrt(e1);
}

QubitPovm QubitPovm::from_effect(const HermitianOp2& e0) {
  return QubitPovm(e0, HermitianOp2::identity() - e0);
}

QubitPovm QubitPovm::projective(Complex c0, Complex c1) {
  return from_effect(HermitianOp2::projector(c0, c1));
}

QubitPovm QubitPovm::relabeled() const { return QubitPovm(e1_, e0_); }

HermitianOp2 post_measurement_branch(const QubitPovm& povm, int outcome, const HermitianOp2& state) {
  return sandwich(povm.sqrt_effect(outcome), state);
}

HermitianOp2 post_measurement_mixture(const QubitPovm& povm, const HermitianOp2& state) {
  if (!state.is_density())
    throw Error(ErrorCode::InvalidState, "post_measurement_mixture: not a density operator");
  return post_measurement_branch(povm, 0, state) + post_measurement_branch(povm, 1, state);
}

int sample_outcome(const QubitPovm& povm, const HermitianOp2& state, double u) {
  const double p0 = std::clamp(trace_product(povm.e0(), state) / state.trace(), 0.0, 1.0);
  return u < p0 ? 0 : 1;
}

}  // namespace otm
