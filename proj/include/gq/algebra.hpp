#pragma once

#include <cstddef>
#include <map>
#include <random>

#include "gq/core.hpp"
#include "gq/groupoid.hpp"

namespace gq {

/// A virtual transition: finite complex combination Σ A_α α.
///
/// Only nonzero coefficients are stored. Elements do not carry their
/// groupoid; operations that need the composition law take it explicitly
/// and reject foreign transition ids.
class AlgebraElement {
 public:
  using Coefficients = std::map<TransitionId, Complex>;

  AlgebraElement() = default;

  static AlgebraElement basis(TransitionId t, Complex c = 1.0);
  /// 1 = Σ_x 1_x.
  static AlgebraElement unit(const Groupoid& g);
  /// Dense coefficient vector indexed by transition id.
  static AlgebraElement from_dense(const Vector& coeffs);

  Complex coeff(TransitionId t) const;
  void set(TransitionId t, Complex c);
  void add(TransitionId t, Complex c);

  const Coefficients& coefficients() const noexcept { return coeffs_; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  std::size_t support_size() const noexcept { return coeffs_.size(); }

  Vector to_dense(std::size_t size) const;

  /// Max |coefficient difference|.
  double distance(const AlgebraElement& other) const;

  AlgebraElement& operator+=(const AlgebraElement& other);
  AlgebraElement& operator-=(const AlgebraElement& other);
  AlgebraElement& operator*=(Complex s);

  friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
  friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
  friend AlgebraElement operator*(Complex s, AlgebraElement a) { return a *= s; }
  friend bool operator==(const AlgebraElement&, const AlgebraElement&) = default;

 private:
  Coefficients coeffs_;
};

/// Convolution AB = Σ A_α B_β α∘β over composable pairs s(α) = t(β).
AlgebraElement multiply(const AlgebraElement& a, const AlgebraElement& b, const Groupoid& g);

/// A* = Σ conj(A_α) α⁻¹.
AlgebraElement involution(const AlgebraElement& a, const Groupoid& g);

/// Throws DomainError if `a` references a transition outside `g`.
void check_element(const AlgebraElement& a, const Groupoid& g);

/// Embeds a ⊗ b into the algebra of `direct_product(ga, gb)`:
/// coefficient of (γ_A, γ_B) is a(γ_A)·b(γ_B).
AlgebraElement tensor_embed(const AlgebraElement& a, const Groupoid& ga, const AlgebraElement& b,
                            const Groupoid& gb);

using Rng = std::mt19937_64;

/// Coefficients drawn standard complex normal, E|z|² = 1.
Complex standard_complex_normal(Rng& rng);

/// Standard complex normal coefficients on every transition.
AlgebraElement random_element(const Groupoid& g, Rng& rng);

/// (a + a*) / 2 for a random element.
AlgebraElement random_self_adjoint(const Groupoid& g, Rng& rng);

}  // namespace gq
