#include "gq/algebra.hpp"

#include <algorithm>
#include <cmath>

namespace gq {

AlgebraElement AlgebraElement::basis(TransitionId t, Complex c) {
  AlgebraElement e;
  e.set(t, c);
  return e;
}

AlgebraElement AlgebraElement::unit(const Groupoid& g) {
  AlgebraElement e;
  for (std::size_t x = 0; x < g.object_count(); ++x) e.add(g.unit(ObjectId{x}), 1.0);
  return e;
}

AlgebraElement AlgebraElement::from_dense(const Vector& coeffs) {
  AlgebraElement e;
  for (Eigen::Index i = 0; i < coeffs.size(); ++i) e.set(TransitionId{static_cast<std::size_t>(i)}, coeffs(i));
  return e;
}

Complex AlgebraElement::coeff(TransitionId t) const {
  auto it = coeffs_.find(t);
  return it == coeffs_.end() ? Complex{} : it->second;
}

void AlgebraElement::set(TransitionId t, Complex c) {
  if (c == Complex{}) {
    coeffs_.erase(t);
  } else {
    coeffs_[t] = c;
  }
}

void AlgebraElement::add(TransitionId t, Complex c) { set(t, coeff(t) + c); }

Vector AlgebraElement::to_dense(std::size_t size) const {
  Vector v = Vector::Zero(static_cast<Eigen::Index>(size));
  for (const auto& [t, c] : coeffs_) {
    if (t.index >= size) throw DomainError("element references transition " + std::to_string(t.index));
    v(static_cast<Eigen::Index>(t.index)) = c;
  }
  return v;
}

double AlgebraElement::distance(const AlgebraElement& other) const {
  double d = 0.0;
  for (const auto& [t, c] : coeffs_) d = std::max(d, std::abs(c - other.coeff(t)));
  for (const auto& [t, c] : other.coeffs_) d = std::max(d, std::abs(c - coeff(t)));
  return d;
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& other) {
  for (const auto& [t, c] : other.coeffs_) add(t, c);
  return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& other) {
  for (const auto& [t, c] : other.coeffs_) add(t, -c);
  return *this;
}

AlgebraElement& AlgebraElement::operator*=(Complex s) {
  if (s == Complex{}) {
    coeffs_.clear();
    return *this;
  }
  for (auto& [t, c] : coeffs_) c *= s;
  std::erase_if(coeffs_, [](const auto& kv) { return kv.second == Complex{}; });
  return *this;
}

void check_element(const AlgebraElement& a, const Groupoid& g) {
  for (const auto& [t, c] : a.coefficients())
    if (!g.contains(t))
      throw DomainError("transition id " + std::to_string(t.index) + " does not belong to the groupoid");
}

AlgebraElement multiply(const AlgebraElement& a, const AlgebraElement& b, const Groupoid& g) {
  check_element(a, g);
  check_element(b, g);
  AlgebraElement out;
  for (const auto& [alpha, ca] : a.coefficients()) {
    for (const auto& [beta, cb] : b.coefficients()) {
      if (auto ab = g.compose(alpha, beta)) out.add(*ab, ca * cb);
    }
  }
  return out;
}

AlgebraElement involution(const AlgebraElement& a, const Groupoid& g) {
  check_element(a, g);
  AlgebraElement out;
  for (const auto& [alpha, c] : a.coefficients()) out.add(g.inverse(alpha), std::conj(c));
  return out;
}

AlgebraElement tensor_embed(const AlgebraElement& a, const Groupoid& ga, const AlgebraElement& b,
                            const Groupoid& gb) {
  check_element(a, ga);
  check_element(b, gb);
  AlgebraElement out;
  for (const auto& [ta, ca] : a.coefficients())
    for (const auto& [tb, cb] : b.coefficients()) out.add(product_transition(gb, ta, tb), ca * cb);
  return out;
}

Complex standard_complex_normal(Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  const double re = normal(rng);
  const double im = normal(rng);
  return Complex{re, im} / std::sqrt(2.0);
}

AlgebraElement random_element(const Groupoid& g, Rng& rng) {
  AlgebraElement a;
  for (std::size_t i = 0; i < g.size(); ++i) a.set(TransitionId{i}, standard_complex_normal(rng));
  return a;
}

AlgebraElement random_self_adjoint(const Groupoid& g, Rng& rng) {
  const AlgebraElement a = random_element(g, rng);
  return 0.5 * (a + involution(a, g));
}

}  // namespace gq
