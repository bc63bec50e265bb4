#pragma once

#include <complex>
#include <compare>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace gq {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Position of an outcome in the object list of a groupoid.
struct ObjectId {
  std::size_t index = 0;

  constexpr ObjectId() = default;
  constexpr explicit ObjectId(std::size_t i) : index(i) {}
  friend constexpr auto operator<=>(ObjectId, ObjectId) = default;
};

/// Dense identifier of a transition (morphism) inside one groupoid.
struct TransitionId {
  std::size_t index = 0;

  constexpr TransitionId() = default;
  constexpr explicit TransitionId(std::size_t i) : index(i) {}
  friend constexpr auto operator<=>(TransitionId, TransitionId) = default;
};

// Error taxonomy. The CLI maps DomainError/PreconditionError to exit code 1
// and NumericalError/InternalError to exit code 2.

/// Input outside an operation's domain (foreign ids, overlapping sets, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An operation was called on an input that violates its stated precondition.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Iterative or spectral computation failed to meet its tolerance.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// Broken internal invariant; signals a bug rather than bad input.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace gq

template <>
struct std::hash<gq::ObjectId> {
  std::size_t operator()(gq::ObjectId x) const noexcept { return std::hash<std::size_t>{}(x.index); }
};

template <>
struct std::hash<gq::TransitionId> {
  std::size_t operator()(gq::TransitionId t) const noexcept {
    return std::hash<std::size_t>{}(t.index);
  }
};
