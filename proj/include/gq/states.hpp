#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

#include "gq/algebra.hpp"
#include "gq/core.hpp"
#include "gq/groupoid.hpp"
#include "gq/representation.hpp"

namespace gq {

inline constexpr double kStateTolerance = 1e-10;

/// Rejected density matrix or positive-definite function.
class InvalidState : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A state through its positive-definite function φ(α) = ρ(α), plus the
/// density operator it came from when there is one.
///
/// `positive_definite` builds functions that skip the Σ φ(1_x) = 1
/// normalization; everything else is checked on construction.
class StateFn {
 public:
  /// φ(α) = Tr(ρ̂ rep(α)). ρ̂ must be Hermitian, PSD and of unit trace.
  static StateFn from_density(Operator rho, const Groupoid& g);
  /// Normalized state from φ directly (Gram-PSD validated).
  static StateFn from_phi(std::vector<Complex> phi, const Groupoid& g);
  /// Positive-definite function without the normalization requirement.
  static StateFn positive_definite(std::vector<Complex> phi, const Groupoid& g);
  /// Vector state |ψ⟩⟨ψ| / ⟨ψ|ψ⟩ in `rep`.
  static StateFn from_vector(const Vector& psi, Rep rep, const Groupoid& g);

  Complex phi(TransitionId t) const { return phi_.at(t.index); }
  const std::vector<Complex>& phi() const noexcept { return phi_; }
  const std::optional<Operator>& density() const noexcept { return density_; }
  bool normalized() const noexcept { return normalized_; }
  std::size_t size() const noexcept { return phi_.size(); }

 private:
  StateFn(std::vector<Complex> phi, std::optional<Operator> density, bool normalized)
      : phi_(std::move(phi)), density_(std::move(density)), normalized_(normalized) {}

  std::vector<Complex> phi_;
  std::optional<Operator> density_;
  bool normalized_ = true;
};

/// G[β, α] = φ(β⁻¹ ∘ α) when t(β) = t(α), else 0. PSD for every state.
Matrix gram_matrix(const StateFn& s, const Groupoid& g);

double gram_min_eigenvalue(const StateFn& s, const Groupoid& g);

/// ρ(a) = Σ a_α φ(α).
Complex evaluate(const StateFn& s, const AlgebraElement& a, const Groupoid& g);

/// p_x = φ(1_x). Requires a normalized state.
std::vector<double> classical_distribution(const StateFn& s, const Groupoid& g);

/// A set of transitions of one groupoid (an event in the power set of G).
class HistorySet {
 public:
  HistorySet() = default;
  /// Sorted, duplicate-free; throws DomainError for foreign ids.
  static HistorySet of(std::vector<TransitionId> members, const Groupoid& g);
  static HistorySet all(const Groupoid& g);

  const std::vector<TransitionId>& members() const noexcept { return members_; }
  bool empty() const noexcept { return members_.empty(); }
  std::size_t size() const noexcept { return members_.size(); }
  bool contains(TransitionId t) const;
  bool disjoint_with(const HistorySet& other) const;

  friend HistorySet unite(const HistorySet& a, const HistorySet& b);
  friend bool operator==(const HistorySet&, const HistorySet&) = default;

 private:
  std::vector<TransitionId> members_;
};

/// D(A, B) = Σ_{α∈A, β∈B, t(α)=t(β)} φ(α⁻¹ ∘ β).
Complex decoherence_functional(const StateFn& s, const HistorySet& a, const HistorySet& b, const Groupoid& g);

/// μ(A) = D(A, A), real part (the imaginary part vanishes to rounding).
double quantum_measure(const StateFn& s, const HistorySet& a, const Groupoid& g);

/// I₂ for two sets, I₃ for three; sets must be pairwise disjoint.
double interference(const StateFn& s, std::span<const HistorySet> sets, const Groupoid& g);
double interference(const StateFn& s, std::initializer_list<HistorySet> sets, const Groupoid& g);

struct FactorizabilityCheck {
  bool factorizable = false;
  /// max |φ(α∘β) − φ(α)φ(β)| over composable pairs.
  double worst_residual = 0.0;
};

FactorizabilityCheck is_factorizable(const StateFn& s, const Groupoid& g, double tol = 1e-10);

/// φ_{y,x} = Σ_{α: x->y} φ(α). No normalization is applied.
Complex amplitude(const StateFn& s, ObjectId x, ObjectId y, const Groupoid& g);

/// Σ_{α,β: x->y} φ(α⁻¹ ∘ β); equals |φ_{y,x}|² for factorizable φ.
Complex history_double_sum(const StateFn& s, ObjectId x, ObjectId y, const Groupoid& g);

}  // namespace gq
