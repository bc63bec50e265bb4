#pragma once

#include <cstddef>
#include <vector>

#include "gq/core.hpp"
#include "gq/groupoid.hpp"
#include "gq/linalg.hpp"
#include "gq/representation.hpp"

namespace gq {

/// Spanning set of a matrix algebra together with the dimension of its span.
struct AlgebraBasis {
  std::vector<Matrix> elements;
  std::size_t dim_span = 0;

  std::size_t matrix_dim() const { return elements.empty() ? 0 : static_cast<std::size_t>(elements.front().rows()); }
};

/// Wraps a spanning set; throws DomainError on an empty set or mixed sizes.
AlgebraBasis make_basis(std::vector<Matrix> elements);

/// {rep(α) : α ∈ G}. At finite dimension its span is the von Neumann algebra.
AlgebraBasis representation_basis(Rep rep, const Groupoid& g);

/// Relative eigenvalue threshold on the Gram matrix of the stacked
/// commutation constraints below which a direction counts as null.
inline constexpr double kCommutantNullTolerance = 1e-9;

/// Basis of {X : XB = BX for all B in span(basis)}, computed as the null
/// space of the stacked constraints (I⊗B − Bᵀ⊗I) vec(X) = 0.
AlgebraBasis commutant(const AlgebraBasis& basis);

/// Unital *-algebra generated by a set of matrices (closure under products and adjoints).
AlgebraBasis generated_algebra(const std::vector<Matrix>& generators);

/// True when both spanning sets span the same subspace (rank test at kRankTolerance).
bool same_span(const AlgebraBasis& a, const AlgebraBasis& b);

/// λ(α)λ(β) = λ(β)λ(α) for every pair of transitions.
bool is_abelian(const Groupoid& g);

}  // namespace gq
