#pragma once

#include <cstddef>
#include <string_view>

#include "gq/algebra.hpp"
#include "gq/core.hpp"
#include "gq/groupoid.hpp"

namespace gq {

enum class Rep { LeftRegular, Fundamental };

std::string_view to_string(Rep rep);
/// Accepts "left-regular" and "fundamental"; throws DomainError otherwise.
Rep parse_rep(std::string_view text);

/// Dense matrix realizing an algebra element in a representation.
struct Operator {
  Rep rep = Rep::LeftRegular;
  Matrix matrix;

  std::size_t dim() const noexcept { return static_cast<std::size_t>(matrix.rows()); }
};

/// λ(A) on L²(G) with basis {δ_γ}: λ(α)δ_γ = δ_{α∘γ} when s(α) = t(γ).
Operator left_regular(const AlgebraElement& a, const Groupoid& g);

/// π₀(A) on L²(Ω): π₀(α)|x⟩ = δ_{x,s(α)} |t(α)⟩.
Operator fundamental(const AlgebraElement& a, const Groupoid& g);

Operator represent(Rep rep, const AlgebraElement& a, const Groupoid& g);

/// Dimension of the carrier space of `rep` for `g`.
std::size_t rep_dimension(Rep rep, const Groupoid& g);

}  // namespace gq
