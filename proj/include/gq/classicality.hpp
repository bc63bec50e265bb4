#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "gq/algebra.hpp"
#include "gq/groupoid.hpp"
#include "gq/lattice.hpp"

namespace gq {

/// P_α = ½(1_x + 1_y + α + α⁻¹) for α: x -> y.
AlgebraElement jump_proposition(const Groupoid& g, TransitionId alpha);

/// Units 1_x, one P_α per non-loop pair {α, α⁻¹}, and the spectral
/// projections of `samples` random self-adjoint elements, in `rep`.
std::vector<NamedProposition> canonical_propositions(const Groupoid& g, std::size_t samples, Rng& rng,
                                                     Rep rep = Rep::LeftRegular);

struct ClassicalityVerdict {
  bool boolean_lattice = false;
  bool totally_disconnected = false;
  bool abelian_isotropy = false;
  bool abelian_algebra = false;
  /// Boolean ⇔ (totally disconnected ∧ abelian isotropy) ⇔ abelian algebra.
  bool consistent = false;

  /// Booleanness is decided on the canonical proposition set only.
  std::vector<NamedProposition> propositions;
  LatticeReport lattice;

  bool classical() const noexcept {
    return boolean_lattice && totally_disconnected && abelian_isotropy && abelian_algebra;
  }
  /// Totally disconnected with non-abelian isotropy.
  bool pseudo_classical() const noexcept { return totally_disconnected && !abelian_isotropy; }
};

ClassicalityVerdict classicality_verdict(const Groupoid& g, std::size_t samples, std::uint64_t seed,
                                         const LatticeCheckOptions& options = {});

}  // namespace gq
