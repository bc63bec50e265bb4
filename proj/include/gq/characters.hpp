#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "gq/algebra.hpp"
#include "gq/core.hpp"
#include "gq/groupoid.hpp"

namespace gq {

/// Character χ of the isotropy group at `object`, written through the
/// generators chosen for that group: χ(gen_i) = exp(2πi·exponents[i]/orders[i]).
struct CharacterLabel {
  ObjectId object;
  std::vector<std::size_t> exponents;
  std::vector<std::size_t> orders;

  std::string to_string(const Groupoid& g) const;
};

struct CharacterDiagonalization {
  /// Columns are normalized character vectors (1/√|G_x|) Σ_γ conj(χ(γ)) δ_γ.
  Matrix unitary;
  std::vector<CharacterLabel> labels;
  /// values[c][γ] = χ_c(γ) for γ in the character's isotropy group, 0 elsewhere.
  std::vector<std::vector<Complex>> values;

  /// Eigenvalues of λ(a) in column order: Σ_γ a_γ χ_c(γ).
  Vector symbol(const AlgebraElement& a) const;
};

/// Simultaneously diagonalizes λ(ℂ[G]) for a totally disconnected groupoid
/// with abelian isotropy. Throws PreconditionError for any other groupoid.
CharacterDiagonalization character_diagonalize(const Groupoid& g);

/// max_{i≠j} |m(i,j)|.
double off_diagonal_residue(const Matrix& m);

}  // namespace gq
