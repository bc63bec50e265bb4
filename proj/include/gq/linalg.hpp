#pragma once

#include <cstddef>
#include <vector>

#include "gq/core.hpp"

namespace gq {

/// Relative singular-value threshold used for span dimensions and ranks.
inline constexpr double kRankTolerance = 1e-9;

/// Largest singular value.
double operator_norm(const Matrix& m);

/// Cheap upper bound first, exact spectral norm only when the bound is inconclusive.
bool operator_norm_at_most(const Matrix& m, double bound);

double hermiticity_residual(const Matrix& m);

Matrix kron(const Matrix& a, const Matrix& b);

/// Column-major vectorization.
Vector vec(const Matrix& m);

/// Number of singular values above `rel_tol * sigma_max`.
std::size_t numerical_rank(const Matrix& m, double rel_tol = kRankTolerance);

/// Orthonormal basis (as columns) of span{vec(M_i)}; columns = dimension of the span.
Matrix span_basis(const std::vector<Matrix>& elements, double rel_tol = kRankTolerance);

std::size_t span_dimension(const std::vector<Matrix>& elements, double rel_tol = kRankTolerance);

/// Distance of vec(m) from the column span of an orthonormal `basis`.
double span_residual(const Matrix& basis, const Matrix& m);

struct SpectralProjection {
  double eigenvalue;
  Matrix projector;
};

/// Spectral projections of a Hermitian matrix; eigenvalues closer than
/// `cluster_tol` (adjacent, sorted) merge into one projection.
std::vector<SpectralProjection> spectral_projections(const Matrix& hermitian, double cluster_tol = 1e-8);

}  // namespace gq
