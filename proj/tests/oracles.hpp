#pragma once

// Brute-force reference computations. Nothing here calls the library code
// it is used to check; only plain Eigen and the groupoid tables.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <set>
#include <vector>

#include <Eigen/Dense>

#include "gq/groupoid.hpp"

namespace oracle {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Reachability closure of "there is a transition x -> y".
inline std::vector<std::set<std::size_t>> orbits(const gq::Groupoid& g) {
  const std::size_t n = g.object_count();
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (std::size_t x = 0; x < n; ++x) reach[x][x] = true;
  for (const auto& t : g.transitions()) reach[t.source.index][t.target.index] = reach[t.target.index][t.source.index] = true;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (reach[i][k] && reach[k][j]) reach[i][j] = true;
  std::vector<std::set<std::size_t>> out;
  std::vector<bool> seen(n, false);
  for (std::size_t x = 0; x < n; ++x) {
    if (seen[x]) continue;
    std::set<std::size_t> orbit;
    for (std::size_t y = 0; y < n; ++y)
      if (reach[x][y]) {
        orbit.insert(y);
        seen[y] = true;
      }
    out.push_back(orbit);
  }
  return out;
}

// Dense convolution: c[a∘b] += A[a]B[b] over every ordered pair.
inline Vector convolve(const Vector& a, const Vector& b, const gq::Groupoid& g) {
  const std::size_t n = g.size();
  Vector c = Vector::Zero(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const auto& t = g.transitions();
      if (t[i].source != t[j].target) continue;
      const auto r = g.tables().composition[i * n + j];
      c(static_cast<Eigen::Index>(r->index)) += a(static_cast<Eigen::Index>(i)) * b(static_cast<Eigen::Index>(j));
    }
  return c;
}

// Projection onto ran P ∩ ran Q as the null space of [(1-P); (1-Q)].
inline Matrix range_intersection(const Matrix& p, const Matrix& q) {
  const auto n = p.rows();
  Matrix stacked(2 * n, n);
  stacked << Matrix::Identity(n, n) - p, Matrix::Identity(n, n) - q;
  Eigen::JacobiSVD<Matrix> svd(stacked, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  Matrix basis(n, 0);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (s(i) < 1e-7) {
      basis.conservativeResize(n, basis.cols() + 1);
      basis.col(basis.cols() - 1) = svd.matrixV().col(i);
    }
  }
  return basis * basis.adjoint();
}

inline Matrix random_matrix(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = Complex(n(rng), n(rng));
  return m;
}

// Orthogonal projection of the given rank onto a random subspace.
inline Matrix random_projection(Eigen::Index dim, Eigen::Index rank, std::mt19937_64& rng) {
  if (rank == 0) return Matrix::Zero(dim, dim);
  Eigen::HouseholderQR<Matrix> qr(random_matrix(dim, rank, rng));
  const Matrix q = qr.householderQ() * Matrix::Identity(dim, rank);
  return q * q.adjoint();
}

// Projection onto span(columns of a) (possibly rank deficient).
inline Matrix projection_onto(const Matrix& a) {
  if (a.cols() == 0 || a.norm() == 0.0) return Matrix::Zero(a.rows(), a.rows());
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullU);
  const auto& s = svd.singularValues();
  Eigen::Index r = 0;
  while (r < s.size() && s(r) > 1e-9 * s(0)) ++r;
  const Matrix u = svd.matrixU().leftCols(r);
  return u * u.adjoint();
}

// Entropy of the reduced density matrix Tr_B |ψ⟩⟨ψ| with ψ[i·dB + j].
inline double entanglement_entropy(const Vector& psi, std::size_t da, std::size_t db) {
  Matrix rho_a = Matrix::Zero(static_cast<Eigen::Index>(da), static_cast<Eigen::Index>(da));
  const double norm2 = psi.squaredNorm();
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t k = 0; k < da; ++k)
      for (std::size_t j = 0; j < db; ++j)
        rho_a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) +=
            psi(static_cast<Eigen::Index>(i * db + j)) * std::conj(psi(static_cast<Eigen::Index>(k * db + j))) / norm2;
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho_a);
  double s = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double p = es.eigenvalues()(i);
    if (p > 1e-300) s -= p * std::log(p);
  }
  return s;
}

// λ(α) built straight from the composition table: δ_γ ↦ δ_{α∘γ}.
inline Matrix regular_matrix(std::size_t alpha, const gq::Groupoid& g) {
  const std::size_t n = g.size();
  const auto& t = g.transitions();
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t c = 0; c < n; ++c) {
    if (t[alpha].source != t[c].target) continue;
    const auto r = g.tables().composition[alpha * n + c];
    m(static_cast<Eigen::Index>(r->index), static_cast<Eigen::Index>(c)) = 1.0;
  }
  return m;
}

// π₀(α) = |t(α)⟩⟨s(α)|.
inline Matrix fundamental_matrix(std::size_t alpha, const gq::Groupoid& g) {
  const auto n = static_cast<Eigen::Index>(g.object_count());
  Matrix m = Matrix::Zero(n, n);
  const auto& t = g.transitions()[alpha];
  m(static_cast<Eigen::Index>(t.target.index), static_cast<Eigen::Index>(t.source.index)) = 1.0;
  return m;
}

// Random density matrix A A† / Tr.
inline Matrix random_density(Eigen::Index dim, std::mt19937_64& rng) {
  const Matrix a = random_matrix(dim, dim, rng);
  const Matrix rho = a * a.adjoint();
  return rho / rho.trace().real();
}

inline Complex unit_root(std::size_t k, std::size_t n) {
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n));
}

}  // namespace oracle
