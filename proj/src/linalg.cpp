#include "gq/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace gq {

double operator_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

bool operator_norm_at_most(const Matrix& m, double bound) {
  if (m.norm() <= bound) return true;
  return operator_norm(m) <= bound;
}

double hermiticity_residual(const Matrix& m) { return operator_norm(m - m.adjoint()); }

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Vector vec(const Matrix& m) { return Eigen::Map<const Vector>(m.data(), m.size()); }

std::size_t numerical_rank(const Matrix& m, double rel_tol) {
  if (m.size() == 0) return 0;
  Eigen::BDCSVD<Matrix> svd(m);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  std::size_t r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > rel_tol * s(0)) ++r;
  return r;
}

Matrix span_basis(const std::vector<Matrix>& elements, double rel_tol) {
  if (elements.empty()) return Matrix(0, 0);
  const Eigen::Index len = elements.front().size();
  Matrix stacked(len, static_cast<Eigen::Index>(elements.size()));
  for (std::size_t k = 0; k < elements.size(); ++k) {
    if (elements[k].size() != len) throw DomainError("span_basis: elements differ in size");
    stacked.col(static_cast<Eigen::Index>(k)) = vec(elements[k]);
  }
  Eigen::BDCSVD<Matrix> svd(stacked, Eigen::ComputeThinU);
  const auto& s = svd.singularValues();
  Eigen::Index r = 0;
  if (s.size() > 0 && s(0) > 0.0)
    while (r < s.size() && s(r) > rel_tol * s(0)) ++r;
  return svd.matrixU().leftCols(r);
}

std::size_t span_dimension(const std::vector<Matrix>& elements, double rel_tol) {
  return static_cast<std::size_t>(span_basis(elements, rel_tol).cols());
}

double span_residual(const Matrix& basis, const Matrix& m) {
  const Vector v = vec(m);
  if (basis.cols() == 0) return v.norm();
  return (v - basis * (basis.adjoint() * v)).norm();
}

std::vector<SpectralProjection> spectral_projections(const Matrix& hermitian, double cluster_tol) {
  const Matrix h = 0.5 * (hermitian + hermitian.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  const auto& vals = es.eigenvalues();
  const Matrix& vecs = es.eigenvectors();
  std::vector<SpectralProjection> out;
  Eigen::Index start = 0;
  const Eigen::Index n = vals.size();
  for (Eigen::Index i = 1; i <= n; ++i) {
    if (i < n && vals(i) - vals(i - 1) <= cluster_tol) continue;
    const auto block = vecs.middleCols(start, i - start);
    out.push_back({vals.segment(start, i - start).mean(), block * block.adjoint()});
    start = i;
  }
  return out;
}

}  // namespace gq
