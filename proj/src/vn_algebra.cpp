#include "gq/vn_algebra.hpp"

#include <Eigen/Eigenvalues>

namespace gq {

AlgebraBasis make_basis(std::vector<Matrix> elements) {
  if (elements.empty()) throw DomainError("algebra basis is empty");
  const Eigen::Index n = elements.front().rows();
  for (const auto& m : elements)
    if (m.rows() != n || m.cols() != n) throw DomainError("algebra basis elements must share one square size");
  AlgebraBasis b;
  b.dim_span = span_dimension(elements);
  b.elements = std::move(elements);
  return b;
}

AlgebraBasis representation_basis(Rep rep, const Groupoid& g) {
  std::vector<Matrix> ms;
  ms.reserve(g.size());
  for (std::size_t i = 0; i < g.size(); ++i)
    ms.push_back(represent(rep, AlgebraElement::basis(TransitionId{i}), g).matrix);
  return make_basis(std::move(ms));
}

AlgebraBasis commutant(const AlgebraBasis& basis) {
  if (basis.elements.empty()) throw DomainError("commutant of an empty basis");
  const Eigen::Index n = basis.elements.front().rows();
  const Matrix id = Matrix::Identity(n, n);
  // Σ_B K_Bᴴ K_B with K_B = I⊗B − Bᵀ⊗I, expanded so no n²×n² K_B is formed.
  Matrix gram = Matrix::Zero(n * n, n * n);
  for (const Matrix& b : basis.elements) {
    if (b.rows() != n || b.cols() != n) throw DomainError("commutant: basis elements differ in size");
    const Matrix bt = b.transpose();
    const Matrix bc = b.conjugate();
    gram += kron(id, b.adjoint() * b);
    gram -= kron(bt, b.adjoint());
    gram -= kron(bc, b);
    gram += kron(bc * bt, id);
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (gram + gram.adjoint()));
  const auto& vals = es.eigenvalues();
  const double largest = vals.cwiseAbs().maxCoeff();
  const double top = largest > 0.0 ? largest : 1.0;
  std::vector<Matrix> out;
  for (Eigen::Index k = 0; k < vals.size(); ++k) {
    if (vals(k) > kCommutantNullTolerance * top) break;
    const Vector v = es.eigenvectors().col(k);
    out.push_back(Eigen::Map<const Matrix>(v.data(), n, n));
  }
  AlgebraBasis result;
  result.dim_span = out.size();
  result.elements = std::move(out);
  return result;
}

AlgebraBasis generated_algebra(const std::vector<Matrix>& generators) {
  if (generators.empty()) throw DomainError("generated_algebra: no generators");
  const Eigen::Index n = generators.front().rows();
  std::vector<Matrix> seed{Matrix::Identity(n, n)};
  for (const auto& g : generators) {
    seed.push_back(g);
    seed.push_back(g.adjoint());
  }
  Matrix basis = span_basis(seed);
  for (;;) {
    std::vector<Matrix> current;
    for (Eigen::Index k = 0; k < basis.cols(); ++k)
      current.push_back(Eigen::Map<const Matrix>(basis.col(k).data(), n, n));
    std::vector<Matrix> grown = current;
    for (const auto& a : current)
      for (const auto& b : current) grown.push_back(a * b);
    Matrix next = span_basis(grown);
    if (next.cols() == basis.cols()) return make_basis(std::move(current));
    basis = std::move(next);
  }
}

bool same_span(const AlgebraBasis& a, const AlgebraBasis& b) {
  if (a.matrix_dim() != b.matrix_dim()) return false;
  std::vector<Matrix> all = a.elements;
  all.insert(all.end(), b.elements.begin(), b.elements.end());
  const std::size_t joint = span_dimension(all);
  return joint == a.dim_span && joint == b.dim_span;
}

bool is_abelian(const Groupoid& g) {
  std::vector<Matrix> lambda;
  lambda.reserve(g.size());
  for (std::size_t i = 0; i < g.size(); ++i)
    lambda.push_back(left_regular(AlgebraElement::basis(TransitionId{i}), g).matrix);
  for (std::size_t i = 0; i < lambda.size(); ++i)
    for (std::size_t j = i + 1; j < lambda.size(); ++j)
      if ((lambda[i] * lambda[j] - lambda[j] * lambda[i]).cwiseAbs().maxCoeff() > 1e-12) return false;
  return true;
}

}  // namespace gq
