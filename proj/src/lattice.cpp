#include "gq/lattice.hpp"

#include <algorithm>

#include <Eigen/Eigenvalues>

#include "gq/linalg.hpp"

namespace gq {

namespace {

double norm_value(const Matrix& m, double tol) {
  const double frob = m.norm();
  return frob <= tol ? frob : operator_norm(m);
}

void require_compatible(const Proposition& p, const Proposition& q) {
  if (p.dim() != q.dim() || p.rep() != q.rep())
    throw DomainError("propositions live in different representations or dimensions");
}

// Gap between two lattice expressions; Frobenius is enough to clear tiny gaps.
double gap(const Proposition& a, const Proposition& b, double tol) {
  return norm_value(a.matrix() - b.matrix(), tol);
}

}  // namespace

PropositionResiduals proposition_residuals(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) throw DomainError("a proposition must be a square matrix");
  return {norm_value(m.adjoint() - m, tol), norm_value(m * m - m, tol)};
}

NotAProposition::NotAProposition(PropositionResiduals r)
    : DomainError("operator is not a proposition (self-adjoint residual " + std::to_string(r.self_adjoint) +
                  ", idempotent residual " + std::to_string(r.idempotent) + ")"),
      residuals_(r) {}

Proposition Proposition::certify(Operator op, double tol) {
  const PropositionResiduals r = proposition_residuals(op.matrix, tol);
  if (r.self_adjoint > tol || r.idempotent > tol) throw NotAProposition(r);
  const auto n = op.matrix.rows();
  Matrix comp = Matrix::Identity(n, n) - op.matrix;
  return Proposition(std::move(op), std::move(comp), r);
}

Proposition Proposition::zero(Rep rep, std::size_t dim) {
  const auto n = static_cast<Eigen::Index>(dim);
  return certify(Operator{rep, Matrix::Zero(n, n)});
}

Proposition Proposition::identity(Rep rep, std::size_t dim) {
  const auto n = static_cast<Eigen::Index>(dim);
  return certify(Operator{rep, Matrix::Identity(n, n)});
}

Proposition Proposition::complement() const {
  return Proposition(Operator{op_.rep, complement_}, op_.matrix, residuals_);
}

std::optional<Proposition> is_proposition(const Operator& op, PropositionResiduals* rejected) {
  try {
    return Proposition::certify(op);
  } catch (const NotAProposition& e) {
    if (rejected) *rejected = e.residuals();
    return std::nullopt;
  }
}

bool leq(const Proposition& p, const Proposition& q, double tol) {
  require_compatible(p, q);
  const Matrix& pm = p.matrix();
  const Matrix& qm = q.matrix();
  if (!operator_norm_at_most(pm * qm - pm, tol)) return false;
  // PQ = P forces QP = (PQ)† = P for genuine projections.
  if (!operator_norm_at_most(qm * pm - pm, 10.0 * tol))
    throw InternalError("PQ = P holds but QP = P does not");
  return true;
}

MeetResult meet_with_trace(const Proposition& p, const Proposition& q) {
  require_compatible(p, q);
  const Matrix& pm = p.matrix();
  Matrix pqp = pm * q.matrix() * pm;
  pqp = 0.5 * (pqp + pqp.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(pqp);
  Eigen::VectorXd power = es.eigenvalues().cwiseMax(0.0).cwiseMin(1.0);

  // Each eigenvalue converges on its own: once λ − λ² is below the step
  // tolerance it is settled at its limit, 0 or 1. Squaring a settled 1 − 1e-15
  // further would drift it to 0 while slower eigenvalues finish.
  std::vector<bool> settled(static_cast<std::size_t>(power.size()), false);
  auto settle = [&](Eigen::Index i) {
    if (power(i) - power(i) * power(i) <= kMeetStepTolerance) {
      power(i) = power(i) > 0.5 ? 1.0 : 0.0;
      settled[static_cast<std::size_t>(i)] = true;
    }
  };
  for (Eigen::Index i = 0; i < power.size(); ++i) settle(i);

  int iterations = 0;
  double step = 0.0;
  while (std::find(settled.begin(), settled.end(), false) != settled.end()) {
    if (iterations >= kMeetMaxIterations)
      throw NumericalError("meet did not converge within " + std::to_string(kMeetMaxIterations) + " iterations", step);
    // X_k = V diag(power) V† with V unitary, so ‖X_{k+1} − X_k‖ is the largest eigenvalue change.
    step = 0.0;
    for (Eigen::Index i = 0; i < power.size(); ++i) {
      if (settled[static_cast<std::size_t>(i)]) continue;
      const double next = power(i) * power(i);
      step = std::max(step, power(i) - next);
      power(i) = next;
      settle(i);
    }
    ++iterations;
  }
  const Matrix& v = es.eigenvectors();
  Matrix x = v * power.cast<Complex>().asDiagonal() * v.adjoint();
  x = 0.5 * (x + x.adjoint());
  try {
    return {Proposition::certify(Operator{p.rep(), std::move(x)}), iterations, step};
  } catch (const NotAProposition& e) {
    throw NumericalError("meet limit failed certification", e.residuals().max());
  }
}

Proposition meet(const Proposition& p, const Proposition& q) { return meet_with_trace(p, q).meet; }

MeetResult meet_unsymmetrized(const Proposition& p, const Proposition& q, int max_iterations, double step_tol) {
  require_compatible(p, q);
  const Matrix pq = p.matrix() * q.matrix();
  Matrix y = pq;
  int iterations = 0;
  double step = 0.0;
  for (;;) {
    if (iterations >= max_iterations)
      throw NumericalError("unsymmetrized meet did not converge", step);
    Matrix next = y * pq;
    step = (next - y).norm();
    y = std::move(next);
    ++iterations;
    if (step <= step_tol) break;
  }
  y = 0.5 * (y + y.adjoint());
  return {Proposition::certify(Operator{p.rep(), std::move(y)}, 1e-8), iterations, step};
}

Proposition complement(const Proposition& p) { return p.complement(); }

Proposition join(const Proposition& p, const Proposition& q) {
  return meet(p.complement(), q.complement()).complement();
}

LatticeReport check_boolean(const std::vector<NamedProposition>& props, const LatticeCheckOptions& options) {
  LatticeReport report;
  const std::size_t m = props.size();
  report.propositions = m;
  if (m == 0) return report;
  for (const auto& np : props) require_compatible(props.front().prop, np.prop);
  const double tol = options.law_tolerance;

  auto P = [&](std::size_t i) -> const Proposition& { return props[i].prop; };

  std::vector<std::vector<bool>> le(m, std::vector<bool>(m));
  std::vector<std::vector<std::optional<Proposition>>> meets(m), joins(m);
  for (std::size_t i = 0; i < m; ++i) {
    meets[i].resize(m);
    joins[i].resize(m);
    for (std::size_t j = 0; j < m; ++j) le[i][j] = leq(P(i), P(j));
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i; j < m; ++j) {
      meets[i][j] = meets[j][i] = meet(P(i), P(j));
      joins[i][j] = joins[j][i] = join(P(i), P(j));
    }
  }

  for (std::size_t i = 0; i < m; ++i) {
    if (!le[i][i]) report.order_violations.push_back({"reflexivity", {i}, gap(meets[i][i].value(), P(i), tol)});
    for (std::size_t j = i + 1; j < m; ++j) {
      if (le[i][j] && le[j][i]) {
        const double d = gap(P(i), P(j), tol);
        if (d > 2e-9) report.order_violations.push_back({"antisymmetry", {i, j}, d});
      }
    }
  }

  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = 0; k < m; ++k)
        if (le[i][j] && le[j][k] && !le[i][k])
          report.order_violations.push_back({"transitivity", {i, j, k}, 0.0});

  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (i == j) continue;
      ++report.pairs_tested;
      const Proposition& p = P(i);
      // P ∪ (Q ∩ P) = (P ∪ Q) ∩ P
      const double d1 = gap(join(p, *meets[j][i]), meet(*joins[i][j], p), tol);
      if (d1 > tol) report.modularity_violations.push_back({"weak-modularity-join", {i, j}, d1});
      // P ∩ (Q ∪ P) = (P ∩ Q) ∪ P
      const double d2 = gap(meet(p, *joins[j][i]), join(*meets[i][j], p), tol);
      if (d2 > tol) report.modularity_violations.push_back({"weak-modularity-meet", {i, j}, d2});
    }
  }

  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      for (std::size_t k = j + 1; k < m; ++k) {
        if (report.distributivity_violations.size() >= options.max_witnesses) continue;
        ++report.triples_tested;
        const Proposition& p = P(i);
        // P ∩ (Q ∪ R) = (P ∩ Q) ∪ (P ∩ R)
        const double d1 = gap(meet(p, *joins[j][k]), join(*meets[i][j], *meets[i][k]), tol);
        if (d1 > tol) report.distributivity_violations.push_back({"distributive-meet-over-join", {i, j, k}, d1});
        // P ∪ (Q ∩ R) = (P ∪ Q) ∩ (P ∪ R)
        const double d2 = gap(join(p, *meets[j][k]), meet(*joins[i][j], *joins[i][k]), tol);
        if (d2 > tol) report.distributivity_violations.push_back({"distributive-join-over-meet", {i, j, k}, d2});
      }
    }
  }
  return report;
}

}  // namespace gq
