#include "gq/states.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "gq/linalg.hpp"

namespace gq {

namespace {

void validate_phi(const std::vector<Complex>& phi, const Groupoid& g, bool require_normalized) {
  if (phi.size() != g.size()) throw InvalidState("phi must assign a value to every transition");
  double total = 0.0;
  for (std::size_t x = 0; x < g.object_count(); ++x) {
    const Complex v = phi[g.unit(ObjectId{x}).index];
    if (std::abs(v.imag()) > kStateTolerance || v.real() < -kStateTolerance)
      throw InvalidState("phi(1_" + g.object_label(ObjectId{x}) + ") is not a nonnegative real");
    total += v.real();
  }
  if (require_normalized && std::abs(total - 1.0) > kStateTolerance)
    throw InvalidState("sum of phi over units is " + std::to_string(total) + ", expected 1");
  for (std::size_t i = 0; i < g.size(); ++i) {
    const TransitionId a{i};
    if (std::abs(phi[g.inverse(a).index] - std::conj(phi[i])) > kStateTolerance)
      throw InvalidState("phi(a^-1) != conj(phi(a)) at " + g.transition_label(a));
  }
}

}  // namespace

StateFn StateFn::from_density(Operator rho, const Groupoid& g) {
  const auto n = static_cast<Eigen::Index>(rep_dimension(rho.rep, g));
  if (rho.matrix.rows() != n || rho.matrix.cols() != n)
    throw InvalidState("density has dimension " + std::to_string(rho.matrix.rows()) + ", representation needs " +
                       std::to_string(n));
  if (hermiticity_residual(rho.matrix) > kStateTolerance) throw InvalidState("density is not Hermitian");
  const Complex tr = rho.matrix.trace();
  if (std::abs(tr - 1.0) > kStateTolerance) throw InvalidState("density trace is not 1");
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (rho.matrix + rho.matrix.adjoint()), Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -kStateTolerance) throw InvalidState("density is not positive semidefinite");

  std::vector<Complex> phi(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const TransitionId a{i};
    if (rho.rep == Rep::Fundamental) {
      // Tr(ρ̂ |t⟩⟨s|) = ρ̂[s, t]
      phi[i] = rho.matrix(static_cast<Eigen::Index>(g.source(a).index), static_cast<Eigen::Index>(g.target(a).index));
    } else {
      // λ(α) has ones at (α∘γ, γ), so Tr(ρ̂ λ(α)) = Σ_γ ρ̂[γ, α∘γ].
      Complex sum{};
      for (std::size_t j = 0; j < g.size(); ++j)
        if (auto ag = g.compose(a, TransitionId{j}))
          sum += rho.matrix(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(ag->index));
      phi[i] = sum;
    }
  }
  return StateFn(std::move(phi), std::move(rho), true);
}

StateFn StateFn::from_phi(std::vector<Complex> phi, const Groupoid& g) {
  validate_phi(phi, g, true);
  StateFn s(std::move(phi), std::nullopt, true);
  if (gram_min_eigenvalue(s, g) < -kStateTolerance) throw InvalidState("phi is not positive definite");
  return s;
}

StateFn StateFn::positive_definite(std::vector<Complex> phi, const Groupoid& g) {
  validate_phi(phi, g, false);
  double total = 0.0;
  for (std::size_t x = 0; x < g.object_count(); ++x) total += phi[g.unit(ObjectId{x}).index].real();
  StateFn s(std::move(phi), std::nullopt, std::abs(total - 1.0) <= kStateTolerance);
  if (gram_min_eigenvalue(s, g) < -kStateTolerance) throw InvalidState("phi is not positive definite");
  return s;
}

StateFn StateFn::from_vector(const Vector& psi, Rep rep, const Groupoid& g) {
  const double norm2 = psi.squaredNorm();
  if (norm2 == 0.0) throw InvalidState("zero vector is not a state");
  return from_density(Operator{rep, psi * psi.adjoint() / norm2}, g);
}

Matrix gram_matrix(const StateFn& s, const Groupoid& g) {
  const auto n = static_cast<Eigen::Index>(g.size());
  Matrix m = Matrix::Zero(n, n);
  for (std::size_t b = 0; b < g.size(); ++b) {
    const TransitionId binv = g.inverse(TransitionId{b});
    for (std::size_t a = 0; a < g.size(); ++a) {
      if (auto c = g.compose(binv, TransitionId{a}))
        m(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(a)) = s.phi(*c);
    }
  }
  return m;
}

double gram_min_eigenvalue(const StateFn& s, const Groupoid& g) {
  const Matrix m = gram_matrix(s, g);
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

Complex evaluate(const StateFn& s, const AlgebraElement& a, const Groupoid& g) {
  check_element(a, g);
  Complex sum{};
  for (const auto& [t, c] : a.coefficients()) sum += c * s.phi(t);
  return sum;
}

std::vector<double> classical_distribution(const StateFn& s, const Groupoid& g) {
  if (!s.normalized()) throw InvalidState("classical distribution needs a normalized state");
  std::vector<double> p(g.object_count());
  for (std::size_t x = 0; x < p.size(); ++x) p[x] = s.phi(g.unit(ObjectId{x})).real();
  return p;
}

HistorySet HistorySet::of(std::vector<TransitionId> members, const Groupoid& g) {
  for (TransitionId t : members)
    if (!g.contains(t)) throw DomainError("history set references transition " + std::to_string(t.index));
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  HistorySet h;
  h.members_ = std::move(members);
  return h;
}

HistorySet HistorySet::all(const Groupoid& g) {
  std::vector<TransitionId> ids;
  for (std::size_t i = 0; i < g.size(); ++i) ids.push_back(TransitionId{i});
  return of(std::move(ids), g);
}

bool HistorySet::contains(TransitionId t) const { return std::binary_search(members_.begin(), members_.end(), t); }

bool HistorySet::disjoint_with(const HistorySet& other) const {
  return std::none_of(members_.begin(), members_.end(), [&](TransitionId t) { return other.contains(t); });
}

HistorySet unite(const HistorySet& a, const HistorySet& b) {
  HistorySet out;
  std::set_union(a.members_.begin(), a.members_.end(), b.members_.begin(), b.members_.end(),
                 std::back_inserter(out.members_));
  return out;
}

Complex decoherence_functional(const StateFn& s, const HistorySet& a, const HistorySet& b, const Groupoid& g) {
  Complex sum{};
  for (TransitionId alpha : a.members()) {
    const TransitionId ainv = g.inverse(alpha);
    for (TransitionId beta : b.members())
      if (auto c = g.compose(ainv, beta)) sum += s.phi(*c);
  }
  return sum;
}

double quantum_measure(const StateFn& s, const HistorySet& a, const Groupoid& g) {
  return decoherence_functional(s, a, a, g).real();
}

double interference(const StateFn& s, std::span<const HistorySet> sets, const Groupoid& g) {
  if (sets.size() != 2 && sets.size() != 3) throw DomainError("interference takes two or three history sets");
  for (std::size_t i = 0; i < sets.size(); ++i)
    for (std::size_t j = i + 1; j < sets.size(); ++j)
      if (!sets[i].disjoint_with(sets[j])) throw DomainError("interference needs pairwise disjoint history sets");
  auto mu = [&](const HistorySet& h) { return quantum_measure(s, h, g); };
  const HistorySet& a = sets[0];
  const HistorySet& b = sets[1];
  if (sets.size() == 2) return mu(unite(a, b)) - mu(a) - mu(b);
  const HistorySet& c = sets[2];
  return mu(unite(unite(a, b), c)) - mu(unite(a, b)) - mu(unite(a, c)) - mu(unite(b, c)) + mu(a) + mu(b) + mu(c);
}

double interference(const StateFn& s, std::initializer_list<HistorySet> sets, const Groupoid& g) {
  return interference(s, std::span<const HistorySet>(sets.begin(), sets.size()), g);
}

FactorizabilityCheck is_factorizable(const StateFn& s, const Groupoid& g, double tol) {
  FactorizabilityCheck out;
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (std::size_t j = 0; j < g.size(); ++j) {
      const TransitionId a{i}, b{j};
      if (auto ab = g.compose(a, b))
        out.worst_residual = std::max(out.worst_residual, std::abs(s.phi(*ab) - s.phi(a) * s.phi(b)));
    }
  }
  out.factorizable = out.worst_residual <= tol;
  return out;
}

Complex amplitude(const StateFn& s, ObjectId x, ObjectId y, const Groupoid& g) {
  Complex sum{};
  for (TransitionId a : g.hom(x, y)) sum += s.phi(a);
  return sum;
}

Complex history_double_sum(const StateFn& s, ObjectId x, ObjectId y, const Groupoid& g) {
  Complex sum{};
  const auto& paths = g.hom(x, y);
  for (TransitionId a : paths)
    for (TransitionId b : paths) sum += s.phi(*g.compose(g.inverse(a), b));
  return sum;
}

}  // namespace gq
