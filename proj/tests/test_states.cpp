#include <doctest.h>

#include <numeric>

#include "gq/generators.hpp"
#include "gq/representation.hpp"
#include "gq/states.hpp"
#include "oracles.hpp"

using namespace gq;

namespace {

TransitionId T(std::size_t i) { return TransitionId{i}; }

std::vector<Groupoid> zoo() {
  return {pair_groupoid(2), pair_groupoid(3), cyclic_group(4), symmetric_group(3),
          disjoint_union({cyclic_group(2), pair_groupoid(2)})};
}

StateFn random_state(const Groupoid& g, Rep rep, std::mt19937_64& rng) {
  const auto dim = static_cast<Eigen::Index>(rep_dimension(rep, g));
  return StateFn::from_density(Operator{rep, oracle::random_density(dim, rng)}, g);
}

// Each transition lands in one of `k` sets or in none.
std::vector<HistorySet> random_disjoint(const Groupoid& g, std::size_t k, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> slot(0, k);
  std::vector<std::vector<TransitionId>> members(k);
  for (std::size_t t = 0; t < g.size(); ++t) {
    const std::size_t s = slot(rng);
    if (s < k) members[s].push_back(T(t));
  }
  std::vector<HistorySet> out;
  for (auto& m : members) out.push_back(HistorySet::of(std::move(m), g));
  return out;
}

HistorySet random_set(const Groupoid& g, std::mt19937_64& rng) { return random_disjoint(g, 1, rng)[0]; }

// μ(A) = Tr(ρ M(a)† M(a)) with a = Σ_A α, M built directly from the tables.
double measure_oracle(const Matrix& rho, Rep rep, const HistorySet& a, const Groupoid& g) {
  const auto dim = rho.rows();
  Matrix m = Matrix::Zero(dim, dim);
  for (TransitionId t : a.members())
    m += rep == Rep::LeftRegular ? oracle::regular_matrix(t.index, g) : oracle::fundamental_matrix(t.index, g);
  return (rho * m.adjoint() * m).trace().real();
}

}  // namespace

TEST_CASE("states from densities") {
  const Groupoid g = pair_groupoid(2);
  SUBCASE("maximally mixed, fundamental rep") {
    const StateFn s = StateFn::from_density(Operator{Rep::Fundamental, 0.5 * Matrix::Identity(2, 2)}, g);
    for (std::size_t x = 0; x < 2; ++x) CHECK(std::abs(s.phi(g.unit(ObjectId{x})) - 0.5) < 1e-15);
    CHECK(std::abs(s.phi(T(1))) < 1e-15);
    CHECK(std::abs(s.phi(T(2))) < 1e-15);
    const auto p = classical_distribution(s, g);
    CHECK(p == std::vector<double>{0.5, 0.5});
  }
  SUBCASE("pure |x>") {
    for (std::size_t x = 0; x < 2; ++x) {
      Matrix rho = Matrix::Zero(2, 2);
      rho(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(x)) = 1.0;
      const StateFn s = StateFn::from_density(Operator{Rep::Fundamental, rho}, g);
      const auto p = classical_distribution(s, g);
      CHECK(p[x] == 1.0);
      CHECK(p[1 - x] == 0.0);
    }
  }
  SUBCASE("invalid densities") {
    CHECK_THROWS_AS(StateFn::from_density(Operator{Rep::Fundamental, Matrix::Identity(2, 2)}, g), InvalidState);
    Matrix neg = Matrix::Zero(2, 2);
    neg(0, 0) = 1.5;
    neg(1, 1) = -0.5;
    CHECK_THROWS_AS(StateFn::from_density(Operator{Rep::Fundamental, neg}, g), InvalidState);
    Matrix skew = 0.5 * Matrix::Identity(2, 2);
    skew(0, 1) = 0.3;
    CHECK_THROWS_AS(StateFn::from_density(Operator{Rep::Fundamental, skew}, g), InvalidState);
    CHECK_THROWS_AS(StateFn::from_density(Operator{Rep::Fundamental, Matrix::Identity(3, 3) / 3.0}, g), DomainError);
  }
  SUBCASE("phi agrees with the trace formula in both reps") {
    std::mt19937_64 rng(21);
    for (const Groupoid& h : zoo())
      for (Rep rep : {Rep::LeftRegular, Rep::Fundamental}) {
        const auto dim = static_cast<Eigen::Index>(rep_dimension(rep, h));
        const Matrix rho = oracle::random_density(dim, rng);
        const StateFn s = StateFn::from_density(Operator{rep, rho}, h);
        for (std::size_t t = 0; t < h.size(); ++t) {
          const Matrix m = rep == Rep::LeftRegular ? oracle::regular_matrix(t, h) : oracle::fundamental_matrix(t, h);
          CHECK(std::abs(s.phi(T(t)) - (rho * m).trace()) < 1e-12);
        }
        const auto p = classical_distribution(s, h);
        CHECK(std::abs(std::accumulate(p.begin(), p.end(), 0.0) - 1.0) <= 1e-12);
        for (double v : p) CHECK(v >= 0.0);
      }
  }
}

TEST_CASE("positivity and Gram matrix") {
  std::mt19937_64 rng(22);
  for (const Groupoid& g : zoo()) {
    for (Rep rep : {Rep::LeftRegular, Rep::Fundamental}) {
      const StateFn s = random_state(g, rep, rng);
      CHECK(gram_min_eigenvalue(s, g) >= -1e-10);
      for (int i = 0; i < 10; ++i) {
        const AlgebraElement a = random_element(g, rng);
        const Complex v = evaluate(s, multiply(involution(a, g), a, g), g);
        CHECK(v.real() >= -1e-12);
        CHECK(std::abs(v.imag()) <= 1e-10);
      }
    }
  }
}

TEST_CASE("phi round-trips through from_phi, which rejects indefinite functions") {
  const Groupoid g = pair_groupoid(2);
  std::mt19937_64 rng(23);
  const StateFn s = random_state(g, Rep::LeftRegular, rng);
  const StateFn t = StateFn::from_phi(s.phi(), g);
  CHECK(t.normalized());
  CHECK_FALSE(t.density().has_value());

  // |φ(α)| > φ(1_x) breaks positivity of the 2x2 Gram block
  std::vector<Complex> bad = {0.5, 2.0, 2.0, 0.5};
  CHECK_THROWS_AS(StateFn::from_phi(bad, g), InvalidState);
  // φ(α⁻¹) must be conj φ(α)
  std::vector<Complex> asym = {0.5, Complex(0, 0.1), Complex(0, 0.1), 0.5};
  CHECK_THROWS_AS(StateFn::from_phi(asym, g), InvalidState);
  // units must sum to one
  CHECK_THROWS_AS(StateFn::from_phi({1.0, 0.0, 0.0, 1.0}, g), InvalidState);
}

TEST_CASE("history sets") {
  const Groupoid g = pair_groupoid(2);
  const HistorySet a = HistorySet::of({T(3), T(1), T(1)}, g);
  CHECK(a.size() == 2);
  CHECK(a.members().front() == T(1));
  CHECK(a.contains(T(3)));
  CHECK_FALSE(a.disjoint_with(HistorySet::of({T(1)}, g)));
  CHECK(a.disjoint_with(HistorySet::of({T(0)}, g)));
  CHECK(unite(a, HistorySet::of({T(0)}, g)).size() == 3);
  CHECK(HistorySet::all(g).size() == 4);
  CHECK_THROWS_AS(HistorySet::of({T(4)}, g), DomainError);
}

TEST_CASE("decoherence functional") {
  std::mt19937_64 rng(24);
  for (const Groupoid& g : zoo()) {
    const StateFn s = random_state(g, Rep::LeftRegular, rng);
    CHECK(decoherence_functional(s, HistorySet{}, HistorySet::all(g), g) == Complex(0.0));
    for (int i = 0; i < 10; ++i) {
      const HistorySet a = random_set(g, rng), b = random_set(g, rng);
      CHECK(std::abs(decoherence_functional(s, a, b, g) - std::conj(decoherence_functional(s, b, a, g))) <= 1e-12);
      CHECK(decoherence_functional(s, a, a, g).real() >= -1e-12);
    }
    // singletons reproduce φ
    for (std::size_t i = 0; i < g.size(); ++i)
      for (std::size_t j = 0; j < g.size(); ++j) {
        const Complex d = decoherence_functional(s, HistorySet::of({T(i)}, g), HistorySet::of({T(j)}, g), g);
        const auto& tr = g.transitions();
        if (tr[i].target == tr[j].target)
          CHECK(std::abs(d - s.phi(*g.compose(g.inverse(T(i)), T(j)))) <= 1e-15);
        else
          CHECK(d == Complex(0.0));
      }
  }
}

TEST_CASE("quantum measure matches the operator oracle") {
  std::mt19937_64 rng(25);
  for (const Groupoid& g : zoo()) {
    for (Rep rep : {Rep::LeftRegular, Rep::Fundamental}) {
      const auto dim = static_cast<Eigen::Index>(rep_dimension(rep, g));
      const Matrix rho = oracle::random_density(dim, rng);
      const StateFn s = StateFn::from_density(Operator{rep, rho}, g);
      CHECK(quantum_measure(s, HistorySet{}, g) == 0.0);
      CHECK(std::abs(quantum_measure(s, HistorySet::all(g), g) - measure_oracle(rho, rep, HistorySet::all(g), g)) <= 1e-10);
      for (int i = 0; i < 10; ++i) {
        const HistorySet a = random_set(g, rng);
        CHECK(std::abs(quantum_measure(s, a, g) - measure_oracle(rho, rep, a, g)) <= 1e-10);
      }
    }
  }
}

TEST_CASE("pure vector state: mu(A) is the squared norm of the summed amplitudes") {
  std::mt19937_64 rng(26);
  for (const Groupoid& g : zoo()) {
    Vector psi = oracle::random_matrix(static_cast<Eigen::Index>(g.size()), 1, rng).col(0);
    psi.normalize();
    const StateFn s = StateFn::from_vector(psi, Rep::LeftRegular, g);
    for (int i = 0; i < 10; ++i) {
      const HistorySet a = random_set(g, rng);
      Vector acc = Vector::Zero(psi.size());
      for (TransitionId t : a.members()) acc += oracle::regular_matrix(t.index, g) * psi;
      CHECK(std::abs(quantum_measure(s, a, g) - acc.squaredNorm()) <= 1e-10);
    }
  }
}

TEST_CASE("interference") {
  const Groupoid g = pair_groupoid(2);
  SUBCASE("superposition witness") {
    Vector psi(2);
    psi << 1.0, 1.0;
    psi /= std::sqrt(2.0);
    const StateFn s = StateFn::from_vector(psi, Rep::Fundamental, g);
    double best = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i)
      for (std::size_t j = i + 1; j < g.size(); ++j)
        best = std::max(best, std::abs(interference(s, {HistorySet::of({T(i)}, g), HistorySet::of({T(j)}, g)}, g)));
    CHECK(best > 0.1);
  }
  SUBCASE("diagonal state has no two-set interference") {
    // trivial isotropy: α⁻¹∘β is a loop only when α = β
    std::mt19937_64 rng(27);
    for (const Groupoid& h : {pair_groupoid(2), pair_groupoid(3), disjoint_union({pair_groupoid(2), pair_groupoid(1)})}) {
      Eigen::VectorXd w = Eigen::VectorXd::Random(static_cast<Eigen::Index>(h.object_count())).cwiseAbs();
      w /= w.sum();
      const StateFn s = StateFn::from_density(Operator{Rep::Fundamental, w.cast<Complex>().asDiagonal()}, h);
      for (int i = 0; i < 20; ++i) CHECK(std::abs(interference(s, random_disjoint(h, 2, rng), h)) <= 1e-12);
    }
  }
  SUBCASE("I2 against the empty set vanishes") {
    std::mt19937_64 rng(28);
    const StateFn s = random_state(g, Rep::LeftRegular, rng);
    CHECK(std::abs(interference(s, {HistorySet::of({T(1), T(2)}, g), HistorySet{}}, g)) <= 1e-15);
  }
  SUBCASE("mu of a disjoint union splits exactly") {
    std::mt19937_64 rng(29);
    for (const Groupoid& h : zoo()) {
      const StateFn s = random_state(h, Rep::LeftRegular, rng);
      const auto sets = random_disjoint(h, 2, rng);
      const double lhs = quantum_measure(s, unite(sets[0], sets[1]), h);
      const double rhs = quantum_measure(s, sets[0], h) + quantum_measure(s, sets[1], h) + interference(s, sets, h);
      CHECK(std::abs(lhs - rhs) <= 1e-12);
    }
  }
  SUBCASE("third-order interference vanishes") {
    std::mt19937_64 rng(30);
    const auto groupoids = zoo();
    double worst = 0.0;
    int draws = 0;
    for (const Groupoid& h : groupoids)
      for (int k = 0; k < 5; ++k) {
        const StateFn s = random_state(h, k % 2 ? Rep::Fundamental : Rep::LeftRegular, rng);
        for (int i = 0; i < 8; ++i, ++draws) worst = std::max(worst, std::abs(interference(s, random_disjoint(h, 3, rng), h)));
      }
    CHECK(draws == 200);
    CHECK(worst <= 1e-11);
  }
  SUBCASE("bad arguments") {
    const StateFn s = StateFn::from_density(Operator{Rep::Fundamental, 0.5 * Matrix::Identity(2, 2)}, g);
    CHECK_THROWS_AS(interference(s, {HistorySet::of({T(0), T(1)}, g), HistorySet::of({T(1)}, g)}, g), DomainError);
    CHECK_THROWS_AS(interference(s, {HistorySet::of({T(0)}, g)}, g), DomainError);
  }
}

TEST_CASE("factorizable states") {
  SUBCASE("trivial character") {
    const Groupoid g = symmetric_group(3);
    const StateFn s = StateFn::from_phi(std::vector<Complex>(g.size(), 1.0), g);
    CHECK(is_factorizable(s, g).factorizable);
  }
  SUBCASE("generic state") {
    std::mt19937_64 rng(31);
    const Groupoid g = cyclic_group(4);
    const auto r = is_factorizable(random_state(g, Rep::LeftRegular, rng), g);
    CHECK_FALSE(r.factorizable);
    CHECK(r.worst_residual > 1e-3);
  }
  SUBCASE("Z4 character vector state") {
    const Groupoid g = cyclic_group(4);
    for (std::size_t j = 0; j < 4; ++j) {
      Vector psi(4);
      for (Eigen::Index k = 0; k < 4; ++k) psi(k) = oracle::unit_root(j * static_cast<std::size_t>(k), 4) / 2.0;
      const StateFn s = StateFn::from_vector(psi, Rep::LeftRegular, g);
      const auto r = is_factorizable(s, g);
      CHECK(r.factorizable);
      CHECK(r.worst_residual <= 1e-12);
      // sum over histories on the single object
      const ObjectId x{0};
      const Complex amp = amplitude(s, x, x, g);
      CHECK(std::abs(std::norm(amp) - history_double_sum(s, x, x, g).real()) <= 1e-10);
      CHECK(std::abs(history_double_sum(s, x, x, g).imag()) <= 1e-10);
    }
  }
  SUBCASE("character pulled back along a two-object connected groupoid") {
    // φ(a, k) = χ(k) on pair(2) x Z2; unnormalized because both units carry weight 1
    const Groupoid p = pair_groupoid(2), z = cyclic_group(2);
    const Groupoid g = direct_product(p, z);
    std::vector<Complex> phi(g.size());
    for (std::size_t a = 0; a < p.size(); ++a)
      for (std::size_t k = 0; k < z.size(); ++k) phi[product_transition(z, T(a), T(k)).index] = k == 0 ? 1.0 : -1.0;
    const StateFn s = StateFn::positive_definite(phi, g);
    CHECK_FALSE(s.normalized());
    CHECK(gram_min_eigenvalue(s, g) >= -1e-12);
    CHECK(is_factorizable(s, g).factorizable);
    CHECK_THROWS_AS(classical_distribution(s, g), DomainError);
    for (std::size_t x = 0; x < g.object_count(); ++x)
      for (std::size_t y = 0; y < g.object_count(); ++y) {
        const Complex amp = amplitude(s, ObjectId{x}, ObjectId{y}, g);
        CHECK(std::abs(std::norm(amp) - history_double_sum(s, ObjectId{x}, ObjectId{y}, g)) <= 1e-10);
      }
  }
}

TEST_CASE("amplitudes") {
  const Groupoid g = disjoint_union({cyclic_group(2), pair_groupoid(2)});
  std::mt19937_64 rng(32);
  const StateFn s = random_state(g, Rep::LeftRegular, rng);
  // object 0 (Z2) and object 1 are in different orbits
  CHECK(amplitude(s, ObjectId{0}, ObjectId{1}, g) == Complex(0.0));
  const Groupoid p = pair_groupoid(2);
  const StateFn sp = random_state(p, Rep::LeftRegular, rng);
  const auto& h = p.hom(ObjectId{0}, ObjectId{1});
  REQUIRE(h.size() == 1);
  CHECK(std::abs(std::norm(amplitude(sp, ObjectId{0}, ObjectId{1}, p)) - std::norm(sp.phi(h[0]))) <= 1e-15);
  // raw sums, no normalization
  Complex sum = 0.0;
  for (TransitionId t : g.hom(ObjectId{0}, ObjectId{0})) sum += s.phi(t);
  CHECK(amplitude(s, ObjectId{0}, ObjectId{0}, g) == sum);
}
