#include <doctest.h>

#include <algorithm>

#include "gq/algebra.hpp"
#include "gq/characters.hpp"
#include "gq/generators.hpp"
#include "gq/linalg.hpp"
#include "gq/representation.hpp"
#include "gq/vn_algebra.hpp"
#include "oracles.hpp"

using namespace gq;

namespace {

TransitionId T(std::size_t i) { return TransitionId{i}; }

double max_abs(const Matrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

std::vector<Groupoid> zoo() {
  return {pair_groupoid(2), pair_groupoid(3), cyclic_group(4), symmetric_group(3),
          disjoint_union({cyclic_group(2), cyclic_group(3)}), direct_product(cat_groupoid(), pair_groupoid(2))};
}

}  // namespace

TEST_CASE("multiply: pair groupoid examples") {
  const Groupoid g = pair_groupoid(2);
  const TransitionId alpha = T(2);  // 0 -> 1
  const TransitionId inv = g.inverse(alpha);
  const TransitionId one0 = g.unit(ObjectId{0});
  const TransitionId one1 = g.unit(ObjectId{1});

  CHECK(multiply(AlgebraElement::basis(alpha), AlgebraElement::basis(inv), g) == AlgebraElement::basis(one1));

  const AlgebraElement lhs = AlgebraElement::basis(alpha) + AlgebraElement::basis(one0);
  const AlgebraElement rhs = AlgebraElement::basis(inv) + AlgebraElement::basis(one0);
  const AlgebraElement expected = AlgebraElement::basis(one1) + AlgebraElement::basis(alpha) +
                                  AlgebraElement::basis(inv) + AlgebraElement::basis(one0);
  CHECK(multiply(lhs, rhs, g) == expected);
  CHECK(multiply(lhs, rhs, g).to_dense(4).isApprox(oracle::convolve(lhs.to_dense(4), rhs.to_dense(4), g)));
}

TEST_CASE("multiply agrees with the dense convolution oracle and has a unit") {
  Rng rng(1);
  for (const Groupoid& g : zoo()) {
    const AlgebraElement one = AlgebraElement::unit(g);
    for (int trial = 0; trial < 5; ++trial) {
      const AlgebraElement a = random_element(g, rng);
      const AlgebraElement b = random_element(g, rng);
      const Vector got = multiply(a, b, g).to_dense(g.size());
      CHECK(max_abs(got - oracle::convolve(a.to_dense(g.size()), b.to_dense(g.size()), g)) < 1e-12);
      CHECK(multiply(one, a, g).distance(a) < 1e-15);
      CHECK(multiply(a, one, g).distance(a) < 1e-15);
    }
  }
}

TEST_CASE("foreign transition ids are rejected") {
  const Groupoid g = cyclic_group(2);
  CHECK_THROWS_AS(multiply(AlgebraElement::basis(T(5)), AlgebraElement::basis(T(0)), g), DomainError);
  CHECK_THROWS_AS(left_regular(AlgebraElement::basis(T(2)), g), DomainError);
}

TEST_CASE("elements store no explicit zeros") {
  AlgebraElement a = AlgebraElement::basis(T(0), 2.0);
  a.add(T(0), -2.0);
  CHECK(a.is_zero());
  a.set(T(1), 0.0);
  CHECK(a.support_size() == 0);
}

TEST_CASE("involution") {
  const Groupoid g = pair_groupoid(2);
  const Complex i{0.0, 1.0};
  CHECK(involution(AlgebraElement::basis(T(2), i), g) == AlgebraElement::basis(T(1), -i));
  CHECK(involution(AlgebraElement::unit(g), g) == AlgebraElement::unit(g));
  Rng rng(2);
  for (const Groupoid& h : zoo()) {
    for (int trial = 0; trial < 5; ++trial) {
      const AlgebraElement a = random_element(h, rng);
      const AlgebraElement b = random_element(h, rng);
      const AlgebraElement lhs = involution(multiply(a, b, h), h);
      const AlgebraElement rhs = multiply(involution(b, h), involution(a, h), h);
      CHECK(lhs.distance(rhs) < 1e-12);
      CHECK(involution(involution(a, h), h).distance(a) == 0.0);
    }
  }
}

TEST_CASE("left-regular representation is a faithful *-homomorphism") {
  Rng rng(3);
  for (const Groupoid& g : zoo()) {
    const auto n = static_cast<Eigen::Index>(g.size());
    CHECK(max_abs(left_regular(AlgebraElement::unit(g), g).matrix - Matrix::Identity(n, n)) == 0.0);
    for (int trial = 0; trial < 5; ++trial) {
      const AlgebraElement a = random_element(g, rng);
      const AlgebraElement b = random_element(g, rng);
      const Matrix la = left_regular(a, g).matrix;
      const Matrix lb = left_regular(b, g).matrix;
      CHECK(max_abs(left_regular(multiply(a, b, g), g).matrix - la * lb) < 1e-12);
      CHECK(max_abs(left_regular(involution(a, g), g).matrix - la.adjoint()) < 1e-12);
    }
    CHECK(span_dimension(representation_basis(Rep::LeftRegular, g).elements) == g.size());
  }
}

TEST_CASE("left-regular matrix follows lambda(alpha) delta_gamma = delta_{alpha o gamma}") {
  const Groupoid g = symmetric_group(3);
  for (std::size_t a = 0; a < g.size(); ++a) {
    const Matrix m = left_regular(AlgebraElement::basis(T(a)), g).matrix;
    for (std::size_t c = 0; c < g.size(); ++c) {
      const TransitionId r = *g.compose(T(a), T(c));
      CHECK(m(static_cast<Eigen::Index>(r.index), static_cast<Eigen::Index>(c)) == Complex(1.0));
      CHECK(m.col(static_cast<Eigen::Index>(c)).cwiseAbs().sum() == 1.0);
    }
  }
}

TEST_CASE("pair groupoid algebra is the full matrix algebra") {
  for (std::size_t n = 2; n <= 3; ++n)
    CHECK(span_dimension(representation_basis(Rep::LeftRegular, pair_groupoid(n)).elements) == n * n);
}

TEST_CASE("fundamental representation") {
  SUBCASE("pair groupoid gives matrix units with E_zy E_yx = E_zx") {
    for (std::size_t n = 1; n <= 4; ++n) {
      const Groupoid g = pair_groupoid(n);
      for (std::size_t i = 0; i < g.size(); ++i) {
        const Matrix mi = fundamental(AlgebraElement::basis(T(i)), g).matrix;
        Matrix unit = Matrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
        unit(static_cast<Eigen::Index>(g.target(T(i)).index), static_cast<Eigen::Index>(g.source(T(i)).index)) = 1.0;
        CHECK(max_abs(mi - unit) == 0.0);
        for (std::size_t j = 0; j < g.size(); ++j) {
          const Matrix mj = fundamental(AlgebraElement::basis(T(j)), g).matrix;
          const auto c = g.compose(T(i), T(j));
          const Matrix expected = c ? fundamental(AlgebraElement::basis(*c), g).matrix : Matrix::Zero(mi.rows(), mi.cols());
          CHECK(max_abs(mi * mj - expected) == 0.0);
        }
      }
    }
  }
  SUBCASE("units are diagonal projectors") {
    const Groupoid g = pair_groupoid(3);
    for (std::size_t x = 0; x < 3; ++x) {
      const Matrix m = fundamental(AlgebraElement::basis(g.unit(ObjectId{x})), g).matrix;
      CHECK(m(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(x)) == Complex(1.0));
      CHECK(m.cwiseAbs().sum() == 1.0);
    }
  }
  SUBCASE("group groupoid acts trivially on its object") {
    const Groupoid g = symmetric_group(3);
    for (std::size_t i = 0; i < g.size(); ++i) {
      const Matrix m = fundamental(AlgebraElement::basis(T(i)), g).matrix;
      REQUIRE(m.rows() == 1);
      CHECK(m(0, 0) == Complex(1.0));
    }
  }
  SUBCASE("homomorphism on random elements") {
    Rng rng(4);
    for (const Groupoid& g : zoo()) {
      const AlgebraElement a = random_element(g, rng);
      const AlgebraElement b = random_element(g, rng);
      CHECK(max_abs(fundamental(multiply(a, b, g), g).matrix - fundamental(a, g).matrix * fundamental(b, g).matrix) <
            1e-12);
      CHECK(max_abs(fundamental(involution(a, g), g).matrix - fundamental(a, g).matrix.adjoint()) < 1e-12);
    }
  }
}

TEST_CASE("commutant") {
  SUBCASE("full matrix algebra has scalar commutant") {
    for (std::size_t n = 2; n <= 4; ++n) {
      const AlgebraBasis c = commutant(representation_basis(Rep::Fundamental, pair_groupoid(n)));
      CHECK(c.dim_span == 1);
      REQUIRE(!c.elements.empty());
      const Matrix& x = c.elements.front();
      CHECK(max_abs(x - x(0, 0) * Matrix::Identity(x.rows(), x.cols())) < 1e-10);
    }
  }
  SUBCASE("identity has everything as commutant") {
    for (Eigen::Index n = 1; n <= 4; ++n)
      CHECK(commutant(make_basis({Matrix::Identity(n, n)})).dim_span == static_cast<std::size_t>(n * n));
  }
  SUBCASE("empty basis is rejected") { CHECK_THROWS_AS(make_basis({}), DomainError); }
  SUBCASE("double commutant of lambda(C[G]) equals its span") {
    std::vector<Groupoid> gs = zoo();
    gs.push_back(direct_product(cyclic_group(2), symmetric_group(3)));
    for (const Groupoid& g : gs) {
      const AlgebraBasis v = representation_basis(Rep::LeftRegular, g);
      const AlgebraBasis cc = commutant(commutant(v));
      CHECK(cc.dim_span == v.dim_span);
      CHECK(same_span(cc, v));
    }
  }
  SUBCASE("commutant elements commute with the generators") {
    const AlgebraBasis v = representation_basis(Rep::LeftRegular, symmetric_group(3));
    const AlgebraBasis c = commutant(v);
    // right-regular action: commutant of lambda(C[S3]) is again 6-dimensional
    CHECK(c.dim_span == 6);
    for (const Matrix& x : c.elements)
      for (const Matrix& b : v.elements) CHECK(max_abs(x * b - b * x) < 1e-9);
  }
}

TEST_CASE("double commutant of a single Hermitian matrix is the polynomials in it") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 5; ++trial) {
    // spectrum with repeated eigenvalues: {0, 0, 1, 2, 2, 2}
    Eigen::HouseholderQR<Matrix> qr(oracle::random_matrix(6, 6, rng));
    const Matrix u = qr.householderQ();
    Eigen::VectorXd d(6);
    d << 0, 0, 1, 2, 2, 2;
    const Matrix h = u * d.cast<Complex>().asDiagonal() * u.adjoint();
    const AlgebraBasis s = make_basis({h});
    const AlgebraBasis cc = commutant(commutant(s));
    CHECK(cc.dim_span == 3);
    CHECK(same_span(cc, generated_algebra({h})));
  }
}

TEST_CASE("abelian algebras") {
  CHECK(is_abelian(disjoint_union({cyclic_group(2), cyclic_group(3)})));
  CHECK_FALSE(is_abelian(pair_groupoid(2)));
  CHECK_FALSE(is_abelian(symmetric_group(3)));
  // explicit non-commuting pair in pair(2): lambda(1_0) and lambda(0->1)
  const Groupoid g = pair_groupoid(2);
  const Matrix a = left_regular(AlgebraElement::basis(T(0)), g).matrix;
  const Matrix b = left_regular(AlgebraElement::basis(T(2)), g).matrix;
  CHECK(max_abs(a * b - b * a) == 1.0);
}

TEST_CASE("character diagonalization") {
  SUBCASE("Z2 generator becomes diag(1, -1)") {
    const Groupoid g = cyclic_group(2);
    const CharacterDiagonalization cd = character_diagonalize(g);
    const Matrix d = cd.unitary.adjoint() * left_regular(AlgebraElement::basis(T(1)), g).matrix * cd.unitary;
    CHECK(off_diagonal_residue(d) < 1e-15);
    const double lo = std::min(d(0, 0).real(), d(1, 1).real());
    const double hi = std::max(d(0, 0).real(), d(1, 1).real());
    CHECK(lo == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(hi == doctest::Approx(1.0).epsilon(1e-14));
  }
  SUBCASE("Zn: columns are normalized Fourier vectors") {
    for (std::size_t n = 2; n <= 8; ++n) {
      const Groupoid g = cyclic_group(n);
      const Matrix u = character_diagonalize(g).unitary;
      const auto N = static_cast<Eigen::Index>(n);
      CHECK(max_abs(u.adjoint() * u - Matrix::Identity(N, N)) < 1e-12);
      std::vector<bool> used(n, false);
      for (Eigen::Index c = 0; c < N; ++c) {
        bool matched = false;
        for (std::size_t k = 0; k < n && !matched; ++k) {
          if (used[k]) continue;
          Vector f(N);
          for (Eigen::Index j = 0; j < N; ++j) f(j) = std::conj(oracle::unit_root(static_cast<std::size_t>(j) * k, n)) / std::sqrt(double(n));
          if ((u.col(c) - f).norm() < 1e-12) matched = used[k] = true;
        }
        CHECK(matched);
      }
    }
  }
  SUBCASE("random elements are diagonalized; symbol gives the eigenvalues") {
    Rng rng(6);
    for (const Groupoid& g : {cyclic_group(5), cyclic_group(8), disjoint_union({cyclic_group(2), cyclic_group(3)}),
                              direct_product(cyclic_group(2), cyclic_group(4)), cat_groupoid()}) {
      const CharacterDiagonalization cd = character_diagonalize(g);
      for (int trial = 0; trial < 5; ++trial) {
        const AlgebraElement a = random_element(g, rng);
        const Matrix d = cd.unitary.adjoint() * left_regular(a, g).matrix * cd.unitary;
        CHECK(off_diagonal_residue(d) < 1e-12);
        CHECK(max_abs(d.diagonal() - cd.symbol(a)) < 1e-12);
      }
    }
  }
  SUBCASE("union of Z2 and Z3 gives blocks of 2 and 3") {
    const Groupoid g = disjoint_union({cyclic_group(2), cyclic_group(3)});
    const CharacterDiagonalization cd = character_diagonalize(g);
    CHECK(max_abs(cd.unitary.topRightCorner(2, 3)) == 0.0);
    CHECK(max_abs(cd.unitary.bottomLeftCorner(3, 2)) == 0.0);
    std::size_t at0 = 0;
    for (const auto& l : cd.labels) at0 += l.object.index == 0;
    CHECK(at0 == 2);
  }
  SUBCASE("non-classical groupoids are refused") {
    CHECK_THROWS_AS(character_diagonalize(pair_groupoid(2)), PreconditionError);
    CHECK_THROWS_AS(character_diagonalize(symmetric_group(3)), PreconditionError);
  }
}

TEST_CASE("tensor embedding") {
  const Groupoid a = pair_groupoid(2);
  const Groupoid b = cyclic_group(3);
  const Groupoid ab = direct_product(a, b);
  CHECK(tensor_embed(AlgebraElement::unit(a), a, AlgebraElement::unit(b), b) == AlgebraElement::unit(ab));

  Rng rng(7);
  const std::vector<std::pair<Groupoid, Groupoid>> pairs = {
      {pair_groupoid(2), cyclic_group(3)}, {symmetric_group(3), cyclic_group(2)}, {cat_groupoid(), pair_groupoid(2)}};
  for (const auto& [ga, gb] : pairs) {
    const Groupoid p = direct_product(ga, gb);
    for (int trial = 0; trial < 3; ++trial) {
      const AlgebraElement a1 = random_element(ga, rng), a2 = random_element(ga, rng);
      const AlgebraElement b1 = random_element(gb, rng), b2 = random_element(gb, rng);
      const AlgebraElement lhs = multiply(tensor_embed(a1, ga, b1, gb), tensor_embed(a2, ga, b2, gb), p);
      const AlgebraElement rhs = tensor_embed(multiply(a1, a2, ga), ga, multiply(b1, b2, gb), gb);
      CHECK(lhs.distance(rhs) < 1e-12);
      // Kronecker ordering makes the reindexing the identity permutation.
      const Matrix lp = left_regular(tensor_embed(a1, ga, b1, gb), p).matrix;
      CHECK(max_abs(lp - kron(left_regular(a1, ga).matrix, left_regular(b1, gb).matrix)) < 1e-12);
      const Matrix fp = fundamental(tensor_embed(a1, ga, b1, gb), p).matrix;
      CHECK(max_abs(fp - kron(fundamental(a1, ga).matrix, fundamental(b1, gb).matrix)) < 1e-12);
    }
  }
}

TEST_CASE("rep names round-trip") {
  CHECK(parse_rep(to_string(Rep::LeftRegular)) == Rep::LeftRegular);
  CHECK(parse_rep(to_string(Rep::Fundamental)) == Rep::Fundamental);
  CHECK_THROWS_AS(parse_rep("adjoint"), DomainError);
}
