#include "gq/characters.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace gq {

namespace {

// The isotropy group at one object as a small multiplication table over
// local indices 0..m-1.
struct LocalGroup {
  std::vector<TransitionId> elements;
  std::vector<std::vector<std::size_t>> mul;
  std::size_t identity = 0;

  std::size_t order_of(std::size_t a) const {
    std::size_t k = 1;
    for (std::size_t p = a; p != identity; p = mul[p][a]) ++k;
    return k;
  }

  std::vector<bool> subgroup(const std::vector<std::size_t>& gens) const {
    std::vector<bool> in(elements.size(), false);
    std::vector<std::size_t> frontier{identity};
    in[identity] = true;
    while (!frontier.empty()) {
      const std::size_t h = frontier.back();
      frontier.pop_back();
      for (std::size_t s : gens) {
        const std::size_t hs = mul[h][s];
        if (!in[hs]) {
          in[hs] = true;
          frontier.push_back(hs);
        }
      }
    }
    return in;
  }
};

LocalGroup local_group(const Groupoid& g, ObjectId x, const std::vector<TransitionId>& loops) {
  LocalGroup grp;
  grp.elements = loops;
  const std::size_t m = loops.size();
  auto local = [&](TransitionId t) {
    return static_cast<std::size_t>(std::find(loops.begin(), loops.end(), t) - loops.begin());
  };
  grp.mul.assign(m, std::vector<std::size_t>(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) grp.mul[i][j] = local(*g.compose(loops[i], loops[j]));
  grp.identity = local(g.unit(x));
  return grp;
}

// Greedy generating set: repeatedly add the highest-order element outside
// the subgroup generated so far.
std::vector<std::size_t> generators(const LocalGroup& grp) {
  std::vector<std::size_t> gens;
  auto in = grp.subgroup(gens);
  while (std::find(in.begin(), in.end(), false) != in.end()) {
    std::size_t best = grp.elements.size(), best_order = 0;
    for (std::size_t a = 0; a < grp.elements.size(); ++a) {
      if (in[a]) continue;
      const std::size_t ord = grp.order_of(a);
      if (ord > best_order) {
        best = a;
        best_order = ord;
      }
    }
    gens.push_back(best);
    in = grp.subgroup(gens);
  }
  return gens;
}

// Candidate character from generator exponents; empty if the assignment is
// not a homomorphism.
std::vector<Complex> try_character(const LocalGroup& grp, const std::vector<std::size_t>& gens,
                                   const std::vector<std::size_t>& orders,
                                   const std::vector<std::size_t>& exps) {
  const std::size_t m = grp.elements.size();
  std::vector<Complex> chi(m);
  std::vector<bool> known(m, false);
  chi[grp.identity] = 1.0;
  known[grp.identity] = true;
  std::vector<std::size_t> frontier{grp.identity};
  while (!frontier.empty()) {
    const std::size_t h = frontier.back();
    frontier.pop_back();
    for (std::size_t i = 0; i < gens.size(); ++i) {
      const double angle = 2.0 * std::numbers::pi * static_cast<double>(exps[i]) / static_cast<double>(orders[i]);
      const Complex value = chi[h] * std::polar(1.0, angle);
      const std::size_t hs = grp.mul[h][gens[i]];
      if (!known[hs]) {
        known[hs] = true;
        chi[hs] = value;
        frontier.push_back(hs);
      } else if (std::abs(chi[hs] - value) > 1e-9) {
        return {};
      }
    }
  }
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      if (std::abs(chi[grp.mul[a][b]] - chi[a] * chi[b]) > 1e-9) return {};
  return chi;
}

}  // namespace

std::string CharacterLabel::to_string(const Groupoid& g) const {
  std::ostringstream os;
  os << g.object_label(object) << ":chi(";
  for (std::size_t i = 0; i < exponents.size(); ++i) os << (i ? "," : "") << exponents[i] << "/" << orders[i];
  os << ")";
  return os.str();
}

Vector CharacterDiagonalization::symbol(const AlgebraElement& a) const {
  Vector out = Vector::Zero(static_cast<Eigen::Index>(values.size()));
  for (std::size_t c = 0; c < values.size(); ++c)
    for (const auto& [t, coeff] : a.coefficients()) out(static_cast<Eigen::Index>(c)) += coeff * values[c].at(t.index);
  return out;
}

CharacterDiagonalization character_diagonalize(const Groupoid& g) {
  if (!is_totally_disconnected(g) || !has_abelian_isotropy(g))
    throw PreconditionError("character diagonalization needs a totally disconnected groupoid with abelian isotropy");

  const auto orbits = orbit_decomposition(g);
  const auto n = static_cast<Eigen::Index>(g.size());
  CharacterDiagonalization out;
  out.unitary = Matrix::Zero(n, n);
  Eigen::Index column = 0;

  for (std::size_t xi = 0; xi < g.object_count(); ++xi) {
    const ObjectId x{xi};
    const auto& loops = orbits.isotropy[xi];
    const LocalGroup grp = local_group(g, x, loops);
    const auto gens = generators(grp);
    std::vector<std::size_t> orders;
    for (std::size_t s : gens) orders.push_back(grp.order_of(s));

    const std::size_t m = loops.size();
    const double norm = 1.0 / std::sqrt(static_cast<double>(m));
    std::vector<std::size_t> exps(gens.size(), 0);
    std::size_t found = 0;
    for (;;) {
      auto chi = try_character(grp, gens, orders, exps);
      if (!chi.empty()) {
        std::vector<Complex> row(g.size(), Complex{});
        for (std::size_t a = 0; a < m; ++a) {
          row[loops[a].index] = chi[a];
          out.unitary(static_cast<Eigen::Index>(loops[a].index), column) = std::conj(chi[a]) * norm;
        }
        out.values.push_back(std::move(row));
        out.labels.push_back({x, exps, orders});
        ++column;
        ++found;
      }
      // Odometer over Π [0, orders[i]).
      std::size_t i = 0;
      while (i < exps.size() && ++exps[i] == orders[i]) exps[i++] = 0;
      if (i == exps.size()) break;
    }
    if (found != m)
      throw InternalError("found " + std::to_string(found) + " characters for a group of order " + std::to_string(m));
  }
  return out;
}

double off_diagonal_residue(const Matrix& m) {
  double r = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (i != j) r = std::max(r, std::abs(m(i, j)));
  return r;
}

}  // namespace gq
