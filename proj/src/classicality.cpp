#include "gq/classicality.hpp"

#include "gq/linalg.hpp"
#include "gq/representation.hpp"
#include "gq/vn_algebra.hpp"

namespace gq {

AlgebraElement jump_proposition(const Groupoid& g, TransitionId alpha) {
  const TransitionId inv = g.inverse(alpha);
  AlgebraElement p;
  p.add(g.unit(g.source(alpha)), 0.5);
  p.add(g.unit(g.target(alpha)), 0.5);
  p.add(alpha, 0.5);
  p.add(inv, 0.5);
  return p;
}

std::vector<NamedProposition> canonical_propositions(const Groupoid& g, std::size_t samples, Rng& rng, Rep rep) {
  std::vector<NamedProposition> out;
  for (std::size_t x = 0; x < g.object_count(); ++x) {
    const ObjectId obj{x};
    out.push_back({"1_" + g.object_label(obj),
                   Proposition::certify(represent(rep, AlgebraElement::basis(g.unit(obj)), g))});
  }
  for (std::size_t i = 0; i < g.size(); ++i) {
    const TransitionId a{i};
    if (g.is_loop(a) || g.inverse(a).index < i) continue;
    out.push_back({"P[" + g.transition_label(a) + "]", Proposition::certify(represent(rep, jump_proposition(g, a), g))});
  }
  for (std::size_t s = 0; s < samples; ++s) {
    const Matrix h = represent(rep, random_self_adjoint(g, rng), g).matrix;
    const auto spectral = spectral_projections(h);
    for (std::size_t k = 0; k < spectral.size(); ++k)
      out.push_back({"E[" + std::to_string(s) + "," + std::to_string(k) + "]",
                     Proposition::certify(Operator{rep, spectral[k].projector})});
  }
  return out;
}

ClassicalityVerdict classicality_verdict(const Groupoid& g, std::size_t samples, std::uint64_t seed,
                                         const LatticeCheckOptions& options) {
  ClassicalityVerdict v;
  v.totally_disconnected = is_totally_disconnected(g);
  v.abelian_isotropy = has_abelian_isotropy(g);
  v.abelian_algebra = is_abelian(g);
  Rng rng(seed);
  v.propositions = canonical_propositions(g, samples, rng);
  v.lattice = check_boolean(v.propositions, options);
  v.boolean_lattice = v.lattice.is_boolean();
  const bool structural = v.totally_disconnected && v.abelian_isotropy;
  v.consistent = (v.boolean_lattice == structural) && (structural == v.abelian_algebra);
  return v;
}

}  // namespace gq
