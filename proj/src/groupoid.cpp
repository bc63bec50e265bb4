#include "gq/groupoid.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace gq {

namespace {

std::string tuple_text(const Groupoid& g, std::initializer_list<TransitionId> ts) {
  std::ostringstream os;
  os << '(';
  bool first = true;
  for (TransitionId t : ts) {
    if (!first) os << ", ";
    first = false;
    os << g.transition_label(t);
  }
  os << ')';
  return os.str();
}

}  // namespace

Groupoid::Groupoid(GroupoidTables tables) : tables_(std::move(tables)) {
  const std::size_t n_obj = tables_.object_labels.size();
  const std::size_t n = tables_.transitions.size();

  if (tables_.transition_labels.empty()) {
    tables_.transition_labels.resize(n);
    for (std::size_t i = 0; i < n; ++i) tables_.transition_labels[i] = std::to_string(i);
  }
  if (tables_.units.empty()) tables_.units.resize(n_obj);
  if (tables_.inverse.empty()) tables_.inverse.resize(n);
  if (tables_.composition.empty()) tables_.composition.resize(n * n);

  if (tables_.transition_labels.size() != n) throw DomainError("transition label count mismatch");
  if (tables_.units.size() != n_obj) throw DomainError("unit table must have one slot per object");
  if (tables_.inverse.size() != n) throw DomainError("inverse table must have one slot per transition");
  if (tables_.composition.size() != n * n) throw DomainError("composition table must be |G| x |G|");

  for (std::size_t i = 0; i < n; ++i) {
    const Transition& t = tables_.transitions[i];
    if (t.id.index != i) throw DomainError("transition ids must be dense and in order");
    if (t.source.index >= n_obj || t.target.index >= n_obj)
      throw DomainError("transition " + std::to_string(i) + " references an unknown object");
  }
  auto check_id = [n](const std::optional<TransitionId>& id, const char* what) {
    if (id && id->index >= n) throw DomainError(std::string(what) + " references an unknown transition");
  };
  for (const auto& u : tables_.units) check_id(u, "unit table");
  for (const auto& v : tables_.inverse) check_id(v, "inverse table");
  for (const auto& c : tables_.composition) check_id(c, "composition table");

  hom_.assign(n_obj * n_obj, {});
  for (const Transition& t : tables_.transitions)
    hom_[t.target.index * n_obj + t.source.index].push_back(t.id);
}

const Transition& Groupoid::at(TransitionId t) const {
  if (t.index >= size()) throw DomainError("transition id " + std::to_string(t.index) + " is not in the groupoid");
  return tables_.transitions[t.index];
}

std::optional<TransitionId> Groupoid::compose(TransitionId first, TransitionId second) const {
  if (!composable(first, second)) return std::nullopt;
  return tables_.composition[first.index * size() + second.index];
}

TransitionId Groupoid::unit(ObjectId x) const {
  if (x.index >= object_count()) throw DomainError("object id out of range");
  const auto& u = tables_.units[x.index];
  if (!u) throw DomainError("object '" + object_label(x) + "' has no unit");
  return *u;
}

TransitionId Groupoid::inverse(TransitionId t) const {
  at(t);
  const auto& v = tables_.inverse[t.index];
  if (!v) throw DomainError("transition '" + transition_label(t) + "' has no inverse");
  return *v;
}

const std::vector<TransitionId>& Groupoid::hom(ObjectId x, ObjectId y) const {
  const std::size_t n_obj = object_count();
  if (x.index >= n_obj || y.index >= n_obj) throw DomainError("object id out of range");
  return hom_[y.index * n_obj + x.index];
}

const std::string& Groupoid::object_label(ObjectId x) const {
  if (x.index >= object_count()) throw DomainError("object id out of range");
  return tables_.object_labels[x.index];
}

const std::string& Groupoid::transition_label(TransitionId t) const {
  at(t);
  return tables_.transition_labels[t.index];
}

std::optional<ObjectId> Groupoid::find_object(std::string_view label) const {
  const auto& labels = tables_.object_labels;
  auto it = std::find(labels.begin(), labels.end(), label);
  if (it == labels.end()) return std::nullopt;
  return ObjectId{static_cast<std::size_t>(it - labels.begin())};
}

std::string_view to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::EmptyGroupoid: return "empty-groupoid";
    case ViolationKind::MissingUnit: return "missing-unit";
    case ViolationKind::UnitNotLoop: return "unit-not-loop";
    case ViolationKind::MissingInverse: return "missing-inverse";
    case ViolationKind::InverseNotInvolution: return "inverse-not-bijective";
    case ViolationKind::InverseEndpoints: return "inverse-endpoints";
    case ViolationKind::MissingComposition: return "missing-composition";
    case ViolationKind::SpuriousComposition: return "spurious-composition";
    case ViolationKind::SourceTargetCoherence: return "source-target-coherence";
    case ViolationKind::UnitLaw: return "unit-law";
    case ViolationKind::InverseLaw: return "inverse-law";
    case ViolationKind::Associativity: return "associativity";
  }
  return "unknown";
}

bool ValidationReport::has(ViolationKind kind) const {
  return std::any_of(violations.begin(), violations.end(),
                     [kind](const Violation& v) { return v.kind == kind; });
}

ValidationReport validate(const Groupoid& g) {
  ValidationReport report;
  auto& out = report.violations;
  const std::size_t n = g.size();
  const auto& tab = g.tables();

  if (g.object_count() == 0) {
    out.push_back({ViolationKind::EmptyGroupoid, {}, std::nullopt, "groupoid has no objects"});
    return report;
  }

  for (std::size_t xi = 0; xi < g.object_count(); ++xi) {
    const ObjectId x{xi};
    const auto& u = tab.units[xi];
    if (!u) {
      out.push_back({ViolationKind::MissingUnit, {}, x, "object '" + g.object_label(x) + "' has no unit"});
    } else if (g.source(*u) != x || g.target(*u) != x) {
      out.push_back({ViolationKind::UnitNotLoop, {*u}, x,
                     "unit of '" + g.object_label(x) + "' is not a loop at that object"});
    }
  }

  std::vector<std::size_t> preimages(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const TransitionId a{i};
    const auto& inv = tab.inverse[i];
    if (!inv) {
      out.push_back({ViolationKind::MissingInverse, {a}, std::nullopt,
                     "transition " + g.transition_label(a) + " has no inverse"});
      continue;
    }
    ++preimages[inv->index];
    if (g.source(*inv) != g.target(a) || g.target(*inv) != g.source(a)) {
      out.push_back({ViolationKind::InverseEndpoints, {a, *inv}, std::nullopt,
                     "inverse of " + g.transition_label(a) + " does not reverse its endpoints"});
    }
    const auto& back = tab.inverse[inv->index];
    if (back && *back != a) {
      out.push_back({ViolationKind::InverseNotInvolution, {a, *inv}, std::nullopt,
                     "inverse map is not an involution at " + tuple_text(g, {a, *inv})});
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (preimages[i] > 1) {
      out.push_back({ViolationKind::InverseNotInvolution, {TransitionId{i}}, std::nullopt,
                     "transition " + g.transition_label(TransitionId{i}) +
                         " is the inverse of more than one transition"});
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const TransitionId a{i}, b{j};
      const auto& c = tab.composition[i * n + j];
      const bool comp = g.composable(a, b);
      if (comp && !c) {
        out.push_back({ViolationKind::MissingComposition, {a, b}, std::nullopt,
                       "composable pair " + tuple_text(g, {a, b}) + " has no composite"});
      } else if (!comp && c) {
        out.push_back({ViolationKind::SpuriousComposition, {a, b}, std::nullopt,
                       "non-composable pair " + tuple_text(g, {a, b}) + " has a composite"});
      } else if (comp && (g.source(*c) != g.source(b) || g.target(*c) != g.target(a))) {
        out.push_back({ViolationKind::SourceTargetCoherence, {a, b, *c}, std::nullopt,
                       "composite of " + tuple_text(g, {a, b}) + " has wrong endpoints"});
      }
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    const TransitionId a{i};
    const auto& ut = tab.units[g.target(a).index];
    const auto& us = tab.units[g.source(a).index];
    if (ut) {
      auto r = g.compose(*ut, a);
      if (r && *r != a)
        out.push_back({ViolationKind::UnitLaw, {*ut, a}, std::nullopt,
                       "left unit law fails at " + tuple_text(g, {*ut, a})});
    }
    if (us) {
      auto r = g.compose(a, *us);
      if (r && *r != a)
        out.push_back({ViolationKind::UnitLaw, {a, *us}, std::nullopt,
                       "right unit law fails at " + tuple_text(g, {a, *us})});
    }
    const auto& inv = tab.inverse[i];
    if (inv && g.source(*inv) == g.target(a) && g.target(*inv) == g.source(a)) {
      auto left = g.compose(*inv, a);
      if (us && left && *left != *us)
        out.push_back({ViolationKind::InverseLaw, {*inv, a}, std::nullopt,
                       "inverse law fails at " + tuple_text(g, {*inv, a})});
      auto right = g.compose(a, *inv);
      if (ut && right && *right != *ut)
        out.push_back({ViolationKind::InverseLaw, {a, *inv}, std::nullopt,
                       "inverse law fails at " + tuple_text(g, {a, *inv})});
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const TransitionId a{i}, b{j};
      auto ab = g.compose(a, b);
      if (!ab) continue;
      for (std::size_t y = 0; y < g.object_count(); ++y) {
        for (TransitionId c : g.hom(ObjectId{y}, g.source(b))) {
          auto bc = g.compose(b, c);
          if (!bc) continue;
          // Endpoint-incoherent composites are already reported above.
          if (!g.composable(*ab, c) || !g.composable(a, *bc)) continue;
          auto left = g.compose(*ab, c);
          auto right = g.compose(a, *bc);
          if (left && right && *left != *right)
            out.push_back({ViolationKind::Associativity, {a, b, c}, std::nullopt,
                           "associativity fails at " + tuple_text(g, {a, b, c})});
        }
      }
    }
  }
  return report;
}

namespace {

struct DisjointSets {
  std::vector<std::size_t> parent;
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

OrbitDecomposition orbit_decomposition(const Groupoid& g) {
  const std::size_t n_obj = g.object_count();
  DisjointSets sets(n_obj);
  OrbitDecomposition out;
  out.isotropy.assign(n_obj, {});
  for (const Transition& t : g.transitions()) {
    sets.unite(t.source.index, t.target.index);
    if (t.source == t.target) out.isotropy[t.source.index].push_back(t.id);
  }
  out.orbit_of.assign(n_obj, 0);
  std::vector<std::size_t> slot(n_obj, n_obj);
  for (std::size_t x = 0; x < n_obj; ++x) {
    const std::size_t root = sets.find(x);
    if (slot[root] == n_obj) {
      slot[root] = out.orbits.size();
      out.orbits.emplace_back();
    }
    out.orbit_of[x] = slot[root];
    out.orbits[slot[root]].push_back(ObjectId{x});
  }
  return out;
}

bool is_totally_disconnected(const Groupoid& g) {
  const auto t = g.transitions();
  return std::all_of(t.begin(), t.end(), [](const Transition& a) { return a.source == a.target; });
}

bool has_abelian_isotropy(const Groupoid& g) {
  const auto orbits = orbit_decomposition(g);
  for (const auto& loops : orbits.isotropy) {
    for (TransitionId a : loops)
      for (TransitionId b : loops)
        if (g.compose(a, b) != g.compose(b, a)) return false;
  }
  return true;
}

Groupoid direct_product(const Groupoid& a, const Groupoid& b) {
  const std::size_t na = a.size(), nb = b.size();
  const std::size_t oa = a.object_count(), ob = b.object_count();
  GroupoidTables t;
  t.object_labels.reserve(oa * ob);
  for (std::size_t x = 0; x < oa; ++x)
    for (std::size_t y = 0; y < ob; ++y)
      t.object_labels.push_back("(" + a.object_label(ObjectId{x}) + "," + b.object_label(ObjectId{y}) + ")");

  const std::size_t n = na * nb;
  t.transitions.reserve(n);
  t.transition_labels.reserve(n);
  t.inverse.resize(n);
  for (std::size_t i = 0; i < na; ++i) {
    for (std::size_t j = 0; j < nb; ++j) {
      const TransitionId ta{i}, tb{j};
      const TransitionId id = product_transition(b, ta, tb);
      t.transitions.push_back({id, product_object(b, a.source(ta), b.source(tb)),
                               product_object(b, a.target(ta), b.target(tb))});
      t.transition_labels.push_back("(" + a.transition_label(ta) + "," + b.transition_label(tb) + ")");
      const auto& ia = a.tables().inverse[i];
      const auto& ib = b.tables().inverse[j];
      if (ia && ib) t.inverse[id.index] = product_transition(b, *ia, *ib);
    }
  }
  t.units.resize(oa * ob);
  for (std::size_t x = 0; x < oa; ++x) {
    for (std::size_t y = 0; y < ob; ++y) {
      const auto& ua = a.tables().units[x];
      const auto& ub = b.tables().units[y];
      if (ua && ub) t.units[x * ob + y] = product_transition(b, *ua, *ub);
    }
  }
  t.composition.resize(n * n);
  for (std::size_t i1 = 0; i1 < na; ++i1) {
    for (std::size_t i2 = 0; i2 < na; ++i2) {
      const auto ca = a.tables().composition[i1 * na + i2];
      if (!ca) continue;
      for (std::size_t j1 = 0; j1 < nb; ++j1) {
        for (std::size_t j2 = 0; j2 < nb; ++j2) {
          const auto cb = b.tables().composition[j1 * nb + j2];
          if (!cb) continue;
          const std::size_t first = i1 * nb + j1;
          const std::size_t second = i2 * nb + j2;
          t.composition[first * n + second] = product_transition(b, *ca, *cb);
        }
      }
    }
  }
  return Groupoid(std::move(t));
}

}  // namespace gq
