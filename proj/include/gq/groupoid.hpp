#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gq/core.hpp"

namespace gq {

struct Transition {
  TransitionId id;
  ObjectId source;
  ObjectId target;
};

/// Raw, unvalidated tables of a finite groupoid.
///
/// `composition` is a dense |G|x|G| table indexed by `first * |G| + second`
/// holding `first ∘ second` (apply `second`, then `first`), so an entry
/// should be present exactly when source(first) == target(second).
/// Missing entries are `std::nullopt`; `validate` reports them.
struct GroupoidTables {
  std::vector<std::string> object_labels;
  std::vector<Transition> transitions;
  std::vector<std::string> transition_labels;
  std::vector<std::optional<TransitionId>> units;
  std::vector<std::optional<TransitionId>> inverse;
  std::vector<std::optional<TransitionId>> composition;
};

/// A finite groupoid with an explicit composition table.
///
/// Construction only checks that the tables are well-formed (sizes agree,
/// every stored id is in range, `transitions[i].id == i`); the groupoid
/// axioms are checked by `validate`. Values are immutable.
class Groupoid {
 public:
  explicit Groupoid(GroupoidTables tables);

  std::size_t object_count() const noexcept { return tables_.object_labels.size(); }
  std::size_t size() const noexcept { return tables_.transitions.size(); }

  const GroupoidTables& tables() const noexcept { return tables_; }
  std::span<const Transition> transitions() const noexcept { return tables_.transitions; }

  ObjectId source(TransitionId t) const { return at(t).source; }
  ObjectId target(TransitionId t) const { return at(t).target; }
  bool is_loop(TransitionId t) const { return source(t) == target(t); }
  bool composable(TransitionId first, TransitionId second) const {
    return source(first) == target(second);
  }

  /// `first ∘ second`, or nullopt when the pair is not composable.
  std::optional<TransitionId> compose(TransitionId first, TransitionId second) const;

  /// Throws DomainError when the table has no unit for `x`.
  TransitionId unit(ObjectId x) const;
  /// Throws DomainError when the table has no inverse for `t`.
  TransitionId inverse(TransitionId t) const;

  /// All transitions x -> y in id order.
  const std::vector<TransitionId>& hom(ObjectId x, ObjectId y) const;

  const std::string& object_label(ObjectId x) const;
  const std::string& transition_label(TransitionId t) const;

  /// Index of an object by label, if any.
  std::optional<ObjectId> find_object(std::string_view label) const;

  bool contains(TransitionId t) const noexcept { return t.index < size(); }

 private:
  const Transition& at(TransitionId t) const;

  GroupoidTables tables_;
  std::vector<std::vector<TransitionId>> hom_;
};

enum class ViolationKind {
  EmptyGroupoid,
  MissingUnit,
  UnitNotLoop,
  MissingInverse,
  InverseNotInvolution,
  InverseEndpoints,
  MissingComposition,
  SpuriousComposition,
  SourceTargetCoherence,
  UnitLaw,
  InverseLaw,
  Associativity,
};

std::string_view to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::vector<TransitionId> transitions;
  std::optional<ObjectId> object;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const noexcept { return violations.empty(); }
  bool has(ViolationKind kind) const;
};

/// Checks every groupoid axiom and reports each offending tuple.
ValidationReport validate(const Groupoid& g);

struct OrbitDecomposition {
  std::vector<std::vector<ObjectId>> orbits;
  /// orbit_of[x] is the position of x's orbit in `orbits`.
  std::vector<std::size_t> orbit_of;
  /// Loops at each object; a group under composition.
  std::vector<std::vector<TransitionId>> isotropy;
};

OrbitDecomposition orbit_decomposition(const Groupoid& g);

bool is_totally_disconnected(const Groupoid& g);
bool has_abelian_isotropy(const Groupoid& g);

/// Objects and transitions of the product are ordered lexicographically:
/// (x_A, x_B) has index x_A * |Ω_B| + x_B and (α_A, α_B) has index
/// α_A * |G_B| + α_B. This is the Kronecker ordering used everywhere
/// downstream.
Groupoid direct_product(const Groupoid& a, const Groupoid& b);

inline TransitionId product_transition(const Groupoid& b, TransitionId ta, TransitionId tb) {
  return TransitionId{ta.index * b.size() + tb.index};
}
inline ObjectId product_object(const Groupoid& b, ObjectId xa, ObjectId xb) {
  return ObjectId{xa.index * b.object_count() + xb.index};
}

}  // namespace gq
