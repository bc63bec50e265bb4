#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "gq/groupoid.hpp"

namespace gq {

/// Multiplication table of a finite group: table[i][j] = i·j.
using GroupTable = std::vector<std::vector<std::size_t>>;

/// Throws DomainError unless `table` is closed, associative, unital and has inverses.
void check_group_table(const GroupTable& table);

/// Pair groupoid on n objects: exactly one transition x -> y for every ordered pair.
/// Transition x -> y has id y * n + x.
Groupoid pair_groupoid(std::size_t n);

/// One-object groupoid of a group. Transition i is group element i.
Groupoid group_groupoid(const GroupTable& table, std::vector<std::string> element_labels = {},
                        std::string object_label = "*");

Groupoid cyclic_group(std::size_t n);

/// Symmetric group on n letters (n <= 5), elements in lexicographic order of
/// their one-line notation; element 0 is the identity.
Groupoid symmetric_group(std::size_t n);

GroupTable cyclic_group_table(std::size_t n);
GroupTable symmetric_group_table(std::size_t n);

/// Disjoint union; objects and transitions are concatenated in argument order.
Groupoid disjoint_union(const std::vector<Groupoid>& parts);

/// Same groupoid with new object labels (basis labels downstream).
Groupoid relabel_objects(const Groupoid& g, std::vector<std::string> labels);

/// Two isolated objects "A" (alive) and "D" (dead), each carrying the given
/// isotropy group. With the trivial group this is the classical cat.
Groupoid cat_groupoid(const GroupTable& isotropy = cyclic_group_table(1));

}  // namespace gq
