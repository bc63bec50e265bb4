#include "gq/generators.hpp"

#include <algorithm>
#include <numeric>

namespace gq {

void check_group_table(const GroupTable& table) {
  const std::size_t n = table.size();
  if (n == 0) throw DomainError("group table is empty");
  for (const auto& row : table) {
    if (row.size() != n) throw DomainError("group table is not square");
    for (std::size_t v : row)
      if (v >= n) throw DomainError("group table entry out of range");
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (table[table[a][b]][c] != table[a][table[b][c]])
          throw DomainError("group table is not associative");

  std::size_t e = n;
  for (std::size_t cand = 0; cand < n && e == n; ++cand) {
    bool ok = true;
    for (std::size_t a = 0; a < n && ok; ++a) ok = table[cand][a] == a && table[a][cand] == a;
    if (ok) e = cand;
  }
  if (e == n) throw DomainError("group table has no identity");
  for (std::size_t a = 0; a < n; ++a) {
    bool found = false;
    for (std::size_t b = 0; b < n && !found; ++b) found = table[a][b] == e && table[b][a] == e;
    if (!found) throw DomainError("group element " + std::to_string(a) + " has no inverse");
  }
}

namespace {

std::size_t identity_of(const GroupTable& table) {
  for (std::size_t e = 0; e < table.size(); ++e) {
    bool ok = true;
    for (std::size_t a = 0; a < table.size() && ok; ++a) ok = table[e][a] == a;
    if (ok) return e;
  }
  throw DomainError("group table has no identity");
}

}  // namespace

Groupoid pair_groupoid(std::size_t n) {
  if (n == 0) throw DomainError("pair groupoid needs at least one object");
  GroupoidTables t;
  for (std::size_t x = 0; x < n; ++x) t.object_labels.push_back(std::to_string(x));
  const std::size_t size = n * n;
  auto id = [n](std::size_t x, std::size_t y) { return TransitionId{y * n + x}; };
  for (std::size_t y = 0; y < n; ++y) {
    for (std::size_t x = 0; x < n; ++x) {
      t.transitions.push_back({id(x, y), ObjectId{x}, ObjectId{y}});
      t.transition_labels.push_back(x == y ? "1_" + std::to_string(x)
                                           : std::to_string(x) + "->" + std::to_string(y));
    }
  }
  t.units.resize(n);
  for (std::size_t x = 0; x < n; ++x) t.units[x] = id(x, x);
  t.inverse.resize(size);
  for (std::size_t y = 0; y < n; ++y)
    for (std::size_t x = 0; x < n; ++x) t.inverse[id(x, y).index] = id(y, x);
  t.composition.resize(size * size);
  // (y -> z) ∘ (x -> y) = (x -> z)
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z)
        t.composition[id(y, z).index * size + id(x, y).index] = id(x, z);
  return Groupoid(std::move(t));
}

Groupoid group_groupoid(const GroupTable& table, std::vector<std::string> element_labels,
                        std::string object_label) {
  check_group_table(table);
  const std::size_t n = table.size();
  if (element_labels.empty()) {
    for (std::size_t i = 0; i < n; ++i) element_labels.push_back("g" + std::to_string(i));
  }
  if (element_labels.size() != n) throw DomainError("one label per group element required");

  GroupoidTables t;
  t.object_labels = {std::move(object_label)};
  for (std::size_t i = 0; i < n; ++i) t.transitions.push_back({TransitionId{i}, ObjectId{0}, ObjectId{0}});
  t.transition_labels = std::move(element_labels);

  const std::size_t e = identity_of(table);
  t.units = {TransitionId{e}};
  t.inverse.resize(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (table[a][b] == e) t.inverse[a] = TransitionId{b};
  t.composition.resize(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) t.composition[a * n + b] = TransitionId{table[a][b]};
  return Groupoid(std::move(t));
}

GroupTable cyclic_group_table(std::size_t n) {
  if (n == 0) throw DomainError("cyclic group order must be positive");
  GroupTable table(n, std::vector<std::size_t>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) table[a][b] = (a + b) % n;
  return table;
}

Groupoid cyclic_group(std::size_t n) {
  std::vector<std::string> labels;
  for (std::size_t k = 0; k < n; ++k) labels.push_back(k == 0 ? "e" : "g^" + std::to_string(k));
  return group_groupoid(cyclic_group_table(n), std::move(labels), "Z" + std::to_string(n));
}

namespace {

std::vector<std::vector<std::size_t>> permutations(std::size_t n) {
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<std::size_t>> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

}  // namespace

GroupTable symmetric_group_table(std::size_t n) {
  if (n == 0 || n > 5) throw DomainError("symmetric group supported for 1 <= n <= 5");
  const auto perms = permutations(n);
  const std::size_t m = perms.size();
  GroupTable table(m, std::vector<std::size_t>(m));
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      // (a·b)(k) = a(b(k))
      std::vector<std::size_t> c(n);
      for (std::size_t k = 0; k < n; ++k) c[k] = perms[a][perms[b][k]];
      table[a][b] = static_cast<std::size_t>(std::find(perms.begin(), perms.end(), c) - perms.begin());
    }
  }
  return table;
}

Groupoid symmetric_group(std::size_t n) {
  const auto perms = permutations(n);
  std::vector<std::string> labels;
  for (const auto& p : perms) {
    std::string s = "[";
    for (std::size_t k = 0; k < p.size(); ++k) s += (k ? " " : "") + std::to_string(p[k]);
    labels.push_back(s + "]");
  }
  return group_groupoid(symmetric_group_table(n), std::move(labels), "S" + std::to_string(n));
}

Groupoid disjoint_union(const std::vector<Groupoid>& parts) {
  GroupoidTables t;
  std::size_t total = 0;
  for (const auto& g : parts) total += g.size();
  t.composition.resize(total * total);
  t.inverse.resize(total);

  std::size_t obj_off = 0, tr_off = 0;
  for (const auto& g : parts) {
    const auto& src = g.tables();
    for (const auto& label : src.object_labels) t.object_labels.push_back(label);
    for (const auto& tr : src.transitions)
      t.transitions.push_back({TransitionId{tr.id.index + tr_off}, ObjectId{tr.source.index + obj_off},
                               ObjectId{tr.target.index + obj_off}});
    for (const auto& label : src.transition_labels) t.transition_labels.push_back(label);
    auto shift = [tr_off](const std::optional<TransitionId>& id) -> std::optional<TransitionId> {
      if (!id) return std::nullopt;
      return TransitionId{id->index + tr_off};
    };
    for (const auto& u : src.units) t.units.push_back(shift(u));
    const std::size_t n = g.size();
    for (std::size_t i = 0; i < n; ++i) {
      t.inverse[tr_off + i] = shift(src.inverse[i]);
      for (std::size_t j = 0; j < n; ++j)
        t.composition[(tr_off + i) * total + (tr_off + j)] = shift(src.composition[i * n + j]);
    }
    obj_off += g.object_count();
    tr_off += n;
  }
  // Repeated labels (e.g. two copies of Z2) are disambiguated by object index.
  const auto original = t.object_labels;
  for (std::size_t x = 0; x < original.size(); ++x) {
    if (std::count(original.begin(), original.end(), original[x]) > 1)
      t.object_labels[x] += "#" + std::to_string(x);
  }
  return Groupoid(std::move(t));
}

Groupoid relabel_objects(const Groupoid& g, std::vector<std::string> labels) {
  if (labels.size() != g.object_count()) throw DomainError("one label per object required");
  GroupoidTables t = g.tables();
  t.object_labels = std::move(labels);
  return Groupoid(std::move(t));
}

Groupoid cat_groupoid(const GroupTable& isotropy) {
  check_group_table(isotropy);
  const std::size_t e = identity_of(isotropy);
  auto copy = [&](const std::string& x) {
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < isotropy.size(); ++i)
      labels.push_back(i == e ? "1_" + x : "g" + std::to_string(i) + "_" + x);
    return group_groupoid(isotropy, std::move(labels), x);
  };
  return disjoint_union({copy("A"), copy("D")});
}

}  // namespace gq
