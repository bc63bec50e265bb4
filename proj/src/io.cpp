#include "gq/io.hpp"

#include <fstream>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "gq/linalg.hpp"

namespace gq::io {

namespace {

int line_of(const YAML::Node& n) { return n.Mark().line >= 0 ? n.Mark().line + 1 : 0; }

std::string located(const std::string& source, int line, const std::string& message) {
  return line > 0 ? source + ":" + std::to_string(line) + ": " + message : source + ": " + message;
}

YAML::Node load_yaml(std::string_view text, const std::string& source) {
  try {
    return YAML::Load(std::string(text));
  } catch (const YAML::ParserException& e) {
    throw ParseError(source, e.mark.line + 1, e.msg);
  }
}

// Typed scalar access that reports the offending line instead of yaml-cpp's message.
template <typename T>
T scalar(const YAML::Node& n, const std::string& source, const char* what) {
  if (!n || !n.IsScalar()) throw ParseError(source, line_of(n), std::string("expected ") + what);
  try {
    return n.as<T>();
  } catch (const YAML::Exception&) {
    throw ParseError(source, line_of(n), std::string("expected ") + what + ", got '" + n.Scalar() + "'");
  }
}

YAML::Node sequence(const YAML::Node& parent, const char* key, const std::string& source, bool required) {
  const YAML::Node n = parent[key];
  if (!n) {
    if (required) throw ParseError(source, line_of(parent), std::string("missing '") + key + "'");
    return YAML::Node(YAML::NodeType::Sequence);
  }
  if (!n.IsSequence()) throw ParseError(source, line_of(n), std::string("'") + key + "' must be a list");
  return n;
}

Complex complex_entry(const YAML::Node& n, const std::string& source) {
  if (n.IsScalar()) return {scalar<double>(n, source, "a number"), 0.0};
  if (n.IsSequence() && n.size() == 2)
    return {scalar<double>(n[0], source, "a real part"), scalar<double>(n[1], source, "an imaginary part")};
  if (n.IsMap()) {
    const double re = n["re"] ? scalar<double>(n["re"], source, "a real part") : 0.0;
    const double im = n["im"] ? scalar<double>(n["im"], source, "an imaginary part") : 0.0;
    return {re, im};
  }
  throw ParseError(source, line_of(n), "expected a number, [re, im] or {re, im}");
}

// An id reference inside a set: a scalar id, or [a, b] for products.
TransitionId reference(const YAML::Node& n, const IdResolver& ids, const std::string& source) {
  try {
    if (n.IsSequence() && n.size() == 2)
      return ids.pair(scalar<std::int64_t>(n[0], source, "a transition id"),
                      scalar<std::int64_t>(n[1], source, "a transition id"));
    return ids.single(scalar<std::int64_t>(n, source, "a transition id"));
  } catch (const ParseError&) {
    throw;
  } catch (const DomainError& e) {
    throw ParseError(source, line_of(n), e.what());
  }
}

// {transition_id: n} or {pair: [a, b]} inside an element or phi entry.
TransitionId entry_reference(const YAML::Node& n, const IdResolver& ids, const std::string& source) {
  if (!n.IsMap()) throw ParseError(source, line_of(n), "expected {transition_id, re, im}");
  if (n["pair"]) return reference(n["pair"], ids, source);
  if (!n["transition_id"]) throw ParseError(source, line_of(n), "entry needs 'transition_id' (or 'pair')");
  return reference(n["transition_id"], ids, source);
}

std::vector<std::pair<TransitionId, Complex>> coefficient_list(const YAML::Node& list, const IdResolver& ids,
                                                                const std::string& source) {
  std::vector<std::pair<TransitionId, Complex>> out;
  for (const YAML::Node& e : list) out.emplace_back(entry_reference(e, ids, source), complex_entry(e, source));
  return out;
}

}  // namespace

ParseError::ParseError(const std::string& source, int line, const std::string& message)
    : DomainError(located(source, line, message)), line_(line) {}

InvalidGroupoidFile::InvalidGroupoidFile(const std::string& source, std::vector<Diagnostic> diagnostics)
    : DomainError(source + ": " + std::to_string(diagnostics.size()) + " groupoid axiom violation(s)"),
      diagnostics_(std::move(diagnostics)) {}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path.string(), 0, "cannot open file");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

LoadedGroupoid parse_groupoid(std::string_view text, std::string source) {
  const YAML::Node root = load_yaml(text, source);
  if (!root.IsMap()) throw ParseError(source, 1, "expected a mapping with objects, transitions, inverse, composition");

  GroupoidTables tables;
  SourceMap lines;
  std::map<std::string, std::size_t> object_index;
  for (const YAML::Node& o : sequence(root, "objects", source, true)) {
    const auto label = scalar<std::string>(o, source, "an object label");
    if (!object_index.emplace(label, tables.object_labels.size()).second)
      throw ParseError(source, line_of(o), "duplicate object '" + label + "'");
    tables.object_labels.push_back(label);
    lines.object_lines.push_back(line_of(o));
  }

  auto object = [&](const YAML::Node& n) {
    const auto label = scalar<std::string>(n, source, "an object label");
    const auto it = object_index.find(label);
    if (it == object_index.end()) throw ParseError(source, line_of(n), "unknown object '" + label + "'");
    return ObjectId{it->second};
  };

  std::vector<std::int64_t> file_ids;
  std::map<std::int64_t, TransitionId> by_id;
  std::vector<int> unit_line(tables.object_labels.size(), 0);
  tables.units.resize(tables.object_labels.size());
  for (const YAML::Node& t : sequence(root, "transitions", source, true)) {
    if (!t.IsMap()) throw ParseError(source, line_of(t), "a transition must be {id, source, target}");
    const auto id = scalar<std::int64_t>(t["id"], source, "an integer transition id");
    const TransitionId dense{file_ids.size()};
    if (!by_id.emplace(id, dense).second)
      throw ParseError(source, line_of(t), "duplicate transition id " + std::to_string(id));
    const ObjectId s = object(t["source"]);
    const ObjectId tg = object(t["target"]);
    tables.transitions.push_back({dense, s, tg});
    tables.transition_labels.push_back(t["label"] ? scalar<std::string>(t["label"], source, "a label")
                                                  : std::to_string(id));
    file_ids.push_back(id);
    lines.transition_lines.push_back(line_of(t));
    if (t["unit"] && scalar<bool>(t["unit"], source, "true or false")) {
      if (tables.units[s.index])
        throw ParseError(source, line_of(t),
                         "object '" + tables.object_labels[s.index] + "' already has a unit (line " +
                             std::to_string(unit_line[s.index]) + ")");
      tables.units[s.index] = dense;
      unit_line[s.index] = line_of(t);
    }
  }

  const std::size_t n = file_ids.size();
  auto transition = [&](const YAML::Node& node) {
    const auto id = scalar<std::int64_t>(node, source, "a transition id");
    const auto it = by_id.find(id);
    if (it == by_id.end()) throw ParseError(source, line_of(node), "unknown transition id " + std::to_string(id));
    return it->second;
  };

  tables.inverse.resize(n);
  for (const YAML::Node& p : sequence(root, "inverse", source, false)) {
    if (!p.IsSequence() || p.size() != 2) throw ParseError(source, line_of(p), "an inverse entry must be [id, id]");
    const TransitionId a = transition(p[0]);
    const TransitionId b = transition(p[1]);
    tables.inverse[a.index] = b;
    tables.inverse[b.index] = a;
  }

  tables.composition.resize(n * n);
  for (const YAML::Node& c : sequence(root, "composition", source, false)) {
    if (!c.IsSequence() || c.size() != 3)
      throw ParseError(source, line_of(c), "a composition entry must be [first, second, result]");
    const TransitionId f = transition(c[0]);
    const TransitionId s = transition(c[1]);
    const TransitionId r = transition(c[2]);
    auto& slot = tables.composition[f.index * n + s.index];
    if (slot && *slot != r)
      throw ParseError(source, line_of(c),
                       "composition of (" + std::to_string(file_ids[f.index]) + ", " + std::to_string(file_ids[s.index]) +
                           ") declared twice with different results");
    slot = r;
    lines.composition_lines[{f.index, s.index}] = line_of(c);
  }

  return LoadedGroupoid{std::move(source), Groupoid(std::move(tables)), std::move(file_ids), std::move(by_id),
                        std::move(lines)};
}

LoadedGroupoid read_groupoid(const std::filesystem::path& path) { return parse_groupoid(read_text(path), path.string()); }

std::vector<Diagnostic> diagnose(const LoadedGroupoid& loaded, const ValidationReport& report) {
  std::vector<Diagnostic> out;
  const SourceMap& lines = loaded.lines;
  for (const Violation& v : report.violations) {
    int line = 0;
    const auto& ts = v.transitions;
    for (std::size_t i = 0; line == 0 && i + 1 < ts.size(); ++i) {
      const auto it = lines.composition_lines.find({ts[i].index, ts[i + 1].index});
      if (it != lines.composition_lines.end()) line = it->second;
    }
    if (line == 0 && !ts.empty() && ts.front().index < lines.transition_lines.size())
      line = lines.transition_lines[ts.front().index];
    if (line == 0 && v.object && v.object->index < lines.object_lines.size())
      line = lines.object_lines[v.object->index];
    out.push_back({line, std::string(to_string(v.kind)), v.message});
  }
  return out;
}

LoadedGroupoid load_groupoid(const std::filesystem::path& path) {
  LoadedGroupoid loaded = read_groupoid(path);
  const ValidationReport report = validate(loaded.groupoid);
  if (!report.ok()) throw InvalidGroupoidFile(loaded.source, diagnose(loaded, report));
  return loaded;
}

std::string write_groupoid(const Groupoid& g) {
  YAML::Emitter out;
  out << YAML::BeginMap;
  out << YAML::Key << "objects" << YAML::Value << YAML::Flow << YAML::BeginSeq;
  for (std::size_t x = 0; x < g.object_count(); ++x) out << g.object_label(ObjectId{x});
  out << YAML::EndSeq;

  out << YAML::Key << "transitions" << YAML::Value << YAML::BeginSeq;
  for (const Transition& t : g.transitions()) {
    out << YAML::Flow << YAML::BeginMap;
    out << YAML::Key << "id" << YAML::Value << t.id.index;
    out << YAML::Key << "source" << YAML::Value << g.object_label(t.source);
    out << YAML::Key << "target" << YAML::Value << g.object_label(t.target);
    if (t.source == t.target && g.tables().units[t.source.index] == t.id)
      out << YAML::Key << "unit" << YAML::Value << true;
    out << YAML::Key << "label" << YAML::Value << g.transition_label(t.id);
    out << YAML::EndMap;
  }
  out << YAML::EndSeq;

  out << YAML::Key << "inverse" << YAML::Value << YAML::BeginSeq;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto& inv = g.tables().inverse[i];
    if (inv && inv->index >= i) out << YAML::Flow << YAML::BeginSeq << i << inv->index << YAML::EndSeq;
  }
  out << YAML::EndSeq;

  out << YAML::Key << "composition" << YAML::Value << YAML::BeginSeq;
  for (std::size_t f = 0; f < g.size(); ++f)
    for (std::size_t s = 0; s < g.size(); ++s)
      if (const auto& r = g.tables().composition[f * g.size() + s])
        out << YAML::Flow << YAML::BeginSeq << f << s << r->index << YAML::EndSeq;
  out << YAML::EndSeq;
  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

TransitionId IdResolver::single(std::int64_t file_id) const {
  if (is_product()) throw DomainError("product groupoid entries must use [a, b] pairs");
  const auto it = a_->by_file_id.find(file_id);
  if (it == a_->by_file_id.end()) throw DomainError("unknown transition id " + std::to_string(file_id));
  return it->second;
}

TransitionId IdResolver::pair(std::int64_t a, std::int64_t b) const {
  if (!is_product()) throw DomainError("pairs of ids are only valid for product groupoids");
  const auto ia = a_->by_file_id.find(a);
  const auto ib = b_->by_file_id.find(b);
  if (ia == a_->by_file_id.end() || ib == b_->by_file_id.end())
    throw DomainError("unknown transition pair [" + std::to_string(a) + ", " + std::to_string(b) + "]");
  return product_transition(b_->groupoid, ia->second, ib->second);
}

AlgebraElement parse_element(std::string_view text, const IdResolver& ids, std::string source) {
  YAML::Node root = load_yaml(text, source);
  if (root.IsMap()) root = sequence(root, "element", source, true);
  if (!root.IsSequence()) throw ParseError(source, line_of(root), "an element is a list of {transition_id, re, im}");
  AlgebraElement a;
  for (const auto& [t, c] : coefficient_list(root, ids, source)) a.add(t, c);
  return a;
}

AlgebraElement read_element(const std::filesystem::path& path, const IdResolver& ids) {
  return parse_element(read_text(path), ids, path.string());
}

StateInput parse_state(std::string_view text, const IdResolver& ids, std::string source) {
  const YAML::Node root = load_yaml(text, source);
  if (!root.IsMap()) throw ParseError(source, 1, "a state is a mapping with density, vector or phi");
  StateInput input;
  if (root["rep"]) {
    try {
      input.rep = parse_rep(scalar<std::string>(root["rep"], source, "a representation name"));
    } catch (const ParseError&) {
      throw;
    } catch (const DomainError& e) {
      throw ParseError(source, line_of(root["rep"]), e.what());
    }
  }
  const int forms = (root["density"] ? 1 : 0) + (root["vector"] ? 1 : 0) + (root["phi"] ? 1 : 0);
  if (forms != 1) throw ParseError(source, 1, "a state needs exactly one of density, vector or phi");

  if (root["density"]) {
    const YAML::Node rows = sequence(root, "density", source, true);
    const auto n = static_cast<Eigen::Index>(rows.size());
    Matrix m(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const YAML::Node row = rows[static_cast<std::size_t>(i)];
      if (!row.IsSequence() || static_cast<Eigen::Index>(row.size()) != n)
        throw ParseError(source, line_of(row), "density rows must all have length " + std::to_string(n));
      for (Eigen::Index j = 0; j < n; ++j) m(i, j) = complex_entry(row[static_cast<std::size_t>(j)], source);
    }
    input.density = std::move(m);
  } else if (root["vector"]) {
    const YAML::Node entries = sequence(root, "vector", source, true);
    Vector v(static_cast<Eigen::Index>(entries.size()));
    for (std::size_t i = 0; i < entries.size(); ++i) v(static_cast<Eigen::Index>(i)) = complex_entry(entries[i], source);
    input.vector = std::move(v);
  } else {
    std::vector<Complex> phi(ids.groupoid().size());
    for (const auto& [t, c] : coefficient_list(sequence(root, "phi", source, true), ids, source)) phi[t.index] += c;
    input.phi = std::move(phi);
  }
  return input;
}

StateInput read_state(const std::filesystem::path& path, const IdResolver& ids) {
  return parse_state(read_text(path), ids, path.string());
}

StateFn make_state(const StateInput& input, const Groupoid& g) {
  if (input.density) return StateFn::from_density(Operator{input.rep, *input.density}, g);
  if (input.vector) {
    if (static_cast<std::size_t>(input.vector->size()) != rep_dimension(input.rep, g))
      throw InvalidState("state vector has length " + std::to_string(input.vector->size()) + ", representation needs " +
                         std::to_string(rep_dimension(input.rep, g)));
    return StateFn::from_vector(*input.vector, input.rep, g);
  }
  return StateFn::from_phi(*input.phi, g);
}

std::vector<std::vector<HistorySet>> parse_sets(std::string_view text, const IdResolver& ids, std::string source) {
  YAML::Node root = load_yaml(text, source);
  if (root.IsNull()) return {};
  if (root.IsMap()) root = sequence(root, "rows", source, true);
  if (!root.IsSequence()) throw ParseError(source, line_of(root), "sets file must be a list of rows");
  std::vector<std::vector<HistorySet>> rows;
  for (const YAML::Node& row : root) {
    if (!row.IsSequence() || row.size() < 2 || row.size() > 3)
      throw ParseError(source, line_of(row), "each row must list two or three history sets");
    std::vector<HistorySet> sets;
    for (const YAML::Node& set : row) {
      if (!set.IsSequence()) throw ParseError(source, line_of(set), "a history set is a list of transition ids");
      std::vector<TransitionId> members;
      for (const YAML::Node& id : set) members.push_back(reference(id, ids, source));
      sets.push_back(HistorySet::of(std::move(members), ids.groupoid()));
    }
    rows.push_back(std::move(sets));
  }
  return rows;
}

std::vector<std::vector<HistorySet>> read_sets(const std::filesystem::path& path, const IdResolver& ids) {
  return parse_sets(read_text(path), ids, path.string());
}

std::string dump_operator(const Operator& op) {
  YAML::Emitter out;
  out << YAML::BeginMap;
  out << YAML::Key << "rep" << YAML::Value << std::string(to_string(op.rep));
  out << YAML::Key << "dim" << YAML::Value << op.dim();
  out << YAML::Key << "data" << YAML::Value << YAML::BeginSeq;
  out.SetDoublePrecision(17);
  for (Eigen::Index i = 0; i < op.matrix.rows(); ++i)
    for (Eigen::Index j = 0; j < op.matrix.cols(); ++j)
      out << YAML::Flow << YAML::BeginSeq << op.matrix(i, j).real() << op.matrix(i, j).imag() << YAML::EndSeq;
  out << YAML::EndSeq << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

}  // namespace gq::io
