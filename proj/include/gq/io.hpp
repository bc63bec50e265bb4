#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gq/algebra.hpp"
#include "gq/core.hpp"
#include "gq/groupoid.hpp"
#include "gq/representation.hpp"
#include "gq/states.hpp"

namespace gq::io {

/// Malformed input; the message starts with "name:line:" when a line is known.
class ParseError : public DomainError {
 public:
  ParseError(const std::string& source, int line, const std::string& message);
  int line() const noexcept { return line_; }

 private:
  int line_;
};

/// Where each declaration of a groupoid file sits (1-based lines, 0 if unknown).
struct SourceMap {
  std::vector<int> object_lines;
  std::vector<int> transition_lines;
  std::map<std::pair<std::size_t, std::size_t>, int> composition_lines;
};

/// A groupoid read from a file, with the file's transition ids.
///
/// Transitions are renumbered densely in declaration order; `file_ids[i]`
/// is the id the file used for transition i.
struct LoadedGroupoid {
  std::string source;
  Groupoid groupoid;
  std::vector<std::int64_t> file_ids;
  std::map<std::int64_t, TransitionId> by_file_id;
  SourceMap lines;
};

/// Parses the tables without checking groupoid axioms. Throws ParseError for
/// anything that cannot be turned into tables (bad YAML, unknown labels,
/// duplicate ids, two units for one object, ...).
LoadedGroupoid parse_groupoid(std::string_view text, std::string source = "<input>");
LoadedGroupoid read_groupoid(const std::filesystem::path& path);

struct Diagnostic {
  int line = 0;
  std::string kind;
  std::string message;
};

/// One diagnostic per violation, located at the most specific declaration.
std::vector<Diagnostic> diagnose(const LoadedGroupoid& loaded, const ValidationReport& report);

/// A file that parsed but failed validation.
class InvalidGroupoidFile : public DomainError {
 public:
  InvalidGroupoidFile(const std::string& source, std::vector<Diagnostic> diagnostics);
  const std::vector<Diagnostic>& diagnostics() const noexcept { return diagnostics_; }

 private:
  std::vector<Diagnostic> diagnostics_;
};

/// read_groupoid followed by validate; throws InvalidGroupoidFile on any violation.
LoadedGroupoid load_groupoid(const std::filesystem::path& path);

/// Groupoid in the file format, with dense ids. Parses back to an identical table.
std::string write_groupoid(const Groupoid& g);

/// Maps transition references in element, state and set files onto a groupoid.
///
/// For a single file `transition_id: n` uses that file's ids. For a product
/// A × B an entry may also give `pair: [a, b]` with ids from each factor file.
class IdResolver {
 public:
  explicit IdResolver(const LoadedGroupoid& g) : a_(&g) {}
  IdResolver(const LoadedGroupoid& a, const LoadedGroupoid& b, const Groupoid& product)
      : a_(&a), b_(&b), product_(&product) {}

  TransitionId single(std::int64_t file_id) const;
  TransitionId pair(std::int64_t a, std::int64_t b) const;
  bool is_product() const noexcept { return b_ != nullptr; }
  const Groupoid& groupoid() const noexcept { return product_ ? *product_ : a_->groupoid; }

 private:
  const LoadedGroupoid* a_;
  const LoadedGroupoid* b_ = nullptr;
  const Groupoid* product_ = nullptr;
};

/// List of {transition_id, re, im} (or {pair: [a, b], re, im}); a top-level
/// map with key `element` is accepted too.
AlgebraElement parse_element(std::string_view text, const IdResolver& ids, std::string source = "<input>");
AlgebraElement read_element(const std::filesystem::path& path, const IdResolver& ids);

/// Exactly one of `density`, `vector` or `phi` is present.
struct StateInput {
  Rep rep = Rep::LeftRegular;
  std::optional<Matrix> density;
  std::optional<Vector> vector;
  std::optional<std::vector<Complex>> phi;
};

StateInput parse_state(std::string_view text, const IdResolver& ids, std::string source = "<input>");
StateInput read_state(const std::filesystem::path& path, const IdResolver& ids);
/// Builds and validates the state; vector forms become |ψ⟩⟨ψ|/⟨ψ|ψ⟩.
StateFn make_state(const StateInput& input, const Groupoid& g);

/// Rows of two or three history sets, each a list of transition ids.
/// Accepts a top-level list or a map with key `rows`.
std::vector<std::vector<HistorySet>> parse_sets(std::string_view text, const IdResolver& ids,
                                                std::string source = "<input>");
std::vector<std::vector<HistorySet>> read_sets(const std::filesystem::path& path, const IdResolver& ids);

/// {rep, dim, data}: data is the row-major list of [re, im] entries.
std::string dump_operator(const Operator& op);

std::string read_text(const std::filesystem::path& path);

}  // namespace gq::io
