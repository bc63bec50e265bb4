#include "gq/cli.hpp"

#include <cstdio>
#include <memory>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "gq/classicality.hpp"
#include "gq/dynamics.hpp"
#include "gq/generators.hpp"
#include "gq/io.hpp"
#include "gq/states.hpp"

namespace gq::cli {

namespace {

using Json = nlohmann::ordered_json;

enum class Format { Text, Structured };

struct Globals {
  std::uint64_t seed = 42;
  std::optional<double> tol;
  std::size_t jobs = 1;
  Format format = Format::Text;
};

std::string num(double v, const char* input = "%.6e") {
  char buf[64];
  std::snprintf(buf, sizeof buf, input, v);
  return buf;
}

std::string flag(bool b) { return b ? "true" : "false"; }

void emit(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

// ---- generate --------------------------------------------------------------

Groupoid generate_factor(const std::string& token) {
  auto count = [&](std::size_t prefix) -> std::size_t {
    const std::string digits = token.substr(prefix);
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
      throw DomainError("bad family '" + token + "'");
    return std::stoul(digits);
  };
  if (token == "cat") return cat_groupoid();
  if (token.rfind("catS", 0) == 0) return cat_groupoid(symmetric_group_table(count(4)));
  if (token.rfind("catZ", 0) == 0) return cat_groupoid(cyclic_group_table(count(4)));
  if (token.rfind("pair", 0) == 0) {
    const std::size_t n = count(4);
    if (n == 0) throw DomainError("pair groupoid needs n >= 1");
    return pair_groupoid(n);
  }
  if (token.rfind('Z', 0) == 0) {
    const std::size_t n = count(1);
    if (n == 0) throw DomainError("cyclic group needs n >= 1");
    return cyclic_group(n);
  }
  if (token.rfind('S', 0) == 0) {
    const std::size_t n = count(1);
    if (n == 0 || n > 5) throw DomainError("symmetric group needs 1 <= n <= 5");
    return symmetric_group(n);
  }
  throw DomainError("unknown family '" + token + "' (use pairN, ZN, SN, cat, catZN, catSN)");
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  for (std::string part; std::getline(ss, part, sep);) parts.push_back(part);
  return parts;
}

// "Z2+Z3", "cat*pair2": '+' is disjoint union, '*' is direct product and binds tighter.
Groupoid generate_expression(const std::string& expr) {
  std::vector<Groupoid> terms;
  for (const std::string& term : split(expr, '+')) {
    std::optional<Groupoid> acc;
    for (const std::string& factor : split(term, '*')) {
      Groupoid f = generate_factor(factor);
      acc = acc ? direct_product(*acc, f) : std::move(f);
    }
    if (!acc) throw DomainError("empty term in '" + expr + "'");
    terms.push_back(std::move(*acc));
  }
  if (terms.empty()) throw DomainError("empty family expression");
  return terms.size() == 1 ? terms.front() : disjoint_union(terms);
}

// ---- validate / info -------------------------------------------------------

int cmd_validate(const std::string& path, const Globals& g, std::ostream& out) {
  const io::LoadedGroupoid loaded = io::read_groupoid(path);
  const ValidationReport report = validate(loaded.groupoid);
  const auto diags = io::diagnose(loaded, report);
  if (g.format == Format::Structured) {
    Json j;
    j["file"] = path;
    j["valid"] = report.ok();
    j["objects"] = loaded.groupoid.object_count();
    j["transitions"] = loaded.groupoid.size();
    j["violations"] = Json::array();
    for (const auto& d : diags) j["violations"].push_back({{"line", d.line}, {"kind", d.kind}, {"message", d.message}});
    emit(out, j);
  } else if (report.ok()) {
    out << "valid: " << path << " (" << loaded.groupoid.object_count() << " objects, " << loaded.groupoid.size()
        << " transitions)\n";
  } else {
    for (const auto& d : diags) out << path << ':' << d.line << ": " << d.kind << ": " << d.message << '\n';
    out << "invalid: " << diags.size() << " violation(s)\n";
  }
  return report.ok() ? kExitOk : kExitDomain;
}

int cmd_info(const std::string& path, const Globals& g, std::ostream& out) {
  const io::LoadedGroupoid loaded = io::load_groupoid(path);
  const Groupoid& gr = loaded.groupoid;
  const OrbitDecomposition orbits = orbit_decomposition(gr);
  Json j;
  j["file"] = path;
  j["objects"] = gr.object_count();
  j["transitions"] = gr.size();
  j["orbits"] = Json::array();
  for (const auto& orbit : orbits.orbits) {
    Json o = Json::array();
    for (ObjectId x : orbit) o.push_back(gr.object_label(x));
    j["orbits"].push_back(o);
  }
  j["isotropy_orders"] = Json::array();
  for (const auto& iso : orbits.isotropy) j["isotropy_orders"].push_back(iso.size());
  j["totally_disconnected"] = is_totally_disconnected(gr);
  j["abelian_isotropy"] = has_abelian_isotropy(gr);
  if (g.format == Format::Structured) {
    emit(out, j);
    return kExitOk;
  }
  out << "objects: " << gr.object_count() << '\n' << "transitions: " << gr.size() << '\n';
  out << "orbits: " << orbits.orbits.size() << '\n';
  for (std::size_t o = 0; o < orbits.orbits.size(); ++o) {
    out << "  orbit " << o << ':';
    for (ObjectId x : orbits.orbits[o]) out << ' ' << gr.object_label(x) << "(|G_x|=" << orbits.isotropy[x.index].size() << ')';
    out << '\n';
  }
  out << "totally disconnected: " << flag(j["totally_disconnected"]) << '\n';
  out << "abelian isotropy: " << flag(j["abelian_isotropy"]) << '\n';
  return kExitOk;
}

// ---- lattice / classify ----------------------------------------------------

Json operand_names(const LawViolation& v, const std::vector<NamedProposition>& props) {
  Json names = Json::array();
  for (std::size_t i : v.operands) names.push_back(props[i].name);
  return names;
}

Json lattice_json(const LatticeReport& r, const std::vector<NamedProposition>& props) {
  Json j;
  j["propositions"] = r.propositions;
  j["pairs_tested"] = r.pairs_tested;
  j["triples_tested"] = r.triples_tested;
  j["boolean"] = r.is_boolean();
  auto list = [&](const std::vector<LawViolation>& vs) {
    Json a = Json::array();
    for (const auto& v : vs) a.push_back({{"law", v.law}, {"operands", operand_names(v, props)}, {"residual", v.residual}});
    return a;
  };
  j["order_violations"] = list(r.order_violations);
  j["modularity_violations"] = list(r.modularity_violations);
  j["distributivity_violations"] = list(r.distributivity_violations);
  return j;
}

void print_violations(std::ostream& out, const char* title, const std::vector<LawViolation>& vs,
                      const std::vector<NamedProposition>& props) {
  out << title << ": " << vs.size() << '\n';
  for (const auto& v : vs) {
    out << "  " << v.law << " (";
    for (std::size_t k = 0; k < v.operands.size(); ++k) out << (k ? ", " : "") << props[v.operands[k]].name;
    out << ") residual " << num(v.residual) << '\n';
  }
}

LatticeCheckOptions lattice_options(const Globals& g) {
  LatticeCheckOptions o;
  if (g.tol) o.law_tolerance = *g.tol;
  return o;
}

int cmd_lattice(const std::string& path, std::size_t samples, const std::string& rep_name, const Globals& g,
                std::ostream& out) {
  const io::LoadedGroupoid loaded = io::load_groupoid(path);
  Rng rng(g.seed);
  const auto props = canonical_propositions(loaded.groupoid, samples, rng, parse_rep(rep_name));
  const LatticeReport r = check_boolean(props, lattice_options(g));
  if (g.format == Format::Structured) {
    Json j = lattice_json(r, props);
    j["names"] = Json::array();
    for (const auto& p : props) j["names"].push_back(p.name);
    emit(out, j);
    return kExitOk;
  }
  out << "propositions: " << r.propositions << " (";
  for (std::size_t i = 0; i < props.size(); ++i) out << (i ? ", " : "") << props[i].name;
  out << ")\n";
  out << "pairs tested: " << r.pairs_tested << "\ntriples tested: " << r.triples_tested << '\n';
  print_violations(out, "order violations", r.order_violations, props);
  print_violations(out, "modularity violations", r.modularity_violations, props);
  print_violations(out, "distributivity violations", r.distributivity_violations, props);
  out << "boolean: " << flag(r.is_boolean()) << '\n';
  return kExitOk;
}

// Prefer a witness that involves a jump proposition P[...].
const LawViolation* pick_witness(const ClassicalityVerdict& v) {
  const auto& ws = v.lattice.distributivity_violations;
  for (const auto& w : ws)
    for (std::size_t i : w.operands)
      if (v.propositions[i].name.rfind("P[", 0) == 0) return &w;
  return ws.empty() ? nullptr : &ws.front();
}

int cmd_classify(const std::string& path, std::size_t samples, const Globals& g, std::ostream& out) {
  const io::LoadedGroupoid loaded = io::load_groupoid(path);
  const ClassicalityVerdict v = classicality_verdict(loaded.groupoid, samples, g.seed, lattice_options(g));
  const LawViolation* witness = pick_witness(v);
  if (g.format == Format::Structured) {
    Json j;
    j["file"] = path;
    j["boolean_lattice"] = v.boolean_lattice;
    j["totally_disconnected"] = v.totally_disconnected;
    j["abelian_isotropy"] = v.abelian_isotropy;
    j["abelian_algebra"] = v.abelian_algebra;
    j["consistent"] = v.consistent;
    j["classical"] = v.classical();
    j["pseudo_classical_candidate"] = v.pseudo_classical();
    if (witness)
      j["witness"] = {{"law", witness->law}, {"operands", operand_names(*witness, v.propositions)},
                      {"residual", witness->residual}};
    else
      j["witness"] = nullptr;
    j["lattice"] = lattice_json(v.lattice, v.propositions);
    emit(out, j);
  } else {
    out << "totally disconnected: " << flag(v.totally_disconnected) << '\n';
    out << "abelian isotropy: " << flag(v.abelian_isotropy) << '\n';
    out << "abelian algebra: " << flag(v.abelian_algebra) << '\n';
    out << "boolean lattice: " << flag(v.boolean_lattice) << '\n';
    out << "consistent: " << flag(v.consistent) << '\n';
    out << "classical: " << flag(v.classical()) << '\n';
    if (v.pseudo_classical())
      out << "pseudo-classical candidate: totally disconnected, non-abelian isotropy\n";
    if (witness) {
      out << "witness: " << witness->law << " (";
      for (std::size_t k = 0; k < witness->operands.size(); ++k)
        out << (k ? ", " : "") << v.propositions[witness->operands[k]].name;
      out << ") gap " << num(witness->residual) << '\n';
    }
  }
  return v.consistent ? kExitOk : kExitInternal;
}

// ---- measure ---------------------------------------------------------------

std::string set_text(const HistorySet& h, const io::LoadedGroupoid& loaded) {
  std::string s = "{";
  for (std::size_t i = 0; i < h.members().size(); ++i)
    s += (i ? "," : "") + std::to_string(loaded.file_ids[h.members()[i].index]);
  return s + "}";
}

int cmd_measure(const std::string& gpath, const std::string& spath, const std::string& setpath, const Globals& g,
                std::ostream& out) {
  const io::LoadedGroupoid loaded = io::load_groupoid(gpath);
  const Groupoid& gr = loaded.groupoid;
  const io::IdResolver ids(loaded);
  const StateFn state = io::make_state(io::read_state(spath, ids), gr);
  const auto rows = io::read_sets(setpath, ids);

  Json table = Json::array();
  const char* header = "row\tsets\tD_re\tD_im\tmu_A\tmu_B\tmu_union\tI2\tI3\n";
  std::ostringstream text;
  text << header;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto& sets = rows[r];
    const Complex d = decoherence_functional(state, sets[0], sets[1], gr);
    const double mu_a = quantum_measure(state, sets[0], gr);
    const double mu_b = quantum_measure(state, sets[1], gr);
    HistorySet all = unite(sets[0], sets[1]);
    if (sets.size() == 3) all = unite(all, sets[2]);
    const double mu_union = quantum_measure(state, all, gr);
    const double i2 = interference(state, {sets[0], sets[1]}, gr);
    std::optional<double> i3;
    if (sets.size() == 3) i3 = interference(state, sets, gr);

    std::string names;
    for (std::size_t k = 0; k < sets.size(); ++k) names += (k ? "|" : "") + set_text(sets[k], loaded);
    text << r << '\t' << names << '\t' << num(d.real()) << '\t' << num(d.imag()) << '\t' << num(mu_a) << '\t'
         << num(mu_b) << '\t' << num(mu_union) << '\t' << num(i2) << '\t' << (i3 ? num(*i3) : "-") << '\n';
    Json row{{"row", r}, {"sets", names}, {"D_re", d.real()}, {"D_im", d.imag()}, {"mu_A", mu_a},
             {"mu_B", mu_b}, {"mu_union", mu_union}, {"I2", i2}};
    row["I3"] = i3 ? Json(*i3) : Json(nullptr);
    table.push_back(row);
  }
  if (g.format == Format::Structured)
    emit(out, Json{{"rows", table}});
  else
    out << text.str();
  return kExitOk;
}

// ---- evolve ----------------------------------------------------------------

int cmd_evolve(const std::string& gpath, const std::string& hpath, const std::string& spath,
               const std::string& with_path, const std::string& grid_text, const std::string& rep_name,
               const Globals& g, std::ostream& out) {
  const io::LoadedGroupoid a = io::load_groupoid(gpath);
  std::optional<io::LoadedGroupoid> b;
  if (!with_path.empty()) b = io::load_groupoid(with_path);
  const Groupoid gr = b ? direct_product(a.groupoid, b->groupoid) : a.groupoid;
  const io::IdResolver ids = b ? io::IdResolver(a, *b, gr) : io::IdResolver(a);
  const TimeGrid grid = grid_text.empty() ? TimeGrid::standard() : TimeGrid::parse(grid_text);

  // without --rep the state file decides
  const io::StateInput input = io::read_state(spath, ids);
  const Rep rep = rep_name.empty() ? input.rep : parse_rep(rep_name);
  if (input.rep != rep) throw DomainError("state representation does not match --rep");
  const Hamiltonian h = Hamiltonian::from_element(io::read_element(hpath, ids), rep, gr);

  std::optional<Bipartition> parts;
  if (b) {
    parts = rep == Rep::Fundamental ? Bipartition{a.groupoid.object_count(), b->groupoid.object_count()}
                                    : Bipartition{a.groupoid.size(), b->groupoid.size()};
  }

  Json rows = Json::array();
  std::ostringstream text;
  text << "t\tentropy\trank\tresidual\n";
  if (input.vector) {
    Vector psi = *input.vector;
    if (psi.norm() == 0.0) throw DomainError("initial vector is zero");
    psi /= psi.norm();
    const EvolutionTrace tr = evolve(h, psi, grid, parts);
    for (std::size_t i = 0; i < tr.times.size(); ++i) {
      const double residual = std::abs(tr.vectors[i].norm() - 1.0);
      text << num(tr.times[i], "%.6g") << '\t' << (parts ? num(tr.entropies[i]) : "-") << '\t'
           << (parts ? std::to_string(tr.schmidt_ranks[i]) : "-") << '\t' << num(residual) << '\n';
      Json row{{"t", tr.times[i]}, {"residual", residual}};
      row["entropy"] = parts ? Json(tr.entropies[i]) : Json(nullptr);
      row["rank"] = parts ? Json(tr.schmidt_ranks[i]) : Json(nullptr);
      rows.push_back(row);
    }
  } else if (input.density) {
    const EvolutionTrace tr = evolve(h, *input.density, grid);
    for (std::size_t i = 0; i < tr.times.size(); ++i) {
      const double residual = std::abs(tr.densities[i].trace() - 1.0);
      text << num(tr.times[i], "%.6g") << "\t-\t-\t" << num(residual) << '\n';
      rows.push_back({{"t", tr.times[i]}, {"entropy", nullptr}, {"rank", nullptr}, {"residual", residual}});
    }
  } else {
    throw DomainError("evolve needs a vector or density initial state");
  }
  if (g.format == Format::Structured)
    emit(out, Json{{"rows", rows}});
  else
    out << text.str();
  return kExitOk;
}

// ---- theorem ---------------------------------------------------------------

int cmd_theorem(const std::string& apath, const std::string& bpath, std::size_t trials, const std::string& grid_text,
                const std::string& mode, const Globals& g, std::ostream& out) {
  const io::LoadedGroupoid a = io::load_groupoid(apath);
  const io::LoadedGroupoid b = io::load_groupoid(bpath);
  TheoremOptions opt;
  opt.trials = trials;
  opt.seed = g.seed;
  opt.jobs = g.jobs;
  if (!grid_text.empty()) opt.grid = TimeGrid::parse(grid_text);
  if (g.tol) opt.ratio_tolerance = opt.block_tolerance = *g.tol;

  bool theorem_mode = mode == "theorem";
  if (mode == "auto") theorem_mode = is_totally_disconnected(a.groupoid);
  else if (mode != "theorem" && mode != "counterexample") throw DomainError("unknown mode '" + mode + "'");

  if (theorem_mode) {
    const TheoremReport r = separability_theorem_check(a.groupoid, b.groupoid, opt);
    if (g.format == Format::Structured) {
      Json j;
      j["mode"] = "theorem";
      j["dim_a"] = r.dim_a;
      j["dim_b"] = r.dim_b;
      j["blocks"] = r.blocks;
      j["grid_points"] = r.grid_points;
      j["seed"] = r.seed;
      j["trials"] = Json::array();
      for (const auto& t : r.trials)
        j["trials"].push_back({{"trial", t.trial}, {"support", t.support}, {"max_schmidt_ratio", t.max_schmidt_ratio},
                               {"max_off_block", t.max_off_block}, {"pass", t.pass}});
      j["summary"] = {{"pass", r.pass}, {"worst_ratio", r.worst_ratio}, {"worst_off_block", r.worst_off_block}};
      emit(out, j);
    } else {
      out << "trial\tsupport\tmax_schmidt_ratio\tmax_off_block\tverdict\n";
      for (const auto& t : r.trials)
        out << t.trial << '\t' << t.support << '\t' << num(t.max_schmidt_ratio) << '\t' << num(t.max_off_block) << '\t'
            << (t.pass ? "PASS" : "FAIL") << '\n';
      out << "summary\t" << r.trials.size() << '\t' << num(r.worst_ratio) << '\t' << num(r.worst_off_block) << '\t'
          << (r.pass ? "PASS" : "FAIL") << '\n';
    }
    return r.pass ? kExitOk : kExitInternal;
  }

  const EntanglementReport r = entanglement_search(a.groupoid, b.groupoid, opt);
  std::optional<double> first_onset;
  for (const auto& t : r.trials)
    if (t.onset && (!first_onset || *t.onset < *first_onset)) first_onset = t.onset;
  if (g.format == Format::Structured) {
    Json j;
    j["mode"] = "counterexample";
    j["dim_a"] = r.dim_a;
    j["dim_b"] = r.dim_b;
    j["grid_points"] = r.grid_points;
    j["seed"] = r.seed;
    j["threshold"] = r.threshold;
    j["trials"] = Json::array();
    for (const auto& t : r.trials) {
      Json row{{"trial", t.trial}, {"support", t.support}, {"max_entropy", t.max_entropy}};
      row["onset"] = t.onset ? Json(*t.onset) : Json(nullptr);
      j["trials"].push_back(row);
    }
    j["summary"] = {{"entangled", r.entangled}, {"trials", r.trials.size()}, {"max_entropy", r.max_entropy}};
    j["summary"]["first_onset"] = first_onset ? Json(*first_onset) : Json(nullptr);
    emit(out, j);
  } else {
    out << "trial\tsupport\tmax_entropy\tonset\n";
    for (const auto& t : r.trials)
      out << t.trial << '\t' << t.support << '\t' << num(t.max_entropy) << '\t'
          << (t.onset ? num(*t.onset, "%.6g") : "-") << '\n';
    out << "summary\tentangled " << r.entangled << '/' << r.trials.size() << "\tmax_entropy " << num(r.max_entropy)
        << "\tfirst_onset " << (first_onset ? num(*first_onset, "%.6g") : "-") << '\n';
  }
  return kExitOk;
}

int cmd_operator(const std::string& gpath, const std::string& epath, const std::string& rep_name, std::ostream& out) {
  const io::LoadedGroupoid loaded = io::load_groupoid(gpath);
  const AlgebraElement a = io::read_element(epath, io::IdResolver(loaded));
  out << io::dump_operator(represent(parse_rep(rep_name), a, loaded.groupoid));
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite groupoid quantum toolkit"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  std::string format = "text";
  app.add_option("--seed", g.seed, "Random seed")->capture_default_str();
  app.add_option("--tol", g.tol, "Tolerance override (lattice laws, theorem residuals)")
      ->check(CLI::PositiveNumber);
  app.add_option("--jobs", g.jobs, "Worker threads for trial loops")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "structured"}))->capture_default_str();

  std::string p1, p2, p3, with, grid, rep = "left-regular", evolve_rep, mode = "auto", family;
  std::size_t samples = 3, trials = 50;

  auto* validate_cmd = app.add_subcommand("validate", "Check the groupoid axioms of a file");
  validate_cmd->add_option("groupoid", p1)->required();

  auto* info_cmd = app.add_subcommand("info", "Orbits and isotropy of a groupoid file");
  info_cmd->add_option("groupoid", p1)->required();

  auto* generate_cmd = app.add_subcommand("generate", "Write a generated groupoid (e.g. pair2, Z2+Z3, cat*pair2)");
  generate_cmd->add_option("family", family)->required();

  auto* lattice_cmd = app.add_subcommand("lattice", "Lattice laws on the canonical propositions");
  lattice_cmd->add_option("groupoid", p1)->required();
  lattice_cmd->add_option("--samples", samples, "Random self-adjoint elements to decompose")->capture_default_str();
  lattice_cmd->add_option("--rep", rep)->check(CLI::IsMember({"left-regular", "fundamental"}))->capture_default_str();

  auto* classify_cmd = app.add_subcommand("classify", "Classicality verdict");
  classify_cmd->add_option("groupoid", p1)->required();
  classify_cmd->add_option("--samples", samples)->capture_default_str();

  auto* measure_cmd = app.add_subcommand("measure", "Decoherence functional and interference table");
  measure_cmd->add_option("groupoid", p1)->required();
  measure_cmd->add_option("state", p2)->required();
  measure_cmd->add_option("sets", p3)->required();

  auto* evolve_cmd = app.add_subcommand("evolve", "Unitary evolution of a state");
  evolve_cmd->add_option("groupoid", p1)->required();
  evolve_cmd->add_option("hamiltonian", p2)->required();
  evolve_cmd->add_option("state", p3)->required();
  evolve_cmd->add_option("--with", with, "Second factor; evolve on the product");
  evolve_cmd->add_option("--grid", grid, "start:stop:points");
  evolve_cmd->add_option("--rep", evolve_rep, "Defaults to the state file's rep")
      ->check(CLI::IsMember({"left-regular", "fundamental"}));

  auto* theorem_cmd = app.add_subcommand("theorem", "Separability preservation check on A x B");
  theorem_cmd->add_option("groupoid_a", p1)->required();
  theorem_cmd->add_option("groupoid_b", p2)->required();
  theorem_cmd->add_option("--trials", trials)->capture_default_str();
  theorem_cmd->add_option("--grid", grid, "start:stop:points");
  theorem_cmd->add_option("--mode", mode)->check(CLI::IsMember({"auto", "theorem", "counterexample"}))->capture_default_str();

  auto* operator_cmd = app.add_subcommand("operator", "Dump the matrix of an algebra element");
  operator_cmd->add_option("groupoid", p1)->required();
  operator_cmd->add_option("element", p2)->required();
  operator_cmd->add_option("--rep", rep)->check(CLI::IsMember({"left-regular", "fundamental"}))->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitDomain;
  }
  g.format = format == "structured" ? Format::Structured : Format::Text;

  try {
    if (*validate_cmd) return cmd_validate(p1, g, out);
    if (*info_cmd) return cmd_info(p1, g, out);
    if (*generate_cmd) {
      out << io::write_groupoid(generate_expression(family));
      return kExitOk;
    }
    if (*lattice_cmd) return cmd_lattice(p1, samples, rep, g, out);
    if (*classify_cmd) return cmd_classify(p1, samples, g, out);
    if (*measure_cmd) return cmd_measure(p1, p2, p3, g, out);
    if (*evolve_cmd) return cmd_evolve(p1, p2, p3, with, grid, evolve_rep, g, out);
    if (*theorem_cmd) return cmd_theorem(p1, p2, trials, grid, mode, g, out);
    if (*operator_cmd) return cmd_operator(p1, p2, rep, out);
  } catch (const io::InvalidGroupoidFile& e) {
    err << "error: " << e.what() << '\n';
    for (const auto& d : e.diagnostics()) err << "  line " << d.line << ": " << d.kind << ": " << d.message << '\n';
    return kExitDomain;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << " (residual " << num(e.residual()) << ")\n";
    return kExitInternal;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  } catch (const PreconditionError& e) {
    err << "precondition: " << e.what() << '\n';
    return kExitDomain;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitDomain;
}

}  // namespace gq::cli
