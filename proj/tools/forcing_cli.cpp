// forcing_cli: batch driver over the forcing library.
//
// Exit codes: 0 success, 2 input error, 3 precondition violation,
// 4 oracle contract violation, 1 anything unexpected.

#include <cstdint>
#include <cstdio>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "forcing/axioms.hpp"
#include "forcing/forcing.hpp"
#include "forcing/io.hpp"

using namespace forcing;
using io::json;

namespace {

struct Report {
  std::vector<std::string> lines;
  json results = json::object();

  void line(std::string s) { lines.push_back(std::move(s)); }
};

std::string yes_no(bool b) { return b ? "yes" : "no"; }
std::string pass_fail(bool b) { return b ? "PASS" : "FAIL"; }

std::uint64_t fnv1a(std::uint64_t h, const std::string& s) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  // separator so that ("ab","c") and ("a","bc") differ
  h ^= 0xff;
  h *= 0x100000001b3ULL;
  return h;
}

std::string hex64(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string shell_quote(const std::string& s) {
  if (!s.empty() && s.find_first_of(" \t\n'\"\\$`*?[]{}()<>|;&!#~") == std::string::npos) return s;
  std::string out = "'";
  for (char c : s) out += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return out + "'";
}

std::string join(const std::vector<std::string>& xs, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? sep : "") + xs[i];
  return out;
}

// ---- laws ---------------------------------------------------------------------------

void law_lines(Report& r, const LawReport& lr, const std::string& prefix, json& out) {
  for (const auto& l : lr.laws) {
    std::string s = prefix + pass_fail(l.passed()) + " " + l.name + " (" + std::to_string(l.checked) + " cases)";
    if (!l.passed()) s += ": " + std::to_string(l.failures) + " failures, first at " + l.counterexample;
    r.line(s);
    json j = {{"law", l.name}, {"passed", l.passed()}, {"checked", l.checked}};
    if (!l.passed()) j["counterexample"] = l.counterexample;
    out.push_back(j);
  }
}

// Structural facts about ideals, filters and ultrafilters, checked over
// every subset of the carrier.
std::vector<std::pair<std::string, bool>> subset_invariants(const FinBoolAlg& b) {
  const auto xs = b.elements();
  bool dual_ok = true, prime_ok = true, principal_ok = true;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << xs.size()); ++mask) {
    std::vector<BAElement> members;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (mask & (std::uint64_t{1} << i)) members.push_back(xs[i]);
    }
    const SubsetPredicate s(b, members);
    const SubsetPredicate d = dual(s);
    const bool ideal = is_ideal(s);
    if (ideal != is_filter(d) || is_filter(s) != is_ideal(d) || !(dual(d) == s)) dual_ok = false;
    if (is_prime_ideal(s) != is_ultrafilter(d)) prime_ok = false;
    if (ideal && !(downward_closure(b, sup(b, s.members())) == s)) principal_ok = false;
  }
  const auto us = ultrafilters(b);
  bool atoms_ok = us.size() == b.atom_count();
  for (const auto& a : b.atoms()) {
    if (std::find(us.begin(), us.end(), upward_closure(b, a)) == us.end()) atoms_ok = false;
  }
  return {{"dual exchanges ideals and filters", dual_ok},
          {"prime ideals are duals of ultrafilters", prime_ok},
          {"every ideal is principal", principal_ok},
          {"ultrafilters are the principal filters of atoms", atoms_ok}};
}

SubsetPredicate read_ideal(const FinBoolAlg& base, const std::string& path) {
  const json j = io::read_json(path);
  if (j.is_object() && j.contains("ideal")) return io::ideal_from_json(base, j.at("ideal"));
  return io::ideal_from_json(base, j);
}

void run_laws(Report& r, std::size_t atoms, const std::string& quotient_file) {
  const FinBoolAlg b = letter_algebra(atoms);
  auto show = [](const BAElement& x) { return describe(x); };
  r.line("algebra: " + std::to_string(atoms) + " atoms (" + join(b.atom_labels(), ",") + "), " +
         std::to_string(b.size()) + " elements");
  r.results["atoms"] = b.atom_labels();
  r.results["size"] = b.size();

  bool all = true;
  json laws = json::array();
  const LawReport lr = check_boolean_laws(b, show);
  law_lines(r, lr, "", laws);
  all = all && lr.all_passed();
  r.results["laws"] = laws;

  json inv = json::array();
  for (const auto& [name, ok] : subset_invariants(b)) {
    r.line(pass_fail(ok) + " " + name);
    inv.push_back({{"check", name}, {"passed", ok}});
    all = all && ok;
  }
  r.results["invariants"] = inv;

  if (!quotient_file.empty()) {
    const SubsetPredicate ideal = read_ideal(b, quotient_file);
    const Quotient q = quotient(b, ideal);
    std::vector<std::string> ideal_text;
    for (const auto& x : ideal.members()) ideal_text.push_back(describe(x));
    r.line("quotient by {" + join(ideal_text, ",") + "}: " + std::to_string(q.classes.size()) + " elements, atoms " +
           join(q.algebra.atom_labels(), ","));
    json qj = {{"ideal", ideal_text}, {"size", q.classes.size()}, {"atoms", q.algebra.atom_labels()}};

    json native = json::array(), rebuilt = json::array();
    const LawReport nl = check_boolean_laws(QuotientStructure(q), show);
    law_lines(r, nl, "quotient classes: ", native);
    const LawReport rl = check_boolean_laws(q.algebra, show);
    law_lines(r, rl, "quotient algebra: ", rebuilt);
    const bool hom = is_homomorphism(q.projection);
    const bool ker = kernel(q.projection) == ideal;
    r.line(pass_fail(hom) + " projection is a homomorphism");
    r.line(pass_fail(ker) + " kernel of the projection is the ideal");
    qj["laws_on_classes"] = native;
    qj["laws_on_algebra"] = rebuilt;
    qj["projection_homomorphism"] = hom;
    qj["kernel_is_ideal"] = ker;
    r.results["quotient"] = qj;
    all = all && nl.all_passed() && rl.all_passed() && hom && ker;
  }
  r.line("all checks passed: " + yes_no(all));
  r.results["all_passed"] = all;
}

// ---- complete -----------------------------------------------------------------------

void run_complete(Report& r, const std::string& poset_file) {
  const FinPoset p = io::poset_from_json(io::read_json(poset_file));
  if (p.size() > RegularOpenAlgebra::max_points) {
    throw input_error("poset: completion supports at most " + std::to_string(RegularOpenAlgebra::max_points) +
                      " points");
  }
  const Completion c = ro_completion(p);
  r.line("points: " + std::to_string(p.size()));
  r.line("completion size: " + std::to_string(c.algebra.size()));
  r.line("atoms: " + join(c.algebra.atom_labels(), " "));
  r.results["points"] = p.size();
  r.results["completion_size"] = c.algebra.size();
  r.results["atoms"] = c.algebra.atom_labels();
  r.line("embedding:");
  json emb = json::array();
  for (std::size_t i = 0; i < p.size(); ++i) {
    r.line("  " + p.label(i) + " -> " + describe(c.embedding[i]));
    emb.push_back({{"point", p.label(i)}, {"image", io::element_to_json(c.embedding[i])}});
  }
  r.results["embedding"] = emb;
  const CompletionAudit a = audit_completion(c);
  const std::vector<std::pair<std::string, bool>> checks = {
      {"atom representation", a.atom_representation_bijective},
      {"operations", a.operations_agree},
      {"injective", a.injective},
      {"order-preserving", a.order_preserving},
      {"order-reflecting", a.order_reflecting},
      {"incompatibility-preserving", a.incompatibility_preserved},
      {"dense image", a.dense_image}};
  json cj = json::array();
  for (const auto& [name, ok] : checks) {
    r.line(pass_fail(ok) + " " + name);
    cj.push_back({{"check", name}, {"passed", ok}});
  }
  r.results["checks"] = cj;
  r.results["all_passed"] = a.all();
}

// ---- generic ------------------------------------------------------------------------

std::vector<DenseOracle<BAElement>> all_dense_oracles(const AlgebraPoset& poset, const FinBoolAlg& b) {
  if (b.atom_count() > 4) throw input_error("dense: \"all-dense\" supports at most 4 atoms");
  const auto xs = poset.elements();
  std::vector<DenseOracle<BAElement>> out;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << xs.size()); ++mask) {
    std::vector<BAElement> d;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (mask & (std::uint64_t{1} << i)) d.push_back(xs[i]);
    }
    if (!is_dense(d, poset)) continue;
    std::vector<std::string> text;
    for (const auto& x : d) text.push_back(describe(x));
    out.push_back(set_oracle(poset, d, "dense{" + join(text, ",") + "}"));
  }
  return out;
}

std::vector<DenseOracle<BAElement>> dense_from_json(const AlgebraPoset& poset, const FinBoolAlg& b, const json& j) {
  if (!j.is_array()) throw input_error("dense: expected a JSON array");
  std::vector<DenseOracle<BAElement>> out;
  for (const auto& item : j) {
    if (item.is_string() && item == "all-dp") {
      for (const auto& p : b.elements()) out.push_back(dp_oracle(b, p));
    } else if (item.is_string() && item == "all-dense") {
      auto all = all_dense_oracles(poset, b);
      out.insert(out.end(), all.begin(), all.end());
    } else if (item.is_object() && item.contains("dp")) {
      out.push_back(dp_oracle(b, io::element_from_json(b, item.at("dp"))));
    } else if (item.is_object() && item.contains("set")) {
      if (!item.at("set").is_array()) throw input_error("dense: \"set\" must list element literals");
      std::vector<BAElement> d;
      std::vector<std::string> text;
      for (const auto& e : item.at("set")) {
        d.push_back(io::element_from_json(b, e));
        text.push_back(describe(d.back()));
      }
      const std::string name = item.contains("name") && item.at("name").is_string()
                                   ? item.at("name").get<std::string>()
                                   : "set{" + join(text, ",") + "}";
      out.push_back(set_oracle(poset, d, name));
    } else {
      throw input_error("dense: entries are \"all-dp\", \"all-dense\", {\"dp\": elem} or {\"set\": [elem, ...]}");
    }
  }
  return out;
}

void run_generic(Report& r, const std::string& algebra_file, const std::string& dense, const std::string& start) {
  const FinBoolAlg b = io::algebra_from_json(io::read_json(algebra_file));
  if (b.is_degenerate()) throw input_error("algebra: the degenerate algebra has no conditions");
  const AlgebraPoset poset(b);
  const json dj = !dense.empty() && dense.front() == '[' ? io::parse_json(dense, "--dense") : io::read_json(dense);
  const auto oracles = dense_from_json(poset, b, dj);
  const BAElement p0 = start.empty() ? b.one() : io::element_from_text(b, start);
  if (p0.is_zero()) throw precondition_error("start condition is 0", "0");

  const auto g = build_generic(poset, p0, oracles);
  r.line("start: " + describe(p0));
  r.line("oracles: " + std::to_string(oracles.size()));
  r.line("trace:");
  json tj = json::array();
  for (const auto& s : g.trace()) {
    r.line("  " + std::to_string(s.oracle_index) + " " + s.oracle_name + ": " + describe(s.input) + " -> " +
           describe(s.output));
    tj.push_back({{"oracle", s.oracle_name}, {"input", io::element_to_json(s.input)},
                  {"output", io::element_to_json(s.output)}});
  }
  std::vector<std::string> chain;
  json cj = json::array();
  for (const auto& x : g.chain()) {
    chain.push_back(describe(x));
    cj.push_back(io::element_to_json(x));
  }
  r.line("chain: " + join(chain, " >= "));

  const SubsetPredicate members = filter_members(g);
  std::vector<std::string> mt;
  json mj = json::array();
  for (const auto& x : members.members()) {
    mt.push_back(describe(x));
    mj.push_back(io::element_to_json(x));
  }
  r.line("filter: " + join(mt, " "));
  const bool filter = is_filter(members);
  const bool ultra = is_ultrafilter(members);
  r.line(pass_fail(filter) + " filter");
  r.line("ultrafilter: " + yes_no(ultra));
  json meets = json::array();
  bool all_met = true;
  for (const auto& o : oracles) {
    const bool met = std::any_of(members.members().begin(), members.members().end(),
                                 [&](const BAElement& x) { return o.member(x); });
    all_met = all_met && met;
    r.line(pass_fail(met) + " meets " + o.name);
    meets.push_back({{"oracle", o.name}, {"met", met}});
  }
  r.results["start"] = io::element_to_json(p0);
  r.results["trace"] = tj;
  r.results["chain"] = cj;
  r.results["filter"] = mj;
  r.results["is_filter"] = filter;
  r.results["is_ultrafilter"] = ultra;
  r.results["meets"] = meets;
  r.results["all_passed"] = filter && all_met;
}

void run_cohen(Report& r, const std::string& config_file) {
  const CohenDemoConfig cfg = io::cohen_config_from_json(io::read_json(config_file));
  const auto result = run_cohen_demo(cfg);
  r.line("kappa: " + std::to_string(cfg.kappa) + ", columns: " + std::to_string(cfg.columns));
  r.line("chain length: " + std::to_string(result.filter.chain().size()));
  r.line("trace:");
  json tj = json::array();
  for (const auto& s : result.filter.trace()) {
    r.line("  " + std::to_string(s.oracle_index) + " " + s.oracle_name + ": " + s.input.describe() + " -> " +
           s.output.describe());
    tj.push_back({{"oracle", s.oracle_name}, {"input", s.input.describe()}, {"output", s.output.describe()}});
  }
  r.line("matrix:");
  json rows = json::array();
  for (std::size_t x = 0; x < result.matrix.size(); ++x) {
    std::string row;
    json rj = json::array();
    for (int v : result.matrix[x]) {
      row += v < 0 ? '.' : static_cast<char>('0' + v);
      rj.push_back(v < 0 ? json(nullptr) : json(v));
    }
    r.line("  row " + std::to_string(x) + ": " + row);
    rows.push_back(rj);
  }
  r.line("rows pairwise distinct: " + yes_no(result.rows_pairwise_distinct));
  json aj = json::array();
  for (const auto& a : result.avoid) {
    std::string s = "row " + std::to_string(a.row) + " vs " + a.real + ": ";
    s += a.differs ? "differs at column " + std::to_string(*a.witness) : "no difference on decided cells";
    r.line(s);
    json j = {{"row", a.row}, {"real", a.real}, {"differs", a.differs}};
    if (a.witness) j["column"] = *a.witness;
    aj.push_back(j);
  }
  r.results["kappa"] = cfg.kappa;
  r.results["columns"] = cfg.columns;
  r.results["trace"] = tj;
  r.results["matrix"] = rows;
  r.results["rows_pairwise_distinct"] = result.rows_pairwise_distinct;
  r.results["avoid"] = aj;
}

// ---- eval / bval / force ------------------------------------------------------------

void run_eval(Report& r, const std::string& model_file, const std::string& text) {
  const io::ModelFile m = io::model_from_json(io::read_json(model_file));
  const Formula f = parse(text);
  const bool v = models(m.model, f, m.constants);
  r.line(v ? "true" : "false");
  r.results["formula"] = print(f);
  r.results["model"] = to_literal(m.model.as_set());
  r.results["value"] = v;
}

NameContext<BAElement> load_context(const FinBoolAlg& b, const std::string& names_file) {
  return NameContext<BAElement>::from_table(io::names_from_json(b, io::read_json(names_file)));
}

void run_bval(Report& r, const std::string& algebra_file, const std::string& names_file, const std::string& text) {
  const FinBoolAlg b = io::algebra_from_json(io::read_json(algebra_file));
  const auto ctx = load_context(b, names_file);
  const Formula f = parse(text);
  const BAElement v = bval(f, b, ctx);
  r.line(describe(v));
  r.results["formula"] = print(f);
  r.results["value"] = describe(v);
  r.results["element"] = io::element_to_json(v);
}

void run_force(Report& r, const std::string& algebra_file, const std::string& names_file, const std::string& cond,
               const std::string& text) {
  const FinBoolAlg b = io::algebra_from_json(io::read_json(algebra_file));
  const auto ctx = load_context(b, names_file);
  const BAElement p = cond == "1" ? b.one() : cond == "0" ? b.zero() : io::element_from_text(b, cond);
  const Formula f = parse(text);
  const bool v = forces(p, f, b, ctx);
  r.line(v ? "true" : "false");
  r.results["formula"] = print(f);
  r.results["condition"] = describe(p);
  r.results["value"] = v;
}

// ---- output -------------------------------------------------------------------------

struct Invocation {
  std::string command;
  std::string digest;
  bool json_out = false;
};

int emit(const Invocation& inv, const Report& r) {
  if (inv.json_out) {
    json doc = {{"command", inv.command}, {"inputs_digest", inv.digest}, {"exit_code", 0}, {"results", r.results}};
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << "command: " << inv.command << "\n";
    std::cout << "inputs digest: " << inv.digest << "\n";
    for (const auto& l : r.lines) std::cout << l << "\n";
  }
  return 0;
}

int fail(const Invocation& inv, int code, const std::string& kind, const std::string& message, json extra) {
  if (inv.json_out) {
    json err = {{"kind", kind}, {"message", message}};
    for (auto& [k, v] : extra.items()) err[k] = v;
    json doc = {{"command", inv.command}, {"inputs_digest", inv.digest}, {"exit_code", code}, {"error", err}};
    std::cout << doc.dump(2) << "\n";
  }
  std::cerr << "error: " << message << "\n";
  return code;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite forcing toolkit: boolean algebras, completions, generic filters and forcing values"};
  app.require_subcommand(1);
  app.fallthrough();
  bool json_out = false;
  app.add_flag("--json", json_out, "emit one JSON document instead of plain text");

  std::size_t atoms = 0;
  std::string quotient_file, poset_file, algebra_file, dense, start, config_file, model_file, names_file, cond, text;

  auto* laws = app.add_subcommand("laws", "check the boolean algebra laws on the N-atom algebra");
  laws->add_option("--atoms", atoms, "number of atoms")->required()->check(CLI::Range(1, 4));
  laws->add_option("--quotient", quotient_file, "ideal file; also checks the quotient");

  auto* complete = app.add_subcommand("complete", "regular-open completion of a finite separative poset");
  complete->add_option("--poset", poset_file, "poset file")->required();

  auto* generic = app.add_subcommand("generic", "build a filter meeting a list of dense sets");
  generic->add_option("--algebra", algebra_file, "algebra file")->required();
  generic->add_option("--dense", dense, "JSON list of dense sets, or a file holding one")->required();
  generic->add_option("--start", start, "starting condition as an element literal (default 1)");

  auto* cohen = app.add_subcommand("cohen-demo", "add pairwise distinct reals with the Cohen poset");
  cohen->add_option("--config", config_file, "demo config file")->required();

  auto* eval = app.add_subcommand("eval", "truth of a formula in a finite transitive model");
  eval->add_option("--model", model_file, "model file")->required();
  eval->add_option("formula", text, "formula")->required();

  auto* bval_cmd = app.add_subcommand("bval", "boolean truth value of a formula over named sets");
  bval_cmd->add_option("--algebra", algebra_file, "algebra file")->required();
  bval_cmd->add_option("--names", names_file, "names file")->required();
  bval_cmd->add_option("formula", text, "formula")->required();

  auto* force = app.add_subcommand("force", "does a condition force a formula");
  force->add_option("--algebra", algebra_file, "algebra file")->required();
  force->add_option("--names", names_file, "names file")->required();
  force->add_option("--cond", cond, "condition: 1, 0 or an element literal such as [\"a\"]")->required();
  force->add_option("formula", text, "formula")->required();

  Invocation inv;
  std::vector<std::string> args;
  std::string echo = "forcing_cli";
  for (int i = 1; i < argc; ++i) {
    args.emplace_back(argv[i]);
    echo += " " + shell_quote(args.back());
  }
  inv.command = echo;

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    inv.json_out = json_out;
    inv.digest = hex64(fnv1a(0xcbf29ce484222325ULL, inv.command));
    return fail(inv, 2, "usage", std::string(e.what()) + " (run with --help for usage)", json::object());
  }
  inv.json_out = json_out;

  // digest over the arguments and the bytes of every input file
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const auto& a : args) h = fnv1a(h, a);
  for (const auto* path : {&quotient_file, &poset_file, &algebra_file, &config_file, &model_file, &names_file}) {
    if (path->empty()) continue;
    try {
      h = fnv1a(h, io::read_text(*path));
    } catch (const input_error&) {
      h = fnv1a(h, "<unreadable>");
    }
  }
  if (!dense.empty() && dense.front() != '[') {
    try {
      h = fnv1a(h, io::read_text(dense));
    } catch (const input_error&) {
      h = fnv1a(h, "<unreadable>");
    }
  }
  inv.digest = hex64(h);

  Report r;
  try {
    if (*laws) run_laws(r, atoms, quotient_file);
    else if (*complete) run_complete(r, poset_file);
    else if (*generic) run_generic(r, algebra_file, dense, start);
    else if (*cohen) run_cohen(r, config_file);
    else if (*eval) run_eval(r, model_file, text);
    else if (*bval_cmd) run_bval(r, algebra_file, names_file, text);
    else if (*force) run_force(r, algebra_file, names_file, cond, text);
  } catch (const parse_error& e) {
    return fail(inv, 2, "input", e.what(), {{"position", e.position()}});
  } catch (const input_error& e) {
    return fail(inv, 2, "input", e.what(), json::object());
  } catch (const precondition_error& e) {
    json extra = json::object();
    if (!e.witness().empty()) extra["witness"] = e.witness();
    std::string msg = e.what();
    if (!e.witness().empty() && msg.find(e.witness()) == std::string::npos) msg += " (witness " + e.witness() + ")";
    return fail(inv, 3, "precondition", msg, extra);
  } catch (const oracle_error& e) {
    return fail(inv, 4, "oracle", e.what(), {{"oracle", e.oracle_name()}, {"index", e.oracle_index()}});
  } catch (const std::exception& e) {
    return fail(inv, 1, "internal", e.what(), json::object());
  }
  return emit(inv, r);
}
