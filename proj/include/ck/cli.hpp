#pragma once

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ck/catalog.hpp"
#include "ck/definition.hpp"
#include "ck/expand.hpp"
#include "ck/parse.hpp"
#include "ck/report.hpp"

namespace ck::cli {

enum ExitCode { kPass = 0, kVerificationFailure = 1, kEngineError = 2 };

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// "0", "-1/2", "−1" or "sym" (the parameter's own symbol).
inline Scalar parse_parameter_value(const std::string& name, std::string text) {
  const std::string minus = "−";
  for (std::size_t p; (p = text.find(minus)) != std::string::npos;) text.replace(p, minus.size(), "-");
  if (text == "sym") return Scalar::symbol(name);
  try {
    return Scalar(Rational::parse(text));
  } catch (const std::exception&) {
    throw UsageError("bad value for " + name + ": '" + text + "' (expected an integer, a rational or 'sym')");
  }
}

/// Accepts "w1=0", "w2=sym"; parameters not mentioned are symbolic.
inline std::pair<Scalar, Scalar> parse_ck_assignments(const std::vector<std::string>& items) {
  std::optional<Scalar> w1, w2;
  for (const auto& item : items) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw UsageError("expected name=value in --ck, got '" + item + "'");
    std::string name = item.substr(0, eq);
    auto& slot = name == "w1" ? w1 : name == "w2" ? w2 : throw UsageError("unknown CK parameter '" + name + "'");
    if (slot) throw UsageError("parameter " + name + " given twice");
    slot = parse_parameter_value(name, item.substr(eq + 1));
  }
  return {w1.value_or(Scalar::symbol("w1")), w2.value_or(Scalar::symbol("w2"))};
}

/// Maps "a1=1/2" style items to scalars, for substituting into constraints.
inline std::map<std::string, Scalar> parse_values(const std::vector<std::string>& items) {
  std::map<std::string, Scalar> out;
  for (const auto& item : items) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw UsageError("expected name=value, got '" + item + "'");
    try {
      out[item.substr(0, eq)] = parse_scalar(item.substr(eq + 1));
    } catch (const std::exception& e) {
      throw UsageError("bad value in '" + item + "': " + e.what());
    }
  }
  return out;
}

struct Source {
  std::string name;
  std::vector<std::string> ck;
  std::string file;
  bool extended = false;

  bool given() const { return !name.empty() || !ck.empty() || !file.empty(); }

  LieAlgebra load() const {
    int n = !name.empty() + !ck.empty() + !file.empty();
    if (n != 1) throw UsageError("give exactly one of a built-in name, --ck or --file");
    LieAlgebra g;
    if (!name.empty()) {
      g = build_algebra(catalog_lookup(name));
    } else if (!ck.empty()) {
      auto [w1, w2] = parse_ck_assignments(ck);
      g = make_ck_algebra(w1, w2);
    } else {
      g = load_algebra(file);
    }
    if (extended) {
      if (!g.ck_parameters() || g.ck_parameters()->extended) throw UsageError("--extended needs a plain CK algebra");
      g = centrally_extend(g, Scalar::symbol("m"), g.name() + " + central Xi");
    }
    return g;
  }
};

struct Options {
  std::string verb;
  std::vector<std::string> args;
  Source source;
  std::string json;  // path, or "-" for stdout
  std::optional<int> degree_bound;
  bool all_ck = false;
  std::string kind;
  int axis = 0;
  std::string to;
  std::vector<std::string> values;
  std::string save;
  bool parallel = false;
};

struct Outcome {
  Json payload;
  std::vector<std::pair<std::string, std::string>> verdicts;  // name, verdict
  std::string text;
  int exit_code = kPass;
};

inline std::optional<int> env_degree_bound() {
  const char* v = std::getenv("CK_DEGREE_BOUND");
  if (!v || !*v) return std::nullopt;
  try {
    std::size_t used = 0;
    int b = std::stoi(v, &used);
    if (used != std::string(v).size() || b < 0) throw std::invalid_argument(v);
    return b;
  } catch (const std::exception&) {
    throw UsageError(std::string("CK_DEGREE_BOUND must be a nonnegative integer, got '") + v + "'");
  }
}

namespace detail {

inline Json cell_json(const CatalogEntry& e) {
  return {{"key", e.key}, {"algebra", e.algebra}, {"signs", e.sign_pair()}, {"space", e.space}};
}

inline std::optional<CatalogEntry> identify(const LieAlgebra& g) {
  for (const auto& e : catalog()) {
    LieAlgebra c = build_algebra(e);
    if (c.generators() == g.generators() && c.same_structure(g)) return e;
  }
  return std::nullopt;
}

inline std::string table_text(const LieAlgebra& g) {
  std::string out;
  for (const auto& l : g.bracket_lines()) out += "  " + l + "\n";
  return out;
}

}  // namespace detail

inline Outcome run_algebra(const Options& o) {
  LieAlgebra g = o.source.load();
  Outcome out;
  out.payload["algebra"] = algebra_to_json(g);
  std::ostringstream t;
  t << g.name() << "\n  generators:";
  for (const auto& l : g.generators()) t << " " << l;
  t << "\n";
  if (auto cell = detail::identify(g)) {
    out.payload["cell"] = detail::cell_json(*cell);
    t << "  cell " << cell->sign_pair() << ": " << cell->algebra << ", " << cell->space << "\n";
  }
  t << detail::table_text(g);
  if (!o.save.empty()) {
    save_algebra(g, o.save);
    t << "  saved to " << o.save << "\n";
  }
  out.text = t.str();
  return out;
}

inline Outcome run_verify(const Options& o) {
  std::vector<LieAlgebra> algebras;
  if (o.all_ck) {
    if (o.source.given()) throw UsageError("--all-ck takes no algebra");
    for (const auto& e : catalog()) algebras.push_back(build_algebra(e));
  } else {
    algebras.push_back(o.source.load());
  }
  Outcome out;
  Json list = Json::array();
  std::ostringstream t;
  bool all_ok = true;
  for (const auto& g : algebras) {
    Json j = structure_to_json(g, check_structure(g));
    bool ok = j["ok"].get<bool>();
    t << (ok ? "PASS " : "FAIL ") << g.name() << ": antisymmetry " << (j["antisymmetric"].get<bool>() ? "ok" : "broken")
      << ", " << j["triples_checked"].get<std::size_t>() << " Jacobi triples, " << j["jacobi_failures"].size()
      << " failures";
    if (g.ck_parameters() && !g.ck_parameters()->extended) {
      auto ctx = Enveloping::create(g);
      Json cas = Json::array();
      for (int l : {1, 2}) {
        auto r = is_central(casimir(ctx, l));
        cas.push_back({{"casimir", "C" + std::to_string(l)}, {"central", r.central}});
        ok = ok && r.central;
        t << ", C" << l << (r.central ? " central" : " NOT central");
      }
      j["casimirs"] = cas;
    }
    if (g.ck_parameters()) {
      Json inv = Json::object();
      for (const auto& s : {parity(), time_reversal(), parity_time()}) inv[s.name] = apply_involution(g, s).automorphism;
      j["automorphisms"] = inv;
    }
    j["ok"] = ok;
    t << "\n";
    all_ok = all_ok && ok;
    out.verdicts.emplace_back(g.name(), ok ? "pass" : "fail");
    list.push_back(j);
  }
  out.payload["algebras"] = list;
  out.text = t.str();
  out.exit_code = all_ok ? kPass : kVerificationFailure;
  return out;
}

inline Outcome run_contract(const Options& o) {
  LieAlgebra g = o.source.load();
  ContractionKind kind;
  try {
    kind = parse_contraction_kind(o.kind);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  LieAlgebra c = contract(g, kind);
  Outcome out;
  out.payload["from"] = g.name();
  out.payload["kind"] = to_string(kind);
  out.payload["algebra"] = algebra_to_json(c);
  std::ostringstream t;
  t << to_string(kind) << " contraction of " << g.name() << "\n";
  if (auto cell = detail::identify(c)) {
    out.payload["cell"] = detail::cell_json(*cell);
    t << "  result is " << cell->algebra << " " << cell->sign_pair() << "\n";
  }
  t << detail::table_text(c);
  out.text = t.str();
  return out;
}

inline ExpansionProblem expand_problem(const Options& o) {
  if (o.axis != 1 && o.axis != 2) throw UsageError("--axis must be 1 or 2");
  LieAlgebra g = o.source.load();
  std::vector<std::string> cells;
  bool expected_failure = false;
  std::string from_key = o.source.name.empty() ? "" : catalog_lookup(o.source.name).key;
  for (const auto& a : atlas_arrows()) {
    if (a.from == from_key && a.axis == o.axis && a.expected_failure) expected_failure = true;
  }
  if (!o.to.empty()) {
    const CatalogEntry& cell = catalog_lookup(o.to);
    const auto& p = g.ck_parameters();
    int wa = o.axis == 1 ? cell.sign1 : cell.sign2;
    if (!p || wa == 0) throw UsageError(cell.key + " is not reached by expanding along w" + std::to_string(o.axis));
    const Scalar& wb = o.axis == 1 ? p->w2 : p->w1;
    int cell_wb = o.axis == 1 ? cell.sign2 : cell.sign1;
    if (wb.is_constant() && !(wb == Scalar(cell_wb))) {
      throw UsageError(cell.key + " does not share the other parameter with " + g.name());
    }
    cells.push_back(cell.key);
  } else if (expected_failure) {
    cells = {"nh-plus", "nh-minus"};
  } else if (!from_key.empty()) {
    for (const auto& a : atlas_arrows()) {
      if (a.from == from_key && a.axis == o.axis) cells.push_back(a.to);
    }
  }
  ExpansionProblem pr = make_problem(g, o.axis, cells, o.degree_bound);
  pr.expected_failure = expected_failure;
  return pr;
}

inline Outcome run_expand(const Options& o) {
  ExpansionProblem pr = expand_problem(o);
  ExpansionReport r = run_expansion(pr);
  Outcome out;
  out.payload["expansion"] = expansion_to_json(r);
  out.text = expansion_to_text(r);
  if (!o.values.empty() && r.verdict == "pass") {
    auto values = parse_values(o.values);
    auto residuals = evaluate_constraints(r.ideal, values);
    Json res = Json::array();
    bool all_zero = true;
    std::string line = "  substituted values: ";
    for (const auto& s : residuals) {
      res.push_back(s.to_string());
      all_zero = all_zero && s.is_zero();
      line += s.to_string() + "; ";
    }
    out.payload["substitution"] = {{"residuals", res}, {"satisfied", all_zero}};
    out.text += line + (all_zero ? "satisfied" : "not satisfied") + "\n";
  }
  out.verdicts.emplace_back(r.name, verdict_tag(r));
  if (r.verdict == "error") {
    out.exit_code = kEngineError;
  } else if (!r.ok()) {
    out.exit_code = kVerificationFailure;
  }
  return out;
}

inline Outcome run_atlas_verb(const Options& o) {
  auto reports = run_atlas(o.degree_bound, o.parallel);
  Outcome out;
  Json list = Json::array();
  std::ostringstream t;
  int pass = 0, expected = 0, other = 0;
  bool engine_error = false;
  for (const auto& r : reports) {
    list.push_back(expansion_to_json(r));
    std::string tag = verdict_tag(r);
    out.verdicts.emplace_back(r.name, tag);
    t << tag << " " << r.name;
    if (r.verdict == "pass") {
      t << ": ";
      for (std::size_t i = 0; i < r.constraints.size(); ++i) t << (i ? ", " : "") << r.constraints[i].to_string() << " = 0";
    } else if (!r.error.empty()) {
      t << ": " << r.error;
    }
    t << "\n";
    if (tag == "PASS") ++pass;
    else if (tag == "EXPECTED-FAIL") ++expected;
    else ++other;
    engine_error = engine_error || r.verdict == "error";
  }
  t << pass << " PASS, " << expected << " EXPECTED-FAIL, " << other << " other\n";
  out.payload["arrows"] = list;
  out.payload["summary"] = {{"pass", pass}, {"expected_fail", expected}, {"other", other}};
  out.text = t.str();
  out.exit_code = engine_error ? kEngineError : other ? kVerificationFailure : kPass;
  return out;
}

inline Outcome dispatch(const Options& o) {
  if (o.verb == "algebra") return run_algebra(o);
  if (o.verb == "verify") return run_verify(o);
  if (o.verb == "contract") return run_contract(o);
  if (o.verb == "expand") return run_expand(o);
  return run_atlas_verb(o);
}

/// Command echo, verdicts, exit code and payload; no timing so repeated runs are byte-identical.
inline Json run_report_json(const Options& o, const Outcome& out) {
  Json j;
  j["command"] = o.args;
  j["verb"] = o.verb;
  Json v = Json::array();
  for (const auto& [name, verdict] : out.verdicts) v.push_back({{"name", name}, {"verdict", verdict}});
  j["verdicts"] = v;
  j["exit_code"] = out.exit_code;
  j["payload"] = out.payload;
  return j;
}

inline void add_source(CLI::App* sub, Source& src, const char* name_flag) {
  sub->add_option(name_flag, src.name, "built-in algebra (so4, euclid3, poincare, galilei, ext-galilei, ...)");
  sub->add_option("--ck", src.ck, "CK parameters, e.g. w1=0 w2=-1 (values may be 'sym')")->expected(1, 2);
  sub->add_option("--file", src.file, "algebra definition JSON");
  sub->add_flag("--extended", src.extended, "add the central generator Xi with symbolic mass m");
}

/// Runs one invocation; returns the exit code.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  o.args = args;
  CLI::App app{"Cayley-Klein kinematical algebras: contractions and expansions"};
  app.name("ck");
  app.require_subcommand(1);
  std::optional<int> bound;

  auto* algebra = app.add_subcommand("algebra", "show a bracket table");
  add_source(algebra, o.source, "--name");
  algebra->add_flag("--show", "print the bracket table (default)");
  algebra->add_option("--save", o.save, "write the definition JSON");

  auto* verify = app.add_subcommand("verify", "antisymmetry, Jacobi identity and Casimir centrality");
  add_source(verify, o.source, "--name");
  verify->add_flag("--all-ck", o.all_ck, "the nine grid algebras");

  auto* contract_cmd = app.add_subcommand("contract", "contract an algebra");
  add_source(contract_cmd, o.source, "--from");
  contract_cmd->add_option("--kind", o.kind, "space-time or speed-space")->required();

  auto* expand = app.add_subcommand("expand", "expand along one parameter");
  add_source(expand, o.source, "--from");
  expand->add_option("--axis", o.axis, "1 expands w1, 2 expands w2")->required();
  expand->add_option("--to", o.to, "catalog cell to specialize the constraints to");
  expand->add_option("--values", o.values, "substitute e.g. a1=1/2 c1=1 w1=-1 into the constraints");

  auto* atlas = app.add_subcommand("atlas", "all expansion arrows");
  atlas->add_flag("--parallel", o.parallel, "run arrows concurrently");

  for (auto* sub : {algebra, verify, contract_cmd, expand, atlas}) {
    sub->add_option("--json", o.json, "write the JSON report to a path, or '-' for stdout");
    sub->add_option("--degree-bound", bound, "degree bound for reducing modulo the central relations");
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kEngineError;
  }
  o.verb = app.get_subcommands().front()->get_name();

  auto started = std::chrono::steady_clock::now();
  Outcome outcome;
  try {
    o.degree_bound = bound ? bound : env_degree_bound();
    if (o.degree_bound && *o.degree_bound < 0) throw UsageError("--degree-bound must be nonnegative");
    outcome = dispatch(o);
  } catch (const std::exception& e) {
    err << "ck " << o.verb << ": " << e.what() << "\n";
    outcome = Outcome{};
    outcome.payload["error"] = e.what();
    outcome.verdicts.emplace_back(o.verb, "error");
    outcome.exit_code = kEngineError;
    outcome.text.clear();
  }
  double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();

  if (!o.json.empty()) {
    std::string doc = run_report_json(o, outcome).dump(2) + "\n";
    if (o.json == "-") {
      out << doc;
      return outcome.exit_code;
    }
    std::ofstream f(o.json);
    if (!f) {
      err << "ck: cannot write " << o.json << "\n";
      return kEngineError;
    }
    f << doc;
  }
  out << outcome.text;
  std::ostringstream timing;
  timing.setf(std::ios::fixed);
  timing.precision(3);
  timing << seconds;
  if (!outcome.text.empty()) out << "(" << timing.str() << " s)\n";
  return outcome.exit_code;
}

}  // namespace ck::cli
