#pragma once

#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ck/definition.hpp"
#include "ck/expand.hpp"

namespace ck {

using Json = nlohmann::ordered_json;

namespace detail {

inline std::vector<std::string> poly_strings(const std::vector<Poly>& ps, bool as_equation) {
  std::vector<std::string> out;
  for (const auto& p : ps) out.push_back(as_equation ? p.to_string() + " = 0" : p.to_string());
  return out;
}

}  // namespace detail

inline Json structure_to_json(const LieAlgebra& g, const StructureReport& r) {
  Json j;
  j["algebra"] = g.name();
  j["antisymmetric"] = r.antisymmetric;
  j["triples_checked"] = r.triples_checked;
  Json f = Json::array();
  for (const auto& x : r.failures) {
    f.push_back({{"triple", {g.label(x.i), g.label(x.j), g.label(x.k)}}, {"residual", g.format(x.residual)}});
  }
  j["jacobi_failures"] = f;
  j["ok"] = r.ok();
  return j;
}

inline Json expansion_to_json(const ExpansionReport& r) {
  Json j;
  j["name"] = r.name;
  j["initial"] = r.initial;
  j["target"] = r.target;
  j["axis"] = r.axis;
  j["expanded_parameter"] = r.symbol;
  j["target_cells"] = r.target_cells;
  j["expected_failure"] = r.expected_failure;
  j["verdict"] = r.verdict;
  if (!r.error.empty()) j["error"] = r.error;
  if (r.verdict == "error") return j;

  j["contraction_round_trip"] = r.round_trip;
  if (!r.round_trip_note.empty()) j["contraction_round_trip_note"] = r.round_trip_note;

  Json splits = Json::array();
  for (const auto& s : r.splits) {
    splits.push_back({{"casimir", "C" + std::to_string(s.index)},
                      {"target", s.target.to_string()},
                      {"base", s.base.to_string()},
                      {"J", s.jpiece.to_string()},
                      {"exact", s.exact}});
  }
  j["splits"] = splits;
  j["J"] = r.J.to_string();

  std::vector<std::string> k, t;
  for (auto i : r.hypothesis.decomposition.k) k.push_back(r.labels.at(i));
  for (auto i : r.hypothesis.decomposition.t) t.push_back(r.labels.at(i));
  j["decomposition"] = {{"k", k}, {"t", t}};
  j["hypothesis"] = {{"k_subalgebra", r.hypothesis.k_closes},
                     {"kt_in_t", r.hypothesis.kt},
                     {"kt_in_k", r.hypothesis.kt_in_k},
                     {"holds", r.hypothesis.holds()}};

  Json primed = Json::object();
  for (std::size_t n = 0; n < r.primed.size(); ++n) primed[r.labels.at(n) + "'"] = r.primed[n].to_string();
  j["primed_generators"] = primed;

  if (r.closure) {
    Json c;
    c["independent"] = r.closure->independent;
    c["closes"] = r.closure->closes;
    c["matching_cells"] = r.closure->matching_cells;
    if (!r.closure->unresolved.empty()) c["unresolved"] = r.closure->unresolved;
    if (r.closure->table) c["brackets"] = algebra_to_json(*r.closure->table)["brackets"];
    j["closure"] = c;
    return j;
  }

  j["constraints"] = detail::poly_strings(r.constraints, true);
  j["groebner_basis"] = detail::poly_strings(r.groebner, false);
  j["equations"] = detail::poly_strings(r.equations, false);
  j["eigenvalues_used"] = r.eigenvalue_symbols;
  j["consistent"] = r.consistent;
  j["degree_bound"] = r.degree_bound;

  Json brackets = Json::array();
  for (const auto& b : r.brackets) {
    Json e;
    e["pair"] = b.pair;
    e["class"] = b.cls;
    e["raw_zero"] = b.raw_zero;
    if (b.matches_original) e["matches_original"] = *b.matches_original;
    e["equations"] = detail::poly_strings(b.equations, false);
    e["generates_ideal"] = b.same_as_total;
    if (!b.residual.empty()) e["residual"] = b.residual;
    e["passed"] = b.passed;
    brackets.push_back(e);
  }
  j["brackets"] = brackets;
  j["remarks"] = r.remarks;
  return j;
}

inline std::string verdict_tag(const ExpansionReport& r) {
  if (r.expected_failure) return r.ok() ? "EXPECTED-FAIL" : "UNEXPECTED";
  if (r.verdict == "error") return "ERROR";
  return r.ok() ? "PASS" : "FAIL";
}

inline std::string expansion_to_text(const ExpansionReport& r) {
  std::ostringstream o;
  o << r.name << "  [" << verdict_tag(r) << "]\n";
  o << "  expanding " << r.symbol << " of " << r.initial << " into " << r.target << "\n";
  if (r.verdict == "error") {
    o << "  error: " << r.error << "\n";
    return o.str();
  }
  for (const auto& s : r.splits) {
    o << "  C" << s.index << "' = C" << s.index << " + " << r.symbol << " * J" << s.index
      << (s.exact ? "" : "  (split not exact)") << "\n";
    o << "    J" << s.index << " = " << (s.jpiece.is_zero() ? "0" : s.jpiece.to_string()) << "\n";
  }
  o << "  J = " << r.J.to_string() << "\n";
  std::string k, t;
  for (auto i : r.hypothesis.decomposition.k) k += (k.empty() ? "" : ", ") + r.labels.at(i);
  for (auto i : r.hypothesis.decomposition.t) t += (t.empty() ? "" : ", ") + r.labels.at(i);
  o << "  k = {" << k << "}, t = {" << t << "}\n";
  o << "  [k,k] in k: " << (r.hypothesis.k_closes ? "yes" : "no") << "; [k,t] in t: " << r.hypothesis.kt;
  if (r.hypothesis.kt_in_k) o << "; [k,t] in k";
  o << "\n  primed generators:\n";
  for (std::size_t n = 0; n < r.primed.size(); ++n) o << "    " << r.labels.at(n) << "' = " << r.primed[n].to_string() << "\n";
  if (r.closure) {
    o << "  " << r.error << "\n";
    o << "  primed set closes: " << (r.closure->closes ? "yes" : "no")
      << "; matching cells: " << (r.closure->matching_cells.empty() ? "none" : "") ;
    for (const auto& c : r.closure->matching_cells) o << c << " ";
    o << "\n  verdict: " << r.verdict << "\n";
    return o.str();
  }
  o << "  constraints:\n";
  for (const auto& g : r.constraints) o << "    " << g.to_string() << " = 0\n";
  o << "  consistent: " << (r.consistent ? "yes" : "no") << "; degree bound: " << r.degree_bound << "\n";
  o << "  brackets:\n";
  for (const auto& b : r.brackets) {
    o << "    " << (b.passed ? "ok  " : "FAIL") << " " << b.pair << " (" << b.cls << ")";
    if (b.raw_zero) o << " exact";
    else if (!b.equations.empty()) o << " needs " << b.equations.size() << " equation(s)";
    if (!b.residual.empty()) o << " residual " << b.residual;
    o << "\n";
  }
  for (const auto& m : r.remarks) o << "  remark: " << m << "\n";
  return o.str();
}

}  // namespace ck
