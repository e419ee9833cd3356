#pragma once

#include <algorithm>
#include <future>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ck/catalog.hpp"
#include "ck/ideal.hpp"
#include "ck/uea.hpp"

namespace ck {

inline const std::vector<std::string>& alpha_symbols() {
  static const std::vector<std::string> a = {"a1", "a2"};
  return a;
}

struct NothingToExpand : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct InconsistentSystem : std::runtime_error {
  InconsistentSystem(std::string pair, std::string requirement)
      : std::runtime_error("inconsistent requirement from " + pair + ": " + requirement + " = 0"),
        pair(std::move(pair)),
        requirement(std::move(requirement)) {}
  std::string pair;
  std::string requirement;
};

/// Everything needed to expand `initial` along one axis into `target`.
struct ExpansionProblem {
  std::string name;
  LieAlgebra initial;
  LieAlgebra target;
  int axis = 1;
  std::string symbol;  // "w1" or "w2"
  EnvelopingPtr ctx;   // enveloping algebra of `initial`
  std::vector<CentralRelation> relations;
  std::optional<int> degree_bound;
  bool expected_failure = false;
  std::vector<std::string> target_cells;  // catalog keys the symbolic target specializes to
};

inline std::string axis_symbol(int axis) {
  if (axis != 1 && axis != 2) throw std::invalid_argument("axis must be 1 or 2");
  return axis == 1 ? "w1" : "w2";
}

/// Target = initial with w_axis made symbolic; relations = Casimir eigenvalues,
/// or m*Xi = m*xi for the central extension.
inline ExpansionProblem make_problem(const LieAlgebra& initial, int axis, std::vector<std::string> target_cells = {},
                                     std::optional<int> degree_bound = std::nullopt) {
  const auto& p = initial.ck_parameters();
  if (!p) throw UnsupportedAlgebra(initial.name() + " is not a Cayley-Klein algebra");
  ExpansionProblem pr;
  pr.axis = axis;
  pr.symbol = axis_symbol(axis);
  const Scalar& wa = axis == 1 ? p->w1 : p->w2;
  if (!wa.is_zero()) {
    throw NothingToExpand(pr.symbol + " is already nonzero in " + initial.name() + "; nothing to expand");
  }
  Scalar w1 = axis == 1 ? Scalar::symbol("w1") : p->w1;
  Scalar w2 = axis == 2 ? Scalar::symbol("w2") : p->w2;
  LieAlgebra target = make_ck_algebra(w1, w2);
  if (p->extended) target = centrally_extend(target, Scalar(), target.name() + " + central Xi");
  if (target.generators() != initial.generators()) throw UnsupportedAlgebra("generator lists of initial and target differ");
  pr.initial = initial;
  pr.target = target;
  pr.name = initial.name() + " -> " + (target_cells.empty() ? target.name() : target_cells.front());
  pr.ctx = Enveloping::create(initial);
  pr.relations = p->extended ? extension_relations(pr.ctx) : casimir_relations(pr.ctx);
  pr.degree_bound = degree_bound;
  pr.target_cells = std::move(target_cells);
  return pr;
}

// ---------------------------------------------------------------- splitting and J

struct CasimirSplit {
  int index = 1;
  UeaElement target;  // C'_l written in the initial enveloping algebra
  UeaElement base;    // C_l
  UeaElement jpiece;  // J_l
  bool exact = false;
};

inline std::vector<CasimirSplit> split_casimirs(const ExpansionProblem& pr) {
  const CkParameters& ti = *pr.target.ck_parameters();
  const CkParameters& gi = *pr.initial.ck_parameters();
  std::vector<CasimirSplit> out;
  for (int l : {1, 2}) {
    CasimirSplit s;
    s.index = l;
    s.target = casimir_formula(pr.ctx, l, ti.w1, ti.w2);
    s.base = UeaElement(pr.ctx);
    s.jpiece = UeaElement(pr.ctx);
    for (const auto& [m, c] : s.target.terms()) {
      for (const auto& [f, e] : c.denominator_factors()) {
        if (f.contains(pr.symbol)) throw std::logic_error("Casimir coefficient has " + pr.symbol + " in a denominator");
      }
      Scalar den_inv = Scalar(1) / Scalar(c.denominator());
      for (const auto& [power, coeff] : c.numerator().coefficients_in(pr.symbol)) {
        if (power > 1) throw std::logic_error("Casimir is not linear in " + pr.symbol);
        UeaElement term(pr.ctx, UeaTerms{{m, Scalar(coeff) * den_inv}});
        (power == 0 ? s.base : s.jpiece) += term;
      }
    }
    UeaElement expected_base = casimir_formula(pr.ctx, l, gi.w1, gi.w2);
    s.exact = s.base == expected_base && !s.base.contains_symbol(pr.symbol) && !s.jpiece.contains_symbol(pr.symbol) &&
              s.base + s.jpiece.scaled(Scalar::symbol(pr.symbol)) == s.target;
    out.push_back(std::move(s));
  }
  return out;
}

inline UeaElement build_J(const std::vector<CasimirSplit>& splits) {
  if (splits.empty()) throw NothingToExpand("no Casimir splits");
  UeaElement j(splits.front().base.context());
  for (std::size_t l = 0; l < splits.size(); ++l) {
    if (splits[l].jpiece.is_zero()) continue;
    j += splits[l].jpiece.scaled(Scalar::symbol(alpha_symbols().at(l)));
  }
  if (j.is_zero()) throw NothingToExpand("both Casimir pieces vanish; nothing to expand");
  return j;
}

// ---------------------------------------------------------------- centralizer split

struct HypothesisReport {
  Decomposition decomposition;  // k: commutes with J, t: the rest
  bool k_closes = false;
  std::string kt;               // "holds", "holds-modulo-center" or "fails"
  bool kt_in_k = false;         // [k,t] lies in k
  std::vector<std::string> kt_violations;
  bool holds() const { return k_closes && kt != "fails"; }
};

inline std::vector<std::size_t> central_generators(const LieAlgebra& g) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < g.dim(); ++i) {
    bool central = true;
    for (std::size_t j = 0; j < g.dim() && central; ++j) central = g.bracket(i, j).empty();
    if (central) out.push_back(i);
  }
  return out;
}

inline HypothesisReport centralizer_split(const EnvelopingPtr& ctx, const UeaElement& J) {
  const LieAlgebra& g = ctx->algebra();
  HypothesisReport r;
  for (std::size_t k = 0; k < g.dim(); ++k) {
    bool commutes = commutator(J, UeaElement::generator(ctx, k)).is_zero();
    (commutes ? r.decomposition.k : r.decomposition.t).push_back(k);
  }
  const auto& K = r.decomposition.k;
  const auto& T = r.decomposition.t;
  r.k_closes = is_subalgebra(g, K);
  r.kt_in_k = brackets_within(g, K, T, K);
  std::vector<std::size_t> t_and_center = T;
  for (std::size_t c : central_generators(g)) {
    if (std::find(T.begin(), T.end(), c) == T.end()) t_and_center.push_back(c);
  }
  if (brackets_within(g, K, T, T, &r.kt_violations)) {
    r.kt = "holds";
  } else if (brackets_within(g, K, T, t_and_center)) {
    r.kt = "holds-modulo-center";
  } else {
    r.kt = "fails";
  }
  return r;
}

/// X' = X when [J, X] = 0, otherwise X' = [J, X].
inline std::vector<UeaElement> build_primed_generators(const EnvelopingPtr& ctx, const UeaElement& J) {
  std::vector<UeaElement> out;
  for (std::size_t k = 0; k < ctx->dim(); ++k) {
    UeaElement x = UeaElement::generator(ctx, k);
    UeaElement c = commutator(J, x);
    out.push_back(c.is_zero() ? x : c);
  }
  return out;
}

// ---------------------------------------------------------------- constraints

inline std::string primed_label(const LieAlgebra& g, std::size_t k) { return g.label(k) + "'"; }

inline std::string pair_label(const LieAlgebra& g, std::size_t i, std::size_t j) {
  return "[" + primed_label(g, i) + "," + primed_label(g, j) + "]";
}

inline std::string pair_class(const Decomposition& d, std::size_t i, std::size_t j) {
  auto in_k = [&](std::size_t x) { return std::find(d.k.begin(), d.k.end(), x) != d.k.end(); };
  if (in_k(i) && in_k(j)) return "k'k'";
  if (in_k(i) || in_k(j)) return "k't'";
  return "t't'";
}

/// sum_n C^n X'_n
inline UeaElement apply_constants(const EnvelopingPtr& ctx, const LinComb& lc, const std::vector<UeaElement>& primed) {
  UeaElement out(ctx);
  for (const auto& [n, c] : lc) out += primed.at(n).scaled(c);
  return out;
}

/// [X'_i, X'_j] - sum_n C'^n_ij X'_n with the target's structure constants.
inline UeaElement bracket_difference(const ExpansionProblem& pr, const std::vector<UeaElement>& primed, std::size_t i,
                                     std::size_t j) {
  return commutator(primed[i], primed[j]) - apply_constants(pr.ctx, pr.target.bracket(i, j), primed);
}

struct PairEquations {
  std::size_t i = 0, j = 0;
  std::vector<IdealPoly> equations;  // one per PBW monomial of the reduced difference
};

struct ConstraintSystem {
  std::vector<PairEquations> pairs;
  RelationIdeal ideal;
  bool consistent = false;  // same ideal whichever order the pairs are processed in
  int degree_bound = 0;
};

inline ConstraintSystem derive_constraints(const ExpansionProblem& pr, const std::vector<UeaElement>& primed,
                                           const CentralReducer& reducer) {
  ConstraintSystem sys;
  const LieAlgebra& g = pr.initial;
  std::vector<IdealPoly> all;
  for (std::size_t i = 0; i < g.dim(); ++i) {
    for (std::size_t j = i + 1; j < g.dim(); ++j) {
      UeaElement diff = bracket_difference(pr, primed, i, j);
      PairEquations pe{i, j, {}};
      if (!diff.is_zero()) {
        CentralReduction red = reducer.reduce(diff, pr.degree_bound);
        sys.degree_bound = std::max(sys.degree_bound, red.bound);
        for (const auto& [m, c] : red.remainder.terms()) {
          IdealPoly eq = IdealPoly::from_scalar(c, alpha_symbols());
          if (eq.is_zero()) continue;
          if (eq.is_unit()) throw InconsistentSystem(pair_label(g, i, j), eq.to_string());
          pe.equations.push_back(eq);
          all.push_back(eq);
        }
      }
      sys.pairs.push_back(std::move(pe));
    }
  }
  sys.ideal = groebner_basis(all, alpha_symbols());
  if (sys.ideal.is_trivial()) throw InconsistentSystem("the combined system", "1");
  std::vector<IdealPoly> reversed(all.rbegin(), all.rend());
  sys.consistent = same_ideal(sys.ideal, groebner_basis(reversed, alpha_symbols()));
  return sys;
}

/// Distinct equations up to a unit, as polynomials over Q with coprime integer content.
inline std::vector<Poly> distinct_equations(const std::vector<IdealPoly>& eqs) {
  std::vector<Poly> out;
  for (const auto& e : eqs) {
    Poly p = e.primitive_form();
    if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
  }
  return out;
}

/// A small generating set drawn from `candidates`: lowest degree in a1, a2,
/// then lowest total degree and fewest terms, skipping any already implied.
inline std::vector<Poly> generating_subset(const std::vector<Poly>& candidates, const RelationIdeal& ideal) {
  std::vector<Poly> sorted = candidates;
  auto alpha_degree = [](const Poly& p) { return IdealPoly::from_scalar(Scalar(p), alpha_symbols()).degree(); };
  std::stable_sort(sorted.begin(), sorted.end(), [&](const Poly& a, const Poly& b) {
    if (alpha_degree(a) != alpha_degree(b)) return alpha_degree(a) < alpha_degree(b);
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    if (a.size() != b.size()) return a.size() < b.size();
    return a.to_string() < b.to_string();
  });
  std::vector<Poly> chosen;
  std::vector<IdealPoly> gens;
  RelationIdeal current = groebner_basis({}, alpha_symbols());
  for (const auto& e : sorted) {
    if (!gens.empty() && same_ideal(current, ideal)) break;
    IdealPoly p = IdealPoly::from_scalar(Scalar(e), alpha_symbols());
    if (!gens.empty() && reduce_mod_ideal(p, current).is_zero()) continue;
    gens.push_back(p);
    chosen.push_back(e);
    current = groebner_basis(gens, alpha_symbols());
  }
  return chosen;
}

// ---------------------------------------------------------------- verification

struct BracketCheck {
  std::size_t i = 0, j = 0;
  std::string pair;
  std::string cls;                   // "k'k'", "k't'" or "t't'"
  bool raw_zero = false;             // difference vanishes with no reduction at all
  std::optional<bool> matches_original;         // k-involving pairs: [X'_i, X'_j] = (original bracket)'
  std::vector<Poly> equations;       // what this pair demands of a1, a2
  bool same_as_total = false;        // its equations generate the whole ideal
  std::string residual;              // nonzero residual after both reductions, if any
  bool passed = false;
};

struct ClosureAnalysis {
  bool independent = false;
  bool closes = false;
  std::optional<LieAlgebra> table;  // structure constants of the primed set
  std::vector<std::string> matching_cells;
  std::vector<std::string> unresolved;  // brackets outside the span
};

struct ExpansionReport {
  std::string name;
  std::string initial;
  std::string target;
  int axis = 1;
  std::string symbol;
  std::vector<std::string> target_cells;
  bool expected_failure = false;

  bool round_trip = false;   // contract(target) equals initial
  std::string round_trip_note;
  std::vector<CasimirSplit> splits;
  bool split_exact = false;
  UeaElement J;
  HypothesisReport hypothesis;
  std::vector<UeaElement> primed;
  std::vector<std::string> labels;

  std::vector<Poly> equations;    // distinct equations from all pairs
  std::vector<Poly> constraints;  // generators of the ideal chosen for display
  std::vector<Poly> groebner;     // reduced basis, each scaled to a primitive polynomial
  RelationIdeal ideal;
  bool consistent = false;
  std::vector<std::string> eigenvalue_symbols;  // which of c1, c2, xi enter the constraints
  int degree_bound = 0;
  std::vector<BracketCheck> brackets;
  std::vector<std::string> remarks;
  std::optional<ClosureAnalysis> closure;

  std::string verdict;  // "pass", "fail", "closes-but-not-CK", "error"
  std::string error;

  bool ok() const { return expected_failure ? verdict == "closes-but-not-CK" : verdict == "pass"; }
};

namespace detail {

inline std::string constant_free_string(const UeaElement& e) { return e.is_zero() ? "" : e.to_string(); }

}  // namespace detail

/// Reduces every pair difference modulo the central relations and then the
/// ideal; k-involving pairs must already vanish before any reduction when the
/// hypotheses hold.
inline std::vector<BracketCheck> verify_brackets(const ExpansionProblem& pr, const std::vector<UeaElement>& primed,
                                                 const CentralReducer& reducer, const RelationIdeal& ideal,
                                                 const HypothesisReport& hyp, const ConstraintSystem* sys = nullptr) {
  const LieAlgebra& g = pr.initial;
  std::vector<std::size_t> center = central_generators(g);
  std::vector<BracketCheck> out;
  std::size_t pair_index = 0;
  for (std::size_t i = 0; i < g.dim(); ++i) {
    for (std::size_t j = i + 1; j < g.dim(); ++j, ++pair_index) {
      BracketCheck bc;
      bc.i = i;
      bc.j = j;
      bc.pair = pair_label(g, i, j);
      bc.cls = pair_class(hyp.decomposition, i, j);
      UeaElement diff = bracket_difference(pr, primed, i, j);
      bc.raw_zero = diff.is_zero();
      if (bc.cls != "t't'") {
        LinComb original = g.bracket(i, j);
        if (hyp.kt == "holds-modulo-center") {
          for (std::size_t c : center) original.erase(c);
        }
        bc.matches_original = commutator(primed[i], primed[j]) == apply_constants(pr.ctx, original, primed);
      }
      UeaElement residual(pr.ctx);
      if (!diff.is_zero()) {
        CentralReduction red = reducer.reduce(diff, pr.degree_bound);
        for (const auto& [m, c] : red.remainder.terms()) {
          IdealPoly r = reduce_mod_ideal(IdealPoly::from_scalar(c, alpha_symbols()), ideal);
          if (!r.is_zero()) residual += UeaElement(pr.ctx, UeaTerms{{m, r.to_scalar()}});
        }
      }
      bc.residual = detail::constant_free_string(residual);
      bc.passed = residual.is_zero() && (bc.cls == "t't'" || !hyp.holds() || bc.raw_zero);
      if (sys) {
        const auto& eqs = sys->pairs.at(pair_index).equations;
        bc.equations = distinct_equations(eqs);
        bc.same_as_total = !eqs.empty() && same_ideal(groebner_basis(eqs, alpha_symbols()), ideal);
      }
      out.push_back(std::move(bc));
    }
  }
  return out;
}

// Solves x = sum_n c_n v_n exactly over the coefficient field.
class LinearSpan {
 public:
  LinearSpan(EnvelopingPtr ctx, const std::vector<UeaElement>& vectors) : ctx_(std::move(ctx)), size_(vectors.size()) {
    for (std::size_t n = 0; n < vectors.size(); ++n) {
      Row row{vectors[n].terms(), {}};
      lc_add(row.combo, n, Scalar(1));
      reduce_row(row);
      if (row.terms.empty()) continue;
      Scalar inv = Scalar(1) / row.terms.begin()->second;
      for (auto& [m, c] : row.terms) c *= inv;
      row.combo = lc_scaled(row.combo, inv);
      PbwMonomial lead = row.terms.begin()->first;
      rows_.emplace(std::move(lead), std::move(row));
    }
  }

  bool independent() const { return rows_.size() == size_; }

  std::optional<LinComb> solve(const UeaElement& x) const {
    Row row{x.terms(), {}};
    reduce_row(row, true);
    if (!row.terms.empty()) return std::nullopt;
    return lc_scaled(row.combo, Scalar(-1));
  }

 private:
  struct Row {
    UeaTerms terms;
    LinComb combo;
  };

  // Subtracts pivots while some term is a pivot's leading monomial (all terms when `full`).
  void reduce_row(Row& row, bool full = false) const {
    UeaTerms kept;
    while (!row.terms.empty()) {
      auto lead = row.terms.begin();
      auto it = rows_.find(lead->first);
      if (it == rows_.end()) {
        if (!full) break;
        kept.insert(*lead);
        row.terms.erase(lead);
        continue;
      }
      Scalar c = lead->second;
      detail::add_scaled(row.terms, it->second.terms, -c);
      row.combo = lc_sum(row.combo, it->second.combo, -c);
    }
    for (auto& t : kept) row.terms.insert(t);
  }

  EnvelopingPtr ctx_;
  std::size_t size_;
  std::map<PbwMonomial, Row, GradedLexGreater> rows_;
};

/// Whether the primed set spans a Lie algebra on its own, and whether that
/// algebra coincides with one of the nine grid cells.
inline ClosureAnalysis closure_analysis(const ExpansionProblem& pr, const std::vector<UeaElement>& primed) {
  ClosureAnalysis a;
  LinearSpan span(pr.ctx, primed);
  a.independent = span.independent();
  LieAlgebra table(pr.initial.name() + " primed", pr.initial.generators());
  a.closes = a.independent;
  for (std::size_t i = 0; i < primed.size(); ++i) {
    for (std::size_t j = i + 1; j < primed.size(); ++j) {
      auto lc = span.solve(commutator(primed[i], primed[j]));
      if (!lc) {
        a.closes = false;
        a.unresolved.push_back(pair_label(pr.initial, i, j));
        continue;
      }
      table.set_bracket(i, j, *lc);
    }
  }
  if (!a.closes) return a;
  for (const auto& cell : catalog()) {
    LieAlgebra c = build_algebra(cell);
    if (c.generators() == table.generators() && c.same_structure(table)) a.matching_cells.push_back(cell.key);
  }
  a.table = std::move(table);
  return a;
}

namespace detail {

inline std::vector<std::string> eigenvalue_symbols_of(const std::vector<Poly>& polys) {
  std::vector<std::string> out;
  for (const char* s : {"c1", "c2", "xi"}) {
    for (const auto& p : polys) {
      if (p.contains(s)) {
        out.emplace_back(s);
        break;
      }
    }
  }
  return out;
}

inline std::string equation_string(const Poly& p) { return p.to_string() + " = 0"; }

}  // namespace detail

/// Full pipeline for one problem; failures become report entries.
inline ExpansionReport run_expansion(const ExpansionProblem& pr) {
  ExpansionReport r;
  r.name = pr.name;
  r.initial = pr.initial.name();
  r.target = pr.target.name();
  r.axis = pr.axis;
  r.symbol = pr.symbol;
  r.target_cells = pr.target_cells;
  r.expected_failure = pr.expected_failure;
  for (const auto& l : pr.initial.generators()) r.labels.push_back(l);
  try {
    LieAlgebra contracted = contract(pr.target, pr.axis == 1 ? ContractionKind::SpaceTime : ContractionKind::SpeedSpace);
    r.round_trip = contracted == pr.initial;
    if (!r.round_trip && pr.initial.ck_parameters()->extended) {
      r.round_trip_note = "contraction returns the extension with m = 0";
      r.round_trip = contracted == pr.initial.substitute("m", Scalar());
    }

    r.splits = split_casimirs(pr);
    r.split_exact = std::all_of(r.splits.begin(), r.splits.end(), [](const CasimirSplit& s) { return s.exact; });
    r.J = build_J(r.splits);
    r.hypothesis = centralizer_split(pr.ctx, r.J);
    r.primed = build_primed_generators(pr.ctx, r.J);

    CentralReducer reducer(pr.ctx, pr.relations);
    ConstraintSystem sys;
    try {
      sys = derive_constraints(pr, r.primed, reducer);
    } catch (const InconsistentSystem& e) {
      r.error = e.what();
      r.closure = closure_analysis(pr, r.primed);
      bool not_ck = r.closure->closes && r.closure->matching_cells.empty();
      r.verdict = not_ck ? "closes-but-not-CK" : "fail";
      return r;
    }
    r.ideal = sys.ideal;
    r.consistent = sys.consistent;
    r.degree_bound = sys.degree_bound;
    std::vector<IdealPoly> all;
    for (const auto& pe : sys.pairs) all.insert(all.end(), pe.equations.begin(), pe.equations.end());
    r.equations = distinct_equations(all);
    for (const auto& g : sys.ideal.groebner) r.groebner.push_back(g.primitive_form());
    std::vector<Poly> candidates = r.equations;
    candidates.insert(candidates.end(), r.groebner.begin(), r.groebner.end());
    r.constraints = generating_subset(candidates, sys.ideal);
    r.eigenvalue_symbols = detail::eigenvalue_symbols_of(r.groebner);

    r.brackets = verify_brackets(pr, r.primed, reducer, sys.ideal, r.hypothesis, &sys);
    bool all_pass = std::all_of(r.brackets.begin(), r.brackets.end(), [](const BracketCheck& b) { return b.passed; });

    for (const auto& key : pr.target_cells) {
      const CatalogEntry& cell = catalog_lookup(key);
      Scalar v(pr.axis == 1 ? cell.sign1 : cell.sign2);
      std::string eqs;
      for (const auto& g : r.constraints) {
        Poly s = primitive_part(g.substitute(pr.symbol, Poly(v.constant_value())));
        eqs += (eqs.empty() ? "" : ", ") + detail::equation_string(s);
      }
      r.remarks.push_back(cell.key + " (" + pr.symbol + " = " + v.to_string() + "): " + eqs);
    }
    r.remarks.emplace_back("real values of a1, a2 exist only for compatible signs of " + pr.symbol +
                           " and the eigenvalues; not enforced");

    r.verdict = all_pass && r.split_exact && r.round_trip ? "pass" : "fail";
  } catch (const std::exception& e) {
    r.verdict = "error";
    r.error = e.what();
  }
  return r;
}

/// Re-checks given primed generators and ideal against a (possibly modified) problem.
inline std::vector<BracketCheck> verify_expansion(const ExpansionProblem& pr, const ExpansionReport& r) {
  CentralReducer reducer(pr.ctx, pr.relations);
  return verify_brackets(pr, r.primed, reducer, r.ideal, r.hypothesis);
}

/// Substitutes values into the ideal generators; all zero means the values solve the system.
inline std::vector<Scalar> evaluate_constraints(const RelationIdeal& ideal, const std::map<std::string, Scalar>& values) {
  std::vector<Scalar> out;
  for (const auto& g : ideal.generators) {
    Scalar s = g.to_scalar();
    for (const auto& [name, v] : values) s = s.substitute(name, v);
    out.push_back(s);
  }
  return out;
}

// ---------------------------------------------------------------- atlas

struct AtlasArrow {
  std::string from;
  int axis;
  std::string to;  // catalog key of the specialization
  bool expected_failure = false;
};

/// The twelve expansions and the non-extended Galilei attempt along w1.
inline const std::vector<AtlasArrow>& atlas_arrows() {
  static const std::vector<AtlasArrow> arrows = {
      {"euclid3", 1, "so4"},      {"euclid3", 1, "so31-hyp"}, {"poincare", 1, "so22"},    {"poincare", 1, "so31-ds"},
      {"ext-galilei", 1, "nh-plus"}, {"ext-galilei", 1, "nh-minus"},
      {"nh-plus", 2, "so4"},      {"nh-plus", 2, "so22"},     {"nh-minus", 2, "so31-hyp"}, {"nh-minus", 2, "so31-ds"},
      {"galilei", 2, "euclid3"},  {"galilei", 2, "poincare"},
      {"galilei", 1, "nh-plus", true},
  };
  return arrows;
}

inline ExpansionProblem atlas_problem(const AtlasArrow& a, std::optional<int> degree_bound = std::nullopt) {
  const CatalogEntry& to = catalog_lookup(a.to);
  const CatalogEntry& from = catalog_lookup(a.from);
  std::vector<std::string> cells = {to.key};
  if (a.expected_failure) cells = {"nh-plus", "nh-minus"};
  ExpansionProblem pr = make_problem(build_algebra(from), a.axis, cells, degree_bound);
  pr.expected_failure = a.expected_failure;
  pr.name = from.key + " -> " + (a.expected_failure ? std::string("nh-plus/nh-minus") : to.key);
  return pr;
}

inline std::vector<ExpansionReport> run_atlas(std::optional<int> degree_bound = std::nullopt, bool parallel = false) {
  const auto& arrows = atlas_arrows();
  std::vector<ExpansionReport> out(arrows.size());
  auto one = [&](std::size_t i) {
    try {
      return run_expansion(atlas_problem(arrows[i], degree_bound));
    } catch (const std::exception& e) {
      ExpansionReport r;
      r.name = arrows[i].from + " -> " + arrows[i].to;
      r.expected_failure = arrows[i].expected_failure;
      r.verdict = "error";
      r.error = e.what();
      return r;
    }
  };
  if (parallel) {
    std::vector<std::future<ExpansionReport>> jobs;
    for (std::size_t i = 0; i < arrows.size(); ++i) jobs.push_back(std::async(std::launch::async, one, i));
    for (std::size_t i = 0; i < arrows.size(); ++i) out[i] = jobs[i].get();
  } else {
    for (std::size_t i = 0; i < arrows.size(); ++i) out[i] = one(i);
  }
  return out;
}

}  // namespace ck
