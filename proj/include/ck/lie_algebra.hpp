#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ck/format.hpp"
#include "ck/parse.hpp"
#include "ck/scalar.hpp"

namespace ck {

/// Generator labels in the global order used by every bracket table and PBW basis.
inline constexpr std::array<const char*, 7> kGeneratorOrder = {"H", "P1", "P2", "K1", "K2", "J", "Xi"};

/// Linear combination of generators: generator index -> coefficient.
using LinComb = std::map<std::size_t, Scalar>;

inline void lc_add(LinComb& lc, std::size_t k, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = lc.try_emplace(k, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) lc.erase(it);
  }
}

inline LinComb lc_scaled(const LinComb& lc, const Scalar& k) {
  LinComb out;
  if (k.is_zero()) return out;
  for (const auto& [i, c] : lc) out.emplace(i, c * k);
  return out;
}

inline LinComb lc_sum(LinComb a, const LinComb& b, const Scalar& kb = Scalar(1)) {
  for (const auto& [i, c] : b) lc_add(a, i, c * kb);
  return a;
}

inline bool lc_equal(const LinComb& a, const LinComb& b) {
  if (a.size() != b.size()) return false;
  for (auto it = a.begin(), jt = b.begin(); it != a.end(); ++it, ++jt) {
    if (it->first != jt->first || !(it->second == jt->second)) return false;
  }
  return true;
}

/// Parameter values of a Cayley-Klein algebra, possibly extended by a central Xi.
struct CkParameters {
  Scalar w1;
  Scalar w2;
  bool extended = false;
  Scalar mass;
};

class LieAlgebra {
 public:
  using Key = std::pair<std::size_t, std::size_t>;

  LieAlgebra() = default;
  LieAlgebra(std::string name, std::vector<std::string> generators)
      : name_(std::move(name)), generators_(std::move(generators)) {
    std::set<std::string> seen;
    for (const auto& g : generators_) {
      if (g.empty() || !seen.insert(g).second) throw std::invalid_argument("bad or repeated generator label '" + g + "'");
    }
  }

  const std::string& name() const { return name_; }
  void set_name(std::string n) { name_ = std::move(n); }
  const std::vector<std::string>& generators() const { return generators_; }
  std::size_t dim() const { return generators_.size(); }
  const std::string& label(std::size_t i) const { return generators_.at(i); }

  std::optional<std::size_t> find(std::string_view label) const {
    for (std::size_t i = 0; i < generators_.size(); ++i) {
      if (generators_[i] == label) return i;
    }
    return std::nullopt;
  }
  std::size_t index_of(std::string_view label) const {
    auto i = find(label);
    if (!i) throw std::out_of_range("no generator '" + std::string(label) + "' in " + name_);
    return *i;
  }

  const std::map<Key, LinComb>& table() const { return table_; }

  /// [X_i, X_j]; antisymmetry comes from storing only i < j.
  LinComb bracket(std::size_t i, std::size_t j) const {
    if (i == j) return {};
    auto it = table_.find({std::min(i, j), std::max(i, j)});
    if (it == table_.end()) return {};
    return i < j ? it->second : lc_scaled(it->second, Scalar(-1));
  }

  LinComb bracket(const LinComb& a, const LinComb& b) const {
    LinComb out;
    for (const auto& [i, ci] : a) {
      for (const auto& [j, cj] : b) {
        if (i == j) continue;
        Scalar k = ci * cj;
        for (const auto& [n, cn] : bracket(i, j)) lc_add(out, n, k * cn);
      }
    }
    return out;
  }

  void set_bracket(std::size_t i, std::size_t j, LinComb value) {
    if (i >= dim() || j >= dim()) throw std::out_of_range("generator index out of range");
    if (i == j) {
      if (!value.empty()) throw std::invalid_argument("self-bracket must vanish");
      return;
    }
    for (const auto& [n, c] : value) {
      if (n >= dim()) throw std::out_of_range("bracket refers to an unknown generator");
    }
    if (i > j) {
      std::swap(i, j);
      value = lc_scaled(value, Scalar(-1));
    }
    for (auto it = value.begin(); it != value.end();) it = it->second.is_zero() ? value.erase(it) : std::next(it);
    if (value.empty()) {
      table_.erase({i, j});
    } else {
      table_[{i, j}] = std::move(value);
    }
  }
  void set_bracket(std::string_view x, std::string_view y, LinComb value) {
    set_bracket(index_of(x), index_of(y), std::move(value));
  }

  /// Symbols appearing in bracket coefficients, in display order.
  std::vector<std::string> parameters() const {
    std::set<std::string> names;
    for (const auto& [key, lc] : table_) {
      for (const auto& [n, c] : lc) {
        for (const auto& v : c.numerator().vars()) names.insert(v);
        for (const auto& [f, e] : c.denominator_factors()) {
          for (const auto& v : f.vars()) names.insert(v);
        }
      }
    }
    std::vector<std::string> out(names.begin(), names.end());
    std::sort(out.begin(), out.end(), [](const std::string& a, const std::string& b) { return symbol_less(a, b); });
    return out;
  }

  LieAlgebra substitute(std::string_view symbol, const Scalar& value) const {
    LieAlgebra out = *this;
    out.table_.clear();
    for (const auto& [key, lc] : table_) {
      LinComb v;
      for (const auto& [n, c] : lc) lc_add(v, n, c.substitute(symbol, value));
      out.set_bracket(key.first, key.second, std::move(v));
    }
    if (ck_) {
      CkParameters p = *ck_;
      p.w1 = p.w1.substitute(symbol, value);
      p.w2 = p.w2.substitute(symbol, value);
      p.mass = p.mass.substitute(symbol, value);
      out.ck_ = p;
    }
    return out;
  }

  const std::optional<CkParameters>& ck_parameters() const { return ck_; }
  void set_ck_parameters(std::optional<CkParameters> p) { ck_ = std::move(p); }

  /// Identical generator lists and bracket tables.
  bool same_structure(const LieAlgebra& o) const {
    if (generators_ != o.generators_ || table_.size() != o.table_.size()) return false;
    for (auto it = table_.begin(), jt = o.table_.begin(); it != table_.end(); ++it, ++jt) {
      if (it->first != jt->first || !lc_equal(it->second, jt->second)) return false;
    }
    return true;
  }
  friend bool operator==(const LieAlgebra& a, const LieAlgebra& b) { return a.same_structure(b); }

  std::string format(const LinComb& lc) const {
    std::vector<std::pair<Scalar, std::string>> terms;
    for (const auto& [n, c] : lc) terms.emplace_back(c, generators_[n]);
    return format_sum(terms);
  }

  /// One "[X,Y] = ..." line per nonzero stored bracket, in table order.
  std::vector<std::string> bracket_lines() const {
    std::vector<std::string> out;
    for (const auto& [key, lc] : table_) {
      out.push_back("[" + generators_[key.first] + "," + generators_[key.second] + "] = " + format(lc));
    }
    return out;
  }

  /// Parses "w1*K1 - P2" against this algebra's generator labels.
  LinComb parse_lincomb(std::string_view text) const {
    Scalar s = parse_scalar(text);
    auto eval = [&](std::optional<std::size_t> one) {
      Scalar v = s;
      for (std::size_t k = 0; k < dim(); ++k) v = v.substitute(generators_[k], Scalar(one && *one == k ? 1 : 0));
      return v;
    };
    if (!eval(std::nullopt).is_zero()) throw ParseError("constant term in linear combination \"" + std::string(text) + "\"");
    LinComb lc;
    Scalar rebuilt;
    for (std::size_t k = 0; k < dim(); ++k) {
      Scalar c = eval(k);
      for (const auto& g : generators_) {
        if (c.contains(g)) throw ParseError("nonlinear term in \"" + std::string(text) + "\"");
      }
      lc_add(lc, k, c);
      rebuilt += c * Scalar::symbol(generators_[k]);
    }
    if (!(rebuilt == s)) throw ParseError("not a linear combination of generators: \"" + std::string(text) + "\"");
    return lc;
  }

 private:
  std::string name_;
  std::vector<std::string> generators_;
  std::map<Key, LinComb> table_;
  std::optional<CkParameters> ck_;
};

namespace detail {

inline LinComb term(std::size_t k, const Scalar& c) {
  LinComb lc;
  lc_add(lc, k, c);
  return lc;
}

inline std::string param_text(const Scalar& s) { return s.to_string(); }

}  // namespace detail

enum Gen : std::size_t { kH = 0, kP1 = 1, kP2 = 2, kK1 = 3, kK2 = 4, kJ = 5, kXi = 6 };

/// The two-parameter Cayley-Klein family on (H, P1, P2, K1, K2, J).
inline LieAlgebra make_ck_algebra(const Scalar& w1, const Scalar& w2, std::string name = "") {
  if (name.empty()) name = "CK(" + detail::param_text(w1) + ", " + detail::param_text(w2) + ")";
  LieAlgebra g(std::move(name), {kGeneratorOrder.begin(), kGeneratorOrder.begin() + 6});
  using detail::term;
  g.set_bracket(kH, kP1, term(kK1, w1));
  g.set_bracket(kH, kP2, term(kK2, w1));
  g.set_bracket(kH, kK1, term(kP1, Scalar(-1)));
  g.set_bracket(kH, kK2, term(kP2, Scalar(-1)));
  g.set_bracket(kP1, kP2, term(kJ, w1 * w2));
  g.set_bracket(kP1, kK1, term(kH, w2));
  g.set_bracket(kP2, kK2, term(kH, w2));
  g.set_bracket(kP1, kJ, term(kP2, Scalar(-1)));
  g.set_bracket(kP2, kJ, term(kP1, Scalar(1)));
  g.set_bracket(kK1, kK2, term(kJ, w2));
  g.set_bracket(kK1, kJ, term(kK2, Scalar(-1)));
  g.set_bracket(kK2, kJ, term(kK1, Scalar(1)));
  g.set_ck_parameters(CkParameters{w1, w2, false, Scalar()});
  return g;
}

/// Adjoins a central generator Xi with [P_i, K_j] += delta_ij * mass * Xi.
inline LieAlgebra centrally_extend(const LieAlgebra& g, const Scalar& mass, std::string name = "") {
  std::vector<std::string> gens = g.generators();
  gens.emplace_back(kGeneratorOrder[kXi]);
  LieAlgebra out(name.empty() ? g.name() + " + Xi" : std::move(name), gens);
  for (const auto& [key, lc] : g.table()) out.set_bracket(key.first, key.second, lc);
  std::size_t xi = gens.size() - 1;
  for (auto [p, k] : {std::pair{kP1, kK1}, std::pair{kP2, kK2}}) {
    out.set_bracket(p, k, lc_sum(out.bracket(p, k), detail::term(xi, mass)));
  }
  if (g.ck_parameters()) {
    CkParameters prm = *g.ck_parameters();
    prm.extended = true;
    prm.mass = mass;
    out.set_ck_parameters(prm);
  }
  return out;
}

/// Galilei with [P_i, K_j] = delta_ij m Xi and Xi central.
inline LieAlgebra make_extended_galilei(const Scalar& mass = Scalar::symbol("m")) {
  return centrally_extend(make_ck_algebra(0, 0), mass, "extended Galilei");
}

/// Attaches CK parameters when `g` has the CK generators and table, possibly
/// centrally extended. Returns false and leaves `g` alone otherwise.
inline bool recognize_ck(LieAlgebra& g) {
  if (g.ck_parameters()) return true;
  bool extended = g.dim() == 7;
  if (g.dim() != 6 && !extended) return false;
  for (std::size_t i = 0; i < g.dim(); ++i) {
    if (g.label(i) != kGeneratorOrder[i]) return false;
  }
  auto coeff = [&](std::size_t i, std::size_t j, std::size_t n) {
    auto lc = g.bracket(i, j);
    auto it = lc.find(n);
    return it == lc.end() ? Scalar() : it->second;
  };
  Scalar w1 = coeff(kH, kP1, kK1);
  Scalar w2 = coeff(kP1, kK1, kH);
  LieAlgebra candidate = make_ck_algebra(w1, w2, g.name());
  if (extended) candidate = centrally_extend(candidate, coeff(kP1, kK1, kXi), g.name());
  if (!candidate.same_structure(g)) return false;
  g.set_ck_parameters(candidate.ck_parameters());
  return true;
}

// ---------------------------------------------------------------- checks

struct JacobiFailure {
  std::size_t i, j, k;
  LinComb residual;
};

struct StructureReport {
  std::string algebra;
  bool antisymmetric = true;
  std::size_t triples_checked = 0;
  std::vector<JacobiFailure> failures;
  bool ok() const { return antisymmetric && failures.empty(); }
};

/// Antisymmetry of the stored table and the Jacobi identity on every triple i<j<k.
inline StructureReport check_structure(const LieAlgebra& g) {
  StructureReport r;
  r.algebra = g.name();
  for (const auto& [key, lc] : g.table()) {
    if (key.first >= key.second || key.second >= g.dim()) r.antisymmetric = false;
    for (const auto& [n, c] : lc) {
      if (n >= g.dim()) r.antisymmetric = false;
    }
  }
  auto unit = [](std::size_t i) { return detail::term(i, Scalar(1)); };
  for (std::size_t i = 0; i < g.dim(); ++i) {
    for (std::size_t j = i + 1; j < g.dim(); ++j) {
      for (std::size_t k = j + 1; k < g.dim(); ++k) {
        ++r.triples_checked;
        LinComb s = g.bracket(g.bracket(i, j), unit(k));
        s = lc_sum(s, g.bracket(g.bracket(j, k), unit(i)));
        s = lc_sum(s, g.bracket(g.bracket(k, i), unit(j)));
        if (!s.empty()) r.failures.push_back({i, j, k, s});
      }
    }
  }
  return r;
}

/// Split of the generators into two index sets.
struct Decomposition {
  std::vector<std::size_t> k;
  std::vector<std::size_t> t;
};

namespace detail {

inline bool support_within(const LinComb& lc, const std::vector<std::size_t>& set) {
  for (const auto& [n, c] : lc) {
    if (std::find(set.begin(), set.end(), n) == set.end()) return false;
  }
  return true;
}

}  // namespace detail

/// True iff [a, b] lies in the span of `into` for all a in `as`, b in `bs`.
inline bool brackets_within(const LieAlgebra& g, const std::vector<std::size_t>& as, const std::vector<std::size_t>& bs,
                            const std::vector<std::size_t>& into, std::vector<std::string>* violations = nullptr) {
  bool ok = true;
  for (std::size_t a : as) {
    for (std::size_t b : bs) {
      LinComb v = g.bracket(a, b);
      if (!detail::support_within(v, into)) {
        ok = false;
        if (violations) violations->push_back("[" + g.label(a) + "," + g.label(b) + "] = " + g.format(v));
      }
    }
  }
  return ok;
}

inline bool is_subalgebra(const LieAlgebra& g, const std::vector<std::size_t>& set) {
  return brackets_within(g, set, set, set);
}

inline bool is_abelian(const LieAlgebra& g, const std::vector<std::size_t>& set) {
  return brackets_within(g, set, set, {});
}

struct Involution {
  std::string name;
  std::map<std::string, int> signs;

  int sign_of(const std::string& label) const {
    auto it = signs.find(label);
    if (it != signs.end()) return it->second;
    if (label == kGeneratorOrder[kXi]) return 1;
    throw std::invalid_argument("involution " + name + " does not act on generator " + label);
  }
};

inline Involution parity() {
  return {"P", {{"H", 1}, {"P1", -1}, {"P2", -1}, {"K1", -1}, {"K2", -1}, {"J", 1}}};
}
inline Involution time_reversal() {
  return {"T", {{"H", -1}, {"P1", 1}, {"P2", 1}, {"K1", -1}, {"K2", -1}, {"J", 1}}};
}
inline Involution parity_time() {
  return {"PT", {{"H", -1}, {"P1", -1}, {"P2", -1}, {"K1", 1}, {"K2", 1}, {"J", 1}}};
}

struct AutomorphismReport {
  std::string involution;
  bool automorphism = true;
  bool involutive = true;
  std::vector<std::string> violations;
  Decomposition eigen;  // k: +1 eigenspace, t: -1 eigenspace
};

inline AutomorphismReport apply_involution(const LieAlgebra& g, const Involution& inv) {
  AutomorphismReport r;
  r.involution = inv.name;
  std::vector<int> s(g.dim());
  for (std::size_t i = 0; i < g.dim(); ++i) {
    s[i] = inv.sign_of(g.label(i));
    if (s[i] * s[i] != 1) r.involutive = false;
    (s[i] > 0 ? r.eigen.k : r.eigen.t).push_back(i);
  }
  for (std::size_t i = 0; i < g.dim(); ++i) {
    for (std::size_t j = i + 1; j < g.dim(); ++j) {
      for (const auto& [n, c] : g.bracket(i, j)) {
        if (s[n] != s[i] * s[j]) {
          r.automorphism = false;
          r.violations.push_back("[" + g.label(i) + "," + g.label(j) + "] -> " + g.label(n));
        }
      }
    }
  }
  return r;
}

struct CartanReport {
  bool hh = true;  // [h,h] in h
  bool hp = true;  // [h,p] in p
  bool pp = true;  // [p,p] in h
  bool p_subalgebra = false;
  bool p_abelian = false;
  std::vector<std::string> violations;
  bool ok() const { return hh && hp && pp; }
};

/// Cartan inclusions for h = d.k, p = d.t.
inline CartanReport cartan_check(const LieAlgebra& g, const Decomposition& d) {
  CartanReport r;
  r.hh = brackets_within(g, d.k, d.k, d.k, &r.violations);
  r.hp = brackets_within(g, d.k, d.t, d.t, &r.violations);
  r.pp = brackets_within(g, d.t, d.t, d.k, &r.violations);
  r.p_subalgebra = is_subalgebra(g, d.t);
  r.p_abelian = is_abelian(g, d.t);
  return r;
}

inline Decomposition decomposition_of(const LieAlgebra& g, const std::vector<std::string>& k_labels) {
  Decomposition d;
  for (std::size_t i = 0; i < g.dim(); ++i) {
    bool in_k = std::find(k_labels.begin(), k_labels.end(), g.label(i)) != k_labels.end();
    (in_k ? d.k : d.t).push_back(i);
  }
  return d;
}

// ---------------------------------------------------------------- contraction

enum class ContractionKind { SpaceTime, SpeedSpace };

inline std::string to_string(ContractionKind k) { return k == ContractionKind::SpaceTime ? "space-time" : "speed-space"; }

inline ContractionKind parse_contraction_kind(std::string_view s) {
  if (s == "space-time") return ContractionKind::SpaceTime;
  if (s == "speed-space") return ContractionKind::SpeedSpace;
  throw std::invalid_argument("unknown contraction kind '" + std::string(s) + "'");
}

struct ContractionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Power of epsilon carried by each generator under the rescaling.
inline std::vector<int> contraction_weights(const LieAlgebra& g, ContractionKind kind) {
  std::vector<int> w(g.dim(), 0);
  for (std::size_t i = 0; i < g.dim(); ++i) {
    const std::string& l = g.label(i);
    bool h = l == "H", p = l == "P1" || l == "P2", k = l == "K1" || l == "K2";
    w[i] = kind == ContractionKind::SpaceTime ? (h || p) : (p || k);
  }
  return w;
}

/// Rescale, recompute the brackets and keep the epsilon^0 part.
inline LieAlgebra contract(const LieAlgebra& g, ContractionKind kind) {
  std::vector<int> w = contraction_weights(g, kind);
  LieAlgebra out(g.name() + " / " + to_string(kind), g.generators());
  for (const auto& [key, lc] : g.table()) {
    LinComb kept;
    for (const auto& [n, c] : lc) {
      int e = w[key.first] + w[key.second] - w[n];
      if (e < 0) {
        throw ContractionError("[" + g.label(key.first) + "," + g.label(key.second) + "] has a negative power of epsilon along " +
                               g.label(n));
      }
      if (e == 0) lc_add(kept, n, c);
    }
    out.set_bracket(key.first, key.second, std::move(kept));
  }
  if (g.ck_parameters()) {
    CkParameters p = *g.ck_parameters();
    (kind == ContractionKind::SpaceTime ? p.w1 : p.w2) = Scalar();
    if (p.extended) p.mass = Scalar();  // P carries epsilon under both kinds
    out.set_ck_parameters(p);
  }
  return out;
}

}  // namespace ck
