#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ck/format.hpp"
#include "ck/lie_algebra.hpp"
#include "ck/parse.hpp"

namespace ck {

/// Exponent vector over the generators in the algebra's order; the zero vector is the unit.
using PbwMonomial = std::vector<int>;
using UeaTerms = std::map<PbwMonomial, Scalar, GradedLexGreater>;

namespace detail {

inline void add_term(UeaTerms& t, const PbwMonomial& m, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = t.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) t.erase(it);
  }
}

inline void add_scaled(UeaTerms& into, const UeaTerms& from, const Scalar& k) {
  if (k.is_zero()) return;
  for (const auto& [m, c] : from) add_term(into, m, c * k);
}

}  // namespace detail

/// Enveloping algebra of a Lie algebra: owns the algebra and the memo table
/// for "normal monomial times generator".
class Enveloping {
 public:
  explicit Enveloping(LieAlgebra g, bool memoize = true) : g_(std::move(g)), memoize_(memoize) {}

  static std::shared_ptr<const Enveloping> create(LieAlgebra g, bool memoize = true) {
    return std::make_shared<const Enveloping>(std::move(g), memoize);
  }

  const LieAlgebra& algebra() const { return g_; }
  std::size_t dim() const { return g_.dim(); }
  PbwMonomial unit() const { return PbwMonomial(g_.dim(), 0); }

  /// Normal-ordered expansion of m * X_k.
  UeaTerms times_generator(const PbwMonomial& m, std::size_t k) const {
    std::size_t last = m.size();
    for (std::size_t j = m.size(); j-- > 0;) {
      if (m[j] > 0) {
        last = j;
        break;
      }
    }
    if (last == m.size() || last <= k) {
      PbwMonomial n = m;
      ++n[k];
      return UeaTerms{{n, Scalar(1)}};
    }
    if (memoize_) {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = cache_.find({m, k});
      if (it != cache_.end()) return it->second;
    }
    // m = m' X_j with j > k:  m' X_j X_k = (m' X_k) X_j + m' [X_j, X_k]
    PbwMonomial head = m;
    --head[last];
    UeaTerms out;
    for (const auto& [n, c] : times_generator(head, k)) detail::add_scaled(out, times_generator(n, last), c);
    for (const auto& [z, cz] : g_.bracket(last, k)) detail::add_scaled(out, times_generator(head, z), cz);
    if (memoize_) {
      std::lock_guard<std::mutex> lock(mu_);
      cache_.emplace(std::make_pair(m, k), out);
    }
    return out;
  }

  /// Normal-ordered expansion of m * n for two normal monomials.
  UeaTerms times_monomial(const PbwMonomial& m, const PbwMonomial& n) const {
    UeaTerms cur{{m, Scalar(1)}};
    for (std::size_t g = 0; g < n.size(); ++g) {
      for (int e = 0; e < n[g]; ++e) {
        UeaTerms next;
        for (const auto& [p, c] : cur) detail::add_scaled(next, times_generator(p, g), c);
        cur = std::move(next);
      }
    }
    return cur;
  }

  std::size_t cache_size() const {
    std::lock_guard<std::mutex> lock(mu_);
    return cache_.size();
  }

 private:
  LieAlgebra g_;
  bool memoize_;
  mutable std::mutex mu_;
  mutable std::map<std::pair<PbwMonomial, std::size_t>, UeaTerms> cache_;
};

using EnvelopingPtr = std::shared_ptr<const Enveloping>;

struct MixedAlgebraError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Finite Scalar-weighted sum of PBW monomials.
class UeaElement {
 public:
  UeaElement() = default;
  explicit UeaElement(EnvelopingPtr ctx) : ctx_(std::move(ctx)) {}
  UeaElement(EnvelopingPtr ctx, UeaTerms terms) : ctx_(std::move(ctx)), terms_(std::move(terms)) {
    for (auto it = terms_.begin(); it != terms_.end();) it = it->second.is_zero() ? terms_.erase(it) : std::next(it);
  }

  static UeaElement scalar(const EnvelopingPtr& ctx, const Scalar& c) {
    UeaElement e(ctx);
    detail::add_term(e.terms_, ctx->unit(), c);
    return e;
  }
  static UeaElement generator(const EnvelopingPtr& ctx, std::size_t k, const Scalar& c = Scalar(1)) {
    PbwMonomial m = ctx->unit();
    m.at(k) = 1;
    UeaElement e(ctx);
    detail::add_term(e.terms_, m, c);
    return e;
  }
  static UeaElement generator(const EnvelopingPtr& ctx, std::string_view label) {
    return generator(ctx, ctx->algebra().index_of(label));
  }
  static UeaElement from_lincomb(const EnvelopingPtr& ctx, const LinComb& lc) {
    UeaElement e(ctx);
    for (const auto& [k, c] : lc) e += generator(ctx, k, c);
    return e;
  }

  const EnvelopingPtr& context() const { return ctx_; }
  const LieAlgebra& algebra() const { return ctx_->algebra(); }
  const UeaTerms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int degree() const { return terms_.empty() ? -1 : total_degree(terms_.begin()->first); }

  Scalar coefficient(const PbwMonomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Scalar() : it->second;
  }

  /// Degree-one part as a linear combination, if the element is purely linear.
  std::optional<LinComb> as_lincomb() const {
    LinComb lc;
    for (const auto& [m, c] : terms_) {
      if (total_degree(m) != 1) return std::nullopt;
      lc_add(lc, static_cast<std::size_t>(std::find(m.begin(), m.end(), 1) - m.begin()), c);
    }
    return lc;
  }

  UeaElement operator-() const { return scaled(Scalar(-1)); }

  UeaElement& operator+=(const UeaElement& o) {
    adopt(o);
    for (const auto& [m, c] : o.terms_) detail::add_term(terms_, m, c);
    return *this;
  }
  UeaElement& operator-=(const UeaElement& o) {
    adopt(o);
    for (const auto& [m, c] : o.terms_) detail::add_term(terms_, m, -c);
    return *this;
  }
  friend UeaElement operator+(UeaElement a, const UeaElement& b) { return a += b; }
  friend UeaElement operator-(UeaElement a, const UeaElement& b) { return a -= b; }

  friend UeaElement operator*(const UeaElement& a, const UeaElement& b) {
    UeaElement out = a;
    out.adopt(b);
    out.terms_.clear();
    for (const auto& [mb, cb] : b.terms_) {
      for (const auto& [ma, ca] : a.terms_) detail::add_scaled(out.terms_, out.ctx_->times_monomial(ma, mb), ca * cb);
    }
    return out;
  }
  UeaElement& operator*=(const UeaElement& o) { return *this = *this * o; }

  UeaElement scaled(const Scalar& k) const {
    UeaElement out(ctx_);
    if (k.is_zero()) return out;
    for (const auto& [m, c] : terms_) out.terms_.emplace(m, c * k);
    return out;
  }
  friend UeaElement operator*(const Scalar& k, const UeaElement& a) { return a.scaled(k); }

  UeaElement pow(int n) const {
    if (n < 0) throw std::invalid_argument("negative power of an enveloping-algebra element");
    UeaElement r = scalar(ctx_, Scalar(1));
    for (int i = 0; i < n; ++i) r *= *this;
    return r;
  }

  UeaElement substitute(std::string_view symbol, const Scalar& value) const {
    UeaElement out(ctx_);
    for (const auto& [m, c] : terms_) detail::add_term(out.terms_, m, c.substitute(symbol, value));
    return out;
  }

  /// Applies f to every coefficient.
  UeaElement map_coefficients(const std::function<Scalar(const Scalar&)>& f) const {
    UeaElement out(ctx_);
    for (const auto& [m, c] : terms_) detail::add_term(out.terms_, m, f(c));
    return out;
  }

  bool contains_symbol(std::string_view symbol) const {
    return std::any_of(terms_.begin(), terms_.end(), [&](const auto& t) { return t.second.contains(symbol); });
  }

  friend bool operator==(const UeaElement& a, const UeaElement& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (auto it = a.terms_.begin(), jt = b.terms_.begin(); it != a.terms_.end(); ++it, ++jt) {
      if (it->first != jt->first || !(it->second == jt->second)) return false;
    }
    return true;
  }

  std::string monomial_string(const PbwMonomial& m) const {
    std::string s;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (!s.empty()) s += "*";
      s += algebra().label(i);
      if (m[i] > 1) s += "^" + std::to_string(m[i]);
    }
    return s;
  }

  /// "2*a1*P1*K1 + 2*a1*P2*K2 - 2*a1*m*Xi"
  std::string to_string() const {
    std::vector<std::pair<Scalar, std::string>> terms;
    for (const auto& [m, c] : terms_) terms.emplace_back(c, monomial_string(m));
    return format_sum(terms);
  }

 private:
  void adopt(const UeaElement& o) {
    if (!ctx_) ctx_ = o.ctx_;
    if (o.ctx_ && ctx_ != o.ctx_) throw MixedAlgebraError("elements of different enveloping algebras");
  }

  EnvelopingPtr ctx_;
  UeaTerms terms_;
};

inline UeaElement commutator(const UeaElement& a, const UeaElement& b) { return a * b - b * a; }

/// Normal form of coeff * X_{word[0]} * X_{word[1]} * ...
inline UeaElement pbw_normalize(const EnvelopingPtr& ctx, const std::vector<std::size_t>& word, const Scalar& coeff = Scalar(1)) {
  UeaTerms cur{{ctx->unit(), coeff}};
  if (coeff.is_zero()) cur.clear();
  for (std::size_t g : word) {
    if (g >= ctx->dim()) throw std::out_of_range("generator index out of range in word");
    UeaTerms next;
    for (const auto& [m, c] : cur) detail::add_scaled(next, ctx->times_generator(m, g), c);
    cur = std::move(next);
  }
  return UeaElement(ctx, std::move(cur));
}

// ---------------------------------------------------------------- text format

struct UeaTraits {
  EnvelopingPtr ctx;
  UeaElement from_rational(const Rational& r) const { return UeaElement::scalar(ctx, Scalar(r)); }
  static std::optional<Scalar> as_scalar(const UeaElement& e) {
    if (e.is_zero()) return Scalar();
    if (e.terms().size() == 1 && total_degree(e.terms().begin()->first) == 0) return e.terms().begin()->second;
    return std::nullopt;
  }
  UeaElement divide(const UeaElement& a, const UeaElement& b) const {
    auto s = as_scalar(b);
    if (!s) throw ParseError("division by a non-scalar element");
    return a.scaled(Scalar(1) / *s);
  }
  UeaElement power(const UeaElement& a, int n) const {
    if (n < 0) {
      auto s = as_scalar(a);
      if (!s) throw ParseError("negative power of a non-scalar element");
      return UeaElement::scalar(ctx, s->pow(n));
    }
    return a.pow(n);
  }
};

/// Parses the textual element format; generator labels are non-commuting,
/// every other identifier is a coefficient symbol.
inline UeaElement parse_uea(const EnvelopingPtr& ctx, std::string_view text) {
  auto resolve = [&](const std::string& name) {
    if (auto k = ctx->algebra().find(name)) return UeaElement::generator(ctx, *k);
    return UeaElement::scalar(ctx, Scalar::symbol(name));
  };
  return parse_expression<UeaElement>(text, resolve, UeaTraits{ctx});
}

// ---------------------------------------------------------------- Casimirs and the center

struct UnsupportedAlgebra : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// C1 = w2 H^2 + P1^2 + P2^2 + w1 (K1^2 + K2^2) + w1 w2 J^2,  C2 = w2 H J - P1 K2 + P2 K1,
/// written in the enveloping algebra of ctx with the given w values.
inline UeaElement casimir_formula(const EnvelopingPtr& ctx, int index, const Scalar& w1, const Scalar& w2) {
  auto X = [&](std::size_t k) { return UeaElement::generator(ctx, k); };
  const LieAlgebra& g = ctx->algebra();
  for (std::size_t i = 0; i < 6; ++i) {
    if (g.dim() <= i || g.label(i) != kGeneratorOrder[i]) {
      throw UnsupportedAlgebra(g.name() + " does not start with the generators H, P1, P2, K1, K2, J");
    }
  }
  for (auto [a, b] : {std::pair{kH, kJ}, std::pair{kP1, kK2}, std::pair{kP2, kK1}}) {
    if (!commutator(X(a), X(b)).is_zero()) {
      throw std::logic_error("Casimir factors " + g.label(a) + ", " + g.label(b) + " do not commute in " + g.name());
    }
  }
  if (index == 1) {
    return w2 * X(kH).pow(2) + X(kP1).pow(2) + X(kP2).pow(2) + w1 * (X(kK1).pow(2) + X(kK2).pow(2)) +
           (w1 * w2) * X(kJ).pow(2);
  }
  if (index == 2) return w2 * (X(kH) * X(kJ)) - X(kP1) * X(kK2) + X(kP2) * X(kK1);
  throw std::invalid_argument("Casimir index must be 1 or 2");
}

/// The Casimir of a Cayley-Klein algebra with its own w values.
inline UeaElement casimir(const EnvelopingPtr& ctx, int index) {
  const auto& p = ctx->algebra().ck_parameters();
  if (!p) throw UnsupportedAlgebra(ctx->algebra().name() + " is not a Cayley-Klein algebra");
  if (p->extended) throw UnsupportedAlgebra("no Casimir formula for the centrally extended algebra " + ctx->algebra().name());
  return casimir_formula(ctx, index, p->w1, p->w2);
}

struct CentralityResult {
  bool central = true;
  std::optional<std::size_t> generator;  // first generator with a nonzero commutator
  UeaElement residual;
  explicit operator bool() const { return central; }
};

inline CentralityResult is_central(const UeaElement& x, const EnvelopingPtr& ctx) {
  CentralityResult r;
  for (std::size_t k = 0; k < ctx->dim(); ++k) {
    UeaElement c = commutator(x, UeaElement::generator(ctx, k));
    if (!c.is_zero()) {
      r.central = false;
      r.generator = k;
      r.residual = c;
      return r;
    }
  }
  return r;
}

inline CentralityResult is_central(const UeaElement& x) { return is_central(x, x.context()); }

/// A central element identified with a scalar value.
struct CentralRelation {
  UeaElement element;
  Scalar value;
  std::string label;  // e.g. "C1 = c1"

  UeaElement generator() const { return element - UeaElement::scalar(element.context(), value); }
};

inline CentralRelation make_central_relation(UeaElement element, Scalar value, std::string label) {
  CentralityResult c = is_central(element);
  if (!c) {
    throw std::invalid_argument(label + ": element is not central (fails against " +
                                element.algebra().label(*c.generator) + ")");
  }
  return {std::move(element), std::move(value), std::move(label)};
}

/// (C1, c1) and (C2, c2) for a Cayley-Klein algebra.
inline std::vector<CentralRelation> casimir_relations(const EnvelopingPtr& ctx) {
  return {make_central_relation(casimir(ctx, 1), Scalar::symbol("c1"), "C1 = c1"),
          make_central_relation(casimir(ctx, 2), Scalar::symbol("c2"), "C2 = c2")};
}

/// m*Xi identified with m*xi.
inline std::vector<CentralRelation> extension_relations(const EnvelopingPtr& ctx) {
  const auto& p = ctx->algebra().ck_parameters();
  if (!p || !p->extended) throw UnsupportedAlgebra(ctx->algebra().name() + " has no central extension");
  UeaElement mxi = UeaElement::generator(ctx, ctx->algebra().index_of("Xi"), p->mass);
  return {make_central_relation(mxi, p->mass * Scalar::symbol("xi"), "m*Xi = m*xi")};
}

// ---------------------------------------------------------------- reduction modulo the center

struct DegreeBoundError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct WitnessTerm {
  std::size_t relation;
  PbwMonomial cofactor;
  Scalar coeff;
};

struct CentralReduction {
  UeaElement remainder;
  std::vector<WitnessTerm> witness;  // x = remainder + sum coeff * (element - value) * cofactor
  int bound = 0;
};

/// Reduces elements modulo the ideal generated by (element_i - value_i) through
/// the span of (element_i - value_i) * m, deg m <= bound, kept in echelon form
/// by leading PBW monomial.
class CentralReducer {
 public:
  CentralReducer(EnvelopingPtr ctx, std::vector<CentralRelation> relations)
      : ctx_(std::move(ctx)), relations_(std::move(relations)) {
    for (const auto& r : relations_) {
      if (r.element.context() != ctx_) throw MixedAlgebraError("relation from a different enveloping algebra");
    }
  }

  const std::vector<CentralRelation>& relations() const { return relations_; }
  const EnvelopingPtr& context() const { return ctx_; }

  int min_relation_degree() const {
    int d = -1;
    for (const auto& r : relations_) {
      int k = r.generator().degree();
      if (d < 0 || k < d) d = k;
    }
    return d;
  }

  /// Cofactor degree needed to reach the top degree of x.
  int needed_bound(const UeaElement& x) const {
    if (relations_.empty()) return 0;
    return std::max(0, x.degree() - min_relation_degree());
  }

  CentralReduction reduce(const UeaElement& x, std::optional<int> bound = std::nullopt) const {
    int need = needed_bound(x);
    int b = bound.value_or(need);
    if (b < need) {
      throw DegreeBoundError("degree bound " + std::to_string(b) + " is below the " + std::to_string(need) +
                             " needed for an element of degree " + std::to_string(x.degree()));
    }
    CentralReduction out;
    out.bound = b;
    out.remainder = UeaElement(ctx_);
    if (relations_.empty()) {
      out.remainder = x;
      return out;
    }
    const Echelon& ech = echelon(b);
    UeaTerms cur = x.terms();
    UeaTerms rem;
    std::map<std::pair<std::size_t, PbwMonomial>, Scalar> combo;
    while (!cur.empty()) {
      auto lead = cur.begin();
      auto it = ech.find(lead->first);
      if (it == ech.end()) {
        rem.insert(*lead);
        cur.erase(lead);
        continue;
      }
      Scalar c = lead->second;
      detail::add_scaled(cur, it->second.terms, -c);
      for (const auto& [key, k] : it->second.combo) {
        auto [ct, inserted] = combo.try_emplace(key, k * c);
        if (!inserted) ct->second += k * c;
      }
    }
    out.remainder = UeaElement(ctx_, std::move(rem));
    for (const auto& [key, k] : combo) {
      if (!k.is_zero()) out.witness.push_back({key.first, key.second, k});
    }
    return out;
  }

  /// x rebuilt from a reduction: remainder + sum coeff * (element - value) * cofactor.
  UeaElement reconstruct(const CentralReduction& r) const {
    UeaElement out = r.remainder;
    for (const auto& w : r.witness) {
      UeaElement cof(ctx_, UeaTerms{{w.cofactor, Scalar(1)}});
      out += (relations_.at(w.relation).generator() * cof).scaled(w.coeff);
    }
    return out;
  }

 private:
  struct Row {
    UeaTerms terms;
    std::map<std::pair<std::size_t, PbwMonomial>, Scalar> combo;
  };
  using Echelon = std::map<PbwMonomial, Row, GradedLexGreater>;

  static void monomials_up_to(std::size_t n, int bound, std::vector<PbwMonomial>& out) {
    PbwMonomial m(n, 0);
    std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
      if (i == n) {
        out.push_back(m);
        return;
      }
      for (int e = 0; e <= left; ++e) {
        m[i] = e;
        rec(i + 1, left - e);
      }
      m[i] = 0;
    };
    rec(0, bound);
  }

  const Echelon& echelon(int bound) const {
    std::lock_guard<std::mutex> lock(mu_);
    auto found = echelons_.find(bound);
    if (found != echelons_.end()) return found->second;
    Echelon ech;
    std::vector<PbwMonomial> cofactors;
    monomials_up_to(ctx_->dim(), bound, cofactors);
    std::sort(cofactors.begin(), cofactors.end(), GradedLexGreater{});
    for (std::size_t i = 0; i < relations_.size(); ++i) {
      UeaElement gen = relations_[i].generator();
      for (const auto& m : cofactors) {
        Row row;
        row.terms = (gen * UeaElement(ctx_, UeaTerms{{m, Scalar(1)}})).terms();
        row.combo[{i, m}] = Scalar(1);
        while (!row.terms.empty()) {
          auto it = ech.find(row.terms.begin()->first);
          if (it == ech.end()) break;
          Scalar c = row.terms.begin()->second;
          detail::add_scaled(row.terms, it->second.terms, -c);
          for (const auto& [key, k] : it->second.combo) {
            auto [ct, inserted] = row.combo.try_emplace(key, -k * c);
            if (!inserted) ct->second -= k * c;
          }
        }
        if (row.terms.empty()) continue;
        Scalar inv = Scalar(1) / row.terms.begin()->second;
        for (auto& [mm, c] : row.terms) c *= inv;
        for (auto& [key, c] : row.combo) c *= inv;
        PbwMonomial lead = row.terms.begin()->first;
        ech.emplace(std::move(lead), std::move(row));
      }
    }
    return echelons_.emplace(bound, std::move(ech)).first->second;
  }

  EnvelopingPtr ctx_;
  std::vector<CentralRelation> relations_;
  mutable std::mutex mu_;
  mutable std::map<int, Echelon> echelons_;
};

/// Convenience wrapper over CentralReducer.
inline CentralReduction central_reduce(const UeaElement& x, const std::vector<CentralRelation>& relations,
                                       std::optional<int> bound = std::nullopt) {
  return CentralReducer(x.context(), relations).reduce(x, bound);
}

}  // namespace ck
