#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ck/scalar.hpp"

namespace ck {

/// Graded reverse lexicographic order on the unknowns, in the order they are
/// listed (a1 > a2 > ...). The greatest monomial sorts first.
struct GrevlexGreater {
  bool operator()(const Exponents& a, const Exponents& b) const {
    int da = total_degree(a), db = total_degree(b);
    if (da != db) return da > db;
    for (std::size_t i = a.size(); i-- > 0;) {
      if (a[i] != b[i]) return a[i] < b[i];
    }
    return false;
  }
};

/// Polynomial in a short list of unknowns with coefficients in the fraction
/// field of all remaining symbols.
class IdealPoly {
 public:
  using TermMap = std::map<Exponents, Scalar, GrevlexGreater>;

  IdealPoly() = default;
  explicit IdealPoly(std::vector<std::string> unknowns) : unknowns_(std::move(unknowns)) {}

  /// Splits a Scalar over the unknowns. The denominator must not involve them.
  static IdealPoly from_scalar(const Scalar& s, const std::vector<std::string>& unknowns) {
    IdealPoly out(unknowns);
    for (const auto& u : unknowns) {
      if (s.denominator().contains(u)) {
        throw std::invalid_argument("unknown " + u + " occurs in a denominator: " + s.to_string());
      }
    }
    const Poly& num = s.numerator();
    const auto& vars = num.vars();
    std::vector<int> where(vars.size(), -1);
    for (std::size_t i = 0; i < vars.size(); ++i) {
      for (std::size_t k = 0; k < unknowns.size(); ++k) {
        if (vars[i] == unknowns[k]) where[i] = static_cast<int>(k);
      }
    }
    std::map<Exponents, std::vector<std::pair<Exponents, Rational>>> buckets;
    for (const auto& [e, c] : num.terms()) {
      Exponents key(unknowns.size(), 0), rest = e;
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (where[i] >= 0) {
          key[static_cast<std::size_t>(where[i])] = e[i];
          rest[i] = 0;
        }
      }
      buckets[key].emplace_back(std::move(rest), c);
    }
    for (auto& [key, terms] : buckets) {
      out.add(key, Scalar(Poly::from_terms(vars, terms), s.denominator()));
    }
    return out;
  }

  static IdealPoly constant(const std::vector<std::string>& unknowns, const Scalar& c) {
    IdealPoly p(unknowns);
    p.add(Exponents(unknowns.size(), 0), c);
    return p;
  }

  const std::vector<std::string>& unknowns() const { return unknowns_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// True for a nonzero polynomial of degree zero in the unknowns.
  bool is_unit() const { return terms_.size() == 1 && total_degree(terms_.begin()->first) == 0; }
  const Exponents& leading_exponents() const { return terms_.begin()->first; }
  const Scalar& leading_coefficient() const { return terms_.begin()->second; }
  int degree() const { return terms_.empty() ? -1 : total_degree(terms_.begin()->first); }

  void add(const Exponents& e, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  IdealPoly& operator+=(const IdealPoly& o) {
    check_compatible(o);
    for (const auto& [e, c] : o.terms_) add(e, c);
    return *this;
  }
  IdealPoly& operator-=(const IdealPoly& o) {
    check_compatible(o);
    for (const auto& [e, c] : o.terms_) add(e, -c);
    return *this;
  }
  friend IdealPoly operator+(IdealPoly a, const IdealPoly& b) { return a += b; }
  friend IdealPoly operator-(IdealPoly a, const IdealPoly& b) { return a -= b; }

  friend IdealPoly operator*(const IdealPoly& a, const IdealPoly& b) {
    a.check_compatible(b);
    IdealPoly r(a.unknowns_);
    Exponents e(a.unknowns_.size());
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) {
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
        r.add(e, ca * cb);
      }
    }
    return r;
  }

  IdealPoly scaled(const Scalar& k) const {
    IdealPoly r(unknowns_);
    if (k.is_zero()) return r;
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, c * k);
    return r;
  }

  IdealPoly times_monomial(const Exponents& m, const Scalar& k) const {
    IdealPoly r(unknowns_);
    if (k.is_zero()) return r;
    for (const auto& [e, c] : terms_) {
      Exponents n = e;
      for (std::size_t i = 0; i < n.size(); ++i) n[i] += m[i];
      r.terms_.emplace(std::move(n), c * k);
    }
    return r;
  }

  IdealPoly monic() const {
    if (is_zero()) return *this;
    return scaled(Scalar(1) / leading_coefficient());
  }

  Scalar to_scalar() const {
    Scalar out;
    for (const auto& [e, c] : terms_) {
      Scalar mono(1);
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i]) mono *= Scalar(Poly::variable(unknowns_[i], e[i]));
      }
      out += c * mono;
    }
    return out;
  }

  /// Clears denominators and common factors: the unique polynomial over Q of
  /// the form unit * self with coprime integer content and positive leading
  /// term. Used for display and for comparing equations up to a unit.
  Poly primitive_form() const {
    if (is_zero()) return Poly();
    Poly lcm_den(1);
    for (const auto& [e, c] : terms_) {
      Poly g = gcd(lcm_den, c.denominator());
      lcm_den = detail::divide_or_throw(lcm_den * c.denominator(), g);
    }
    Poly total;
    Poly common;
    std::vector<Poly> scaled_nums;
    for (const auto& [e, c] : terms_) {
      Poly n = detail::divide_or_throw(lcm_den * c.numerator(), c.denominator());
      common = gcd(common, n);
      Poly mono(1);
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i]) mono *= Poly::variable(unknowns_[i], e[i]);
      }
      total += n * mono;
    }
    if (!common.is_zero() && !common.is_one()) total = detail::divide_or_throw(total, common);
    return primitive_part(total);
  }

  friend bool operator==(const IdealPoly& a, const IdealPoly& b) {
    return a.unknowns_ == b.unknowns_ && a.terms_ == b.terms_;
  }

  std::string to_string() const { return to_scalar().to_string(); }

 private:
  void check_compatible(const IdealPoly& o) const {
    if (unknowns_ != o.unknowns_) throw std::invalid_argument("ideal polynomials over different unknowns");
  }

  std::vector<std::string> unknowns_;
  TermMap terms_;
};

/// Relations in the unknowns together with their reduced Groebner basis.
struct RelationIdeal {
  std::vector<std::string> unknowns;
  std::vector<IdealPoly> generators;
  std::vector<IdealPoly> groebner;

  /// True when the ideal is the whole ring (the relations are inconsistent).
  bool is_trivial() const { return groebner.size() == 1 && groebner.front().is_unit(); }
};

namespace detail {

inline bool divides(const Exponents& a, const Exponents& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return false;
  }
  return true;
}

// Full normal form of p by the list (multivariate division).
inline IdealPoly normal_form(IdealPoly p, const std::vector<IdealPoly>& basis) {
  IdealPoly rem(p.unknowns());
  while (!p.is_zero()) {
    const Exponents lead = p.leading_exponents();
    const Scalar lc = p.leading_coefficient();
    bool reduced = false;
    for (const auto& g : basis) {
      if (g.is_zero() || !divides(g.leading_exponents(), lead)) continue;
      Exponents shift(lead.size());
      for (std::size_t i = 0; i < lead.size(); ++i) shift[i] = lead[i] - g.leading_exponents()[i];
      p -= g.times_monomial(shift, lc / g.leading_coefficient());
      reduced = true;
      break;
    }
    if (!reduced) {
      rem.add(lead, lc);
      IdealPoly head(p.unknowns());
      head.add(lead, lc);
      p -= head;
    }
  }
  return rem;
}

inline IdealPoly s_polynomial(const IdealPoly& f, const IdealPoly& g) {
  const Exponents& a = f.leading_exponents();
  const Exponents& b = g.leading_exponents();
  Exponents l(a.size()), sa(a.size()), sb(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    l[i] = std::max(a[i], b[i]);
    sa[i] = l[i] - a[i];
    sb[i] = l[i] - b[i];
  }
  return f.times_monomial(sa, Scalar(1) / f.leading_coefficient()) -
         g.times_monomial(sb, Scalar(1) / g.leading_coefficient());
}

}  // namespace detail

/// Reduced Groebner basis (grevlex on the unknowns, Buchberger with the
/// coprime-leading-monomial criterion). Zero generators are dropped.
inline RelationIdeal groebner_basis(std::vector<IdealPoly> gens, const std::vector<std::string>& unknowns) {
  if (unknowns.size() > 3) throw std::invalid_argument("groebner_basis supports at most 3 unknowns");
  for (const auto& g : gens) {
    if (g.unknowns() != unknowns) throw std::invalid_argument("generator over different unknowns");
  }
  gens.erase(std::remove_if(gens.begin(), gens.end(), [](const IdealPoly& g) { return g.is_zero(); }), gens.end());

  RelationIdeal out;
  out.unknowns = unknowns;
  out.generators = gens;

  std::vector<IdealPoly> basis;
  for (const auto& g : gens) basis.push_back(g.monic());
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t j = 0; j < basis.size(); ++j) {
    for (std::size_t i = 0; i < j; ++i) pairs.emplace_back(i, j);
  }
  while (!pairs.empty()) {
    auto [i, j] = pairs.front();
    pairs.erase(pairs.begin());
    const Exponents& a = basis[i].leading_exponents();
    const Exponents& b = basis[j].leading_exponents();
    bool coprime = true;
    for (std::size_t k = 0; k < a.size(); ++k) coprime = coprime && (a[k] == 0 || b[k] == 0);
    if (coprime) continue;
    IdealPoly r = detail::normal_form(detail::s_polynomial(basis[i], basis[j]), basis);
    if (r.is_zero()) continue;
    basis.push_back(r.monic());
    for (std::size_t k = 0; k + 1 < basis.size(); ++k) pairs.emplace_back(k, basis.size() - 1);
  }

  // Minimalize, then inter-reduce.
  std::vector<IdealPoly> minimal;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < basis.size() && !redundant; ++j) {
      if (i == j) continue;
      const Exponents& li = basis[i].leading_exponents();
      const Exponents& lj = basis[j].leading_exponents();
      if (detail::divides(lj, li) && (lj != li || j < i)) redundant = true;
    }
    if (!redundant) minimal.push_back(basis[i]);
  }
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<IdealPoly> others;
    for (std::size_t j = 0; j < minimal.size(); ++j) {
      if (j != i) others.push_back(minimal[j]);
    }
    IdealPoly head(unknowns);
    head.add(minimal[i].leading_exponents(), minimal[i].leading_coefficient());
    IdealPoly tail = minimal[i] - head;
    minimal[i] = (head + detail::normal_form(tail, others)).monic();
  }
  std::sort(minimal.begin(), minimal.end(), [](const IdealPoly& x, const IdealPoly& y) {
    return GrevlexGreater{}(x.leading_exponents(), y.leading_exponents());
  });
  out.groebner = std::move(minimal);
  return out;
}

/// Normal form of p modulo the ideal; zero iff p lies in the ideal.
inline IdealPoly reduce_mod_ideal(const IdealPoly& p, const RelationIdeal& ideal) {
  if (p.unknowns() != ideal.unknowns) throw std::invalid_argument("polynomial over different unknowns");
  return detail::normal_form(p, ideal.groebner);
}

/// Two ideals are equal iff their reduced Groebner bases coincide.
inline bool same_ideal(const RelationIdeal& a, const RelationIdeal& b) {
  if (a.unknowns != b.unknowns || a.groebner.size() != b.groebner.size()) return false;
  for (std::size_t i = 0; i < a.groebner.size(); ++i) {
    const auto& x = a.groebner[i].terms();
    const auto& y = b.groebner[i].terms();
    if (x.size() != y.size()) return false;
    for (auto it = x.begin(), jt = y.begin(); it != x.end(); ++it, ++jt) {
      if (it->first != jt->first || !(it->second == jt->second)) return false;
    }
  }
  return true;
}

}  // namespace ck
