#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ck/rational.hpp"

namespace ck {

// Display and storage order of the named symbols used across the engine.
// Symbols not listed here sort after these, alphabetically.
inline int symbol_rank(std::string_view name) {
  static constexpr std::array<std::string_view, 9> kOrder = {
      "w1", "w2", "m", "xi", "c1", "c2", "a1", "a2", "eps"};
  for (std::size_t i = 0; i < kOrder.size(); ++i) {
    if (kOrder[i] == name) return static_cast<int>(i);
  }
  return static_cast<int>(kOrder.size());
}

inline bool symbol_less(std::string_view a, std::string_view b) {
  int ra = symbol_rank(a), rb = symbol_rank(b);
  if (ra != rb) return ra < rb;
  return a < b;
}

using Exponents = std::vector<int>;

inline int total_degree(const Exponents& e) {
  int d = 0;
  for (int x : e) d += x;
  return d;
}

/// Graded, then lexicographic; the greatest monomial sorts first.
struct GradedLexGreater {
  bool operator()(const Exponents& a, const Exponents& b) const {
    int da = total_degree(a), db = total_degree(b);
    if (da != db) return da > db;
    return a > b;
  }
};

/// Multivariate polynomial with rational coefficients.
///
/// Canonical form: the variable list holds exactly the symbols that occur,
/// sorted by symbol_less, and no zero coefficient is stored. Two polynomials
/// are equal iff their representations are identical.
class Poly {
 public:
  using TermMap = std::map<Exponents, Rational, GradedLexGreater>;

  Poly() = default;
  Poly(const Rational& c) {  // NOLINT(google-explicit-constructor)
    if (!c.is_zero()) terms_.emplace(Exponents{}, c);
  }
  Poly(long c) : Poly(Rational(c)) {}  // NOLINT(google-explicit-constructor)

  static Poly variable(const std::string& name, int power = 1) {
    if (power < 0) throw std::invalid_argument("negative exponent");
    if (power == 0) return Poly(1);
    Poly p;
    p.vars_ = {name};
    p.terms_.emplace(Exponents{power}, Rational(1));
    return p;
  }

  /// Builds from explicit data; the result is canonicalized.
  static Poly from_terms(std::vector<std::string> vars, const std::vector<std::pair<Exponents, Rational>>& terms) {
    Poly p;
    std::vector<std::size_t> perm(vars.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) { return symbol_less(vars[a], vars[b]); });
    for (std::size_t i = 0; i + 1 < perm.size(); ++i) {
      if (vars[perm[i]] == vars[perm[i + 1]]) throw std::invalid_argument("duplicate variable " + vars[perm[i]]);
    }
    for (std::size_t i : perm) p.vars_.push_back(vars[i]);
    for (const auto& [e, c] : terms) {
      if (e.size() != vars.size()) throw std::invalid_argument("exponent vector length mismatch");
      Exponents sorted(e.size());
      for (std::size_t i = 0; i < perm.size(); ++i) {
        if (e[perm[i]] < 0) throw std::invalid_argument("negative exponent");
        sorted[i] = e[perm[i]];
      }
      p.add_term(std::move(sorted), c);
    }
    p.canonicalize();
    return p;
  }

  const std::vector<std::string>& vars() const { return vars_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return vars_.empty(); }
  bool is_one() const { return is_constant() && terms_.size() == 1 && terms_.begin()->second.is_one(); }
  Rational constant_value() const {
    if (!is_constant()) throw std::logic_error("polynomial is not constant");
    return terms_.empty() ? Rational(0) : terms_.begin()->second;
  }

  int degree() const { return terms_.empty() ? -1 : total_degree(terms_.begin()->first); }

  bool contains(std::string_view name) const { return var_index(name).has_value(); }

  int degree_in(std::string_view name) const {
    auto idx = var_index(name);
    if (!idx) return terms_.empty() ? -1 : 0;
    int d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e[*idx]);
    return d;
  }

  const Exponents& leading_exponents() const { return terms_.begin()->first; }
  const Rational& leading_coefficient() const { return terms_.begin()->second; }

  Poly operator-() const {
    Poly r = *this;
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
  }

  Poly& operator+=(const Poly& o) { return accumulate(o, Rational(1)); }
  Poly& operator-=(const Poly& o) { return accumulate(o, Rational(-1)); }

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }

  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    if (a.is_constant()) return b.scaled(a.constant_value());
    if (b.is_constant()) return a.scaled(b.constant_value());
    auto [x, y] = aligned(a, b);
    Poly r;
    r.vars_ = x.vars_;
    Exponents e(r.vars_.size());
    for (const auto& [ea, ca] : x.terms_) {
      for (const auto& [eb, cb] : y.terms_) {
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
        r.add_term(e, ca * cb);
      }
    }
    return r;
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  Poly scaled(const Rational& k) const {
    if (k.is_zero()) return Poly();
    Poly r = *this;
    for (auto& [e, c] : r.terms_) c *= k;
    return r;
  }

  Poly pow(unsigned n) const {
    Poly result(1), base = *this;
    while (n) {
      if (n & 1U) result *= base;
      n >>= 1U;
      if (n) base *= base;
    }
    return result;
  }

  /// Multiplies by the monomial coefficient * prod(var^exp) where exps are given on `vars`.
  Poly times_monomial(const std::vector<std::string>& vars, const Exponents& exps, const Rational& coeff) const {
    Poly m = from_terms(vars, {{exps, coeff}});
    return *this * m;
  }

  /// Coefficients with respect to one variable: power -> coefficient polynomial.
  std::map<int, Poly> coefficients_in(std::string_view name) const {
    std::map<int, Poly> out;
    auto idx = var_index(name);
    if (!idx) {
      if (!is_zero()) out.emplace(0, *this);
      return out;
    }
    std::map<int, std::vector<std::pair<Exponents, Rational>>> buckets;
    for (const auto& [e, c] : terms_) {
      Exponents rest = e;
      rest[*idx] = 0;
      buckets[e[*idx]].emplace_back(std::move(rest), c);
    }
    for (auto& [power, terms] : buckets) out.emplace(power, from_terms(vars_, terms));
    return out;
  }

  /// Substitutes a polynomial for a variable.
  Poly substitute(std::string_view name, const Poly& value) const {
    if (!contains(name)) return *this;
    Poly result;
    for (const auto& [power, coeff] : coefficients_in(name)) result += coeff * value.pow(static_cast<unsigned>(power));
    return result;
  }

  friend bool operator==(const Poly& a, const Poly& b) { return a.vars_ == b.vars_ && a.terms_ == b.terms_; }

  /// e.g. "4*w2*c1*a1^2 + w1"; the zero polynomial prints as "0".
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [e, c] : terms_) {
      Rational mag = c.abs();
      std::string mono;
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (!mono.empty()) mono += "*";
        mono += vars_[i];
        if (e[i] > 1) mono += "^" + std::to_string(e[i]);
      }
      std::string term;
      if (mono.empty()) {
        term = mag.to_string();
      } else if (mag.is_one()) {
        term = mono;
      } else {
        term = mag.to_string() + "*" + mono;
      }
      if (first) {
        out = c.sign() < 0 ? "-" + term : term;
      } else {
        out += c.sign() < 0 ? " - " : " + ";
        out += term;
      }
      first = false;
    }
    return out;
  }

  /// Brings both operands onto the union of their variable lists.
  static std::pair<Poly, Poly> aligned(const Poly& a, const Poly& b) {
    if (a.vars_ == b.vars_) return {a, b};
    std::vector<std::string> uni;
    std::set_union(a.vars_.begin(), a.vars_.end(), b.vars_.begin(), b.vars_.end(), std::back_inserter(uni),
                   [](const std::string& x, const std::string& y) { return symbol_less(x, y); });
    return {a.with_vars(uni), b.with_vars(uni)};
  }

 private:
  std::optional<std::size_t> var_index(std::string_view name) const {
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      if (vars_[i] == name) return i;
    }
    return std::nullopt;
  }

  Poly with_vars(const std::vector<std::string>& uni) const {
    if (uni == vars_) return *this;
    std::vector<std::size_t> pos(vars_.size());
    for (std::size_t i = 0, j = 0; i < vars_.size(); ++i) {
      while (uni[j] != vars_[i]) ++j;
      pos[i] = j;
    }
    Poly r;
    r.vars_ = uni;
    for (const auto& [e, c] : terms_) {
      Exponents n(uni.size(), 0);
      for (std::size_t i = 0; i < e.size(); ++i) n[pos[i]] = e[i];
      r.terms_.emplace(std::move(n), c);
    }
    return r;
  }

  void add_term(const Exponents& e, const Rational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  Poly& accumulate(const Poly& o, const Rational& sign) {
    if (o.is_zero()) return *this;
    if (vars_ != o.vars_) {
      auto [x, y] = aligned(*this, o);
      *this = std::move(x);
      for (const auto& [e, c] : y.terms_) add_term(e, sign * c);
    } else {
      for (const auto& [e, c] : o.terms_) add_term(e, sign * c);
    }
    canonicalize();
    return *this;
  }

  // Drops variables that no longer occur.
  void canonicalize() {
    if (vars_.empty()) return;
    std::vector<bool> used(vars_.size(), false);
    for (const auto& [e, c] : terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) used[i] = used[i] || e[i] > 0;
    }
    if (std::all_of(used.begin(), used.end(), [](bool u) { return u; })) return;
    std::vector<std::string> keep;
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      if (used[i]) keep.push_back(vars_[i]);
    }
    TermMap next;
    for (const auto& [e, c] : terms_) {
      Exponents n;
      n.reserve(keep.size());
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (used[i]) n.push_back(e[i]);
      }
      next.emplace(std::move(n), c);
    }
    vars_ = std::move(keep);
    terms_ = std::move(next);
  }

  std::vector<std::string> vars_;
  TermMap terms_;
};

/// Rational content with the sign of the leading coefficient: p / content(p)
/// has coprime integer coefficients and a positive leading coefficient.
inline Rational rational_content(const Poly& p) {
  if (p.is_zero()) return Rational(1);
  mpz_class num = 0, den = 1;
  for (const auto& [e, c] : p.terms()) {
    mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), c.value().get_num_mpz_t());
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.value().get_den_mpz_t());
  }
  Rational content(num, den);
  return p.leading_coefficient().sign() < 0 ? -content : content;
}

inline Poly primitive_part(const Poly& p) {
  if (p.is_zero()) return p;
  return p.scaled(Rational(1) / rational_content(p));
}

/// Exact quotient a / b, or nullopt when b does not divide a.
inline std::optional<Poly> exact_divide(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  if (a.is_zero()) return Poly();
  if (b.is_constant()) return a.scaled(Rational(1) / b.constant_value());
  auto [num, d] = Poly::aligned(a, b);
  const std::vector<std::string> vars = num.vars();
  const Exponents& lead = d.leading_exponents();
  const Rational& lc = d.leading_coefficient();
  // Work on raw term maps over the fixed variable list.
  Poly::TermMap r = num.terms();
  std::vector<std::pair<Exponents, Rational>> quotient;
  Exponents shifted(vars.size());
  while (!r.empty()) {
    const Exponents er = r.begin()->first;
    const Rational coeff = r.begin()->second / lc;
    Exponents diff(er.size());
    for (std::size_t i = 0; i < er.size(); ++i) {
      diff[i] = er[i] - lead[i];
      if (diff[i] < 0) return std::nullopt;
    }
    for (const auto& [e, c] : d.terms()) {
      for (std::size_t i = 0; i < e.size(); ++i) shifted[i] = e[i] + diff[i];
      auto [it, inserted] = r.try_emplace(shifted, -(c * coeff));
      if (!inserted) {
        it->second -= c * coeff;
        if (it->second.is_zero()) r.erase(it);
      }
    }
    quotient.emplace_back(std::move(diff), coeff);
  }
  Poly q = Poly::from_terms(vars, quotient);
  return q;
}

namespace detail {

inline Poly divide_or_throw(const Poly& a, const Poly& b) {
  auto q = exact_divide(a, b);
  if (!q) throw std::logic_error("inexact polynomial division");
  return *q;
}

Poly poly_gcd(const Poly& a, const Poly& b);

// gcd of the coefficients of p viewed as a polynomial in x.
inline Poly content_in(const Poly& p, const std::string& x) {
  Poly g;
  for (const auto& [power, coeff] : p.coefficients_in(x)) {
    g = poly_gcd(g, coeff);
    if (g.is_one()) break;
  }
  return g;
}

inline Poly pseudo_remainder(const Poly& a, const Poly& b, const std::string& x) {
  const int db = b.degree_in(x);
  const Poly lcb = b.coefficients_in(x).at(db);
  Poly r = a;
  while (!r.is_zero()) {
    int dr = r.degree_in(x);
    if (dr < db) break;
    Poly lcr = r.coefficients_in(x).at(dr);
    r = primitive_part(lcb * r - lcr * Poly::variable(x, dr - db) * b);
  }
  return r;
}

inline Poly primitive_in(const Poly& p, const std::string& x) {
  if (p.is_zero()) return p;
  return primitive_part(divide_or_throw(p, content_in(p, x)));
}

// Recursive primitive-PRS gcd over Q; result is primitive with a positive
// leading coefficient (gcd of nonzero constants is 1).
// Monomial dividing every term (componentwise minimum of the exponents).
inline Poly monomial_content(const Poly& p) {
  if (p.is_zero() || p.is_constant()) return Poly(1);
  Exponents low = p.terms().begin()->first;
  for (const auto& [e, c] : p.terms()) {
    for (std::size_t i = 0; i < e.size(); ++i) low[i] = std::min(low[i], e[i]);
  }
  return Poly::from_terms(p.vars(), {{low, Rational(1)}});
}

inline Poly monomial_gcd(const Poly& a, const Poly& b) {
  auto [x, y] = Poly::aligned(monomial_content(a), monomial_content(b));
  if (x.is_constant()) return Poly(1);
  Exponents e = x.leading_exponents();
  const Exponents& f = y.leading_exponents();
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = std::min(e[i], f[i]);
  return Poly::from_terms(x.vars(), {{e, Rational(1)}});
}

inline Poly poly_gcd(const Poly& a, const Poly& b) {
  if (a.is_zero()) return primitive_part(b);
  if (b.is_zero()) return primitive_part(a);
  if (a.is_constant() || b.is_constant()) return Poly(1);
  if (a.size() == 1 || b.size() == 1) return monomial_gcd(a, b);

  // Split off monomial contents; what remains has no monomial factor.
  Poly mono = monomial_gcd(a, b);
  Poly ra = divide_or_throw(a, monomial_content(a));
  Poly rb = divide_or_throw(b, monomial_content(b));
  if (ra.is_constant() || rb.is_constant()) return mono;
  if (exact_divide(ra, rb)) return primitive_part(mono * rb);
  if (exact_divide(rb, ra)) return primitive_part(mono * ra);

  // A symbol present in only one operand: the gcd divides the other one's
  // content with respect to that symbol.
  for (const auto& v : ra.vars()) {
    if (!rb.contains(v)) return primitive_part(mono * poly_gcd(content_in(ra, v), rb));
  }
  for (const auto& v : rb.vars()) {
    if (!ra.contains(v)) return primitive_part(mono * poly_gcd(ra, content_in(rb, v)));
  }

  // Main variable: lowest combined degree.
  std::string x = ra.vars().front();
  int best = ra.degree_in(x) + rb.degree_in(x);
  for (const auto& v : ra.vars()) {
    int d = ra.degree_in(v) + rb.degree_in(v);
    if (d < best) {
      best = d;
      x = v;
    }
  }
  Poly ca = content_in(ra, x), cb = content_in(rb, x);
  Poly c = poly_gcd(ca, cb);
  Poly pa = primitive_part(divide_or_throw(ra, ca)), pb = primitive_part(divide_or_throw(rb, cb));
  if (pa.degree_in(x) < pb.degree_in(x)) std::swap(pa, pb);
  while (!pb.is_zero() && pb.degree_in(x) > 0) {
    Poly r = pseudo_remainder(pa, pb, x);
    pa = std::move(pb);
    pb = primitive_in(r, x);
  }
  Poly g = pb.is_zero() ? primitive_in(pa, x) : Poly(1);
  return primitive_part(mono * c * g);
}

}  // namespace detail

/// Greatest common divisor over Q, normalized to be primitive with a positive
/// leading coefficient. gcd(0, 0) is 0.
inline Poly gcd(const Poly& a, const Poly& b) { return detail::poly_gcd(a, b); }

}  // namespace ck
