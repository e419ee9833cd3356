#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ck/poly.hpp"

namespace ck {

struct DivisionByZero : std::domain_error {
  using std::domain_error::domain_error;
};

namespace detail {

// Deterministic total order on polynomials, used to sort denominator factors.
inline bool poly_less(const Poly& a, const Poly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  if (a.size() != b.size()) return a.size() < b.size();
  return a.to_string() < b.to_string();
}

}  // namespace detail

/// Element of the fraction field Q(symbols).
///
/// The denominator is kept as a product of primitive, positive-leading
/// factors (single symbols, or polynomials that arose as divisors). Common
/// factors are cancelled by exact division against that list; equality is
/// decided by cross-multiplication and does not depend on how far the
/// cancellation went.
class Scalar {
 public:
  using Factor = std::pair<Poly, int>;

  Scalar() = default;
  Scalar(long c) : num_(c) {}                      // NOLINT(google-explicit-constructor)
  Scalar(const Rational& c) : num_(c) {}           // NOLINT(google-explicit-constructor)
  Scalar(Poly p) : num_(std::move(p)) {}           // NOLINT(google-explicit-constructor)
  Scalar(Poly num, const Poly& den) : num_(std::move(num)) {
    if (den.is_zero()) throw DivisionByZero("scalar with zero denominator");
    *this = *this * inverse_of(den);
  }

  static Scalar symbol(const std::string& name) { return Scalar(Poly::variable(name)); }

  const Poly& numerator() const { return num_; }
  const std::vector<Factor>& denominator_factors() const { return den_; }
  Poly denominator() const { return product(den_); }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return den_.empty() && num_.is_one(); }
  bool is_polynomial() const { return den_.empty(); }
  bool is_constant() const { return den_.empty() && num_.is_constant(); }
  Rational constant_value() const {
    if (!is_constant()) throw std::logic_error("scalar is not constant: " + to_string());
    return num_.constant_value();
  }
  bool contains(std::string_view name) const {
    if (num_.contains(name)) return true;
    return std::any_of(den_.begin(), den_.end(), [&](const Factor& f) { return f.first.contains(name); });
  }

  Scalar operator-() const {
    Scalar r = *this;
    r.num_ = -r.num_;
    return r;
  }

  Scalar& operator+=(const Scalar& o) {
    if (o.is_zero()) return *this;
    if (is_zero()) return *this = o;
    if (den_ == o.den_) {
      num_ += o.num_;
      if (num_.is_zero()) den_.clear();
      cancel();
      return *this;
    }
    std::vector<Factor> common = lcm(den_, o.den_);
    num_ = num_ * product(quotient(common, den_)) + o.num_ * product(quotient(common, o.den_));
    den_ = std::move(common);
    if (num_.is_zero()) den_.clear();
    cancel();
    return *this;
  }
  Scalar& operator-=(const Scalar& o) { return *this += -o; }

  Scalar& operator*=(const Scalar& o) {
    if (is_zero()) return *this;
    if (o.is_zero()) return *this = Scalar();
    num_ = num_ * o.num_;
    if (!o.den_.empty()) {
      for (const auto& f : o.den_) add_factor(den_, f.first, f.second);
    }
    if (!den_.empty()) cancel();
    return *this;
  }

  Scalar& operator/=(const Scalar& o) {
    if (o.is_zero()) throw DivisionByZero("division by a zero scalar");
    Scalar inv = inverse_of(o.num_);
    inv.num_ = inv.num_ * product(o.den_);
    inv.cancel();
    return *this *= inv;
  }

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  Scalar pow(int n) const {
    if (n < 0) return Scalar(1) / pow(-n);
    Scalar r;
    r.num_ = num_.pow(static_cast<unsigned>(n));
    if (n > 0) {
      for (const auto& [f, e] : den_) r.den_.emplace_back(f, e * n);
    }
    return r;
  }

  Scalar substitute(std::string_view name, const Scalar& value) const {
    if (!contains(name)) return *this;
    Scalar out = substitute_poly(num_, name, value);
    for (const auto& [f, e] : den_) out /= substitute_poly(f, name, value).pow(e);
    return out;
  }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    if (a.den_ == b.den_) return a.num_ == b.num_;
    std::vector<Factor> common = lcm(a.den_, b.den_);
    return a.num_ * product(quotient(common, a.den_)) == b.num_ * product(quotient(common, b.den_));
  }

  /// "num" for polynomials, "(num)/(den)" otherwise.
  std::string to_string() const {
    if (den_.empty()) return num_.to_string();
    return "(" + num_.to_string() + ")/(" + denominator().to_string() + ")";
  }

  /// Parenthesized when the value is a sum or a fraction, so it can be used as a factor.
  std::string to_factor_string() const {
    if (den_.empty() && num_.size() <= 1) return num_.to_string();
    return "(" + to_string() + ")";
  }

 private:
  static Poly product(const std::vector<Factor>& fs) {
    Poly p(1);
    for (const auto& [f, e] : fs) p *= f.pow(static_cast<unsigned>(e));
    return p;
  }

  static void add_factor(std::vector<Factor>& fs, const Poly& f, int e) {
    if (e == 0) return;
    for (auto& [g, k] : fs) {
      if (g == f) {
        k += e;
        return;
      }
    }
    fs.emplace_back(f, e);
    std::sort(fs.begin(), fs.end(), [](const Factor& x, const Factor& y) { return detail::poly_less(x.first, y.first); });
  }

  static std::vector<Factor> lcm(const std::vector<Factor>& a, const std::vector<Factor>& b) {
    std::vector<Factor> out = a;
    for (const auto& [f, e] : b) {
      auto it = std::find_if(out.begin(), out.end(), [&](const Factor& x) { return x.first == f; });
      if (it == out.end()) {
        add_factor(out, f, e);
      } else {
        it->second = std::max(it->second, e);
      }
    }
    return out;
  }

  // common / part, where part's factors all occur in common.
  static std::vector<Factor> quotient(const std::vector<Factor>& common, const std::vector<Factor>& part) {
    std::vector<Factor> out;
    for (const auto& [f, e] : common) {
      int k = e;
      for (const auto& [g, j] : part) {
        if (g == f) k -= j;
      }
      if (k > 0) out.emplace_back(f, k);
    }
    return out;
  }

  // 1 / p, with p split into rational content, symbol powers and a primitive rest.
  static Scalar inverse_of(const Poly& p) {
    if (p.is_zero()) throw DivisionByZero("division by the zero polynomial");
    Rational content = rational_content(p);
    Poly rest = p.scaled(Rational(1) / content);
    Scalar out(Poly(Rational(1) / content));
    Poly mono = detail::monomial_content(rest);
    if (!mono.is_constant()) {
      rest = detail::divide_or_throw(rest, mono);
      const Exponents& e = mono.leading_exponents();
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i]) add_factor(out.den_, Poly::variable(mono.vars()[i]), e[i]);
      }
    }
    if (!rest.is_constant()) {
      Rational k = rational_content(rest);
      if (!k.is_one()) {
        out.num_ = out.num_.scaled(Rational(1) / k);
        rest = rest.scaled(Rational(1) / k);
      }
      add_factor(out.den_, rest, 1);
    }
    return out;
  }

  static Scalar substitute_poly(const Poly& p, std::string_view name, const Scalar& value) {
    Scalar out;
    for (const auto& [power, coeff] : p.coefficients_in(name)) out += Scalar(coeff) * value.pow(power);
    return out;
  }

  // Divides out denominator factors that divide the numerator.
  void cancel() {
    if (num_.is_zero()) {
      den_.clear();
      return;
    }
    for (auto& [f, e] : den_) {
      while (e > 0) {
        auto q = exact_divide(num_, f);
        if (!q) break;
        num_ = std::move(*q);
        --e;
      }
    }
    den_.erase(std::remove_if(den_.begin(), den_.end(), [](const Factor& f) { return f.second == 0; }), den_.end());
  }

  Poly num_;
  std::vector<Factor> den_;
};

inline Scalar scalar_div(const Scalar& a, const Scalar& b) { return a / b; }

}  // namespace ck
