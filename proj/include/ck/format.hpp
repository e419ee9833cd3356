#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ck/scalar.hpp"

namespace ck {

namespace detail {

inline bool looks_negative(const Scalar& c) {
  const Poly& n = c.numerator();
  return !n.is_zero() && n.leading_coefficient().sign() < 0;
}

// coefficient times basis element, without a leading sign decision
inline std::string unsigned_term(const Scalar& c, const std::string& basis) {
  if (basis.empty()) return c.to_factor_string();
  if (c.is_one()) return basis;
  return c.to_factor_string() + "*" + basis;
}

}  // namespace detail

/// Renders sum_k c_k * basis_k as "w1*K1 - P2 + (w1 + 1)*J". An empty basis
/// string stands for the unit.
inline std::string format_sum(const std::vector<std::pair<Scalar, std::string>>& terms) {
  if (terms.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [c, basis] : terms) {
    bool neg = detail::looks_negative(c);
    std::string body = detail::unsigned_term(neg ? -c : c, basis);
    if (first) {
      out = neg ? "-" + body : body;
      first = false;
    } else {
      out += neg ? " - " : " + ";
      out += body;
    }
  }
  return out;
}

}  // namespace ck
