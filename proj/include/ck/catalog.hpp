#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ck/lie_algebra.hpp"

namespace ck {

struct CatalogEntry {
  int sign1 = 0;            // sign of w1
  int sign2 = 0;            // sign of w2
  std::string key;          // command-line name
  std::string algebra;      // e.g. "so(2,2)"
  std::string space;        // e.g. "Anti-de Sitter (2+1)d space-time"
  bool off_grid = false;    // the extended Galilei algebra

  int s1_dim = 3;
  int s2_dim = 4;
  std::string s1_curvature = "w1";
  std::string s2_curvature = "w2";

  std::string sign_pair() const {
    auto c = [](int s) { return s > 0 ? std::string("+") : s < 0 ? std::string("-") : std::string("0"); };
    return "(" + c(sign1) + "," + c(sign2) + ")";
  }

  bool kinematical() const { return sign2 <= 0; }

  std::string notes() const {
    std::string n;
    if (sign1 != 0) n += std::string("w1 = ") + (sign1 > 0 ? "+" : "-") + "1/R^2; ";
    if (sign2 < 0) n += "w2 = -1/c^2; ";
    if (sign2 == 0) n += "absolute time (c = infinity); ";
    if (sign2 > 0) n += "riemannian, no space-time reading; ";
    if (off_grid) n += "central extension by Xi with mass m; ";
    if (!n.empty()) n.resize(n.size() - 2);
    return n;
  }
};

struct UnknownAlgebra : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// The nine cells of the (w1, w2) grid, row by row from w2 > 0 down to w2 < 0.
inline const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> cells = {
      {1, 1, "so4", "so(4)", "3d Elliptic space"},
      {0, 1, "euclid3", "iso(3)", "3d Euclidean space"},
      {-1, 1, "so31-hyp", "so(3,1)", "3d Hyperbolic space"},
      {1, 0, "nh-plus", "t4(so(2)+so(2))", "Oscillating NH (2+1)d space-time"},
      {0, 0, "galilei", "iiso(2)", "Galilean (2+1)d space-time"},
      {-1, 0, "nh-minus", "t4(so(2)+so(1,1))", "Expanding NH (2+1)d space-time"},
      {1, -1, "so22", "so(2,2)", "Anti-de Sitter (2+1)d space-time"},
      {0, -1, "poincare", "iso(2,1)", "Minkowskian (2+1)d space-time"},
      {-1, -1, "so31-ds", "so(3,1)", "de Sitter (2+1)d space-time"},
  };
  return cells;
}

inline const CatalogEntry& extended_galilei_entry() {
  static const CatalogEntry e = {0, 0, "ext-galilei", "overline-iiso(2)", "Extended Galilei (2+1)d space-time", true};
  return e;
}

/// Accepts a command-line key ("so22"), a sign pair "(+,-)", or an algebra
/// name when it names a single cell ("so(3,1)" names two).
inline const CatalogEntry& catalog_lookup(std::string_view key) {
  if (key == extended_galilei_entry().key) return extended_galilei_entry();
  const CatalogEntry* hit = nullptr;
  int hits = 0;
  for (const auto& e : catalog()) {
    if (e.key == key || e.sign_pair() == key) return e;
    if (e.algebra == key) {
      hit = &e;
      ++hits;
    }
  }
  if (hits == 1) return *hit;
  if (hits > 1) throw UnknownAlgebra("ambiguous algebra name '" + std::string(key) + "'; use a sign pair");
  throw UnknownAlgebra("unknown algebra '" + std::string(key) + "'");
}

inline const CatalogEntry& catalog_lookup(int sign1, int sign2) {
  for (const auto& e : catalog()) {
    if (e.sign1 == sign1 && e.sign2 == sign2) return e;
  }
  throw UnknownAlgebra("no catalog cell with signs (" + std::to_string(sign1) + "," + std::to_string(sign2) + ")");
}

/// The entry's algebra with w1, w2 set to -1, 0 or +1 (and symbolic mass m for the extension).
inline LieAlgebra build_algebra(const CatalogEntry& e) {
  if (e.off_grid) {
    LieAlgebra g = make_extended_galilei();
    g.set_name(e.key);
    return g;
  }
  return make_ck_algebra(Scalar(e.sign1), Scalar(e.sign2), e.key);
}

enum class ArrowDirection { Contraction, Expansion };

struct CatalogArrow {
  std::string source;
  std::string target;
  ContractionKind kind;  // the contraction this arrow is, or reverses
  ArrowDirection direction;
  int axis() const { return kind == ContractionKind::SpaceTime ? 1 : 2; }
};

/// Horizontal (space-time) and vertical (speed-space) edges of the grid, then their reverses.
inline std::vector<CatalogArrow> catalog_arrows() {
  std::vector<CatalogArrow> out;
  for (int s2 : {1, 0, -1}) {
    for (int s1 : {1, -1}) {
      out.push_back({catalog_lookup(s1, s2).key, catalog_lookup(0, s2).key, ContractionKind::SpaceTime, ArrowDirection::Contraction});
    }
  }
  for (int s1 : {1, 0, -1}) {
    for (int s2 : {1, -1}) {
      out.push_back({catalog_lookup(s1, s2).key, catalog_lookup(s1, 0).key, ContractionKind::SpeedSpace, ArrowDirection::Contraction});
    }
  }
  std::size_t n = out.size();
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back({out[i].target, out[i].source, out[i].kind, ArrowDirection::Expansion});
  }
  return out;
}

}  // namespace ck
