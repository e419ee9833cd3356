#pragma once

#include <fstream>
#include <regex>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "ck/lie_algebra.hpp"

namespace ck {

struct DefinitionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// {"name", "generators", "parameters", "brackets": {"[X,Y]": "lincomb"}}
inline nlohmann::ordered_json algebra_to_json(const LieAlgebra& g) {
  nlohmann::ordered_json j;
  j["name"] = g.name();
  j["generators"] = g.generators();
  j["parameters"] = g.parameters();
  nlohmann::ordered_json br = nlohmann::ordered_json::object();
  for (const auto& [key, lc] : g.table()) {
    br["[" + g.label(key.first) + "," + g.label(key.second) + "]"] = g.format(lc);
  }
  j["brackets"] = br;
  return j;
}

inline LieAlgebra algebra_from_json(const nlohmann::json& j) {
  try {
    LieAlgebra g(j.at("name").get<std::string>(), j.at("generators").get<std::vector<std::string>>());
    std::vector<std::string> declared;
    if (j.contains("parameters")) declared = j.at("parameters").get<std::vector<std::string>>();
    static const std::regex key_re(R"(\s*\[\s*([A-Za-z_][A-Za-z0-9_']*)\s*,\s*([A-Za-z_][A-Za-z0-9_']*)\s*\]\s*)");
    for (const auto& [key, value] : j.at("brackets").items()) {
      std::smatch m;
      if (!std::regex_match(key, m, key_re)) throw DefinitionError("malformed bracket key '" + key + "'");
      std::size_t a = g.index_of(m[1].str()), b = g.index_of(m[2].str());
      LinComb lc = g.parse_lincomb(value.get<std::string>());
      if (a == b) {
        if (!lc.empty()) throw DefinitionError("nonzero self-bracket " + key);
        continue;
      }
      auto existing = g.bracket(a, b);
      if (!existing.empty() && !lc_equal(existing, lc)) throw DefinitionError("conflicting entries for " + key);
      g.set_bracket(a, b, lc);
    }
    if (j.contains("parameters")) {
      for (const auto& p : g.parameters()) {
        if (std::find(declared.begin(), declared.end(), p) == declared.end()) {
          throw DefinitionError("symbol '" + p + "' is not declared in \"parameters\"");
        }
      }
    }
    recognize_ck(g);
    return g;
  } catch (const nlohmann::json::exception& e) {
    throw DefinitionError(std::string("bad algebra definition: ") + e.what());
  } catch (const std::out_of_range& e) {
    throw DefinitionError(e.what());
  }
}

inline LieAlgebra load_algebra(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DefinitionError("cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw DefinitionError(path + ": " + e.what());
  }
  return algebra_from_json(j);
}

inline void save_algebra(const LieAlgebra& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DefinitionError("cannot write " + path);
  out << algebra_to_json(g).dump(2) << "\n";
}

}  // namespace ck
