#pragma once

#include <map>
#include <random>
#include <vector>

#include "ck/uea.hpp"

namespace oracle {

using namespace ck;

using Word = std::vector<std::size_t>;

// Brute-force oracle: rewrite one adjacent inversion at a time, choosing the
// word and the position at random, until every word is ordered.
inline UeaTerms oracle_normalize(const LieAlgebra& g, const Word& start, std::mt19937& rng) {
  std::map<Word, Scalar> pending{{start, Scalar(1)}};
  std::map<Word, Scalar> done;
  auto add = [](std::map<Word, Scalar>& into, const Word& w, const Scalar& c) {
    auto [it, inserted] = into.try_emplace(w, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) into.erase(it);
    }
  };
  while (!pending.empty()) {
    auto it = pending.begin();
    std::advance(it, std::uniform_int_distribution<std::size_t>(0, pending.size() - 1)(rng));
    Word w = it->first;
    Scalar c = it->second;
    pending.erase(it);
    std::vector<std::size_t> inversions;
    for (std::size_t p = 0; p + 1 < w.size(); ++p) {
      if (w[p] > w[p + 1]) inversions.push_back(p);
    }
    if (inversions.empty()) {
      add(done, w, c);
      continue;
    }
    std::size_t p = inversions[std::uniform_int_distribution<std::size_t>(0, inversions.size() - 1)(rng)];
    Word swapped = w;
    std::swap(swapped[p], swapped[p + 1]);
    add(pending, swapped, c);
    for (const auto& [z, cz] : g.bracket(w[p], w[p + 1])) {
      Word shorter(w.begin(), w.begin() + static_cast<long>(p));
      shorter.push_back(z);
      shorter.insert(shorter.end(), w.begin() + static_cast<long>(p) + 2, w.end());
      add(pending, shorter, c * cz);
    }
  }
  UeaTerms out;
  for (const auto& [w, c] : done) {
    PbwMonomial m(g.dim(), 0);
    for (std::size_t k : w) ++m[k];
    detail::add_term(out, m, c);
  }
  return out;
}

inline Word random_word(std::mt19937& rng, std::size_t dim, std::size_t max_len) {
  Word w(std::uniform_int_distribution<std::size_t>(0, max_len)(rng));
  for (auto& x : w) x = std::uniform_int_distribution<std::size_t>(0, dim - 1)(rng);
  return w;
}

}  // namespace oracle
