#pragma once

// Test-only Robinson-Schensted row insertion, independent of the cell
// machinery.  Elements of a type-A group are read as one-line
// permutations by composing adjacent transpositions along their word.

#include <algorithm>
#include <utility>
#include <vector>

#include "celllab/coxeter.hpp"

namespace oracle {

using Tableau = std::vector<std::vector<int>>;

inline std::pair<Tableau, Tableau> rsk(const std::vector<int>& seq) {
  Tableau P, Q;
  for (size_t pos = 0; pos < seq.size(); ++pos) {
    int val = seq[pos];
    size_t row = 0;
    for (;;) {
      if (row == P.size()) {
        P.push_back({val});
        Q.push_back({static_cast<int>(pos) + 1});
        break;
      }
      auto it = std::upper_bound(P[row].begin(), P[row].end(), val);
      if (it == P[row].end()) {
        P[row].push_back(val);
        Q[row].push_back(static_cast<int>(pos) + 1);
        break;
      }
      std::swap(val, *it);
      ++row;
    }
  }
  return {std::move(P), std::move(Q)};
}

// one-line notation of an element of A_{n-1} acting on {1..n}
inline std::vector<int> one_line(const celllab::GroupTables& W,
                                 celllab::Elt x, int n) {
  std::vector<int> f(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) f[static_cast<size_t>(i)] = i + 1;
  for (uint8_t s : W.word(x)) {
    // compose on the right with the transposition (s+1, s+2)
    std::vector<int> g(f);
    g[s] = f[s + 1u];
    g[s + 1u] = f[s];
    f = std::move(g);
  }
  return f;
}

}  // namespace oracle
