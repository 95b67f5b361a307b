#pragma once

// Test-only oracle groups, independent of the root-system engine: concrete
// signed-permutation models enumerated by breadth-first word search.

#include <cstdlib>
#include <map>
#include <vector>

namespace oracle {

// An element maps basis index i (0-based) to a signed 1-based index.
using SignedPerm = std::vector<int>;

struct PermGroup {
  std::vector<SignedPerm> elems;
  std::vector<int> length;                  // word length from BFS
  std::vector<std::vector<int>> words;      // one reduced word each
  std::map<SignedPerm, size_t> index;
  size_t w0 = 0;

  size_t mult(size_t a, size_t b) const {
    const SignedPerm& x = elems[a];
    const SignedPerm& y = elems[b];
    SignedPerm r(x.size());
    for (size_t i = 0; i < x.size(); ++i) {
      int yi = y[i];
      int img = x[static_cast<size_t>(std::abs(yi)) - 1];
      r[i] = yi > 0 ? img : -img;
    }
    return index.at(r);
  }

  size_t eval_word(const std::vector<int>& gens_word,
                   const std::vector<SignedPerm>& gens) const {
    SignedPerm cur(elems[0]);
    for (int g : gens_word) {
      // cur * s
      const SignedPerm& s = gens[static_cast<size_t>(g)];
      SignedPerm r(cur.size());
      for (size_t i = 0; i < cur.size(); ++i) {
        int si = s[i];
        int img = cur[static_cast<size_t>(std::abs(si)) - 1];
        r[i] = si > 0 ? img : -img;
      }
      cur = std::move(r);
    }
    return index.at(cur);
  }

  static PermGroup enumerate(const std::vector<SignedPerm>& gens, size_t n) {
    PermGroup g;
    SignedPerm id(n);
    for (size_t i = 0; i < n; ++i) id[i] = static_cast<int>(i) + 1;
    g.elems.push_back(id);
    g.length.push_back(0);
    g.words.push_back({});
    g.index[id] = 0;
    for (size_t q = 0; q < g.elems.size(); ++q) {
      for (size_t s = 0; s < gens.size(); ++s) {
        SignedPerm r(n);
        for (size_t i = 0; i < n; ++i) {
          int si = gens[s][i];
          int img = g.elems[q][static_cast<size_t>(std::abs(si)) - 1];
          r[i] = si > 0 ? img : -img;
        }
        if (!g.index.count(r)) {
          g.index[r] = g.elems.size();
          g.length.push_back(g.length[q] + 1);
          std::vector<int> w = g.words[q];
          w.push_back(static_cast<int>(s));
          g.words.push_back(std::move(w));
          g.elems.push_back(std::move(r));
        }
      }
    }
    int maxlen = 0;
    for (size_t i = 0; i < g.elems.size(); ++i)
      if (g.length[i] > maxlen) {
        maxlen = g.length[i];
        g.w0 = i;
      }
    return g;
  }
};

// symmetric group S_n with adjacent transpositions (type A_{n-1})
inline PermGroup symmetric_group(int n, std::vector<SignedPerm>* gens_out) {
  std::vector<SignedPerm> gens;
  for (int k = 0; k + 1 < n; ++k) {
    SignedPerm s(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) s[static_cast<size_t>(i)] = i + 1;
    s[static_cast<size_t>(k)] = k + 2;
    s[static_cast<size_t>(k + 1)] = k + 1;
    gens.push_back(s);
  }
  if (gens_out) *gens_out = gens;
  return PermGroup::enumerate(gens, static_cast<size_t>(n));
}

// hyperoctahedral group of rank 2, with the sign flip on the last
// coordinate (matching a 4-bond between the two generators)
inline PermGroup hyperoctahedral2(std::vector<SignedPerm>* gens_out) {
  std::vector<SignedPerm> gens = {{2, 1}, {1, -2}};
  if (gens_out) *gens_out = gens;
  return PermGroup::enumerate(gens, 2);
}

}  // namespace oracle
