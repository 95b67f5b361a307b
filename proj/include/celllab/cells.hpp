#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <string>
#include <unordered_map>
#include <vector>

#include "celllab/hecke.hpp"

namespace celllab {

/*
  Cell partitions of W.

  The left preorder is generated by z <=_L x whenever c_s c_x has a
  nonzero c_z coordinate for some generator s (the c_s generate the
  algebra); cells are the strongly connected components, and the
  condensation gives the partial order.  Right cells come from left cells
  of inverses, two-sided cells from the union of both edge sets.  Cell
  ids are canonical: ordered by the least member index.
*/
struct CellDecomposition {
  int rank = 0;
  size_t num_elements = 0;
  uint32_t num_left = 0, num_right = 0, num_two = 0;
  std::vector<uint32_t> left_of, right_of, two_of;  // per element
  std::vector<std::vector<Elt>> left_cells, right_cells, two_cells;
  // leq matrices for the condensations: two_leq[a][b] iff cell a <=_LR cell b
  std::vector<std::vector<uint8_t>> two_leq;
  std::vector<std::vector<uint8_t>> left_leq;  // a <=_L b
  // cached c-expansions of c_s c_x, reused by cell modules
  std::vector<SparseRow> gen_rows;  // index s*num_elements + x

  const SparseRow& gen_row(int s, Elt x) const {
    return gen_rows[static_cast<size_t>(s) * num_elements + x];
  }

  Elt representative(uint32_t two_cell) const {
    return two_cells[two_cell].front();
  }
};

namespace detail {

// Kosaraju with explicit stacks.
inline std::pair<uint32_t, std::vector<uint32_t>> strong_components(
    const std::vector<std::vector<Elt>>& adj) {
  size_t n = adj.size();
  std::vector<std::vector<Elt>> radj(n);
  for (Elt x = 0; x < n; ++x)
    for (Elt z : adj[x]) radj[z].push_back(x);
  std::vector<uint8_t> seen(n, 0);
  std::vector<Elt> finish;
  finish.reserve(n);
  std::vector<std::pair<Elt, size_t>> stack;
  for (Elt root = 0; root < n; ++root) {
    if (seen[root]) continue;
    seen[root] = 1;
    stack.emplace_back(root, 0);
    while (!stack.empty()) {
      auto& [x, i] = stack.back();
      if (i < adj[x].size()) {
        Elt z = adj[x][i++];
        if (!seen[z]) {
          seen[z] = 1;
          stack.emplace_back(z, 0);
        }
      } else {
        finish.push_back(x);
        stack.pop_back();
      }
    }
  }
  std::vector<uint32_t> comp(n, UINT32_MAX);
  uint32_t nc = 0;
  for (size_t k = finish.size(); k-- > 0;) {
    Elt root = finish[k];
    if (comp[root] != UINT32_MAX) continue;
    std::vector<Elt> dfs{root};
    comp[root] = nc;
    while (!dfs.empty()) {
      Elt x = dfs.back();
      dfs.pop_back();
      for (Elt z : radj[x])
        if (comp[z] == UINT32_MAX) {
          comp[z] = nc;
          dfs.push_back(z);
        }
    }
    ++nc;
  }
  return {nc, std::move(comp)};
}

// renumber components by least member and collect sorted member lists
inline void canonicalize_cells(uint32_t& nc, std::vector<uint32_t>& comp,
                               std::vector<std::vector<Elt>>& cells) {
  std::vector<Elt> least(nc, UINT32_MAX);
  for (Elt x = 0; x < comp.size(); ++x)
    least[comp[x]] = std::min(least[comp[x]], x);
  std::vector<uint32_t> order(nc);
  for (uint32_t c = 0; c < nc; ++c) order[c] = c;
  std::sort(order.begin(), order.end(),
            [&](uint32_t a, uint32_t b) { return least[a] < least[b]; });
  std::vector<uint32_t> newid(nc);
  for (uint32_t i = 0; i < nc; ++i) newid[order[i]] = i;
  cells.assign(nc, {});
  for (Elt x = 0; x < comp.size(); ++x) {
    comp[x] = newid[comp[x]];
    cells[comp[x]].push_back(x);
  }
}

// reachability closure of the condensation: leq[a][b] iff a is reachable
// from b along edges x -> z (z below x)
inline std::vector<std::vector<uint8_t>> condensation_leq(
    const std::vector<std::vector<Elt>>& adj, const std::vector<uint32_t>& comp,
    uint32_t nc) {
  std::vector<std::vector<uint32_t>> cadj(nc);
  for (Elt x = 0; x < adj.size(); ++x)
    for (Elt z : adj[x])
      if (comp[z] != comp[x]) cadj[comp[x]].push_back(comp[z]);
  for (auto& v : cadj) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  }
  std::vector<std::vector<uint8_t>> leq(nc, std::vector<uint8_t>(nc, 0));
  for (uint32_t b = 0; b < nc; ++b) {
    std::vector<uint32_t> dfs{b};
    leq[b][b] = 1;
    while (!dfs.empty()) {
      uint32_t c = dfs.back();
      dfs.pop_back();
      for (uint32_t z : cadj[c])
        if (!leq[z][b]) {
          leq[z][b] = 1;
          dfs.push_back(z);
        }
    }
  }
  return leq;
}

}  // namespace detail

inline CellDecomposition compute_cells(const HeckeAlgebra& H, int jobs = 1) {
  const GroupTables& W = H.group();
  size_t n = W.size;
  CellDecomposition cd;
  cd.rank = W.rank;
  cd.num_elements = n;
  cd.gen_rows.resize(static_cast<size_t>(W.rank) * n);
  H.ensure_all_kl();
  // c_s c_x = T_s c_x + v^{-L(s)} c_x, expanded back in the c-basis
  HeckeAlgebra::parallel_for(n, jobs, [&](size_t xi) {
    Elt x = static_cast<Elt>(xi);
    for (int s = 0; s < W.rank; ++s) {
      HeckeElement cx = H.kl_element(x);
      HeckeElement prod = H.times_gen(cx, s, /*on_right=*/false);
      prod += cx.scaled(
          LaurentInt::v(static_cast<int32_t>(-W.generator_weight(s))));
      cd.gen_rows[static_cast<size_t>(s) * n + x] =
          H.expand_in_c(prod).coords;
    }
  });

  std::vector<std::vector<Elt>> ladj(n), tadj(n);
  for (Elt x = 0; x < n; ++x) {
    std::vector<Elt> targets;
    for (int s = 0; s < W.rank; ++s)
      for (const auto& [z, h] : cd.gen_row(s, x))
        if (z != x) targets.push_back(z);
    std::sort(targets.begin(), targets.end());
    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
    ladj[x] = std::move(targets);
  }
  auto [nl, lcomp] = detail::strong_components(ladj);
  cd.num_left = nl;
  cd.left_of = std::move(lcomp);
  detail::canonicalize_cells(cd.num_left, cd.left_of, cd.left_cells);
  cd.left_leq = detail::condensation_leq(ladj, cd.left_of, cd.num_left);

  // right cells: z <=_R x iff z^-1 <=_L x^-1
  {
    std::vector<uint32_t> rcomp(n);
    for (Elt x = 0; x < n; ++x) rcomp[x] = cd.left_of[W.inverse(x)];
    uint32_t nr = cd.num_left;
    cd.num_right = nr;
    cd.right_of = std::move(rcomp);
    detail::canonicalize_cells(cd.num_right, cd.right_of, cd.right_cells);
  }

  // two-sided: union of left edges and inverse-conjugated left edges
  for (Elt x = 0; x < n; ++x) {
    std::vector<Elt> t = ladj[x];
    for (Elt z : ladj[W.inverse(x)]) t.push_back(W.inverse(z));
    std::sort(t.begin(), t.end());
    t.erase(std::unique(t.begin(), t.end()), t.end());
    tadj[x] = std::move(t);
  }
  auto [nt, tcomp] = detail::strong_components(tadj);
  cd.num_two = nt;
  cd.two_of = std::move(tcomp);
  detail::canonicalize_cells(cd.num_two, cd.two_of, cd.two_cells);
  cd.two_leq = detail::condensation_leq(tadj, cd.two_of, cd.num_two);

  // each two-sided cell is a union of left cells and of right cells
  for (Elt x = 0; x < n; ++x) {
    require(cd.two_of[cd.left_cells[cd.left_of[x]].front()] == cd.two_of[x],
            ErrorCode::Internal, "left cell splits across two-sided cells");
    require(cd.two_of[cd.right_cells[cd.right_of[x]].front()] == cd.two_of[x],
            ErrorCode::Internal, "right cell splits across two-sided cells");
  }
  return cd;
}

/*
  The a-function, the gamma table view, and the distinguished involutions.

  a(z) is the top v-degree of the structure constants h_{x,y,z}; the scan
  runs over all pairs for groups of order <= 120 and over pairs from the
  two-sided cell (augmented by the distinguished involutions once they
  are known) for larger groups.  Delta(z) and the candidate sign n_z are
  read from the lowest term of p_{e,z}; the distinguished set is
  {z : a(z) = Delta(z)} and its signs are cross-checked against
  gamma_{d,d,d}.
*/
struct AsymptoticTables {
  const HeckeAlgebra* H = nullptr;
  const CellDecomposition* cells = nullptr;

  static constexpr size_t kFullScanLimit = 120;

  std::vector<long long> a_value;      // per element
  std::vector<long long> delta_value;  // per element
  std::vector<long long> n_candidate;  // coefficient of v^{-Delta} in p_{e,z}
  std::vector<uint8_t> is_distinguished;
  std::vector<Elt> distinguished;  // sorted
  std::vector<Elt> d_of_left;      // per left cell: unique member of D, or
                                   // UINT32_MAX (absent) / UINT32_MAX-1 (many)
  bool full_scan = false;
  std::vector<std::pair<Elt, Elt>> scanned_pairs;

  long long a(Elt z) const { return a_value[z]; }

  // gamma_{x,y,z}: the coefficient of v^{a(z^-1)} in h_{x,y,z^-1}
  long long gamma(Elt x, Elt y, Elt z) const {
    Elt zi = H->group().inverse(z);
    const LeadingRow& row = H->leading_row(x, y);
    auto it = std::lower_bound(
        row.begin(), row.end(), zi,
        [](const std::pair<Elt, LeadingEntry>& t, Elt e) {
          return t.first < e;
        });
    if (it == row.end() || it->first != zi) return 0;
    return it->second.deg == a_value[zi] ? it->second.top : 0;
  }

  // gamma coefficients of t_x t_y indexed by the basis element z: the
  // t_z coordinate is gamma_{x,y,z^-1}, the top coefficient of h_{x,y,z}
  // at v^{a(z)}
  std::vector<std::pair<Elt, long long>> gamma_row(Elt x, Elt y) const {
    std::vector<std::pair<Elt, long long>> out;
    for (const auto& [z, le] : H->leading_row(x, y))
      if (le.deg == a_value[z] && le.top != 0) out.emplace_back(z, le.top);
    return out;
  }

  Elt d_of(Elt x) const {
    Elt d = d_of_left[cells->left_of[x]];
    require(d != UINT32_MAX, ErrorCode::NotFound,
            "left cell contains no distinguished involution");
    require(d != UINT32_MAX - 1, ErrorCode::NotUnique,
            "left cell contains several distinguished involutions");
    return d;
  }

  long long n_of(Elt d) const {
    require(is_distinguished[d], ErrorCode::NotFound,
            "element is not distinguished");
    return n_candidate[d];
  }
};

inline AsymptoticTables build_asymptotics(const HeckeAlgebra& H,
                                          const CellDecomposition& cd,
                                          int jobs = 1) {
  const GroupTables& W = H.group();
  size_t n = W.size;
  AsymptoticTables at;
  at.H = &H;
  at.cells = &cd;
  at.a_value.assign(n, 0);
  at.delta_value.assign(n, 0);
  at.n_candidate.assign(n, 0);
  at.is_distinguished.assign(n, 0);

  at.full_scan = n <= AsymptoticTables::kFullScanLimit;
  std::vector<Elt> all(n);
  for (Elt x = 0; x < n; ++x) all[x] = x;

  auto scan_pairs = [&](const std::vector<Elt>& xs, const std::vector<Elt>& ys) {
    HeckeAlgebra::parallel_for(ys.size(), jobs, [&](size_t i) {
      H.ensure_rows_fixed_right(ys[i], xs);
    });
    for (Elt y : ys)
      for (Elt x : xs) at.scanned_pairs.emplace_back(x, y);
  };

  if (at.full_scan) {
    scan_pairs(all, all);
  } else {
    for (uint32_t c = 0; c < cd.num_two; ++c)
      scan_pairs(cd.two_cells[c], cd.two_cells[c]);
  }

  // a(z): maximum degree of a structure constant landing on z
  std::vector<long long> amax(n, -1);
  for (const auto& [x, y] : at.scanned_pairs)
    for (const auto& [z, le] : H.leading_row(x, y))
      amax[z] = std::max<long long>(amax[z], le.deg);
  for (Elt z = 0; z < n; ++z) {
    require(amax[z] >= 0, ErrorCode::InconsistentAsymptotics,
            "no structure constant lands on " + W.word_string(z));
    at.a_value[z] = amax[z];
  }
  require(at.a_value[0] == 0, ErrorCode::InconsistentAsymptotics,
          "a(e) must be 0");
  for (uint32_t c = 0; c < cd.num_two; ++c)
    for (Elt x : cd.two_cells[c])
      require(at.a_value[x] == at.a_value[cd.two_cells[c].front()],
              ErrorCode::InconsistentAsymptotics,
              "a is not constant on a two-sided cell");

  // Delta(z) and the candidate sign: p_{e,z} = n_z v^{-Delta(z)} plus
  // strictly smaller powers of v
  for (Elt z = 0; z < n; ++z) {
    LaurentInt p = H.kl_polynomial(0, z);
    require(!p.is_zero(), ErrorCode::Internal, "p_{e,z} vanished");
    at.delta_value[z] = -p.degree();
    Int b = p.top_coefficient();
    require(b >= std::numeric_limits<long long>::min() &&
                b <= std::numeric_limits<long long>::max(),
            ErrorCode::Internal, "n_z exceeds 64 bits");
    at.n_candidate[z] = static_cast<long long>(b);
  }

  // distinguished involutions
  for (Elt z = 0; z < n; ++z)
    if (at.a_value[z] == at.delta_value[z]) {
      at.is_distinguished[z] = 1;
      at.distinguished.push_back(z);
    }
  for (Elt d : at.distinguished) {
    require(W.inverse(d) == d, ErrorCode::InconsistentAsymptotics,
            "distinguished element " + W.word_string(d) +
                " is not an involution");
    require(at.n_candidate[d] == 1 || at.n_candidate[d] == -1,
            ErrorCode::InconsistentAsymptotics,
            "n_d is not a sign at " + W.word_string(d));
  }

  // widen the restricted scan by the distinguished set, and make sure the
  // a-values are unchanged by the extra pairs
  if (!at.full_scan) {
    const std::vector<Elt>& D = at.distinguished;
    for (uint32_t c = 0; c < cd.num_two; ++c) {
      std::vector<Elt> ext = cd.two_cells[c];
      ext.insert(ext.end(), D.begin(), D.end());
      std::sort(ext.begin(), ext.end());
      ext.erase(std::unique(ext.begin(), ext.end()), ext.end());
      scan_pairs(ext, ext);
    }
    std::sort(at.scanned_pairs.begin(), at.scanned_pairs.end());
    at.scanned_pairs.erase(
        std::unique(at.scanned_pairs.begin(), at.scanned_pairs.end()),
        at.scanned_pairs.end());
    for (const auto& [x, y] : at.scanned_pairs)
      for (const auto& [z, le] : H.leading_row(x, y))
        require(le.deg <= at.a_value[z], ErrorCode::InconsistentAsymptotics,
                "restricted a-scan missed a higher degree at " +
                    W.word_string(z));
  }

  // n_d must agree with gamma_{d,d,d}
  for (Elt d : at.distinguished)
    require(at.gamma(d, d, d) == at.n_candidate[d],
            ErrorCode::InconsistentAsymptotics,
            "n_d != gamma_{d,d,d} at " + W.word_string(d));

  // the unique distinguished involution per left cell (absence or
  // multiplicity is reported by the P13 check and faulted by d_of)
  at.d_of_left.assign(cd.num_left, UINT32_MAX);
  for (Elt d : at.distinguished) {
    Elt& slot = at.d_of_left[cd.left_of[d]];
    slot = (slot == UINT32_MAX) ? d : UINT32_MAX - 1;
  }
  return at;
}

struct PReport {
  struct Item {
    std::string name;
    bool pass;
    std::vector<std::string> violations;
  };
  std::vector<Item> items;

  bool all_pass() const {
    for (const auto& i : items)
      if (!i.pass) return false;
    return true;
  }
  std::vector<std::string> failed_names() const {
    std::vector<std::string> out;
    for (const auto& i : items)
      if (!i.pass) out.push_back(i.name);
    return out;
  }
};

// Consequences of P1-P15 that the verification stages rely on, checked
// empirically for the given weights over the scanned gamma support.
inline PReport check_P_consequences(const HeckeAlgebra& H,
                                    const CellDecomposition& cd,
                                    const AsymptoticTables& at) {
  const GroupTables& W = H.group();
  PReport rep;
  auto add = [&](const std::string& name) -> PReport::Item& {
    rep.items.push_back({name, true, {}});
    return rep.items.back();
  };
  auto flag = [&](PReport::Item& item, const std::string& what) {
    item.pass = false;
    if (item.violations.size() < 8) item.violations.push_back(what);
  };

  {
    auto& p1 = add("P1: a(z) <= Delta(z)");
    for (Elt z = 0; z < W.size; ++z)
      if (at.a_value[z] > at.delta_value[z])
        flag(p1, "a > Delta at " + W.word_string(z));
  }
  {
    auto& p4 = add("P4: x <=_LR y implies a(x) >= a(y)");
    for (uint32_t b = 0; b < cd.num_two; ++b)
      for (uint32_t c = 0; c < cd.num_two; ++c)
        if (cd.two_leq[b][c] &&
            at.a_value[cd.two_cells[b].front()] <
                at.a_value[cd.two_cells[c].front()])
          flag(p4, "a decreases downward between cells " + std::to_string(b) +
                       " and " + std::to_string(c));
  }
  {
    auto& p13 = add("P13: each left cell holds exactly one element of D");
    for (uint32_t g = 0; g < cd.num_left; ++g) {
      if (at.d_of_left[g] == UINT32_MAX)
        flag(p13, "left cell of " + W.word_string(cd.left_cells[g].front()) +
                      " misses D");
      else if (at.d_of_left[g] == UINT32_MAX - 1)
        flag(p13, "left cell of " + W.word_string(cd.left_cells[g].front()) +
                      " meets D twice");
    }
  }
  auto& p2 = add("P2: gamma_{x,y,d} != 0 with d in D implies y = x^-1");
  auto& p7 = add("P7: gamma_{x,y,z} = gamma_{y,z,x}");
  auto& p8 = add("P8: gamma_{x,y,z} != 0 implies the left-cell pattern");
  for (const auto& [x, y] : at.scanned_pairs) {
    for (const auto& [w, le] : H.leading_row(x, y)) {
      if (le.deg != at.a_value[w] || le.top == 0) continue;
      Elt z = W.inverse(w);  // gamma_{x,y,z} = le.top
      long long g = le.top;
      if (at.is_distinguished[z] && y != W.inverse(x))
        flag(p2, "gamma(" + W.word_string(x) + "," + W.word_string(y) + "," +
                     W.word_string(z) + ") != 0");
      if (at.gamma(y, z, x) != g)
        flag(p7, "gamma cyclic symmetry fails at (" + W.word_string(x) + "," +
                     W.word_string(y) + "," + W.word_string(z) + ")");
      bool pat = cd.left_of[x] == cd.left_of[W.inverse(y)] &&
                 cd.left_of[y] == cd.left_of[W.inverse(z)] &&
                 cd.left_of[z] == cd.left_of[W.inverse(x)];
      if (!pat)
        flag(p8, "left-cell pattern fails at (" + W.word_string(x) + "," +
                     W.word_string(y) + "," + W.word_string(z) + ")");
    }
  }
  return rep;
}

}  // namespace celllab
