#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <mutex>
#include <thread>
#include <unordered_map>
#include <utility>
#include <vector>

#include "celllab/coxeter.hpp"
#include "celllab/errors.hpp"
#include "celllab/laurent.hpp"

namespace celllab {

// Sparse coordinate vector over group elements, ascending by index,
// no zero entries.
using SparseRow = std::vector<std::pair<Elt, LaurentInt>>;

inline const LaurentInt* sparse_find(const SparseRow& row, Elt e) {
  auto it = std::lower_bound(
      row.begin(), row.end(), e,
      [](const std::pair<Elt, LaurentInt>& t, Elt x) { return t.first < x; });
  if (it != row.end() && it->first == e) return &it->second;
  return nullptr;
}

enum class Basis : uint8_t { T, C, CDag };

inline const char* basis_name(Basis b) {
  switch (b) {
    case Basis::T: return "T";
    case Basis::C: return "c";
    case Basis::CDag: return "c#";
  }
  return "?";
}

/*
  Element of the Hecke algebra in a tagged basis.  Arithmetic between
  elements requires equal tags; conversion is always explicit.
*/
struct HeckeElement {
  Basis basis = Basis::T;
  SparseRow coords;

  static HeckeElement unit_T() {
    return HeckeElement{Basis::T, {{0, LaurentInt::one()}}};
  }
  static HeckeElement basis_vector(Basis b, Elt x) {
    return HeckeElement{b, {{x, LaurentInt::one()}}};
  }

  bool is_zero() const { return coords.empty(); }

  const LaurentInt* coefficient(Elt x) const { return sparse_find(coords, x); }

  HeckeElement& operator+=(const HeckeElement& o) {
    require(basis == o.basis, ErrorCode::BasisMismatch,
            "cannot add elements in different bases");
    if (&o == this) {
      HeckeElement copy = o;
      return *this += copy;
    }
    SparseRow out;
    out.reserve(coords.size() + o.coords.size());
    size_t i = 0, j = 0;
    while (i < coords.size() || j < o.coords.size()) {
      Elt a = i < coords.size() ? coords[i].first : UINT32_MAX;
      Elt b = j < o.coords.size() ? o.coords[j].first : UINT32_MAX;
      if (a < b) {
        out.push_back(std::move(coords[i++]));
      } else if (b < a) {
        out.push_back(o.coords[j++]);
      } else {
        LaurentInt s = std::move(coords[i++].second);
        s += o.coords[j++].second;
        if (!s.is_zero()) out.emplace_back(a, std::move(s));
      }
    }
    coords = std::move(out);
    return *this;
  }

  friend HeckeElement operator+(HeckeElement a, const HeckeElement& b) {
    a += b;
    return a;
  }

  HeckeElement scaled(const LaurentInt& f) const {
    HeckeElement r;
    r.basis = basis;
    if (f.is_zero()) return r;
    r.coords.reserve(coords.size());
    for (const auto& [e, c] : coords) r.coords.emplace_back(e, c * f);
    return r;
  }

  HeckeElement operator-() const { return scaled(LaurentInt::constant(-1)); }

  friend HeckeElement operator-(HeckeElement a, const HeckeElement& b) {
    a += -b;
    return a;
  }

  friend bool operator==(const HeckeElement& a, const HeckeElement& b) {
    return a.basis == b.basis && a.coords == b.coords;
  }
};

// Leading data of one structure constant: the polynomial h_{x,y,z} is
// symmetric under bar, so (degree, top coefficient) determines the pair
// of extreme terms.
struct LeadingEntry {
  int32_t deg;
  long long top;
};
using LeadingRow = std::vector<std::pair<Elt, LeadingEntry>>;

/*
  The Hecke algebra of (W, L) over Z[v, v^-1] with the quadratic relation
  T_s^2 = T_e + (v^L(s) - v^-L(s)) T_s.  Holds the memoized tables:

    - bar(T_y) expanded in the T-basis,
    - the Kazhdan-Lusztig rows c_y (computed as the unique bar-invariant
      unitriangular element with strictly negative correction exponents,
      by descending induction over the Bruhat interval),
    - structure-constant rows c_x c_y = sum_z h_{x,y,z} c_z, kept either
      as full polynomials or as leading data.

  Memo tables behave as computed-once caches; concurrent fills insert
  identical values under a lock.
*/
class HeckeAlgebra {
 public:
  explicit HeckeAlgebra(const GroupTables& W) : W_(W) {
    size_t n = W_.size;
    barT_.resize(n);
    barT_done_ = std::make_unique<std::atomic<uint8_t>[]>(n);
    kl_.resize(n);
    kl_done_ = std::make_unique<std::atomic<uint8_t>[]>(n);
    cdag_.resize(n);
    cdag_done_ = std::make_unique<std::atomic<uint8_t>[]>(n);
    for (size_t i = 0; i < n; ++i) {
      barT_done_[i].store(0, std::memory_order_relaxed);
      kl_done_[i].store(0, std::memory_order_relaxed);
      cdag_done_[i].store(0, std::memory_order_relaxed);
    }
    xi_.reserve(static_cast<size_t>(W_.rank));
    for (int s = 0; s < W_.rank; ++s) {
      long L = W_.generator_weight(s);
      LaurentInt x = LaurentInt::v(static_cast<int32_t>(L));
      x -= LaurentInt::v(static_cast<int32_t>(-L));
      xi_.push_back(std::move(x));
    }
  }

  const GroupTables& group() const { return W_; }

  const LaurentInt& xi(int s) const { return xi_[static_cast<size_t>(s)]; }

  // ---- KL table ----

  // c_x in the T-basis: row of p_{y,x}
  const SparseRow& kl_row(Elt x) const {
    if (!kl_done_[x].load(std::memory_order_acquire)) compute_kl_row(x);
    return kl_[x];
  }

  // p_{y,x}; zero unless y <= x
  LaurentInt kl_polynomial(Elt y, Elt x) const {
    const LaurentInt* p = sparse_find(kl_row(x), y);
    return p ? *p : LaurentInt();
  }

  HeckeElement kl_element(Elt x) const {
    return HeckeElement{Basis::T, kl_row(x)};
  }

  // c_x^# in the T-basis
  const SparseRow& cdag_row(Elt x) const {
    if (!cdag_done_[x].load(std::memory_order_acquire)) {
      const SparseRow& kl = kl_row(x);
      SparseRow r;
      r.reserve(kl.size());
      for (const auto& [u, p] : kl) {
        LaurentInt q = p.bar();
        if (W_.length(u) & 1) q = -q;
        r.emplace_back(u, std::move(q));
      }
      std::lock_guard<std::mutex> lk(memo_mutex_);
      if (!cdag_done_[x].load(std::memory_order_relaxed)) {
        cdag_[x] = std::move(r);
        cdag_done_[x].store(1, std::memory_order_release);
      }
    }
    return cdag_[x];
  }

  void ensure_all_kl() const {
    for (Elt x = 0; x < W_.size; ++x) kl_row(x);
  }

  // ---- products ----

  // product of T-basis elements
  HeckeElement t_multiply(const HeckeElement& a,
                          const HeckeElement& b) const {
    require(a.basis == Basis::T && b.basis == Basis::T,
            ErrorCode::BasisMismatch, "t_multiply needs the T-basis");
    Dense acc(W_.size);
    std::vector<size_t> order(b.coords.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](size_t i, size_t j) {
      return W_.word(b.coords[i].first) < W_.word(b.coords[j].first);
    });
    Dense cur(W_.size);
    for (const auto& [e, f] : a.coords) cur.at(e) += f;
    mult_descend(acc, cur, b, order, 0, order.size(), 0);
    return HeckeElement{Basis::T, acc.extract()};
  }

  // h * T_s and T_s * h on T-basis coordinates
  HeckeElement times_gen(const HeckeElement& h, int s, bool on_right) const {
    require(h.basis == Basis::T, ErrorCode::BasisMismatch,
            "generator product needs the T-basis");
    Dense out(W_.size);
    gen_mult_into(out, h.coords, s, on_right);
    return HeckeElement{Basis::T, out.extract()};
  }

  // ---- involutions and automorphisms ----

  // bar(sum f_y T_y) = sum bar(f_y) (T_{y^-1})^-1
  HeckeElement bar_involution(const HeckeElement& h) const {
    require(h.basis == Basis::T, ErrorCode::BasisMismatch,
            "bar_involution is defined on T-basis coordinates");
    Dense acc(W_.size);
    for (const auto& [y, f] : h.coords) {
      LaurentInt fb = f.bar();
      for (const auto& [u, B] : barT_row(y)) acc.at(u).add_multiplied(B, fb);
    }
    return HeckeElement{Basis::T, acc.extract()};
  }

  // dagger: T_x -> (-1)^l(x) (T_{x^-1})^-1; swaps the c and c# tags
  HeckeElement dagger(const HeckeElement& h) const {
    if (h.basis == Basis::C) return HeckeElement{Basis::CDag, h.coords};
    if (h.basis == Basis::CDag) return HeckeElement{Basis::C, h.coords};
    Dense acc(W_.size);
    for (const auto& [y, f] : h.coords) {
      LaurentInt g = (W_.length(y) & 1) ? -f : f;
      for (const auto& [u, B] : barT_row(y)) acc.at(u).add_multiplied(B, g);
    }
    return HeckeElement{Basis::T, acc.extract()};
  }

  // flat: T_x -> T_{x^-1} (antiautomorphism); c_x -> c_{x^-1}
  HeckeElement flat(const HeckeElement& h) const {
    HeckeElement r;
    r.basis = h.basis;
    r.coords.reserve(h.coords.size());
    for (const auto& [y, f] : h.coords)
      r.coords.emplace_back(W_.inverse(y), f);
    std::sort(r.coords.begin(), r.coords.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return r;
  }

  // conjugation by w0 on any basis: coordinates permuted by sigma
  HeckeElement sigma_hecke(const HeckeElement& h) const {
    HeckeElement r;
    r.basis = h.basis;
    r.coords.reserve(h.coords.size());
    for (const auto& [y, f] : h.coords) r.coords.emplace_back(W_.sigma(y), f);
    std::sort(r.coords.begin(), r.coords.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return r;
  }

  // ---- basis conversions ----

  HeckeElement expand_in_c(const HeckeElement& h) const {
    require(h.basis == Basis::T, ErrorCode::BasisMismatch,
            "conversion starts from the T-basis");
    Dense d(W_.size);
    for (const auto& [e, f] : h.coords) d.at(e) += f;
    return HeckeElement{Basis::C, to_coords(d, Basis::C)};
  }

  HeckeElement expand_in_cdagger(const HeckeElement& h) const {
    require(h.basis == Basis::T, ErrorCode::BasisMismatch,
            "conversion starts from the T-basis");
    Dense d(W_.size);
    for (const auto& [e, f] : h.coords) d.at(e) += f;
    return HeckeElement{Basis::CDag, to_coords(d, Basis::CDag)};
  }

  HeckeElement to_T(const HeckeElement& h) const {
    if (h.basis == Basis::T) return h;
    Dense acc(W_.size);
    for (const auto& [x, f] : h.coords) {
      const SparseRow& row = (h.basis == Basis::C) ? kl_row(x) : cdag_row(x);
      for (const auto& [u, p] : row) acc.at(u).add_multiplied(p, f);
    }
    return HeckeElement{Basis::T, acc.extract()};
  }

  // ---- structure constants ----

  bool leading_known(Elt x, Elt y) const {
    std::lock_guard<std::mutex> lk(memo_mutex_);
    return lead_.count(key(x, y)) != 0;
  }

  const LeadingRow& leading_row(Elt x, Elt y) const {
    {
      std::lock_guard<std::mutex> lk(memo_mutex_);
      auto it = lead_.find(key(x, y));
      if (it != lead_.end()) return it->second;
    }
    compute_rows_fixed_right(y, {x}, false);
    std::lock_guard<std::mutex> lk(memo_mutex_);
    return lead_.at(key(x, y));
  }

  // full Laurent row h_{x,y,.}; kept in the memo
  const SparseRow& full_row(Elt x, Elt y) const {
    {
      std::lock_guard<std::mutex> lk(memo_mutex_);
      auto it = full_.find(key(x, y));
      if (it != full_.end()) return it->second;
    }
    compute_rows_fixed_right(y, {x}, true);
    std::lock_guard<std::mutex> lk(memo_mutex_);
    return full_.at(key(x, y));
  }

  LaurentInt h_coeff(Elt x, Elt y, Elt z) const {
    const LaurentInt* p = sparse_find(full_row(x, y), z);
    return p ? *p : LaurentInt();
  }

  // Leading rows for all (x, y) with x in xs, sharing the fill of the
  // partial products T_u c_y.
  void ensure_rows_fixed_right(Elt y, const std::vector<Elt>& xs) const {
    std::vector<Elt> missing;
    {
      std::lock_guard<std::mutex> lk(memo_mutex_);
      for (Elt x : xs)
        if (!lead_.count(key(x, y))) missing.push_back(x);
    }
    if (!missing.empty()) compute_rows_fixed_right(y, missing, false);
  }

  // ---- cache priming ----

  void prime_kl_row(Elt x, SparseRow row) const {
    std::lock_guard<std::mutex> lk(memo_mutex_);
    if (!kl_done_[x].load(std::memory_order_relaxed)) {
      kl_[x] = std::move(row);
      kl_done_[x].store(1, std::memory_order_release);
    }
  }

  void prime_leading_row(Elt x, Elt y, LeadingRow row) const {
    std::lock_guard<std::mutex> lk(memo_mutex_);
    lead_.emplace(key(x, y), std::move(row));
  }

  // Run fn(i) for i in [0, n) on `jobs` threads.
  static void parallel_for(size_t n, int jobs,
                           const std::function<void(size_t)>& fn) {
    if (jobs <= 1 || n <= 1) {
      for (size_t i = 0; i < n; ++i) fn(i);
      return;
    }
    std::vector<std::thread> pool;
    std::mutex idx_mutex;
    size_t next = 0;
    int count = std::min<int>(jobs, static_cast<int>(n));
    for (int t = 0; t < count; ++t)
      pool.emplace_back([&]() {
        for (;;) {
          size_t i;
          {
            std::lock_guard<std::mutex> lk(idx_mutex);
            if (next >= n) return;
            i = next++;
          }
          fn(i);
        }
      });
    for (auto& th : pool) th.join();
  }

 private:
  // dense scratch over element indices
  struct Dense {
    explicit Dense(size_t n) : val(n), on(n, 0) {}
    std::vector<LaurentInt> val;
    std::vector<uint8_t> on;
    std::vector<Elt> touched;

    LaurentInt& at(Elt e) {
      if (!on[e]) {
        on[e] = 1;
        touched.push_back(e);
      }
      return val[e];
    }
    SparseRow extract() {
      std::sort(touched.begin(), touched.end());
      SparseRow out;
      out.reserve(touched.size());
      for (Elt e : touched) {
        if (!val[e].is_zero()) out.emplace_back(e, std::move(val[e]));
        val[e] = LaurentInt();
        on[e] = 0;
      }
      touched.clear();
      return out;
    }
    void reset() {
      for (Elt e : touched) {
        val[e] = LaurentInt();
        on[e] = 0;
      }
      touched.clear();
    }
  };

  static uint64_t key(Elt x, Elt y) {
    return (static_cast<uint64_t>(x) << 32) | y;
  }

  // out += (coords) * T_s or T_s * (coords)
  void gen_mult_into(Dense& out, const SparseRow& coords, int s,
                     bool on_right) const {
    for (const auto& [e, f] : coords) {
      Elt es = on_right ? W_.right_mult(e, s) : W_.left_mult(s, e);
      out.at(es) += f;
      if (W_.length(es) < W_.length(e))
        out.at(e).add_multiplied(f, xi_[static_cast<size_t>(s)]);
    }
  }

  void mult_descend(Dense& acc, Dense& cur, const HeckeElement& b,
                    const std::vector<size_t>& order, size_t lo, size_t hi,
                    size_t depth) const {
    // emit terms of b whose word is the current prefix
    while (lo < hi && W_.word(b.coords[order[lo]].first).size() == depth) {
      const LaurentInt& g = b.coords[order[lo]].second;
      for (Elt e : cur.touched)
        if (!cur.val[e].is_zero()) acc.at(e).add_multiplied(cur.val[e], g);
      ++lo;
    }
    size_t i = lo;
    while (i < hi) {
      uint8_t s = W_.word(b.coords[order[i]].first)[depth];
      size_t j = i;
      while (j < hi && W_.word(b.coords[order[j]].first)[depth] == s) ++j;
      Dense next(W_.size);
      SparseRow snapshot;
      snapshot.reserve(cur.touched.size());
      for (Elt e : cur.touched)
        if (!cur.val[e].is_zero()) snapshot.emplace_back(e, cur.val[e]);
      std::sort(snapshot.begin(), snapshot.end(),
                [](const auto& a, const auto& b2) { return a.first < b2.first; });
      gen_mult_into(next, snapshot, s, true);
      mult_descend(acc, next, b, order, i, j, depth + 1);
      i = j;
    }
  }

  // bar(T_y) in the T-basis, via bar(T_{s p}) = (T_s - xi_s) bar(T_p)
  const SparseRow& barT_row(Elt y) const {
    if (barT_done_[y].load(std::memory_order_acquire)) return barT_[y];
    // build the chain along the canonical word
    std::vector<Elt> chain;
    Elt w = y;
    while (!barT_done_[w].load(std::memory_order_acquire) && w != 0) {
      chain.push_back(w);
      w = W_.left_mult(W_.word(w)[0], w);
    }
    if (w == 0 && !barT_done_[0].load(std::memory_order_acquire)) {
      SparseRow r{{0, LaurentInt::one()}};
      store_barT(0, std::move(r));
    }
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
      Elt z = *it;
      if (barT_done_[z].load(std::memory_order_acquire)) continue;
      int s = W_.word(z)[0];
      const SparseRow& prev = barT_[W_.left_mult(s, z)];
      Dense d(W_.size);
      gen_mult_left_sparse(d, prev, s);
      for (const auto& [u, f] : prev)
        d.at(u).add_multiplied(f, -xi_[static_cast<size_t>(s)]);
      store_barT(z, d.extract());
    }
    return barT_[y];
  }

  void gen_mult_left_sparse(Dense& out, const SparseRow& coords, int s) const {
    for (const auto& [e, f] : coords) {
      Elt se = W_.left_mult(s, e);
      out.at(se) += f;
      if (W_.length(se) < W_.length(e))
        out.at(e).add_multiplied(f, xi_[static_cast<size_t>(s)]);
    }
  }

  void store_barT(Elt y, SparseRow r) const {
    std::lock_guard<std::mutex> lk(memo_mutex_);
    if (!barT_done_[y].load(std::memory_order_relaxed)) {
      barT_[y] = std::move(r);
      barT_done_[y].store(1, std::memory_order_release);
    }
  }

  /*
    Kazhdan-Lusztig row for x.  With q_y the T-coordinates of c_x, the
    bar-fixedness amounts to q_u - bar(q_u) = sum_{y > u} bar(q_y) B_{u,y}
    over the interval [e, x]; the right side is accumulated by descending
    index, and the unique solution with negative exponents is its
    negative part.
  */
  void compute_kl_row(Elt x) const {
    for (Elt u : W_.bruhat_interval_below(x)) barT_row(u);
    Dense g(W_.size);
    SparseRow out;
    std::vector<std::pair<Elt, LaurentInt>> solved;  // collected descending
    // seed with q_x = 1
    solved.emplace_back(x, LaurentInt::one());
    scatter_bar_column(g, x, LaurentInt::one());
    for (Elt u = x; u-- > 0;) {
      if (!g.on[u] || g.val[u].is_zero()) continue;
      const LaurentInt& gu = g.val[u];
      require(gu.coefficient(0) == 0 && gu.bar() == -gu, ErrorCode::Internal,
              "bar system is not antisymmetric");
      LaurentInt q = gu.negative_part();
      if (q.is_zero()) continue;
      scatter_bar_column(g, u, q.bar());
      solved.emplace_back(u, std::move(q));
    }
    std::sort(solved.begin(), solved.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::lock_guard<std::mutex> lk(memo_mutex_);
    if (!kl_done_[x].load(std::memory_order_relaxed)) {
      kl_[x] = std::move(solved);
      kl_done_[x].store(1, std::memory_order_release);
    }
  }

  // g += bar(q_y) * column(bar T_y), diagonal excluded
  void scatter_bar_column(Dense& g, Elt y, const LaurentInt& qbar) const {
    for (const auto& [u, B] : barT_[y]) {
      if (u == y) continue;
      g.at(u).add_multiplied(B, qbar);
    }
  }

  /*
    Structure rows with a fixed right factor: computes, for every x in
    xs, the c-expansion of c_x c_y.  The partial products R_u = T_u c_y
    are filled once over the prefix closure of the needed supports, then
    each product is assembled as sum_u p_{u,x} R_u and converted.
  */
  void compute_rows_fixed_right(Elt y, const std::vector<Elt>& xs,
                                bool force_full) const {
    // prefix closure under removing the first letter of the word
    std::vector<uint8_t> needed(W_.size, 0);
    std::vector<Elt> stack;
    for (Elt x : xs)
      for (const auto& [u, p] : kl_row(x))
        if (!needed[u]) {
          needed[u] = 1;
          stack.push_back(u);
        }
    while (!stack.empty()) {
      Elt u = stack.back();
      stack.pop_back();
      if (u == 0) continue;
      Elt parent = W_.left_mult(W_.word(u)[0], u);
      if (!needed[parent]) {
        needed[parent] = 1;
        stack.push_back(parent);
      }
    }
    std::vector<Elt> order;
    for (Elt u = 0; u < W_.size; ++u)
      if (needed[u]) order.push_back(u);  // ascending index = ascending length
    std::vector<SparseRow> R(W_.size);
    Dense scratch(W_.size);
    for (Elt u : order) {
      if (u == 0) {
        R[0] = kl_row(y);
        continue;
      }
      int s = W_.word(u)[0];
      const SparseRow& prev = R[W_.left_mult(s, u)];
      gen_mult_left_sparse(scratch, prev, s);
      R[u] = scratch.extract();
    }
    // assemble and convert per x
    Dense acc(W_.size);
    for (Elt x : xs) {
      for (const auto& [u, p] : kl_row(x))
        for (const auto& [z, f] : R[u]) acc.at(z).add_multiplied(f, p);
      SparseRow crow = to_coords(acc, Basis::C);
      LeadingRow lead;
      lead.reserve(crow.size());
      for (const auto& [z, h] : crow) {
        require(h.is_bar_symmetric(), ErrorCode::Internal,
                "structure constant is not bar-symmetric");
        lead.emplace_back(
            z, LeadingEntry{h.degree(), to_long(h.top_coefficient())});
      }
      bool keep_full = force_full || W_.inverse(y) == y;
      std::lock_guard<std::mutex> lk(memo_mutex_);
      if (!lead_.count(key(x, y))) lead_.emplace(key(x, y), std::move(lead));
      if (keep_full && !full_.count(key(x, y)))
        full_.emplace(key(x, y), std::move(crow));
    }
  }

  static long long to_long(const Int& v) {
    require(v >= std::numeric_limits<long long>::min() &&
                v <= std::numeric_limits<long long>::max(),
            ErrorCode::Internal, "structure coefficient exceeds 64 bits");
    return static_cast<long long>(v);
  }

  /*
    Conversion of a T-basis dense element to c or c# coordinates by
    peeling leading terms in descending index order (canonical index
    order refines length order, and both expansions are unitriangular
    over Bruhat intervals).
  */
  SparseRow to_coords(Dense& d, Basis target) const {
    SparseRow out;
    if (d.touched.empty()) return out;
    Elt top = *std::max_element(d.touched.begin(), d.touched.end());
    for (Elt e = top + 1; e-- > 0;) {
      if (!d.on[e] || d.val[e].is_zero()) continue;
      LaurentInt q = std::move(d.val[e]);
      d.val[e] = LaurentInt();
      if (target == Basis::CDag && (W_.length(e) & 1)) q = -q;
      const SparseRow& row = (target == Basis::C) ? kl_row(e) : cdag_row(e);
      for (const auto& [u, p] : row) {
        if (u == e) continue;
        d.at(u).add_multiplied(p, -q);
      }
      out.emplace_back(e, std::move(q));
    }
    d.reset();
    std::reverse(out.begin(), out.end());
    return out;
  }

  const GroupTables& W_;
  std::vector<LaurentInt> xi_;

  mutable std::mutex memo_mutex_;
  mutable std::vector<SparseRow> barT_, kl_, cdag_;
  mutable std::unique_ptr<std::atomic<uint8_t>[]> barT_done_, kl_done_,
      cdag_done_;
  mutable std::unordered_map<uint64_t, LeadingRow> lead_;
  mutable std::unordered_map<uint64_t, SparseRow> full_;
};

}  // namespace celllab
