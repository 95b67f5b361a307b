#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <queue>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "celllab/errors.hpp"
#include "celllab/root_field.hpp"

namespace celllab {

using Elt = uint32_t;
using GenMask = uint32_t;

constexpr int kMaxRank = 16;

/*
  A finite Coxeter system given by its Coxeter matrix and a positive
  integral weight on the generators.  The weight must be constant on
  generators joined by an odd bond, otherwise it does not extend to a
  weight function on the group.
*/
struct CoxeterDatum {
  int rank = 0;
  std::vector<std::vector<int>> coxeter_matrix;  // m(s,t), m(s,s)=1
  std::vector<long> weights;                     // L(s) > 0

  void validate() const {
    require(rank >= 1 && rank <= kMaxRank, ErrorCode::InvalidMatrix,
            "rank must be between 1 and " + std::to_string(kMaxRank));
    require(static_cast<int>(coxeter_matrix.size()) == rank,
            ErrorCode::InvalidMatrix, "matrix size does not match rank");
    for (int i = 0; i < rank; ++i) {
      require(static_cast<int>(coxeter_matrix[i].size()) == rank,
              ErrorCode::InvalidMatrix, "matrix is not square");
      require(coxeter_matrix[i][i] == 1, ErrorCode::InvalidMatrix,
              "diagonal entries must be 1");
      for (int j = 0; j < rank; ++j) {
        require(coxeter_matrix[i][j] == coxeter_matrix[j][i],
                ErrorCode::InvalidMatrix, "matrix must be symmetric");
        if (i != j)
          require(coxeter_matrix[i][j] >= 2, ErrorCode::InvalidMatrix,
                  "off-diagonal entries must be >= 2");
      }
    }
    require(static_cast<int>(weights.size()) == rank,
            ErrorCode::InvalidWeights, "weights length must equal rank");
    for (long w : weights)
      require(w >= 1, ErrorCode::InvalidWeights, "weights must be positive");
    for (int i = 0; i < rank; ++i)
      for (int j = i + 1; j < rank; ++j)
        if (coxeter_matrix[i][j] % 2 == 1)
          require(weights[i] == weights[j], ErrorCode::InvalidWeights,
                  "generators joined by an odd bond need equal weights");
  }

  bool equal_parameters() const {
    for (long w : weights)
      if (w != 1) return false;
    return true;
  }
};

namespace detail {

struct ComponentType {
  std::string name;
  unsigned long long order;
};

inline unsigned long long factorial(int n) {
  unsigned long long f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<unsigned long long>(i);
  return f;
}

// Numeric positive-definiteness of the geometric bilinear form; fails
// fast with a clean message before type classification is attempted.
inline bool form_positive_definite(const CoxeterDatum& d) {
  int n = d.rank;
  std::vector<std::vector<double>> g(static_cast<size_t>(n),
                                     std::vector<double>(static_cast<size_t>(n)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      g[static_cast<size_t>(i)][static_cast<size_t>(j)] =
          (i == j)
              ? 1.0
              : -std::cos(std::acos(-1.0) /
                          d.coxeter_matrix[static_cast<size_t>(i)]
                                          [static_cast<size_t>(j)]);
  for (int k = 0; k < n; ++k) {  // LDL^T pivots
    double piv = g[static_cast<size_t>(k)][static_cast<size_t>(k)];
    if (piv < 1e-9) return false;
    for (int i = k + 1; i < n; ++i) {
      double f = g[static_cast<size_t>(i)][static_cast<size_t>(k)] / piv;
      for (int j = k; j < n; ++j)
        g[static_cast<size_t>(i)][static_cast<size_t>(j)] -=
            f * g[static_cast<size_t>(k)][static_cast<size_t>(j)];
    }
  }
  return true;
}

// Classify one connected diagram component against the finite-type list;
// empty when the component is not of finite type.
inline std::optional<ComponentType> classify_component(
    const CoxeterDatum& d, const std::vector<int>& nodes) {
  int n = static_cast<int>(nodes.size());
  auto m_of = [&](int a, int b) {
    return d.coxeter_matrix[static_cast<size_t>(nodes[static_cast<size_t>(a)])]
                           [static_cast<size_t>(nodes[static_cast<size_t>(b)])];
  };
  if (n == 1) return ComponentType{"A1", 2};
  if (n == 2) {
    int m = m_of(0, 1);
    std::string name;
    switch (m) {
      case 3: name = "A2"; break;
      case 4: name = "B2"; break;
      case 5: name = "H2"; break;
      case 6: name = "G2"; break;
      default: name = "I2(" + std::to_string(m) + ")"; break;
    }
    return ComponentType{name, 2ull * static_cast<unsigned long long>(m)};
  }

  std::vector<std::pair<int, int>> edges;
  std::vector<int> labels;
  std::vector<int> degree(static_cast<size_t>(n), 0);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      int m = m_of(a, b);
      if (m >= 3) {
        edges.emplace_back(a, b);
        labels.push_back(m);
        ++degree[static_cast<size_t>(a)];
        ++degree[static_cast<size_t>(b)];
      }
    }
  if (static_cast<int>(edges.size()) != n - 1) return std::nullopt;  // cycle
  int big4 = 0, big5 = 0;
  for (int m : labels) {
    if (m == 4) ++big4;
    else if (m == 5) ++big5;
    else if (m != 3) return std::nullopt;
  }
  if (big4 + big5 > 1) return std::nullopt;
  int maxdeg = *std::max_element(degree.begin(), degree.end());
  bool is_path = maxdeg <= 2;

  if (big5 == 1) {
    if (!is_path || n > 4) return std::nullopt;
    for (size_t e = 0; e < edges.size(); ++e)
      if (labels[e] == 5 &&
          (degree[static_cast<size_t>(edges[e].first)] == 1 ||
           degree[static_cast<size_t>(edges[e].second)] == 1))
        return ComponentType{n == 3 ? "H3" : "H4", n == 3 ? 120ull : 14400ull};
    return std::nullopt;
  }
  if (big4 == 1) {
    if (!is_path) return std::nullopt;
    for (size_t e = 0; e < edges.size(); ++e) {
      if (labels[e] != 4) continue;
      bool at_leaf = degree[static_cast<size_t>(edges[e].first)] == 1 ||
                     degree[static_cast<size_t>(edges[e].second)] == 1;
      if (at_leaf)
        return ComponentType{"B" + std::to_string(n),
                             (1ull << n) * factorial(n)};
      if (n == 4) return ComponentType{"F4", 1152};
    }
    return std::nullopt;
  }
  if (is_path)
    return ComponentType{"A" + std::to_string(n), factorial(n + 1)};
  if (maxdeg > 3) return std::nullopt;
  if (std::count(degree.begin(), degree.end(), 3) != 1) return std::nullopt;
  int fork = static_cast<int>(
      std::find(degree.begin(), degree.end(), 3) - degree.begin());
  std::vector<std::vector<int>> adj(static_cast<size_t>(n));
  for (auto& e : edges) {
    adj[static_cast<size_t>(e.first)].push_back(e.second);
    adj[static_cast<size_t>(e.second)].push_back(e.first);
  }
  std::vector<int> branch;
  for (int nb : adj[static_cast<size_t>(fork)]) {
    int len = 1, prev = fork, cur = nb;
    while (degree[static_cast<size_t>(cur)] == 2) {
      int nxt = adj[static_cast<size_t>(cur)][0] == prev
                    ? adj[static_cast<size_t>(cur)][1]
                    : adj[static_cast<size_t>(cur)][0];
      prev = cur;
      cur = nxt;
      ++len;
    }
    branch.push_back(len);
  }
  std::sort(branch.begin(), branch.end());
  if (branch[0] == 1 && branch[1] == 1)
    return ComponentType{"D" + std::to_string(n),
                         (1ull << (n - 1)) * factorial(n)};
  if (branch[0] == 1 && branch[1] == 2) {
    if (branch[2] == 2) return ComponentType{"E6", 51840ull};
    if (branch[2] == 3) return ComponentType{"E7", 2903040ull};
    if (branch[2] == 4) return ComponentType{"E8", 696729600ull};
  }
  return std::nullopt;
}

}  // namespace detail

struct FiniteTypeInfo {
  std::string name;  // e.g. "A3" or "B2xA1"
  unsigned long long order = 1;
};

inline FiniteTypeInfo classify_finite_type(const CoxeterDatum& d) {
  if (!detail::form_positive_definite(d))
    fail(ErrorCode::InfiniteGroup,
         "bilinear form is not positive definite; the group is infinite");
  std::vector<int> comp(static_cast<size_t>(d.rank), -1);
  int ncomp = 0;
  for (int i = 0; i < d.rank; ++i) {
    if (comp[static_cast<size_t>(i)] != -1) continue;
    std::queue<int> q;
    q.push(i);
    comp[static_cast<size_t>(i)] = ncomp;
    while (!q.empty()) {
      int a = q.front();
      q.pop();
      for (int b = 0; b < d.rank; ++b)
        if (b != a &&
            d.coxeter_matrix[static_cast<size_t>(a)][static_cast<size_t>(b)] >=
                3 &&
            comp[static_cast<size_t>(b)] == -1) {
          comp[static_cast<size_t>(b)] = ncomp;
          q.push(b);
        }
    }
    ++ncomp;
  }
  FiniteTypeInfo info;
  for (int c = 0; c < ncomp; ++c) {
    std::vector<int> nodes;
    for (int i = 0; i < d.rank; ++i)
      if (comp[static_cast<size_t>(i)] == c) nodes.push_back(i);
    auto t = detail::classify_component(d, nodes);
    if (!t)
      fail(ErrorCode::InfiniteGroup, "diagram component is not of finite type");
    if (!info.name.empty()) info.name += "x";
    info.name += t->name;
    info.order *= t->order;
  }
  return info;
}

/*
  Fully enumerated finite Coxeter group.

  Elements act on the root system as signed permutations of the positive
  roots; exact number-ring arithmetic is used once to build the generator
  actions, after which everything is table lookups.  Element indices are
  canonical: sorted by (length, lexicographically least reduced word), so
  index 0 is the identity and the numbering is stable across runs.

  Immutable after build; all queries are const.
*/
class GroupTables {
 public:
  static constexpr size_t kBruhatTableLimit = 1200;

  CoxeterDatum datum;
  FiniteTypeInfo type;
  size_t size = 0;
  int rank = 0;

  static GroupTables build(const CoxeterDatum& datum_in,
                           size_t max_order = 250000,
                           size_t bruhat_table_limit = kBruhatTableLimit) {
    CoxeterDatum d = datum_in;
    d.validate();
    GroupTables g;
    g.datum = d;
    g.rank = d.rank;
    g.type = classify_finite_type(d);
    require(g.type.order <= max_order, ErrorCode::GroupTooLarge,
            "group of type " + g.type.name + " has " +
                std::to_string(g.type.order) +
                " elements, above the enumeration cap");
    g.enumerate();
    g.build_bruhat(bruhat_table_limit);
    return g;
  }

  uint32_t length(Elt x) const { return length_[x]; }
  long long weight(Elt x) const { return weight_[x]; }
  Elt inverse(Elt x) const { return inverse_[x]; }
  Elt sigma(Elt x) const { return sigma_[x]; }
  GenMask left_descents(Elt x) const { return left_desc_[x]; }
  GenMask right_descents(Elt x) const { return right_desc_[x]; }
  Elt right_mult(Elt x, int s) const {
    return rprod_[x * static_cast<size_t>(rank) + static_cast<size_t>(s)];
  }
  Elt left_mult(int s, Elt x) const {
    return lprod_[x * static_cast<size_t>(rank) + static_cast<size_t>(s)];
  }
  Elt identity() const { return 0; }
  Elt w0() const { return w0_; }
  Elt generator(int s) const { return right_mult(0, s); }
  const std::vector<uint8_t>& word(Elt x) const { return words_[x]; }
  long generator_weight(int s) const {
    return datum.weights[static_cast<size_t>(s)];
  }
  uint32_t num_positive_roots() const { return num_pos_roots_; }

  Elt product(Elt x, Elt y) const {
    check_elt(x);
    check_elt(y);
    Elt r = x;
    for (uint8_t s : words_[y]) r = right_mult(r, s);
    return r;
  }

  bool bruhat_leq(Elt x, Elt y) const {
    check_elt(x);
    check_elt(y);
    if (length_[x] > length_[y]) return false;
    if (x == y) return true;
    const uint64_t* row = bruhat_row(y);
    return (row[x >> 6] >> (x & 63)) & 1;
  }

  // all x with x <= y, ascending by index
  std::vector<Elt> bruhat_interval_below(Elt y) const {
    std::vector<Elt> out;
    const uint64_t* row = bruhat_row(y);
    for (Elt x = 0; x < size; ++x)
      if ((row[x >> 6] >> (x & 63)) & 1) out.push_back(x);
    return out;
  }

  std::string word_string(Elt x) const {
    std::string s;
    for (size_t i = 0; i < words_[x].size(); ++i) {
      if (i) s += ".";
      s += std::to_string(static_cast<int>(words_[x][i]) + 1);
    }
    return s;
  }

  Elt element_from_word_string(const std::string& str) const {
    Elt r = 0;
    if (str.empty()) return r;
    std::stringstream ss(str);
    std::string tok;
    while (std::getline(ss, tok, '.')) {
      int g = 0;
      try {
        g = std::stoi(tok);
      } catch (...) {
        fail(ErrorCode::InvalidElement, "bad word token '" + tok + "'");
      }
      require(g >= 1 && g <= rank, ErrorCode::InvalidElement,
              "generator index out of range in '" + str + "'");
      r = right_mult(r, g - 1);
    }
    return r;
  }

  void check_elt(Elt x) const {
    require(x < size, ErrorCode::InvalidElement, "element id out of range");
  }

 private:
  static constexpr uint16_t kNeg = 0x8000;  // sign bit of a root code

  uint32_t num_pos_roots_ = 0;
  Elt w0_ = 0;
  std::vector<uint32_t> length_;
  std::vector<long long> weight_;
  std::vector<Elt> inverse_;
  std::vector<Elt> sigma_;
  std::vector<GenMask> left_desc_, right_desc_;
  std::vector<Elt> rprod_, lprod_;           // size*rank
  std::vector<std::vector<uint8_t>> words_;  // canonical reduced words

  size_t bruhat_stride_ = 0;
  std::vector<uint64_t> bruhat_table_;  // size*stride when size is small
  mutable std::unique_ptr<std::mutex> bruhat_mutex_ =
      std::make_unique<std::mutex>();
  mutable std::map<Elt, std::vector<uint64_t>> bruhat_cache_;

  struct VecHash {
    size_t operator()(const std::vector<uint16_t>& v) const {
      size_t h = 1469598103934665603ull;
      for (uint16_t x : v) {
        h ^= x;
        h *= 1099511628211ull;
      }
      return h;
    }
  };

  void enumerate() {
    const int n = rank;
    // lcm of the bond labels fixes the coefficient ring
    long long N = 2;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        N = std::lcm(N, static_cast<long long>(
                            datum.coxeter_matrix[static_cast<size_t>(i)]
                                                [static_cast<size_t>(j)]));
    RootField F(static_cast<int>(N));

    using Vec = std::vector<RootField::Elem>;  // coordinates in simple roots
    auto vec_key = [&](const Vec& v) {
      std::string k;
      for (const auto& c : v) k += F.to_string(c) + ";";
      return k;
    };
    // s_i(a_j) = a_j + 2cos(pi/m_ij) a_i,  s_i(a_i) = -a_i
    std::vector<std::vector<RootField::Elem>> bond(
        static_cast<size_t>(n), std::vector<RootField::Elem>(static_cast<size_t>(n), F.zero()));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j)
          bond[static_cast<size_t>(i)][static_cast<size_t>(j)] =
              F.two_cos_pi_over(datum.coxeter_matrix[static_cast<size_t>(i)]
                                                    [static_cast<size_t>(j)]);
    auto reflect = [&](int i, const Vec& v) {
      Vec r = v;
      // new i-coordinate: -v_i + sum_j 2cos(pi/m_ij) v_j
      RootField::Elem ci = v[static_cast<size_t>(i)];
      for (auto& c : ci) c = -c;
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        RootField::Elem t =
            F.mul(bond[static_cast<size_t>(i)][static_cast<size_t>(j)],
                  v[static_cast<size_t>(j)]);
        F.add_inplace(ci, t);
      }
      r[static_cast<size_t>(i)] = std::move(ci);
      return r;
    };

    // enumerate all roots by closing the simple roots under reflections
    std::vector<Vec> roots;
    std::map<std::string, uint32_t> root_index;
    std::queue<uint32_t> rq;
    for (int i = 0; i < n; ++i) {
      Vec v(static_cast<size_t>(n), F.zero());
      v[static_cast<size_t>(i)][0] = 1;
      root_index[vec_key(v)] = static_cast<uint32_t>(roots.size());
      roots.push_back(v);
      rq.push(static_cast<uint32_t>(roots.size() - 1));
    }
    while (!rq.empty()) {
      uint32_t r = rq.front();
      rq.pop();
      for (int i = 0; i < n; ++i) {
        Vec img = reflect(i, roots[r]);
        std::string k = vec_key(img);
        if (!root_index.count(k)) {
          root_index[k] = static_cast<uint32_t>(roots.size());
          roots.push_back(img);
          rq.push(static_cast<uint32_t>(roots.size() - 1));
        }
      }
    }
    // split into positive/negative halves
    auto root_sign = [&](const Vec& v) {
      for (const auto& c : v) {
        int s = F.sign(c);
        if (s != 0) return s;
      }
      fail(ErrorCode::Internal, "zero root");
    };
    std::vector<uint32_t> pos_of_root(roots.size(), UINT32_MAX);
    std::vector<uint32_t> pos_roots;
    for (uint32_t r = 0; r < roots.size(); ++r)
      if (root_sign(roots[r]) > 0) {
        pos_of_root[r] = static_cast<uint32_t>(pos_roots.size());
        pos_roots.push_back(r);
      }
    num_pos_roots_ = static_cast<uint32_t>(pos_roots.size());
    require(2 * num_pos_roots_ == roots.size(), ErrorCode::Internal,
            "root system halves mismatch");
    // signed positive-root code of an arbitrary root vector
    auto code_of = [&](const Vec& v) -> uint16_t {
      auto it = root_index.find(vec_key(v));
      require(it != root_index.end(), ErrorCode::Internal,
              "root image not in system");
      uint32_t r = it->second;
      if (pos_of_root[r] != UINT32_MAX)
        return static_cast<uint16_t>(pos_of_root[r]);
      Vec neg = v;
      for (auto& c : neg)
        for (auto& x : c) x = -x;
      auto it2 = root_index.find(vec_key(neg));
      require(it2 != root_index.end() &&
                  pos_of_root[it2->second] != UINT32_MAX,
              ErrorCode::Internal, "negative root image not in system");
      return static_cast<uint16_t>(pos_of_root[it2->second] | kNeg);
    };

    // generator action on positive roots
    std::vector<std::vector<uint16_t>> gen_perm(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
      gen_perm[static_cast<size_t>(i)].resize(num_pos_roots_);
      for (uint32_t p = 0; p < num_pos_roots_; ++p)
        gen_perm[static_cast<size_t>(i)][p] =
            code_of(reflect(i, roots[pos_roots[p]]));
    }
    std::vector<uint32_t> simple_pos(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
      Vec v(static_cast<size_t>(n), F.zero());
      v[static_cast<size_t>(i)][0] = 1;
      simple_pos[static_cast<size_t>(i)] = pos_of_root[root_index[vec_key(v)]];
    }

    // breadth-first enumeration of the group by right multiplication
    const uint32_t R = num_pos_roots_;
    std::vector<std::vector<uint16_t>> perms;
    std::unordered_map<std::vector<uint16_t>, Elt, VecHash> elt_of;
    std::vector<uint32_t> plen;
    std::vector<long long> pweight;
    {
      std::vector<uint16_t> id(R);
      for (uint32_t p = 0; p < R; ++p) id[p] = static_cast<uint16_t>(p);
      elt_of[id] = 0;
      perms.push_back(std::move(id));
      plen.push_back(0);
      pweight.push_back(0);
    }
    auto apply = [&](const std::vector<uint16_t>& pm,
                     uint16_t code) -> uint16_t {
      uint16_t img = pm[code & ~kNeg];
      return static_cast<uint16_t>(img ^ (code & kNeg));
    };
    for (Elt q = 0; q < perms.size(); ++q) {
      for (int s = 0; s < n; ++s) {
        // (q s)(b) = q(s(b))
        std::vector<uint16_t> np(R);
        const auto& gp = gen_perm[static_cast<size_t>(s)];
        for (uint32_t p = 0; p < R; ++p) np[p] = apply(perms[q], gp[p]);
        if (!elt_of.count(np)) {
          elt_of[np] = static_cast<Elt>(perms.size());
          plen.push_back(plen[q] + 1);
          pweight.push_back(pweight[q] +
                            datum.weights[static_cast<size_t>(s)]);
          perms.push_back(std::move(np));
        }
      }
    }
    size = perms.size();
    require(size == type.order, ErrorCode::Internal,
            "enumerated order disagrees with the classification");

    // BFS depth must equal the inversion count
    for (Elt x = 0; x < size; ++x) {
      uint32_t neg = 0;
      for (uint32_t p = 0; p < R; ++p)
        if (perms[x][p] & kNeg) ++neg;
      require(neg == plen[x], ErrorCode::Internal,
              "length disagrees with inversion count");
    }

    // provisional products and canonical words
    std::vector<Elt> prprod(size * static_cast<size_t>(n));
    std::vector<Elt> plprod(size * static_cast<size_t>(n));
    {
      std::vector<uint16_t> buf(R);
      for (Elt x = 0; x < size; ++x)
        for (int s = 0; s < n; ++s) {
          const auto& gp = gen_perm[static_cast<size_t>(s)];
          for (uint32_t p = 0; p < R; ++p) buf[p] = apply(perms[x], gp[p]);
          prprod[x * static_cast<size_t>(n) + static_cast<size_t>(s)] =
              elt_of.at(buf);
          for (uint32_t p = 0; p < R; ++p) buf[p] = apply(gp, perms[x][p]);
          plprod[x * static_cast<size_t>(n) + static_cast<size_t>(s)] =
              elt_of.at(buf);
        }
    }
    std::vector<std::vector<uint8_t>> pwords(size);
    for (Elt x = 0; x < size; ++x) {
      Elt w = x;
      auto& word = pwords[x];
      while (plen[w] > 0) {
        for (int s = 0; s < n; ++s) {
          Elt sw = plprod[w * static_cast<size_t>(n) + static_cast<size_t>(s)];
          if (plen[sw] < plen[w]) {
            word.push_back(static_cast<uint8_t>(s));
            w = sw;
            break;
          }
        }
      }
    }

    // canonical renumbering: by (length, lexicographically least word)
    std::vector<Elt> order(size);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](Elt a, Elt b) {
      if (plen[a] != plen[b]) return plen[a] < plen[b];
      return pwords[a] < pwords[b];
    });
    std::vector<Elt> newid(size);
    for (Elt i = 0; i < size; ++i) newid[order[i]] = i;

    length_.resize(size);
    weight_.resize(size);
    words_.resize(size);
    rprod_.resize(size * static_cast<size_t>(n));
    lprod_.resize(size * static_cast<size_t>(n));
    inverse_.resize(size);
    left_desc_.assign(size, 0);
    right_desc_.assign(size, 0);
    std::vector<uint16_t> new_perms(size * R);
    for (Elt old = 0; old < size; ++old) {
      Elt nw = newid[old];
      length_[nw] = plen[old];
      weight_[nw] = pweight[old];
      words_[nw] = pwords[old];
      for (int s = 0; s < n; ++s) {
        rprod_[nw * static_cast<size_t>(n) + static_cast<size_t>(s)] =
            newid[prprod[old * static_cast<size_t>(n) +
                         static_cast<size_t>(s)]];
        lprod_[nw * static_cast<size_t>(n) + static_cast<size_t>(s)] =
            newid[plprod[old * static_cast<size_t>(n) +
                         static_cast<size_t>(s)]];
      }
      std::copy(perms[old].begin(), perms[old].end(),
                new_perms.begin() + nw * R);
    }
    require(length_[0] == 0, ErrorCode::Internal, "identity not at index 0");

    // inverses via permutation inversion
    {
      std::vector<uint16_t> inv(R);
      for (Elt x = 0; x < size; ++x) {
        const uint16_t* pm = &new_perms[x * R];
        for (uint32_t p = 0; p < R; ++p) {
          uint16_t c = pm[p];
          inv[c & ~kNeg] = static_cast<uint16_t>(p | (c & kNeg));
        }
        auto key = std::vector<uint16_t>(inv.begin(), inv.end());
        // look up in the old map, then translate
        auto it = elt_of.find(key);
        require(it != elt_of.end(), ErrorCode::Internal, "inverse not found");
        inverse_[x] = newid[it->second];
      }
    }

    // descents
    for (Elt x = 0; x < size; ++x) {
      for (int s = 0; s < n; ++s) {
        if (length_[right_mult(x, s)] < length_[x])
          right_desc_[x] |= (1u << s);
        if (length_[left_mult(s, x)] < length_[x]) left_desc_[x] |= (1u << s);
      }
    }

    // the longest element and the diagram automorphism w -> w0 w w0
    uint32_t maxlen = *std::max_element(length_.begin(), length_.end());
    require(maxlen == R, ErrorCode::Internal,
            "longest element length differs from the positive root count");
    size_t nmax = 0;
    for (Elt x = 0; x < size; ++x)
      if (length_[x] == maxlen) {
        w0_ = x;
        ++nmax;
      }
    require(nmax == 1, ErrorCode::Internal, "longest element not unique");
    require(product(w0_, w0_) == 0, ErrorCode::Internal, "w0^2 != e");
    sigma_.resize(size);
    for (Elt x = 0; x < size; ++x) {
      sigma_[x] = product(product(w0_, x), w0_);
      require(length_[sigma_[x]] == length_[x] &&
                  weight_[sigma_[x]] == weight_[x],
              ErrorCode::Internal, "sigma does not preserve length/weight");
    }
  }

  void build_bruhat(size_t table_limit) {
    bruhat_stride_ = (size + 63) / 64;
    if (size > table_limit) return;  // lazy rows above this size
    bruhat_table_.assign(size * bruhat_stride_, 0);
    std::vector<Elt> by_len(size);
    std::iota(by_len.begin(), by_len.end(), 0);
    std::stable_sort(by_len.begin(), by_len.end(), [&](Elt a, Elt b) {
      return length_[a] < length_[b];
    });
    for (Elt y : by_len) {
      uint64_t* row = &bruhat_table_[y * bruhat_stride_];
      if (y == 0) {
        row[0] |= 1;
        continue;
      }
      int s = first_set_bit(right_desc_[y]);
      Elt ys = right_mult(y, s);
      const uint64_t* prev = &bruhat_table_[ys * bruhat_stride_];
      fill_bruhat_row(row, prev, s);
    }
  }

  // x <= y  iff  (xs < x ? xs <= ys : x <= ys), for a right descent s of y
  void fill_bruhat_row(uint64_t* row, const uint64_t* prev, int s) const {
    for (Elt x = 0; x < size; ++x) {
      Elt xs = right_mult(x, s);
      Elt probe = (length_[xs] < length_[x]) ? xs : x;
      if ((prev[probe >> 6] >> (probe & 63)) & 1) row[x >> 6] |= 1ull << (x & 63);
    }
  }

  static int first_set_bit(GenMask m) {
    for (int s = 0; s < kMaxRank; ++s)
      if (m & (1u << s)) return s;
    return -1;
  }

  const uint64_t* bruhat_row(Elt y) const {
    if (!bruhat_table_.empty()) return &bruhat_table_[y * bruhat_stride_];
    std::lock_guard<std::mutex> lk(*bruhat_mutex_);
    auto it = bruhat_cache_.find(y);
    if (it != bruhat_cache_.end()) return it->second.data();
    // build the chain of rows down to the identity
    std::vector<Elt> chain;
    Elt w = y;
    while (!bruhat_cache_.count(w) && w != 0) {
      chain.push_back(w);
      w = right_mult(w, first_set_bit(right_desc_[w]));
    }
    if (w == 0 && !bruhat_cache_.count(0)) {
      std::vector<uint64_t> row(bruhat_stride_, 0);
      row[0] |= 1;
      bruhat_cache_.emplace(0, std::move(row));
    }
    for (auto itc = chain.rbegin(); itc != chain.rend(); ++itc) {
      Elt z = *itc;
      int s = first_set_bit(right_desc_[z]);
      Elt zs = right_mult(z, s);
      std::vector<uint64_t> row(bruhat_stride_, 0);
      fill_bruhat_row(row.data(), bruhat_cache_.at(zs).data(), s);
      bruhat_cache_.emplace(z, std::move(row));
    }
    return bruhat_cache_.at(y).data();
  }
};

// Named Coxeter matrices in Bourbaki numbering.  B has the 4-bond between
// the last two nodes; D forks at node rank-2; H has the 5-bond first.
inline CoxeterDatum datum_from_type(const std::string& type_name,
                                    std::vector<long> weights = {}) {
  auto path = [](int n) {
    std::vector<std::vector<int>> m(static_cast<size_t>(n),
                                    std::vector<int>(static_cast<size_t>(n), 2));
    for (int i = 0; i < n; ++i) m[static_cast<size_t>(i)][static_cast<size_t>(i)] = 1;
    for (int i = 0; i + 1 < n; ++i) {
      m[static_cast<size_t>(i)][static_cast<size_t>(i + 1)] = 3;
      m[static_cast<size_t>(i + 1)][static_cast<size_t>(i)] = 3;
    }
    return m;
  };
  CoxeterDatum d;
  std::string t = type_name;
  int n = 0;
  int bond = 0;
  if (t.size() >= 3 && t[0] == 'I' && t[1] == '2') {
    // I2(m)
    size_t open = t.find('(');
    size_t close = t.find(')');
    require(open != std::string::npos && close != std::string::npos &&
                close > open + 1,
            ErrorCode::InvalidMatrix, "bad dihedral type: " + type_name);
    bond = std::stoi(t.substr(open + 1, close - open - 1));
    require(bond >= 3, ErrorCode::InvalidMatrix,
            "dihedral bond must be at least 3");
    n = 2;
    d.rank = 2;
    d.coxeter_matrix = {{1, bond}, {bond, 1}};
  } else {
    require(t.size() >= 2, ErrorCode::InvalidMatrix,
            "unknown type: " + type_name);
    char fam = t[0];
    n = std::stoi(t.substr(1));
    require(n >= 1, ErrorCode::InvalidMatrix, "bad rank in type " + type_name);
    d.rank = n;
    switch (fam) {
      case 'A':
        d.coxeter_matrix = path(n);
        break;
      case 'B':
      case 'C':
        require(n >= 2, ErrorCode::InvalidMatrix, "B needs rank >= 2");
        d.coxeter_matrix = path(n);
        d.coxeter_matrix[static_cast<size_t>(n - 2)][static_cast<size_t>(n - 1)] = 4;
        d.coxeter_matrix[static_cast<size_t>(n - 1)][static_cast<size_t>(n - 2)] = 4;
        break;
      case 'D':
        require(n >= 4, ErrorCode::InvalidMatrix, "D needs rank >= 4");
        d.coxeter_matrix = path(n - 1);
        for (auto& row : d.coxeter_matrix) row.push_back(2);
        d.coxeter_matrix.push_back(std::vector<int>(static_cast<size_t>(n), 2));
        d.coxeter_matrix[static_cast<size_t>(n - 1)][static_cast<size_t>(n - 1)] = 1;
        d.coxeter_matrix[static_cast<size_t>(n - 3)][static_cast<size_t>(n - 1)] = 3;
        d.coxeter_matrix[static_cast<size_t>(n - 1)][static_cast<size_t>(n - 3)] = 3;
        break;
      case 'E':
        require(n >= 6 && n <= 8, ErrorCode::InvalidMatrix, "E needs rank 6..8");
        d.coxeter_matrix = path(n - 1);
        for (auto& row : d.coxeter_matrix) row.push_back(2);
        d.coxeter_matrix.push_back(std::vector<int>(static_cast<size_t>(n), 2));
        d.coxeter_matrix[static_cast<size_t>(n - 1)][static_cast<size_t>(n - 1)] = 1;
        d.coxeter_matrix[2][static_cast<size_t>(n - 1)] = 3;
        d.coxeter_matrix[static_cast<size_t>(n - 1)][2] = 3;
        break;
      case 'F':
        require(n == 4, ErrorCode::InvalidMatrix, "F needs rank 4");
        d.coxeter_matrix = path(4);
        d.coxeter_matrix[1][2] = 4;
        d.coxeter_matrix[2][1] = 4;
        break;
      case 'G':
        require(n == 2, ErrorCode::InvalidMatrix, "G needs rank 2");
        d.coxeter_matrix = {{1, 6}, {6, 1}};
        break;
      case 'H':
        require(n == 2 || n == 3 || n == 4, ErrorCode::InvalidMatrix,
                "H needs rank 2..4");
        d.coxeter_matrix = path(n);
        d.coxeter_matrix[0][1] = 5;
        d.coxeter_matrix[1][0] = 5;
        break;
      default:
        fail(ErrorCode::InvalidMatrix, "unknown type: " + type_name);
    }
  }
  if (weights.empty()) weights.assign(static_cast<size_t>(d.rank), 1);
  d.weights = std::move(weights);
  return d;
}

inline GroupTables build_group(const CoxeterDatum& datum) {
  return GroupTables::build(datum);
}

}  // namespace celllab
