#pragma once

#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "celllab/jring.hpp"

namespace celllab {

/*
  Per-cell data of the longest-element action on the cell module: the
  scalars a and a' (the a-values on the cell and its w0-shift), the star
  permutation u -> u*, and the signs eps_u, extracted from the columns of
  v^{a-a'} T_{w0} acting on the c# basis of the quotient bimodule.
*/
struct StarData {
  uint32_t cell = 0;
  long long a = 0;
  long long a_prime = 0;
  std::vector<Elt> members;
  std::unordered_map<Elt, Elt> star;
  std::unordered_map<Elt, long long> sign;
};

struct ThetaData {
  std::unordered_map<Elt, long long> theta;
  std::unordered_map<Elt, Elt> witness;  // the distinguished d_{w0 x^-1}
};

struct CheckReport {
  std::string name;
  bool pass = true;
  bool skipped = false;
  std::vector<std::string> violations;

  CheckReport() = default;
  explicit CheckReport(std::string n) : name(std::move(n)) {}

  void flag(const std::string& what) {
    pass = false;
    if (violations.size() < 8) violations.push_back(what);
  }
};

struct LeftCellModule {
  uint32_t left_cell = 0;
  std::vector<Elt> members;
  // generator action at v=1 (the group element s, not c_s)
  std::vector<std::vector<std::vector<long long>>> gen_action;
  long long trace_w0 = 0;
  size_t n_fixed = 0;
};

class Verifier {
 public:
  Verifier(const HeckeAlgebra& H, const CellDecomposition& cd,
           const AsymptoticTables& at, const JRing& J)
      : H_(&H), cd_(&cd), at_(&at), J_(&J) {}

  const GroupTables& group() const { return H_->group(); }

  // ---- quotient-module primitives ----

  // image of h in H^{<= c} / H^{< c}: drops the coordinates outside the
  // cell; faults if some coordinate is not below the cell at all
  HeckeElement reduce_mod_lower(const HeckeElement& h, uint32_t c) const {
    require(h.basis == Basis::CDag, ErrorCode::BasisMismatch,
            "reduction works on c# coordinates");
    HeckeElement r;
    r.basis = Basis::CDag;
    for (const auto& [x, f] : h.coords) {
      uint32_t cx = cd_->two_of[x];
      require(cd_->two_leq[cx][c], ErrorCode::SupportOutsideIdeal,
              "coordinate at " + group().word_string(x) +
                  " lies outside the cell ideal");
      if (cx == c) r.coords.emplace_back(x, f);
    }
    return r;
  }

  // sum of the coordinates at the distinguished involutions of the cell
  LaurentInt theta_functional(const HeckeElement& h, uint32_t c) const {
    require(h.basis == Basis::CDag, ErrorCode::BasisMismatch,
            "theta works on c# coordinates");
    LaurentInt out;
    for (const auto& [x, f] : h.coords) {
      uint32_t cx = cd_->two_of[x];
      require(cd_->two_leq[cx][c], ErrorCode::SupportOutsideIdeal,
              "coordinate at " + group().word_string(x) +
                  " lies outside the cell ideal");
      if (cx == c && at_->is_distinguished[x]) out += f;
    }
    return out;
  }

  // ---- star permutation (columns of v^{a-a'} T_{w0} on the cell) ----

  StarData star_data(uint32_t c) const {
    const GroupTables& W = group();
    StarData sd;
    sd.cell = c;
    sd.members = cd_->two_cells[c];
    sd.a = at_->a(sd.members.front());
    Elt shifted = W.product(W.w0(), sd.members.front());
    sd.a_prime = at_->a(shifted);
    for (Elt x : sd.members)
      require(at_->a(W.product(W.w0(), x)) == sd.a_prime, ErrorCode::Internal,
              "a' is not constant on the shifted cell");

    for (Elt u : sd.members) {
      HeckeElement col = longest_times_cdag(u, 1);
      col = col.scaled(LaurentInt::v(static_cast<int32_t>(sd.a - sd.a_prime)));
      HeckeElement incdag = H_->expand_in_cdagger(col);
      HeckeElement incell = reduce_mod_lower(incdag, c);
      require(incell.coords.size() == 1, ErrorCode::NotMonomialColumn,
              "column of " + W.word_string(u) + " has " +
                  std::to_string(incell.coords.size()) + " entries");
      const auto& [target, value] = incell.coords.front();
      require(value.is_constant(), ErrorCode::NonIntegerEntry,
              "column of " + W.word_string(u) + " is not constant");
      Int m = value.coefficient(0);
      require(m == 1 || m == -1, ErrorCode::NotMonomialColumn,
              "column entry of " + W.word_string(u) + " is not a unit");
      require(cd_->left_of[target] == cd_->left_of[u],
              ErrorCode::NotMonomialColumn,
              "column target leaves the left cell of " + W.word_string(u));
      sd.star[u] = target;
      sd.sign[u] = static_cast<long long>(m);

      // square identity: v^{2a-2a'} T_{w0}^2 c_u^# = c_u^# in the quotient
      HeckeElement sq = longest_times_cdag(u, 2);
      sq = sq.scaled(
          LaurentInt::v(static_cast<int32_t>(2 * (sd.a - sd.a_prime))));
      HeckeElement sq_incell = reduce_mod_lower(H_->expand_in_cdagger(sq), c);
      require(sq_incell == HeckeElement::basis_vector(Basis::CDag, u),
              ErrorCode::NotMonomialColumn,
              "square action is not the identity at " + W.word_string(u));
    }
    return sd;
  }

  // theta(x) = gamma_{w0 d, x, (x*)^-1} with d = d_{w0 x^-1}
  long long theta_sign(Elt x, const StarData& sd) const {
    const GroupTables& W = group();
    Elt d = at_->d_of(W.product(W.w0(), W.inverse(x)));
    long long v =
        at_->gamma(W.product(W.w0(), d), x, W.inverse(sd.star.at(x)));
    require(v == 1 || v == -1, ErrorCode::ThetaNotUnit,
            "theta(" + W.word_string(x) + ") = " + std::to_string(v));
    return v;
  }

  ThetaData theta_data(const StarData& sd) const {
    const GroupTables& W = group();
    prefetch_shifted_distinguished_rows(sd);
    ThetaData td;
    for (Elt x : sd.members) {
      td.witness[x] = at_->d_of(W.product(W.w0(), W.inverse(x)));
      td.theta[x] = theta_sign(x, sd);
    }
    return td;
  }

  // ---- named checks ----

  // star permutation exists with unit monomial columns and the sign and
  // twist symmetries
  CheckReport verify_2_3(uint32_t c, StarData& out) const {
    const GroupTables& W = group();
    CheckReport rep("2.3 star permutation on cell " + cell_name(c));
    try {
      out = star_data(c);
    } catch (const CellLabError& e) {
      rep.flag(e.what());
      return rep;
    }
    for (Elt u : out.members) {
      Elt us = out.star.at(u);
      if (out.star.at(us) != u)
        rep.flag("star is not an involution at " + W.word_string(u));
      if (out.sign.at(u) != out.sign.at(W.inverse(u)) ||
          out.sign.at(u) != out.sign.at(W.sigma(u)) ||
          out.sign.at(u) != out.sign.at(us))
        rep.flag("sign symmetry fails at " + W.word_string(u));
      if (out.star.at(W.sigma(u)) != W.sigma(us))
        rep.flag("sigma twist fails at " + W.word_string(u));
      if (W.inverse(out.star.at(W.inverse(u))) != W.sigma(us))
        rep.flag("inverse twist fails at " + W.word_string(u));
    }
    return rep;
  }

  // membership statements for u* and the left/right grid description
  CheckReport verify_2_4(const StarData& sd) const {
    const GroupTables& W = group();
    CheckReport rep("2.4 cell membership of star on cell " +
                    cell_name(sd.cell));
    for (Elt u : sd.members) {
      Elt us = sd.star.at(u);
      if (cd_->left_of[us] != cd_->left_of[u])
        rep.flag("u* leaves the left cell of " + W.word_string(u));
      if (cd_->right_of[us] != cd_->right_of[W.sigma(u)])
        rep.flag("u* leaves the right cell of sigma(" + W.word_string(u) +
                 ")");
    }
    // grid condition: every left cell in the cell meets every right cell
    // exactly once; when it holds, the intersection rule reproduces star
    std::set<uint32_t> lcs, rcs;
    for (Elt u : sd.members) {
      lcs.insert(cd_->left_of[u]);
      rcs.insert(cd_->right_of[u]);
    }
    bool grid = true;
    for (uint32_t lc : lcs)
      for (uint32_t rc : rcs) {
        int count = 0;
        for (Elt u : sd.members)
          if (cd_->left_of[u] == lc && cd_->right_of[u] == rc) ++count;
        if (count != 1) grid = false;
      }
    if (grid) {
      for (Elt u : sd.members) {
        Elt match = UINT32_MAX;
        for (Elt v : sd.members)
          if (cd_->left_of[v] == cd_->left_of[u] &&
              cd_->right_of[v] == cd_->right_of[W.sigma(u)])
            match = v;
        if (match != sd.star.at(u))
          rep.flag("grid rule disagrees with star at " + W.word_string(u));
      }
    }
    return rep;
  }

  // gamma support of the w0-shifted distinguished involutions
  CheckReport verify_2_5(const StarData& sd, const ThetaData& td) const {
    const GroupTables& W = group();
    uint32_t c = sd.cell;
    CheckReport rep("2.5 theta and the gamma support on cell " +
                    cell_name(c));
    uint32_t w0c = cd_->two_of[W.product(W.w0(), sd.members.front())];
    prefetch_shifted_distinguished_rows(sd);

    for (Elt d : at_->distinguished) {
      Elt w0d = W.product(W.w0(), d);
      for (Elt x : sd.members) {
        for (const auto& [z, gam] : at_->gamma_row(w0d, x)) {
          // gamma_{w0d, x, y} != 0 for y = z^-1
          Elt y = W.inverse(z);
          if (cd_->two_of[y] != c) continue;
          if (y != W.inverse(sd.star.at(x)))
            rep.flag("clause (a): stray gamma at d=" + W.word_string(d) +
                     ", x=" + W.word_string(x) + ", y=" + W.word_string(y));
        }
      }
    }
    for (Elt x : sd.members) {
      Elt target = W.inverse(sd.star.at(x));
      int hits = 0;
      Elt hit_d = UINT32_MAX;
      for (Elt d : at_->distinguished) {
        if (cd_->two_of[d] != w0c) continue;
        if (at_->gamma(W.product(W.w0(), d), x, target) != 0) {
          ++hits;
          hit_d = d;
        }
      }
      if (hits != 1)
        rep.flag("clause (b): " + std::to_string(hits) +
                 " witnesses at x=" + W.word_string(x));
      else if (hit_d != td.witness.at(x))
        rep.flag("clause (b): witness mismatch at x=" + W.word_string(x));
    }
    for (Elt u : sd.members) {
      Elt d = td.witness.at(u);
      long long lhs = sd.sign.at(u);
      long long rhs =
          ((W.length(W.product(W.w0(), d)) % 2 == 0) ? 1 : -1) *
          at_->n_of(d) * td.theta.at(u);
      if (lhs != rhs)
        rep.flag("clause (c): sign formula fails at u=" + W.word_string(u));
    }
    // theta symmetry under inverse and sigma
    for (Elt u : sd.members) {
      if (td.theta.at(W.inverse(u)) != td.theta.at(u))
        rep.flag("theta(u^-1) != theta(u) at " + W.word_string(u));
      if (td.theta.at(W.sigma(u)) != td.theta.at(u))
        rep.flag("theta(sigma u) != theta(u) at " + W.word_string(u));
    }
    return rep;
  }

  // equal-parameter specialization of the sign, and X = X'
  CheckReport verify_2_6(const std::vector<StarData>& stars,
                         const std::vector<ThetaData>& thetas) const {
    const GroupTables& W = group();
    CheckReport rep("2.6 equal-parameter signs and X = X'");
    bool equal_params = W.datum.equal_parameters();
    for (const StarData& sd : stars) {
      if (equal_params) {
        long long expect =
            ((static_cast<long long>(W.length(W.w0())) + sd.a_prime) % 2 == 0)
                ? 1
                : -1;
        for (Elt u : sd.members) {
          if (sd.sign.at(u) != expect)
            rep.flag("sign != (-1)^{l(w0)+a'} at " + W.word_string(u));
          if (thetas[sd.cell].theta.at(u) != 1)
            rep.flag("theta != 1 at " + W.word_string(u));
        }
      }
      // X = {d* : d in D meeting c}; X' = {w0 d' : d' in D meeting w0 c}
      uint32_t w0c = cd_->two_of[W.product(W.w0(), sd.members.front())];
      std::set<Elt> X, Xp;
      for (Elt d : at_->distinguished) {
        if (cd_->two_of[d] == sd.cell) X.insert(sd.star.at(d));
        if (cd_->two_of[d] == w0c) Xp.insert(W.product(W.w0(), d));
      }
      if (X != Xp)
        rep.flag("X != X' on cell " + cell_name(sd.cell));
    }
    return rep;
  }

  // leading coefficients of the theta pairing on the cell
  CheckReport verify_2_2(const StarData& sd) const {
    const GroupTables& W = group();
    CheckReport rep("2.2 leading pairing on cell " + cell_name(sd.cell));
    std::vector<Elt> dcell;
    for (Elt d : at_->distinguished)
      if (cd_->two_of[d] == sd.cell) dcell.push_back(d);
    for (Elt x : sd.members) {
      Elt xi = W.inverse(x);
      for (Elt xp : sd.members) {
        // theta(c_{x^-1}^# c_{x'}^#) = sum over d in D and the cell of
        // h_{x^-1, x', d}; each term has degree <= a, and the v^a
        // coefficient must be n_{d_x} delta_{x,x'}
        const LeadingRow& row = H_->leading_row(xi, xp);
        long long coeff = 0;
        for (Elt d : dcell) {
          auto it = std::lower_bound(
              row.begin(), row.end(), d,
              [](const std::pair<Elt, LeadingEntry>& t, Elt e) {
                return t.first < e;
              });
          if (it == row.end() || it->first != d) continue;
          if (it->second.deg > sd.a)
            rep.flag("pairing degree exceeds a at (" + W.word_string(x) +
                     "," + W.word_string(xp) + ")");
          if (it->second.deg == sd.a) coeff += it->second.top;
        }
        long long expect = (x == xp) ? at_->n_of(at_->d_of(x)) : 0;
        if (coeff != expect)
          rep.flag("pairing leading term wrong at (" + W.word_string(x) +
                   "," + W.word_string(xp) + ")");
      }
    }
    return rep;
  }

  // the image of the longest element in J_A, per cell and globally
  CheckReport verify_2_7_2_8(const std::vector<StarData>& stars,
                             const std::vector<ThetaData>& thetas) const {
    const GroupTables& W = group();
    CheckReport rep("2.7/2.8 phi(T_w0)");
    JElement phiw0 = J_->phi_of_longest();

    // closed formula: sum over d of theta(d) eps_d v^{-a(d)+a(w0 d)} t_{d*}
    JElement formula;
    {
      std::map<Elt, LaurentInt> acc;
      for (Elt d : at_->distinguished) {
        const StarData& sd = stars[cd_->two_of[d]];
        const ThetaData& td = thetas[cd_->two_of[d]];
        long long coeff = td.theta.at(d) * sd.sign.at(d);
        int32_t expo = static_cast<int32_t>(-at_->a(d) +
                                            at_->a(W.product(W.w0(), d)));
        acc[sd.star.at(d)] += LaurentInt::monomial(coeff, expo);
      }
      for (auto& [z, f] : acc)
        if (!f.is_zero()) formula.coords.emplace_back(z, std::move(f));
    }
    if (phiw0 != formula) {
      rep.flag("phi(T_w0) differs from the closed formula");
      for (const auto& [z, f] : phiw0.coords) {
        const LaurentInt* g = formula.coefficient(z);
        if (!g || *g != f)
          rep.flag("  at t_" + W.word_string(z) + ": got " + f.to_string());
      }
    }
    // per-cell congruence of the normalized image
    for (const StarData& sd : stars) {
      JElement lhs =
          phiw0.scaled(LaurentInt::v(static_cast<int32_t>(sd.a - sd.a_prime)))
              .restricted_to_cell(*cd_, sd.cell);
      JElement rhs = J_->t_frak(sd.cell, sd, thetas[sd.cell]);
      if (lhs != rhs)
        rep.flag("normalized image differs from T_frak on cell " +
                 cell_name(sd.cell));
    }
    return rep;
  }

  // J-side action of the normalized image on the cell ideal
  CheckReport verify_1_12_1_13(const StarData& sd) const {
    const GroupTables& W = group();
    CheckReport rep("1.12/1.13 J-side action on cell " + cell_name(sd.cell));
    JElement F = J_->phi_of_longest().scaled(
        LaurentInt::v(static_cast<int32_t>(sd.a - sd.a_prime)));
    HeckeElement tw0 = HeckeElement::basis_vector(Basis::T, W.w0());
    JElement G = J_->phi(H_->t_multiply(tw0, tw0))
                     .scaled(LaurentInt::v(
                         static_cast<int32_t>(2 * (sd.a - sd.a_prime))));
    std::vector<Elt> supports;
    for (const auto& [z, f] : F.coords) supports.push_back(z);
    for (const auto& [z, f] : G.coords) supports.push_back(z);
    std::sort(supports.begin(), supports.end());
    supports.erase(std::unique(supports.begin(), supports.end()),
                   supports.end());
    for (Elt x : sd.members) H_->ensure_rows_fixed_right(x, supports);
    for (Elt x : sd.members) {
      JElement tx = JElement::basis(x);
      JElement lhs = J_->multiply(F, tx);
      JElement expect;
      expect.coords.emplace_back(sd.star.at(x),
                                 LaurentInt::constant(sd.sign.at(x)));
      if (!(lhs == expect))
        rep.flag("m-column in J differs at t_" + W.word_string(x));
      for (const auto& [z, f] : lhs.coords)
        if (!f.is_constant())
          rep.flag("non-integer m-entry at t_" + W.word_string(x));
      if (!(J_->multiply(G, tx) == tx))
        rep.flag("square action is not the identity at t_" +
                 W.word_string(x));
    }
    return rep;
  }

  CheckReport verify_lemma_1_2() const {
    const GroupTables& W = group();
    CheckReport rep("1.2 sigma preserves two-sided cells");
    for (Elt x = 0; x < W.size; ++x)
      if (cd_->two_of[W.sigma(x)] != cd_->two_of[x])
        rep.flag("sigma moves " + W.word_string(x) + " across cells");
    return rep;
  }

  // T_frak squares to the cell unit and intertwines sigma
  CheckReport verify_2_9(const StarData& sd, const ThetaData& td) const {
    const GroupTables& W = group();
    CheckReport rep("2.9 T_frak on cell " + cell_name(sd.cell));
    JElement frak = J_->t_frak(sd.cell, sd, td);

    JElement unit_c;
    for (Elt d : at_->distinguished)
      if (cd_->two_of[d] == sd.cell)
        unit_c.coords.emplace_back(d, LaurentInt::constant(at_->n_of(d)));
    if (!(J_->multiply(frak, frak) == unit_c))
      rep.flag("T_frak^2 differs from the cell unit");

    // shared fills for the sigma commutation sweep
    std::vector<Elt> dstars;
    for (const auto& [z, f] : frak.coords) dstars.push_back(z);
    for (Elt z : dstars) H_->ensure_rows_fixed_right(z, all_elements());
    for (Elt x = 0; x < W.size; ++x)
      H_->ensure_rows_fixed_right(W.sigma(x), dstars);

    for (Elt x = 0; x < W.size; ++x) {
      JElement lhs = J_->multiply(JElement::basis(x), frak);
      JElement rhs = J_->multiply(frak, JElement::basis(W.sigma(x)));
      if (!(lhs == rhs)) {
        rep.flag("t_x T_frak != T_frak t_sigma(x) at " + W.word_string(x));
        if (rep.violations.size() > 4) break;
      }
    }
    return rep;
  }

  // ---- left cell modules at v = 1 ----

  LeftCellModule left_cell_module(uint32_t lc, const StarData& sd) const {
    const GroupTables& W = group();
    LeftCellModule mod;
    mod.left_cell = lc;
    mod.members = cd_->left_cells[lc];
    size_t dim = mod.members.size();
    std::map<Elt, size_t> pos;
    for (size_t i = 0; i < dim; ++i) pos[mod.members[i]] = i;

    auto matmul = [&](const std::vector<std::vector<long long>>& A,
                      const std::vector<std::vector<long long>>& B) {
      std::vector<std::vector<long long>> C(
          dim, std::vector<long long>(dim, 0));
      for (size_t i = 0; i < dim; ++i)
        for (size_t k = 0; k < dim; ++k) {
          long long a = A[i][k];
          if (!a) continue;
          for (size_t j = 0; j < dim; ++j) C[i][j] += a * B[k][j];
        }
      return C;
    };
    std::vector<std::vector<long long>> eye(dim,
                                            std::vector<long long>(dim, 0));
    for (size_t i = 0; i < dim; ++i) eye[i][i] = 1;

    // s acts as (matrix of c_s at v=1) - identity on the quotient
    mod.gen_action.resize(static_cast<size_t>(W.rank));
    for (int s = 0; s < W.rank; ++s) {
      auto& M = mod.gen_action[static_cast<size_t>(s)];
      M.assign(dim, std::vector<long long>(dim, 0));
      for (size_t col = 0; col < dim; ++col) {
        Elt y = mod.members[col];
        for (const auto& [z, h] : cd_->gen_row(s, y)) {
          auto it = pos.find(z);
          if (it == pos.end()) continue;
          Int val = h.evaluate_at_one();
          require(val >= std::numeric_limits<long long>::min() &&
                      val <= std::numeric_limits<long long>::max(),
                  ErrorCode::Internal, "module entry overflow");
          M[it->second][col] += static_cast<long long>(val);
        }
        M[col][col] -= 1;
      }
    }
    // generator relations
    for (int s = 0; s < W.rank; ++s) {
      if (matmul(mod.gen_action[static_cast<size_t>(s)],
                 mod.gen_action[static_cast<size_t>(s)]) != eye)
        fail(ErrorCode::RelationFailure, "s^2 != 1 in the cell module");
      for (int t = 0; t < s; ++t) {
        auto ST = matmul(mod.gen_action[static_cast<size_t>(s)],
                         mod.gen_action[static_cast<size_t>(t)]);
        auto P = eye;
        for (int k = 0;
             k < W.datum.coxeter_matrix[static_cast<size_t>(s)]
                                       [static_cast<size_t>(t)];
             ++k)
          P = matmul(P, ST);
        if (P != eye)
          fail(ErrorCode::RelationFailure, "braid relation fails");
      }
    }
    auto w0mat = eye;
    for (uint8_t s : W.word(W.w0()))
      w0mat = matmul(w0mat, mod.gen_action[s]);
    mod.trace_w0 = 0;
    for (size_t i = 0; i < dim; ++i) mod.trace_w0 += w0mat[i][i];

    mod.n_fixed = 0;
    for (Elt u : mod.members) {
      require(sd.star.count(u), ErrorCode::Internal,
              "left cell not inside the star cell");
      if (sd.star.at(u) == u) ++mod.n_fixed;
    }
    long long abs_tr = mod.trace_w0 < 0 ? -mod.trace_w0 : mod.trace_w0;
    require(abs_tr == static_cast<long long>(mod.n_fixed),
            ErrorCode::TraceMismatch,
            "trace of w0 does not match the star fixed points");
    return mod;
  }

  CheckReport verify_2_10(const std::vector<StarData>& stars) const {
    CheckReport rep("2.10 left cell modules");
    for (uint32_t lc = 0; lc < cd_->num_left; ++lc) {
      uint32_t c = cd_->two_of[cd_->left_cells[lc].front()];
      try {
        left_cell_module(lc, stars[c]);
      } catch (const CellLabError& e) {
        rep.flag("left cell " +
                 group().word_string(cd_->left_cells[lc].front()) + ": " +
                 e.what());
      }
    }
    return rep;
  }

 private:
  std::string cell_name(uint32_t c) const {
    Elt rep = cd_->two_cells[c].front();
    std::string w = group().word_string(rep);
    return "[" + (w.empty() ? std::string("e") : w) + "]";
  }

  std::vector<Elt> all_elements() const {
    std::vector<Elt> all(group().size);
    for (Elt x = 0; x < group().size; ++x) all[x] = x;
    return all;
  }

  // rows (w0 d, x) for every distinguished d and x in the cell, filled
  // with one shared pass per right factor
  void prefetch_shifted_distinguished_rows(const StarData& sd) const {
    const GroupTables& W = group();
    std::vector<Elt> w0D;
    for (Elt d : at_->distinguished) w0D.push_back(W.product(W.w0(), d));
    std::sort(w0D.begin(), w0D.end());
    w0D.erase(std::unique(w0D.begin(), w0D.end()), w0D.end());
    for (Elt x : sd.members) H_->ensure_rows_fixed_right(x, w0D);
  }

  // v^{0} T_{w0}^power c_u^# in the T-basis
  HeckeElement longest_times_cdag(Elt u, int power) const {
    const GroupTables& W = group();
    HeckeElement h{Basis::T, H_->cdag_row(u)};
    for (int k = 0; k < power; ++k) {
      const auto& word = W.word(W.w0());
      for (auto it = word.rbegin(); it != word.rend(); ++it)
        h = H_->times_gen(h, *it, /*on_right=*/false);
    }
    return h;
  }

  const HeckeAlgebra* H_;
  const CellDecomposition* cd_;
  const AsymptoticTables* at_;
  const JRing* J_;
};

}  // namespace celllab
