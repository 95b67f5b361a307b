#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <vector>

#include "celllab/cells.hpp"

namespace celllab {

/*
  Element of J_A: finite A-linear combination of the basis t_w.  Products
  of basis elements have integer coordinates (the gamma constants);
  Laurent coordinates appear for images under phi.
*/
struct JElement {
  SparseRow coords;

  static JElement basis(Elt x) {
    return JElement{{{x, LaurentInt::one()}}};
  }

  bool is_zero() const { return coords.empty(); }

  const LaurentInt* coefficient(Elt x) const { return sparse_find(coords, x); }

  JElement& operator+=(const JElement& o) {
    if (&o == this) {
      JElement copy = o;
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

  friend JElement operator+(JElement a, const JElement& b) {
    a += b;
    return a;
  }

  JElement scaled(const LaurentInt& f) const {
    JElement r;
    if (f.is_zero()) return r;
    r.coords.reserve(coords.size());
    for (const auto& [e, c] : coords) r.coords.emplace_back(e, c * f);
    return r;
  }

  friend bool operator==(const JElement& a, const JElement& b) {
    return a.coords == b.coords;
  }
  friend bool operator!=(const JElement& a, const JElement& b) {
    return !(a == b);
  }

  // restriction to the span of {t_x : x in cell c}
  JElement restricted_to_cell(const CellDecomposition& cd, uint32_t c) const {
    JElement r;
    for (const auto& [e, f] : coords)
      if (cd.two_of[e] == c) r.coords.emplace_back(e, f);
    return r;
  }
};

/*
  The asymptotic ring on the basis {t_w} with structure constants gamma,
  its unit sum_d n_d t_d, and the homomorphism phi from the Hecke algebra
  evaluated through the c# expansion of its argument.
*/
class JRing {
 public:
  JRing(const HeckeAlgebra& H, const CellDecomposition& cd,
        const AsymptoticTables& at)
      : H_(&H), cd_(&cd), at_(&at), phi_rows_(H.group().size) {}

  const GroupTables& group() const { return H_->group(); }

  JElement multiply(const JElement& a, const JElement& b) const {
    std::map<Elt, LaurentInt> acc;
    for (const auto& [x, f] : a.coords)
      for (const auto& [y, g] : b.coords) {
        LaurentInt fg = f * g;
        for (const auto& [z, gam] : at_->gamma_row(x, y))
          acc[z].add_scaled(fg, Int(gam));
      }
    JElement r;
    for (auto& [z, c] : acc)
      if (!c.is_zero()) r.coords.emplace_back(z, std::move(c));
    return r;
  }

  // sum over D of n_d t_d
  JElement unit() const {
    JElement u;
    for (Elt d : at_->distinguished)
      u.coords.emplace_back(d, LaurentInt::constant(at_->n_of(d)));
    return u;
  }

  // two-sided identity on every basis vector
  void verify_unit(int jobs = 1) const {
    const GroupTables& W = group();
    const std::vector<Elt>& D = at_->distinguished;
    HeckeAlgebra::parallel_for(W.size, jobs, [&](size_t x) {
      H_->ensure_rows_fixed_right(static_cast<Elt>(x), D);
    });
    for (Elt d : D)
      H_->ensure_rows_fixed_right(
          d, [&] {
            std::vector<Elt> all(W.size);
            for (Elt x = 0; x < W.size; ++x) all[x] = x;
            return all;
          }());
    JElement u = unit();
    for (Elt x = 0; x < W.size; ++x) {
      JElement tx = JElement::basis(x);
      require(multiply(u, tx) == tx, ErrorCode::UnitFailure,
              "left unit fails at t_" + W.word_string(x));
      require(multiply(tx, u) == tx, ErrorCode::UnitFailure,
              "right unit fails at t_" + W.word_string(x));
    }
  }

  // phi(c_x^#) = sum over d in D, z with d_z = d of h_{x,d,z} n_d t_z
  const SparseRow& phi_row(Elt x) const {
    {
      std::lock_guard<std::mutex> lk(phi_mutex_);
      if (phi_rows_[x]) return *phi_rows_[x];
    }
    std::map<Elt, LaurentInt> acc;
    for (Elt d : at_->distinguished) {
      Int nd(at_->n_of(d));
      for (const auto& [z, h] : H_->full_row(x, d))
        if (at_->d_of(z) == d) acc[z].add_scaled(h, nd);
    }
    SparseRow row;
    for (auto& [z, c] : acc)
      if (!c.is_zero()) row.emplace_back(z, std::move(c));
    std::lock_guard<std::mutex> lk(phi_mutex_);
    if (!phi_rows_[x]) phi_rows_[x] = std::move(row);
    return *phi_rows_[x];
  }

  JElement phi(const HeckeElement& h) const {
    HeckeElement cd_coords =
        (h.basis == Basis::CDag) ? h : H_->expand_in_cdagger(H_->to_T(h));
    JElement r;
    for (const auto& [x, f] : cd_coords.coords) {
      JElement part;
      part.coords = phi_row(x);
      r += part.scaled(f);
    }
    return r;
  }

  // shared fills for the phi rows of every basis element
  void prefetch_phi(int jobs = 1) const {
    const GroupTables& W = group();
    std::vector<Elt> all(W.size);
    for (Elt x = 0; x < W.size; ++x) all[x] = x;
    const std::vector<Elt>& D = at_->distinguished;
    HeckeAlgebra::parallel_for(D.size(), jobs, [&](size_t i) {
      H_->ensure_rows_fixed_right(D[i], all);
    });
  }

  JElement phi_of_longest() const {
    prefetch_phi();
    return phi(HeckeElement::basis_vector(Basis::T, group().w0()));
  }

  // T_c = sum over d in D meeting the cell of theta(d) eps_d t_{d*}
  template <class StarT, class ThetaT>
  JElement t_frak(uint32_t cell_id, const StarT& star,
                  const ThetaT& theta) const {
    std::map<Elt, LaurentInt> acc;
    for (Elt d : at_->distinguished)
      if (cd_->two_of[d] == cell_id)
        acc[star.star.at(d)] +=
            LaurentInt::constant(theta.theta.at(d) * star.sign.at(d));
    JElement r;
    for (auto& [z, c] : acc)
      if (!c.is_zero()) r.coords.emplace_back(z, std::move(c));
    return r;
  }

 private:
  const HeckeAlgebra* H_;
  const CellDecomposition* cd_;
  const AsymptoticTables* at_;
  mutable std::mutex phi_mutex_;
  mutable std::vector<std::optional<SparseRow>> phi_rows_;
};

}  // namespace celllab
