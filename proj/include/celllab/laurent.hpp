#pragma once

#include <algorithm>
#include <cstdint>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "celllab/errors.hpp"

namespace celllab {

using Int = boost::multiprecision::cpp_int;

/*
  Integer-coefficient Laurent polynomials in one indeterminate v.

  Terms are kept sorted by exponent, with no zero coefficients stored;
  the zero polynomial is the empty term list.  All operations are exact
  and every operation leaves the canonical form intact.
*/
class LaurentInt {
 public:
  using Term = std::pair<int32_t, Int>;  // (exponent, coefficient)

  LaurentInt() = default;

  static LaurentInt constant(Int c) {
    LaurentInt p;
    if (c != 0) p.terms_.emplace_back(0, std::move(c));
    return p;
  }

  static LaurentInt monomial(Int c, int32_t exp) {
    LaurentInt p;
    if (c != 0) p.terms_.emplace_back(exp, std::move(c));
    return p;
  }

  // v^exp
  static LaurentInt v(int32_t exp = 1) { return monomial(1, exp); }

  static LaurentInt one() { return constant(1); }

  bool is_zero() const { return terms_.empty(); }

  bool is_one() const {
    return terms_.size() == 1 && terms_[0].first == 0 && terms_[0].second == 1;
  }

  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].first == 0);
  }

  const std::vector<Term>& terms() const { return terms_; }

  int32_t degree() const {
    require(!terms_.empty(), ErrorCode::ZeroPolynomial, "degree of 0");
    return terms_.back().first;
  }

  int32_t valuation() const {
    require(!terms_.empty(), ErrorCode::ZeroPolynomial, "valuation of 0");
    return terms_.front().first;
  }

  const Int& top_coefficient() const {
    require(!terms_.empty(), ErrorCode::ZeroPolynomial, "top coefficient of 0");
    return terms_.back().second;
  }

  const Int& bottom_coefficient() const {
    require(!terms_.empty(), ErrorCode::ZeroPolynomial,
            "bottom coefficient of 0");
    return terms_.front().second;
  }

  struct LeadingData {
    int32_t degree;
    int32_t valuation;
    Int top_coefficient;
    Int bottom_coefficient;
  };

  LeadingData leading_data() const {
    require(!terms_.empty(), ErrorCode::ZeroPolynomial,
            "leading data of 0");
    return {terms_.back().first, terms_.front().first, terms_.back().second,
            terms_.front().second};
  }

  Int coefficient(int32_t exp) const {
    auto it = std::lower_bound(
        terms_.begin(), terms_.end(), exp,
        [](const Term& t, int32_t e) { return t.first < e; });
    if (it != terms_.end() && it->first == exp) return it->second;
    return 0;
  }

  // The ring involution with v^n -> v^{-n}.
  LaurentInt bar() const {
    LaurentInt r;
    r.terms_.reserve(terms_.size());
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it)
      r.terms_.emplace_back(-it->first, it->second);
    return r;
  }

  bool is_bar_symmetric() const {
    size_t n = terms_.size();
    for (size_t i = 0; i < n; ++i) {
      const Term& lo = terms_[i];
      const Term& hi = terms_[n - 1 - i];
      if (lo.first != -hi.first || lo.second != hi.second) return false;
    }
    return true;
  }

  // p * v^k
  LaurentInt shifted(int32_t k) const {
    LaurentInt r = *this;
    for (auto& t : r.terms_) t.first += k;
    return r;
  }

  // Keep only the terms with exponent < 0.
  LaurentInt negative_part() const {
    LaurentInt r;
    for (const Term& t : terms_) {
      if (t.first >= 0) break;
      r.terms_.push_back(t);
    }
    return r;
  }

  Int evaluate_at_one() const {
    Int s = 0;
    for (const Term& t : terms_) s += t.second;
    return s;
  }

  LaurentInt operator-() const {
    LaurentInt r = *this;
    for (auto& t : r.terms_) t.second = -t.second;
    return r;
  }

  LaurentInt& operator+=(const LaurentInt& q) {
    add_scaled(q, 1);
    return *this;
  }

  LaurentInt& operator-=(const LaurentInt& q) {
    add_scaled(q, -1);
    return *this;
  }

  friend LaurentInt operator+(LaurentInt p, const LaurentInt& q) {
    p += q;
    return p;
  }

  friend LaurentInt operator-(LaurentInt p, const LaurentInt& q) {
    p -= q;
    return p;
  }

  // *this += c * q * v^shift
  void add_scaled(const LaurentInt& q, const Int& c, int32_t shift = 0) {
    if (c == 0 || q.terms_.empty()) return;
    if (&q == this) {
      LaurentInt copy = q;
      add_scaled(copy, c, shift);
      return;
    }
    if (terms_.empty()) {
      terms_.reserve(q.terms_.size());
      for (const Term& t : q.terms_)
        terms_.emplace_back(t.first + shift, t.second * c);
      return;
    }
    std::vector<Term> out;
    out.reserve(terms_.size() + q.terms_.size());
    size_t i = 0, j = 0;
    while (i < terms_.size() || j < q.terms_.size()) {
      int32_t ea = i < terms_.size() ? terms_[i].first : INT32_MAX;
      int32_t eb =
          j < q.terms_.size() ? q.terms_[j].first + shift : INT32_MAX;
      if (ea < eb) {
        out.push_back(std::move(terms_[i++]));
      } else if (eb < ea) {
        out.emplace_back(eb, q.terms_[j++].second * c);
      } else {
        Int s = std::move(terms_[i].second);
        s += q.terms_[j].second * c;
        ++i;
        ++j;
        if (s != 0) out.emplace_back(ea, std::move(s));
      }
    }
    terms_ = std::move(out);
  }

  // *this += f * q
  void add_multiplied(const LaurentInt& q, const LaurentInt& f) {
    if (q.terms_.empty() || f.terms_.empty()) return;
    if (f.terms_.size() == 1) {
      add_scaled(q, f.terms_[0].second, f.terms_[0].first);
      return;
    }
    LaurentInt prod = q * f;
    *this += prod;
  }

  friend LaurentInt operator*(const LaurentInt& p, const LaurentInt& q) {
    LaurentInt r;
    if (p.terms_.empty() || q.terms_.empty()) return r;
    // dense accumulation over the (small) exponent range
    int32_t lo = p.terms_.front().first + q.terms_.front().first;
    int32_t hi = p.terms_.back().first + q.terms_.back().first;
    std::vector<Int> acc(static_cast<size_t>(hi - lo + 1));
    for (const Term& a : p.terms_)
      for (const Term& b : q.terms_)
        acc[static_cast<size_t>(a.first + b.first - lo)] += a.second * b.second;
    for (int32_t e = lo; e <= hi; ++e) {
      Int& c = acc[static_cast<size_t>(e - lo)];
      if (c != 0) r.terms_.emplace_back(e, std::move(c));
    }
    return r;
  }

  LaurentInt& operator*=(const LaurentInt& q) {
    *this = *this * q;
    return *this;
  }

  friend LaurentInt operator*(const Int& c, const LaurentInt& p) {
    LaurentInt r;
    if (c == 0) return r;
    r.terms_.reserve(p.terms_.size());
    for (const Term& t : p.terms_) r.terms_.emplace_back(t.first, t.second * c);
    return r;
  }

  friend bool operator==(const LaurentInt& a, const LaurentInt& b) {
    return a.terms_ == b.terms_;
  }

  friend bool operator!=(const LaurentInt& a, const LaurentInt& b) {
    return !(a == b);
  }

  // Canonical textual form: "exp:coeff" pairs ascending by exponent,
  // comma-separated; "0" for the zero polynomial.
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const Term& t : terms_) {
      if (!first) os << ",";
      first = false;
      os << t.first << ":" << t.second;
    }
    return os.str();
  }

 private:
  std::vector<Term> terms_;
};

}  // namespace celllab
