#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "celllab/errors.hpp"

namespace celllab {

using BigInt = boost::multiprecision::cpp_int;

namespace detail {

// Exact division of integer polynomials, used for cyclotomic polynomials.
// Coefficients little-endian.  Requires the division to be exact and the
// divisor monic-leading (cyclotomics are).
inline std::vector<BigInt> poly_div_exact(std::vector<BigInt> num,
                                          const std::vector<BigInt>& den) {
  require(!den.empty() && den.back() != 0, ErrorCode::Internal,
          "polynomial division by zero");
  std::vector<BigInt> quot(num.size() >= den.size()
                               ? num.size() - den.size() + 1
                               : 0);
  for (size_t k = quot.size(); k-- > 0;) {
    BigInt c = num[k + den.size() - 1] / den.back();
    quot[k] = c;
    if (c != 0)
      for (size_t j = 0; j < den.size(); ++j) num[k + j] -= c * den[j];
  }
  for (const BigInt& c : num)
    require(c == 0, ErrorCode::Internal, "inexact polynomial division");
  return quot;
}

// n-th cyclotomic polynomial, little-endian integer coefficients.
inline std::vector<BigInt> cyclotomic(int n) {
  // x^n - 1 divided by the cyclotomics of all proper divisors
  std::vector<BigInt> p(static_cast<size_t>(n) + 1);
  p[0] = -1;
  p[static_cast<size_t>(n)] = 1;
  for (int d = 1; d < n; ++d)
    if (n % d == 0) p = poly_div_exact(std::move(p), cyclotomic(d));
  return p;
}

}  // namespace detail

/*
  The ring Z[alpha] with alpha = 2cos(pi/N), presented as Z[x] modulo the
  minimal polynomial of alpha.  Every entry of the geometric bilinear form
  of a finite Coxeter matrix with bond labels dividing N lives here, since
  2cos(k*pi/N) is an integer polynomial in alpha (Chebyshev recurrence).
  The embedding into R is used only to read off signs of nonzero values.
*/
class RootField {
 public:
  // Element of Z[alpha]: little-endian coordinates in the power basis,
  // always of length degree().
  using Elem = std::vector<BigInt>;

  explicit RootField(int N) : N_(N) {
    require(N >= 2, ErrorCode::Internal, "root field needs N >= 2");
    // minimal polynomial of 2cos(pi/N) = zeta + 1/zeta, zeta a primitive
    // 2N-th root of unity: fold the palindromic cyclotomic of order 2N
    // through x^k + x^{-k} = D_k(y), D_0 = 2, D_1 = y, D_{k+1} = y D_k - D_{k-1}.
    std::vector<BigInt> phi = detail::cyclotomic(2 * N);
    size_t d = (phi.size() - 1) / 2;
    std::vector<BigInt> psi(d + 1);
    std::vector<BigInt> dk_prev = {2};       // D_0
    std::vector<BigInt> dk = {0, 1};         // D_1
    psi[0] = phi[d];
    for (size_t k = 1; k <= d; ++k) {
      for (size_t j = 0; j < dk.size(); ++j) psi[j] += phi[d + k] * dk[j];
      if (k < d) {
        // advance the recurrence D_{k+1} = y*D_k - D_{k-1}
        std::vector<BigInt> next(dk.size() + 1);
        for (size_t j = 0; j < dk.size(); ++j) next[j + 1] = dk[j];
        for (size_t j = 0; j < dk_prev.size(); ++j) next[j] -= dk_prev[j];
        dk_prev = std::move(dk);
        dk = std::move(next);
      }
    }
    require(psi[d] == 1, ErrorCode::Internal, "minimal polynomial not monic");
    minpoly_ = std::move(psi);
    degree_ = static_cast<int>(d);
    alpha_real_ = 2.0L * std::cos(std::acos(-1.0L) / N_);
  }

  int degree() const { return degree_; }

  Elem zero() const { return Elem(static_cast<size_t>(degree_)); }

  Elem from_int(long v) const {
    Elem e = zero();
    e[0] = v;
    return e;
  }

  // 2cos(pi/m) for m dividing N, via D_{N/m}(alpha).
  Elem two_cos_pi_over(int m) const {
    require(m >= 1 && N_ % m == 0, ErrorCode::Internal,
            "bond label must divide the field order");
    int k = N_ / m;
    Elem prev = from_int(2);  // D_0
    if (k == 0) return prev;
    Elem cur = zero();
    if (degree_ >= 2) {
      cur[1] = 1;  // alpha
    } else {
      // degree-1 field: alpha is rational, reduce x mod (x - c)
      cur[0] = -minpoly_[0];
    }
    for (int i = 1; i < k; ++i) {
      Elem next = mul_by_alpha(cur);
      sub_inplace(next, prev);
      prev = std::move(cur);
      cur = std::move(next);
    }
    return cur;
  }

  void add_inplace(Elem& a, const Elem& b) const {
    for (int i = 0; i < degree_; ++i) a[static_cast<size_t>(i)] += b[static_cast<size_t>(i)];
  }

  void sub_inplace(Elem& a, const Elem& b) const {
    for (int i = 0; i < degree_; ++i) a[static_cast<size_t>(i)] -= b[static_cast<size_t>(i)];
  }

  // a -= c*b
  void sub_scaled_inplace(Elem& a, const Elem& b, const BigInt& c) const {
    for (int i = 0; i < degree_; ++i) a[static_cast<size_t>(i)] -= c * b[static_cast<size_t>(i)];
  }

  Elem mul(const Elem& a, const Elem& b) const {
    std::vector<BigInt> prod(static_cast<size_t>(2 * degree_ - 1));
    for (int i = 0; i < degree_; ++i) {
      if (a[static_cast<size_t>(i)] == 0) continue;
      for (int j = 0; j < degree_; ++j)
        prod[static_cast<size_t>(i + j)] += a[static_cast<size_t>(i)] * b[static_cast<size_t>(j)];
    }
    reduce(prod);
    prod.resize(static_cast<size_t>(degree_));
    return prod;
  }

  bool is_zero(const Elem& a) const {
    for (const BigInt& c : a)
      if (c != 0) return false;
    return true;
  }

  // Sign of the real value under alpha -> 2cos(pi/N).  Exact zero is
  // detected algebraically; otherwise the numeric value of a nonzero
  // element of this ring at desk scale is far from zero.
  int sign(const Elem& a) const {
    if (is_zero(a)) return 0;
    long double acc = 0, pw = 1;
    for (int i = 0; i < degree_; ++i) {
      acc += static_cast<long double>(a[static_cast<size_t>(i)]) * pw;
      pw *= alpha_real_;
    }
    require(std::fabs(acc) > 1e-9L, ErrorCode::Internal,
            "sign determination too close to zero");
    return acc > 0 ? 1 : -1;
  }

  std::string to_string(const Elem& a) const {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < degree_; ++i) {
      if (i) os << ",";
      os << a[static_cast<size_t>(i)];
    }
    os << "]";
    return os.str();
  }

 private:
  Elem mul_by_alpha(const Elem& a) const {
    std::vector<BigInt> shifted(static_cast<size_t>(degree_) + 1);
    for (int i = 0; i < degree_; ++i) shifted[static_cast<size_t>(i + 1)] = a[static_cast<size_t>(i)];
    reduce(shifted);
    shifted.resize(static_cast<size_t>(degree_));
    return shifted;
  }

  void reduce(std::vector<BigInt>& p) const {
    for (size_t k = p.size(); k-- > static_cast<size_t>(degree_);) {
      BigInt c = std::move(p[k]);
      p[k] = 0;
      if (c == 0) continue;
      for (int j = 0; j < degree_; ++j)
        p[k - static_cast<size_t>(degree_) + static_cast<size_t>(j)] -=
            c * minpoly_[static_cast<size_t>(j)];
    }
  }

  int N_;
  int degree_ = 0;
  std::vector<BigInt> minpoly_;  // monic, little-endian
  long double alpha_real_ = 0;
};

}  // namespace celllab
