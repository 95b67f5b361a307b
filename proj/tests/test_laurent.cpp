#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "celllab/laurent.hpp"

using namespace celllab;

namespace {

LaurentInt random_poly(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> nterms(0, 6), exp(-8, 8), coeff(-9, 9);
  LaurentInt p;
  int n = nterms(rng);
  for (int i = 0; i < n; ++i)
    p += LaurentInt::monomial(coeff(rng), exp(rng));
  return p;
}

}  // namespace

TEST_CASE("ring arithmetic basics") {
  LaurentInt v = LaurentInt::v();
  LaurentInt vinv = LaurentInt::v(-1);

  SECTION("difference of squares") {
    LaurentInt lhs = (v + vinv) * (v - vinv);
    LaurentInt rhs = LaurentInt::v(2) - LaurentInt::v(-2);
    CHECK(lhs == rhs);
  }
  SECTION("additive identity") {
    std::mt19937_64 rng(7);
    LaurentInt p = random_poly(rng);
    CHECK(p + LaurentInt() == p);
  }
  SECTION("unit cancellation") {
    CHECK(vinv * v == LaurentInt::one());
  }
}

TEST_CASE("bar involution on coefficients") {
  CHECK(LaurentInt::v(3).bar() == LaurentInt::v(-3));
  CHECK(LaurentInt::constant(5).bar() == LaurentInt::constant(5));

  std::mt19937_64 rng(2024);
  for (int i = 0; i < 50; ++i) {
    LaurentInt p = random_poly(rng), q = random_poly(rng);
    CHECK(p.bar().bar() == p);
    CHECK((p * q).bar() == p.bar() * q.bar());
    CHECK((p + q).bar() == p.bar() + q.bar());
  }
}

TEST_CASE("leading data read-off") {
  LaurentInt p = LaurentInt::v(2) + LaurentInt::monomial(3, -1);
  CHECK(p.degree() == 2);
  CHECK(p.valuation() == -1);
  CHECK(p.top_coefficient() == 1);
  CHECK(p.bottom_coefficient() == 3);
  auto ld = p.leading_data();
  CHECK(ld.degree == 2);
  CHECK(ld.valuation == -1);
  CHECK(ld.top_coefficient == 1);
  CHECK(ld.bottom_coefficient == 3);
  CHECK_THROWS_AS(LaurentInt().leading_data(), CellLabError);

  LaurentInt c = LaurentInt::constant(7);
  CHECK(c.degree() == 0);
  CHECK(c.valuation() == 0);
  CHECK(c.top_coefficient() == 7);
  CHECK(c.bottom_coefficient() == 7);

  for (int a : {1, 4, 9}) {
    LaurentInt s = LaurentInt::v(a) + LaurentInt::v(-a);
    CHECK(s.degree() == a);
    CHECK(s.valuation() == -a);
    CHECK(s.top_coefficient() == 1);
    CHECK(s.bottom_coefficient() == 1);
    CHECK(s.is_bar_symmetric());
  }

  CHECK_THROWS_AS(LaurentInt().degree(), CellLabError);
}

TEST_CASE("degrees add over an integral domain") {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 60; ++i) {
    LaurentInt p = random_poly(rng), q = random_poly(rng);
    if (p.is_zero() || q.is_zero()) {
      CHECK((p * q).is_zero());
    } else {
      CHECK((p * q).degree() == p.degree() + q.degree());
      CHECK((p * q).valuation() == p.valuation() + q.valuation());
    }
  }
}

TEST_CASE("canonical text form") {
  LaurentInt p = LaurentInt::v(2) + LaurentInt::monomial(-3, -1);
  CHECK(p.to_string() == "-1:-3,2:1");
  CHECK(LaurentInt().to_string() == "0");
  CHECK(p.negative_part().to_string() == "-1:-3");
  CHECK(p.shifted(1).to_string() == "0:-3,3:1");
  CHECK(p.evaluate_at_one() == -2);
}

TEST_CASE("self-addition is well defined") {
  LaurentInt p = LaurentInt::v(2) + LaurentInt::monomial(3, -1);
  LaurentInt doubled = p;
  doubled += doubled;
  CHECK(doubled == LaurentInt::constant(2) * p);
  LaurentInt tripled = p;
  tripled.add_scaled(tripled, 2);
  CHECK(tripled == LaurentInt::constant(3) * p);
}
