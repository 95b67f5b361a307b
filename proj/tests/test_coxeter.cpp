#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "celllab/coxeter.hpp"
#include "perm_oracle.hpp"

using namespace celllab;

namespace {

// engine element -> oracle element via the canonical word
size_t to_oracle(const GroupTables& W, const oracle::PermGroup& G,
                 const std::vector<oracle::SignedPerm>& gens, Elt x) {
  std::vector<int> w;
  for (uint8_t s : W.word(x)) w.push_back(s);
  return G.eval_word(w, gens);
}

}  // namespace

TEST_CASE("rank one group") {
  GroupTables W = build_group(datum_from_type("A1", {1}));
  REQUIRE(W.size == 2);
  CHECK(W.w0() == W.generator(0));
  CHECK(W.length(W.w0()) == 1);
  for (Elt x = 0; x < W.size; ++x) CHECK(W.sigma(x) == x);
}

TEST_CASE("A2 against the word-enumeration oracle") {
  GroupTables W = build_group(datum_from_type("A2"));
  std::vector<oracle::SignedPerm> gens;
  oracle::PermGroup G = oracle::symmetric_group(3, &gens);

  REQUIRE(W.size == G.elems.size());
  REQUIRE(W.size == 6);
  CHECK(W.length(W.w0()) == 3);
  CHECK(static_cast<size_t>(G.length[G.w0]) == 3);

  // the word map is a length-preserving bijection respecting products
  std::set<size_t> seen;
  for (Elt x = 0; x < W.size; ++x) {
    size_t gx = to_oracle(W, G, gens, x);
    CHECK(G.length[gx] == static_cast<int>(W.length(x)));
    seen.insert(gx);
  }
  CHECK(seen.size() == W.size);
  for (Elt x = 0; x < W.size; ++x)
    for (Elt y = 0; y < W.size; ++y)
      CHECK(to_oracle(W, G, gens, W.product(x, y)) ==
            G.mult(to_oracle(W, G, gens, x), to_oracle(W, G, gens, y)));

  // sigma swaps the generators
  CHECK(W.sigma(W.generator(0)) == W.generator(1));

  // s1 * (s2 s1) = w0
  Elt s1 = W.generator(0);
  Elt s2s1 = W.product(W.generator(1), s1);
  CHECK(W.product(s1, s2s1) == W.w0());
  CHECK(W.product(s1, W.inverse(s1)) == 0);
}

TEST_CASE("B2 against the signed-permutation oracle") {
  GroupTables W = build_group(datum_from_type("B2"));
  std::vector<oracle::SignedPerm> gens;
  oracle::PermGroup G = oracle::hyperoctahedral2(&gens);

  REQUIRE(W.size == 8);
  REQUIRE(G.elems.size() == 8);
  CHECK(W.length(W.w0()) == 4);
  std::set<size_t> seen;
  for (Elt x = 0; x < W.size; ++x) {
    size_t gx = to_oracle(W, G, gens, x);
    CHECK(G.length[gx] == static_cast<int>(W.length(x)));
    seen.insert(gx);
  }
  CHECK(seen.size() == 8);
  for (Elt x = 0; x < W.size; ++x) CHECK(W.sigma(x) == x);
}

TEST_CASE("S4 matches the oracle") {
  GroupTables W = build_group(datum_from_type("A3"));
  std::vector<oracle::SignedPerm> gens;
  oracle::PermGroup G = oracle::symmetric_group(4, &gens);
  REQUIRE(W.size == 24);
  std::set<size_t> seen;
  for (Elt x = 0; x < W.size; ++x) seen.insert(to_oracle(W, G, gens, x));
  CHECK(seen.size() == 24);
}

TEST_CASE("bruhat order") {
  GroupTables W = build_group(datum_from_type("A2"));
  Elt s1 = W.generator(0), s2 = W.generator(1);
  Elt s1s2 = W.product(s1, s2);

  for (Elt y = 0; y < W.size; ++y) CHECK(W.bruhat_leq(0, y));
  CHECK(W.bruhat_leq(s1, s1s2));
  CHECK_FALSE(W.bruhat_leq(s1, s2));
  CHECK_FALSE(W.bruhat_leq(s2, s1));

  // reflexive, antisymmetric, transitive; and x <= y bounds lengths
  for (Elt x = 0; x < W.size; ++x)
    for (Elt y = 0; y < W.size; ++y) {
      if (W.bruhat_leq(x, y) && W.bruhat_leq(y, x)) CHECK(x == y);
      if (W.bruhat_leq(x, y)) {
        CHECK(W.length(x) <= W.length(y));
        for (Elt z = 0; z < W.size; ++z)
          if (W.bruhat_leq(y, z)) CHECK(W.bruhat_leq(x, z));
      }
    }
}

TEST_CASE("group-level invariants across types") {
  for (const char* t : {"A3", "B3", "I2(5)", "I2(7)", "I2(8)", "H3", "D4"}) {
    GroupTables W = build_group(datum_from_type(t));
    INFO("type " << t);

    // unique top, symmetric length generating function
    std::vector<size_t> count(W.length(W.w0()) + 1, 0);
    for (Elt x = 0; x < W.size; ++x) ++count[W.length(x)];
    CHECK(count.back() == 1);
    for (size_t l = 0; l < count.size(); ++l)
      CHECK(count[l] == count[count.size() - 1 - l]);

    std::mt19937_64 rng(5);
    std::uniform_int_distribution<Elt> pick(0, static_cast<Elt>(W.size - 1));
    for (int i = 0; i < 40; ++i) {
      Elt x = pick(rng), y = pick(rng);
      CHECK(W.sigma(W.product(x, y)) == W.product(W.sigma(x), W.sigma(y)));
      CHECK(W.product(x, W.inverse(x)) == 0);
    }
    for (int i = 0; i < 25; ++i) {
      Elt x = pick(rng);
      for (int s = 0; s < W.rank; ++s) {
        Elt sx = W.left_mult(s, x);
        CHECK(W.length(sx) != W.length(x));
        CHECK(std::abs(static_cast<long>(W.length(sx)) -
                       static_cast<long>(W.length(x))) == 1);
      }
    }
    // weight additivity over the canonical word
    for (int i = 0; i < 10; ++i) {
      Elt x = pick(rng);
      long long w = 0;
      for (uint8_t s : W.word(x)) w += W.generator_weight(s);
      CHECK(w == W.weight(x));
    }
  }
}

TEST_CASE("expected orders") {
  CHECK(build_group(datum_from_type("B2")).size == 8);
  CHECK(build_group(datum_from_type("G2")).size == 12);
  CHECK(build_group(datum_from_type("I2(7)")).size == 14);
  CHECK(build_group(datum_from_type("H3")).size == 120);
  CHECK(build_group(datum_from_type("D4")).size == 192);
}

TEST_CASE("rejects bad input") {
  // affine triangle: all bonds 3, not positive definite
  CoxeterDatum aff;
  aff.rank = 3;
  aff.coxeter_matrix = {{1, 3, 3}, {3, 1, 3}, {3, 3, 1}};
  aff.weights = {1, 1, 1};
  CHECK_THROWS_MATCHES(build_group(aff), CellLabError,
                       Catch::Matchers::Predicate<CellLabError>(
                           [](const CellLabError& e) {
                             return e.code() == ErrorCode::InfiniteGroup;
                           }));

  // odd bond with unequal weights
  CHECK_THROWS_MATCHES(build_group(datum_from_type("A2", {1, 2})),
                       CellLabError,
                       Catch::Matchers::Predicate<CellLabError>(
                           [](const CellLabError& e) {
                             return e.code() == ErrorCode::InvalidWeights;
                           }));

  // nonpositive weight
  CHECK_THROWS_MATCHES(build_group(datum_from_type("B2", {0, 1})),
                       CellLabError,
                       Catch::Matchers::Predicate<CellLabError>(
                           [](const CellLabError& e) {
                             return e.code() == ErrorCode::InvalidWeights;
                           }));
}

TEST_CASE("lazy bruhat rows agree with the table") {
  CoxeterDatum d = datum_from_type("B3");
  GroupTables table_mode = GroupTables::build(d);
  GroupTables lazy_mode = GroupTables::build(d, 250000, /*bruhat_table_limit=*/0);
  for (Elt x = 0; x < table_mode.size; ++x)
    for (Elt y = 0; y < table_mode.size; ++y)
      CHECK(table_mode.bruhat_leq(x, y) == lazy_mode.bruhat_leq(x, y));
}

TEST_CASE("canonical words and serialization") {
  GroupTables W = build_group(datum_from_type("A2"));
  CHECK(W.word_string(0) == "");
  CHECK(W.word_string(W.w0()) == "1.2.1");
  CHECK(W.element_from_word_string("1.2.1") == W.w0());
  CHECK(W.element_from_word_string("") == 0);
  CHECK_THROWS_AS(W.element_from_word_string("3"), CellLabError);
}
