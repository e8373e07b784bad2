#include <doctest.h>

#include <random>

#include "refinemon/core.hpp"
#include "refinemon/index_set.hpp"
#include "support.hpp"

using namespace refinemon;
using refinemon::testing::vec;

TEST_SUITE("core") {
  TEST_CASE("basis_sum") {
    CHECK(basis_sum(SimplicialMonoid{3}, IndexSet{0, 2}) == vec({1, 0, 1}));
    CHECK(basis_sum(SimplicialMonoid{3}, IndexSet{}) == vec({0, 0, 0}));
    CHECK(basis_sum(SimplicialMonoid{2}, IndexSet{0, 1}) == basis_total(SimplicialMonoid{2}));
    CHECK_THROWS_AS(basis_sum(SimplicialMonoid{2}, IndexSet{2}), DomainError);
    CHECK_THROWS_AS((IndexSet{1, 1}), DomainError);
  }

  TEST_CASE("support") {
    CHECK(support(vec({2, 0, 3})) == IndexSet{0, 2});
    CHECK(support(vec({0, 0})).empty());
    CHECK(support(vec({1, 1, 1})) == IndexSet::full(3));
  }

  TEST_CASE("propto examples") {
    CHECK(propto(vec({1, 0, 2}), vec({2, 0, 1})) == Natural(2));
    CHECK(propto(vec({0, 0}), vec({5, 7})) == Natural(0));
    CHECK_FALSE(propto(vec({1, 0}), vec({0, 1})).has_value());
    CHECK_THROWS_AS(propto(vec({1}), vec({1, 1})), DomainError);
  }

  TEST_CASE("propto against brute force") {
    std::mt19937 rng(20241);
    std::uniform_int_distribution<unsigned> coord(0, 9), rank(1, 6);
    for (int trial = 0; trial < 2000; ++trial) {
      const unsigned r = rank(rng);
      std::vector<unsigned> x(r), y(r);
      for (auto& v : x) v = coord(rng) < 4 ? 0 : coord(rng);
      for (auto& v : y) v = coord(rng) < 4 ? 0 : coord(rng);
      const auto got = propto(testing::from_vector(x), testing::from_vector(y));
      const auto want = testing::brute_propto(x, y);
      REQUIRE(got.has_value() == want.has_value());
      if (want) CHECK(testing::u(*got) == *want);
      CHECK(got.has_value() == support(testing::from_vector(x)).is_subset_of(support(testing::from_vector(y))));
    }
  }

  TEST_CASE("compose") {
    const Morphism f = Morphism::from_columns(2, {vec({1, 1})});
    const Morphism g = Morphism::from_columns(2, {vec({2, 0}), vec({0, 1})});
    CHECK(compose(g, f).column(0) == vec({2, 1}));
    CHECK(compose(Morphism::identity(2), f) == f);
    CHECK(compose(Morphism(2, 3), f) == Morphism(1, 3));
    CHECK_THROWS_AS(compose(f, f), DomainError);
  }

  TEST_CASE("additivity and functoriality") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<unsigned> small(0, 3);
    const Morphism f = Morphism::from_columns(3, {vec({1, 0, 2}), vec({0, 3, 1}), vec({2, 2, 0})});
    const Morphism g = Morphism::from_columns(2, {vec({1, 1}), vec({0, 2}), vec({3, 0})});
    for (unsigned a = 0; a < 64; ++a)
      for (unsigned b = 0; b < 64; ++b) {
        const Element x = vec({a & 3, a >> 2 & 3, a >> 4 & 3});
        const Element y = vec({b & 3, b >> 2 & 3, b >> 4 & 3});
        REQUIRE(f(Element(x + y)) == Element(f(x) + f(y)));
      }
    for (int trial = 0; trial < 100; ++trial) {
      const Element x = vec({small(rng), small(rng), small(rng)});
      CHECK(compose(g, f)(x) == g(f(x)));
    }
  }

  TEST_CASE("direct_sum") {
    const auto s = direct_sum(SimplicialMonoid{2}, SimplicialMonoid{3});
    CHECK(s.sum.rank == 5);
    CHECK(s.first.column(1) == basis_element(s.sum, 1));
    CHECK(s.second.column(0) == basis_element(s.sum, 2));
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 3; ++j) CHECK((support(s.first.column(i)) & support(s.second.column(j))).empty());
    const auto t = direct_sum(SimplicialMonoid{0}, SimplicialMonoid{2});
    CHECK(t.second == Morphism::identity(2));
  }

  TEST_CASE("subset order") {
    const auto order = subsets_by_size_then_lex(3);
    const std::vector<std::uint64_t> want{0b000, 0b001, 0b010, 0b100, 0b011, 0b101, 0b110, 0b111};
    CHECK(order == want);
  }
}
