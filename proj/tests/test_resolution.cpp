#include <doctest.h>

#include <random>

#include "refinemon/fixtures.hpp"
#include "refinemon/free_monoid.hpp"
#include "refinemon/resolution.hpp"
#include "refinemon/tower.hpp"
#include "support.hpp"

using namespace refinemon;
using refinemon::testing::nat;
using refinemon::testing::vec;

namespace {

template <class M>
void check_all_subset_pairs(const M& m, const std::vector<value_t<M>>& alpha, const Resolution<value_t<M>>& res) {
  const std::size_t r = alpha.size();
  const SimplicialMonoid delta{r};
  for (std::uint64_t J = 0; J < (std::uint64_t{1} << r); ++J)
    for (std::uint64_t I = 0; I < (std::uint64_t{1} << r); ++I) {
      const auto Js = IndexSet::from_mask(J), Is = IndexSet::from_mask(I);
      if (!oracle_propto(m, subset_image(m, alpha, Js), subset_image(m, alpha, Is))) continue;
      CHECK(propto(res.beta(basis_sum(delta, Js)), res.beta(basis_sum(delta, Is))).has_value());
    }
}

template <class M>
void check_factorization(const M& m, const std::vector<value_t<M>>& alpha, const Resolution<value_t<M>>& res) {
  for (std::size_t i = 0; i < alpha.size(); ++i) CHECK(m.equal(image(m, res.alpha, res.beta.column(i)), alpha[i]));
}

}  // namespace

TEST_SUITE("resolution") {
  TEST_CASE("basis_split on Z+") {
    const FreeMonoid z(1);
    const Resolver R(z);
    const auto res = R.basis_split({nat(2), nat(1)}, 0, IndexSet{1});
    CHECK(res.delta.rank == 3);
    REQUIRE(res.alpha.size() == 3);
    CHECK(res.alpha[0] == nat(0));
    CHECK(res.alpha[1] == nat(0));
    CHECK(res.alpha[2] == nat(1));
    CHECK(res.beta.column(0) == vec({0, 1, 2}));
    CHECK(res.beta.column(1) == vec({1, 1, 1}));
    CHECK(leq(res.beta.column(0), Element(Natural(2) * res.beta.column(1))));
    check_factorization(z, {nat(2), nat(1)}, res);

    const auto zero = R.basis_split({nat(0), nat(0)}, 0, IndexSet{1});
    CHECK(zero.delta.rank == 2);
    CHECK(zero.alpha[0] == nat(0));
    CHECK(zero.alpha[1] == nat(0));
    CHECK(zero.beta.column(0) == vec({0, 1}));
    CHECK(zero.beta.column(1) == vec({1, 1}));

    CHECK_THROWS_AS(R.basis_split({nat(1), nat(0)}, 0, IndexSet{1}), DomainError);
    CHECK_THROWS_AS(R.basis_split({nat(1), nat(1)}, 0, IndexSet{0}), DomainError);
  }

  TEST_CASE("basis_split on {0,u}") {
    const CayleyMonoid two(fixtures::two_element());
    const auto u = *two.find("u");
    const auto res = Resolver(two).basis_split({u, u}, 0, IndexSet{1});
    CHECK(res.delta.rank == 2);
    CHECK(two.name(res.alpha[0]) == "0");
    CHECK(two.name(res.alpha[1]) == "u");
    CHECK(res.beta.column(0) == vec({0, 1}));
    CHECK(res.beta.column(1) == vec({1, 1}));
  }

  TEST_CASE("inductive_step") {
    const FreeMonoid z(1);
    const std::vector<Element> alpha{nat(1), nat(1), nat(2)};
    const auto step = Resolver(z).inductive_step(alpha, IndexSet{2}, IndexSet{0, 1}, 0);
    CHECK(step.delta.rank == 3);
    CHECK(step.K == IndexSet{1, 2});
    CHECK(step.carried == IndexSet{0});
    CHECK(step.beta.column(1) == basis_element(step.delta, 0));
    CHECK(propto(step.beta.column(0), basis_sum(step.delta, step.K)).has_value());
    CHECK(step.beta(basis_sum(SimplicialMonoid{3}, IndexSet{2})) == basis_sum(step.delta, step.K));
    check_factorization(z, alpha, step);

    const CayleyMonoid two(fixtures::two_element());
    const auto u = *two.find("u");
    const auto s2 = Resolver(two).inductive_step({u, u, u}, IndexSet{2}, IndexSet{0, 1}, 0);
    CHECK(s2.delta.rank == 3);
    CHECK(two.name(s2.alpha[1]) == "0");
    CHECK(two.name(s2.alpha[2]) == "u");

    // alpha(e_J) = 0: the pivot's Riesz parts y_1.. vanish, so beta(e_0) lands on zero images
    const auto degenerate = Resolver(z).inductive_step({nat(0), nat(0), nat(3)}, IndexSet{2}, IndexSet{0, 1}, 0);
    CHECK(image(z, degenerate.alpha, degenerate.beta.column(0)) == nat(0));
    CHECK(degenerate.alpha[degenerate.K.front() + 1] == nat(0));

    CHECK_THROWS_AS(Resolver(z).inductive_step(alpha, IndexSet{0}, IndexSet{0, 1}, 0), DomainError);
    CHECK_THROWS_AS(Resolver(z).inductive_step(alpha, IndexSet{2}, IndexSet{0, 1}, 2), DomainError);
  }

  TEST_CASE("index_pair") {
    const FreeMonoid z(1);
    const std::vector<Element> alpha{nat(1), nat(1), nat(2)};
    const auto res = Resolver(z).index_pair(alpha, IndexSet{2}, IndexSet{0, 1});
    const SimplicialMonoid d{3};
    CHECK(propto(res.beta(basis_sum(d, IndexSet{0, 1})), res.beta(basis_sum(d, IndexSet{2}))).has_value());
    check_factorization(z, alpha, res);

    const auto single = Resolver(z).index_pair({nat(2), nat(1)}, IndexSet{1}, IndexSet{0});
    const auto split = Resolver(z).basis_split({nat(2), nat(1)}, 0, IndexSet{1});
    CHECK(single.beta == split.beta);

    const CayleyMonoid two(fixtures::two_element());
    const auto u = *two.find("u");
    const auto r2 = Resolver(two).index_pair({u, u, u}, IndexSet{2}, IndexSet{0, 1});
    CHECK(propto(r2.beta(basis_sum(d, IndexSet{0, 1})), r2.beta(basis_sum(d, IndexSet{2}))).has_value());
  }

  TEST_CASE("element_pair") {
    const FreeMonoid z(1);
    const Resolver R(z);
    const auto id = R.element_pair({nat(1), nat(2)}, vec({0, 0}), vec({1, 0}));
    CHECK(id.beta == Morphism::identity(2));

    const auto kill = R.element_pair({nat(0), nat(1)}, vec({2, 0}), vec({0, 0}));
    CHECK(kill.beta.column(0) == vec({0, 0}));
    CHECK(kill.beta.column(1) == vec({0, 1}));
    CHECK(kill.beta(vec({2, 0})) == vec({0, 0}));

    const auto res = R.element_pair({nat(1), nat(2)}, vec({3, 1}), vec({0, 1}));
    CHECK(propto(res.beta(vec({3, 1})), res.beta(vec({0, 1}))).has_value());
    check_factorization(z, {nat(1), nat(2)}, res);

    CHECK_THROWS_AS(R.element_pair({nat(1), nat(0)}, vec({1, 0}), vec({0, 1})), DomainError);
  }

  TEST_CASE("all_pairs resolves every subset pair") {
    const FreeMonoid z(1);
    const std::vector<Element> a{nat(2), nat(1)};
    const auto res = Resolver(z).all_pairs(a);
    check_all_subset_pairs(z, a, res);
    check_factorization(z, a, res);

    CHECK(Resolver(z).all_pairs({nat(3)}).beta == Morphism::identity(1));

    const CayleyMonoid two(fixtures::two_element());
    const auto u = *two.find("u");
    const auto r2 = Resolver(two).all_pairs({u, u});
    check_all_subset_pairs(two, {u, u}, r2);

    std::mt19937 rng(3);
    for (const auto& f : fixtures::finite_fixtures()) {
      CAPTURE(f.name);
      const CayleyMonoid m(f.table);
      for (int trial = 0; trial < 5; ++trial) {
        std::vector<ElementId> alpha;
        const std::size_t r = std::uniform_int_distribution<std::size_t>(1, 3)(rng);
        for (std::size_t i = 0; i < r; ++i)
          alpha.push_back(m.element(std::uniform_int_distribution<std::size_t>(0, m.size() - 1)(rng)));
        const auto out = Resolver(m).all_pairs(alpha);
        check_all_subset_pairs(m, alpha, out);
        check_factorization(m, alpha, out);
      }
    }
  }

  TEST_CASE("rank budget") {
    const FreeMonoid z(1);
    try {
      Resolver(z, 2).basis_split({nat(2), nat(1)}, 0, IndexSet{1});
      FAIL("expected a budget error");
    } catch (const RankBudgetError& e) {
      CHECK(e.rank() == 3);
      CHECK(e.budget() == 2);
    }
  }
}

TEST_SUITE("tower") {
  TEST_CASE("two-element tower") {
    const CayleyMonoid two(fixtures::two_element());
    Tower t(two);
    CHECK(t.stage(0).delta.rank == 1);
    CHECK(two.name(t.stage(0).alpha[0]) == "0");
    t.extend();
    const auto& a1 = t.stage(1).alpha;
    CHECK(two.in_submonoid(std::span<const ElementId>(a1), *two.find("0")));
    CHECK(two.in_submonoid(std::span<const ElementId>(a1), *two.find("u")));
    const std::size_t rank1 = t.stage(1).delta.rank;
    t.extend();
    CHECK(t.stage(2).delta.rank >= rank1);
    CHECK(verify_tower(two, t.stages()).ok());
  }

  TEST_CASE("naturals tower") {
    const FreeMonoid z(1);
    Tower t(z);
    CHECK(t.stage(0).alpha[0] == nat(0));
    t.extend();
    const auto& a1 = t.stage(1).alpha;
    CHECK(std::find(a1.begin(), a1.end(), nat(1)) != a1.end());
    t.extend_to(3);
    const auto check = verify_tower(z, t.stages());
    CHECK(check.ok());
    CHECK(check.propagation_pairs > 0);
  }

  TEST_CASE("no adjunction once the image is everything") {
    const CayleyMonoid chain(fixtures::chain3());
    Tower t(chain);
    t.extend_to(5);
    CHECK(t.stage(4).delta.rank == t.stage(5).delta.rank);
  }

  TEST_CASE("colimit") {
    const CayleyMonoid two(fixtures::two_element());
    Tower t(two);
    t.extend_to(2);
    const auto u = *two.find("u");
    const ColimitElement e{1, basis_element(t.stage(1).delta, 0)};
    const ColimitElement zero{1, zero_element(t.stage(1).delta.rank)};
    CHECK(two.equal(colimit_alpha(t, zero), two.zero()));
    CHECK(two.equal(colimit_alpha(t, ColimitElement{2, push_forward(t.stages(), e, 2)}), colimit_alpha(t, e)));
    const auto self = colimit_propto(t, e, e);
    CHECK(self.holds);
    // pick a colimit element mapping to u and check it against one mapping to 0
    for (std::size_t i = 0; i < t.stage(1).delta.rank; ++i) {
      const ColimitElement b{1, basis_element(t.stage(1).delta, i)};
      if (two.equal(colimit_alpha(t, b), u)) CHECK_FALSE(colimit_propto(t, b, zero).holds);
    }
    // at the newest stage, a pair related in M but not yet in Delta_2 has nowhere to look
    bool tried = false;
    const auto& st = t.stage(2);
    for (std::size_t i = 0; i < st.delta.rank && !tried; ++i)
      for (std::size_t k = 0; k < st.delta.rank && !tried; ++k) {
        const Element a = basis_element(st.delta, i), b = basis_element(st.delta, k);
        if (!oracle_propto(two, st.alpha[i], st.alpha[k]) || propto(a, b)) continue;
        tried = true;
        CHECK_THROWS_AS(colimit_propto(t, ColimitElement{2, a}, ColimitElement{2, b}), InsufficientDepthError);
      }
    CHECK(tried);
  }

  TEST_CASE("colimit over Z+") {
    const FreeMonoid z(1);
    Tower t(z);
    t.extend_to(3);
    // stage 2 images contain 1 and 2 by coverage, so 5 and 2 are representable there
    const auto& st = t.stage(2);
    std::optional<Element> five, two;
    const std::size_t r = st.delta.rank;
    for (unsigned a = 0; a < 6 && (!five || !two); ++a)
      for (std::size_t i = 0; i < r; ++i) {
        Element x = zero_element(r);
        x(static_cast<Eigen::Index>(i)) = Natural(a);
        const auto v = image(z, st.alpha, x);
        if (v == nat(5) && !five) five = x;
        if (v == nat(2) && !two) two = x;
      }
    REQUIRE(two.has_value());
    if (!five) five = Element(*two + *two + *two);
    const auto res = colimit_propto(t, ColimitElement{2, *five}, ColimitElement{2, *two});
    CHECK(res.holds);
    CHECK(res.stage <= 3);
  }

  TEST_CASE("budget error names the stage") {
    const CayleyMonoid m(fixtures::budget_breaker());
    Tower t(m, 2);
    try {
      t.extend_to(3);
      FAIL("expected a budget error");
    } catch (const RankBudgetError& e) {
      CHECK(e.stage() == 1);
      CHECK(std::string(e.what()).find("stage 1") != std::string::npos);
    }
  }

  TEST_CASE("verify_tower catches a corrupted beta") {
    const CayleyMonoid chain(fixtures::chain3());
    Tower t(chain);
    t.extend_to(3);
    bool found = false;
    const auto& b0 = t.stages()[1].beta->matrix();
    for (Eigen::Index c = 0; c < b0.cols() && !found; ++c)
      for (Eigen::Index r = 0; r < b0.rows() && !found; ++r) {
        auto stages = t.stages();
        auto b = b0;
        b(r, c) += Natural(1);
        stages[1].beta = Morphism(b);
        if (chain.equal(image(chain, stages[2].alpha, stages[1].beta->column(static_cast<std::size_t>(c))),
                        stages[1].alpha[static_cast<std::size_t>(c)]))
          continue;
        found = true;
        const auto rep = verify_tower(chain, stages);
        CHECK_FALSE(rep.ok());
        REQUIRE_FALSE(rep.failures.empty());
        CHECK(rep.failures[0].find("stage 1, basis index " + std::to_string(c)) != std::string::npos);
      }
    CHECK(found);
  }
}
