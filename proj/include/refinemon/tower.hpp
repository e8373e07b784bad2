#pragma once

// The tower Delta_0 -> Delta_1 -> ... of simplicial monoids over an oracle M,
// its colimit bookkeeping, and an independent checker for stored towers.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "refinemon/core.hpp"
#include "refinemon/errors.hpp"
#include "refinemon/oracle.hpp"
#include "refinemon/resolution.hpp"

namespace refinemon {

template <class V>
struct Stage {
  SimplicialMonoid delta;
  std::vector<V> alpha;         ///< alpha_j by basis images
  std::optional<Morphism> beta;  ///< beta_j : Delta_j -> Delta_{j+1}; empty at the newest stage
};

/// The tower is too short to exhibit a witness that must exist one stage later.
class InsufficientDepthError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <MonoidOracle M>
class Tower {
 public:
  using V = value_t<M>;

  /// Stage 0: rank 1 with alpha_0(e_0) = x_0.
  explicit Tower(const M& m, std::size_t rank_budget = kDefaultRankBudget) : m_(m), resolver_(m, rank_budget) {
    auto first = m_.enumerate(1);
    if (first.empty()) throw DomainError("Tower: oracle enumeration is empty");
    stages_.push_back(Stage<V>{SimplicialMonoid{1}, {first.front()}, std::nullopt});
  }

  const M& oracle() const noexcept { return m_; }
  std::size_t rank_budget() const noexcept { return resolver_.rank_budget(); }
  /// Number of extensions applied so far.
  std::size_t depth() const noexcept { return stages_.size() - 1; }
  const std::vector<Stage<V>>& stages() const noexcept { return stages_; }
  const Stage<V>& stage(std::size_t j) const {
    if (j >= stages_.size()) throw DomainError("Tower: stage " + std::to_string(j) + " not built");
    return stages_[j];
  }

  /// Resolves every pair visible in the newest stage, then adjoins x_{j+1}
  /// unless it already lies in the image.
  void extend() {
    const std::size_t j = depth();
    Resolution<V> res;
    try {
      res = resolver_.all_pairs(stages_[j].alpha);
    } catch (const RankBudgetError& e) {
      throw RankBudgetError(e.rank(), e.budget(), j);
    }
    const auto xs = m_.enumerate(j + 2);
    Morphism beta = res.beta;
    std::vector<V> alpha = res.alpha;
    std::size_t rank = res.delta.rank;
    if (xs.size() == j + 2 && !m_.in_submonoid(std::span<const V>(alpha), xs[j + 1])) {
      if (rank + 1 > rank_budget()) throw RankBudgetError(rank + 1, rank_budget(), j);
      const auto sum = direct_sum(res.delta, SimplicialMonoid{1});
      beta = compose(sum.first, beta);
      alpha.push_back(xs[j + 1]);
      rank += 1;
    }
    stages_[j].beta = std::move(beta);
    stages_.push_back(Stage<V>{SimplicialMonoid{rank}, std::move(alpha), std::nullopt});
  }

  void extend_to(std::size_t target_depth) {
    while (depth() < target_depth) extend();
  }

 private:
  const M& m_;
  Resolver<M> resolver_;
  std::vector<Stage<V>> stages_;
};

/// An element of the colimit, represented at some stage.
struct ColimitElement {
  std::size_t stage = 0;
  Element rep;
};

/// Representative of c at a later stage.
template <class V>
Element push_forward(const std::vector<Stage<V>>& stages, const ColimitElement& c, std::size_t target) {
  if (c.stage >= stages.size() || target >= stages.size()) throw DomainError("push_forward: stage not built");
  if (target < c.stage) throw DomainError("push_forward: cannot move to an earlier stage");
  if (static_cast<std::size_t>(c.rep.size()) != stages[c.stage].delta.rank)
    throw DomainError("push_forward: representative has the wrong rank");
  Element x = c.rep;
  for (std::size_t s = c.stage; s < target; ++s) x = (*stages[s].beta)(x);
  return x;
}

template <MonoidOracle M>
value_t<M> colimit_alpha(const Tower<M>& t, const ColimitElement& c) {
  const auto& st = t.stage(c.stage);
  return image(t.oracle(), st.alpha, c.rep);
}

struct ColimitPropto {
  bool holds = false;
  std::size_t stage = 0;  ///< stage where rep_a <= n * rep_b was found (when holds)
  Natural n;
};

/// Decides a ∝ b in the colimit. The answer is the oracle's; when it is yes,
/// a witness a <= n*b is located at the common stage or the one after it.
template <MonoidOracle M>
ColimitPropto colimit_propto(const Tower<M>& t, const ColimitElement& a, const ColimitElement& b) {
  const auto& stages = t.stages();
  const std::size_t s = std::max(a.stage, b.stage);
  if (s >= stages.size()) throw DomainError("colimit_propto: stage not built");
  ColimitPropto out;
  out.holds = oracle_propto(t.oracle(), colimit_alpha(t, a), colimit_alpha(t, b));
  if (!out.holds) return out;
  Element x = push_forward(stages, a, s);
  Element y = push_forward(stages, b, s);
  for (std::size_t k = s; k <= s + 1; ++k) {
    if (k > s) {
      if (k >= stages.size())
        throw InsufficientDepthError("colimit_propto: witness needs stage " + std::to_string(k) +
                                     ", tower depth is " + std::to_string(t.depth()));
      x = (*stages[k - 1].beta)(x);
      y = (*stages[k - 1].beta)(y);
    }
    if (auto n = propto(x, y)) {
      out.stage = k;
      out.n = *n;
      return out;
    }
  }
  throw InvariantError("colimit_propto: no witness one stage after stage " + std::to_string(s));
}

struct TowerCheck {
  std::vector<std::string> failures;
  std::size_t commutativity_checks = 0;
  std::size_t coverage_checks = 0;
  std::size_t propagation_pairs = 0;

  bool ok() const noexcept { return failures.empty(); }
};

/// Re-checks a stored tower against the oracle from scratch: dimensions and
/// rank budget, alpha_{j+1} o beta_j = alpha_j on every basis element,
/// {x_0..x_j} inside the image of alpha_j, and propagation of every
/// qualifying subset pair (J, I) of every stage but the newest.
template <MonoidOracle M>
TowerCheck verify_tower(const M& m, const std::vector<Stage<value_t<M>>>& stages,
                        std::size_t rank_budget = kMaxRankBudget) {
  using V = value_t<M>;
  TowerCheck rep;
  auto fail = [&](std::string s) { rep.failures.push_back(std::move(s)); };
  if (stages.empty()) {
    fail("tower has no stages");
    return rep;
  }
  const auto xs = m.enumerate(stages.size());
  if (stages[0].delta.rank != 1 || stages[0].alpha.size() != 1 || !m.equal(stages[0].alpha[0], xs.at(0)))
    fail("stage 0: expected rank 1 with alpha_0(e_0) = x_0");

  bool shapes_ok = true;
  for (std::size_t j = 0; j < stages.size(); ++j) {
    const auto& st = stages[j];
    const std::string at = "stage " + std::to_string(j);
    if (st.alpha.size() != st.delta.rank) {
      fail(at + ": alpha has " + std::to_string(st.alpha.size()) + " images for rank " + std::to_string(st.delta.rank));
      shapes_ok = false;
    }
    if (st.delta.rank > rank_budget) fail(at + ": rank " + std::to_string(st.delta.rank) + " exceeds the budget");
    const bool last = j + 1 == stages.size();
    if (last != !st.beta.has_value()) {
      fail(at + (last ? ": newest stage carries a beta" : ": beta missing"));
      shapes_ok = false;
    } else if (!last && (st.beta->source_rank() != st.delta.rank || st.beta->target_rank() != stages[j + 1].delta.rank)) {
      fail(at + ": beta has shape " + std::to_string(st.beta->target_rank()) + "x" +
           std::to_string(st.beta->source_rank()) + ", expected " + std::to_string(stages[j + 1].delta.rank) + "x" +
           std::to_string(st.delta.rank));
      shapes_ok = false;
    }
  }
  if (!shapes_ok) return rep;

  for (std::size_t j = 0; j + 1 < stages.size(); ++j) {
    const auto& st = stages[j];
    for (std::size_t i = 0; i < st.delta.rank; ++i) {
      ++rep.commutativity_checks;
      if (!m.equal(image(m, stages[j + 1].alpha, st.beta->column(i)), st.alpha[i]))
        fail("stage " + std::to_string(j) + ", basis index " + std::to_string(i) +
             ": alpha_{j+1}(beta_j(e_i)) != alpha_j(e_i)");
    }
  }

  for (std::size_t j = 0; j < stages.size(); ++j) {
    const std::span<const V> gens(stages[j].alpha);
    for (std::size_t k = 0; k <= j && k < xs.size(); ++k) {
      ++rep.coverage_checks;
      if (!m.in_submonoid(gens, xs[k]))
        fail("stage " + std::to_string(j) + ": x_" + std::to_string(k) + " is not in the image of alpha");
    }
  }

  for (std::size_t j = 0; j + 1 < stages.size(); ++j) {
    const auto& st = stages[j];
    const std::size_t r = st.delta.rank;
    if (r > 24) {
      fail("stage " + std::to_string(j) + ": rank too large for exhaustive pair check");
      continue;
    }
    // alpha(e_J) ∝ alpha(e_I) iff every alpha(e_k), k in J, is ∝ alpha(e_I); likewise in Delta_{j+1}.
    for (std::uint64_t I = 0; I < (std::uint64_t{1} << r); ++I) {
      const IndexSet Is = IndexSet::from_mask(I);
      const V aI = subset_image(m, st.alpha, Is);
      const Element bI = (*st.beta)(basis_sum(st.delta, Is));
      for (std::size_t k = 0; k < r; ++k) {
        if (Is.contains(k) || !oracle_propto(m, st.alpha[k], aI)) continue;
        ++rep.propagation_pairs;
        if (!propto(st.beta->column(k), bI)) {
          std::ostringstream msg;
          msg << "stage " << j << ", basis index " << k << ": beta_j(e_" << k << ") is not ∝ beta_j(e_I) for I = "
              << Is;
          fail(msg.str());
        }
      }
    }
  }
  return rep;
}

}  // namespace refinemon
