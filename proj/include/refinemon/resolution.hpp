#pragma once

// Resolving an oracle map alpha : Delta -> M by a morphism beta : Delta -> Delta'
// and alpha' : Delta' -> M with alpha' o beta = alpha, so that beta turns
// oracle-side ∝ relations into ∝ relations inside the simplicial monoid.

#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "refinemon/core.hpp"
#include "refinemon/errors.hpp"
#include "refinemon/index_set.hpp"
#include "refinemon/oracle.hpp"

namespace refinemon {

inline constexpr std::size_t kDefaultRankBudget = 24;
inline constexpr std::size_t kMaxRankBudget = 64;

/// Raised when an intermediate simplicial monoid would exceed the rank budget.
class RankBudgetError : public BudgetError {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  RankBudgetError(std::size_t rank, std::size_t budget, std::size_t stage = npos)
      : BudgetError((stage == npos ? std::string() : "stage " + std::to_string(stage) + ": ") + "rank " +
                    std::to_string(rank) + " exceeds the rank budget " + std::to_string(budget)),
        rank_(rank),
        budget_(budget),
        stage_(stage) {}
  std::size_t rank() const noexcept { return rank_; }
  std::size_t budget() const noexcept { return budget_; }
  /// Tower stage whose extension hit the budget, or npos outside a tower.
  std::size_t stage() const noexcept { return stage_; }

 private:
  std::size_t rank_;
  std::size_t budget_;
  std::size_t stage_;
};

template <class V>
struct Resolution {
  SimplicialMonoid delta;  ///< Delta'
  Morphism beta;           ///< Delta -> Delta'
  std::vector<V> alpha;    ///< alpha' by basis images
};

/// Output of one inductive step: K indexes the resolved block of Delta', and
/// carried[t] is the Delta' index of the t-th member of J \ {j}.
template <class V>
struct InductiveStep : Resolution<V> {
  IndexSet K;
  IndexSet carried;
};

/// {j : alpha(e_j) ∝ alpha(e_I)} as a bit mask, for every subset mask I.
/// By additivity alpha(e_J) ∝ alpha(e_I) iff J is inside this mask.
template <MonoidOracle M>
std::vector<std::uint64_t> propto_masks(const M& m, const std::vector<value_t<M>>& alpha) {
  const std::size_t r = alpha.size();
  if (r > 24) throw BudgetError("propto_masks: rank " + std::to_string(r) + " too large for subset enumeration");
  const std::uint64_t count = std::uint64_t{1} << r;
  std::vector<value_t<M>> images(count, m.zero());
  std::vector<std::uint64_t> masks(count, 0);
  for (std::uint64_t I = 1; I < count; ++I) {
    const auto low = static_cast<std::size_t>(std::countr_zero(I));
    images[I] = m.add(images[I & (I - 1)], alpha[low]);
  }
  for (std::uint64_t I = 0; I < count; ++I)
    for (std::size_t j = 0; j < r; ++j)
      if (oracle_propto(m, alpha[j], images[I])) masks[I] |= std::uint64_t{1} << j;
  return masks;
}

template <MonoidOracle M>
class Resolver {
 public:
  using V = value_t<M>;

  explicit Resolver(const M& m, std::size_t rank_budget = kDefaultRankBudget) : m_(m), budget_(rank_budget) {
    if (rank_budget == 0 || rank_budget > kMaxRankBudget)
      throw DomainError("rank budget must lie in 1.." + std::to_string(kMaxRankBudget));
  }

  const M& oracle() const noexcept { return m_; }
  std::size_t rank_budget() const noexcept { return budget_; }

  /// Splits e_pivot against e_rest through a Riesz decomposition; the output
  /// has rank (n+1)(r-1), where n >= 1 is the least witness of
  /// alpha(e_pivot) ∝ alpha(e_rest). Basis element e_{ij} of Delta' (i the
  /// t-th member of rest, 0 <= j <= n) has index t*(n+1) + j.
  Resolution<V> basis_split(const std::vector<V>& alpha, std::size_t pivot, const IndexSet& rest) const {
    const std::size_t r = alpha.size();
    rest.check_within(r);
    if (pivot >= r || rest.contains(pivot) || rest.size() + 1 != r)
      throw DomainError("basis_split: pivot and rest must partition the basis");
    const V top = alpha[pivot];
    const V bottom = subset_image(m_, alpha, rest);
    auto least = m_.decide_propto(top, bottom);
    if (!least) throw DomainError("basis_split: alpha(e_pivot) is not ∝ alpha(e_rest)");
    const Natural n = least->is_zero() ? Natural(1) : *least;
    const std::size_t width = n.as_u64() + 1;
    const std::size_t out_rank = width * (r - 1);
    require_budget(out_rank);

    const std::vector<V> ys = m_.riesz_decompose(top, bottom, n);
    check_riesz(m_, top, bottom, ys);
    std::vector<V> rows;
    for (auto i : rest) rows.push_back(alpha[i]);
    const auto x = refine_sums(m_, rows, ys);

    Resolution<V> out{SimplicialMonoid{out_rank}, Morphism(r, out_rank), {}};
    out.alpha.reserve(out_rank);
    for (const auto& row : x)
      for (const auto& e : row) out.alpha.push_back(e);
    typename Morphism::Matrix b = Morphism::Matrix::Zero(static_cast<Eigen::Index>(out_rank), static_cast<Eigen::Index>(r));
    std::size_t t = 0;
    for (auto i : rest) {
      for (std::size_t j = 0; j < width; ++j) {
        const auto row = static_cast<Eigen::Index>(t * width + j);
        b(row, static_cast<Eigen::Index>(i)) = 1;
        b(row, static_cast<Eigen::Index>(pivot)) = j;
      }
      ++t;
    }
    out.beta = Morphism(std::move(b));
    require_factorization(alpha, out, "basis_split");
    return out;
  }

  /// Resolves the block spanned by I ∪ {j} and leaves the remaining basis
  /// elements alone. Delta' lists the untouched indices first (in increasing
  /// order), then the resolved block K.
  InductiveStep<V> inductive_step(const std::vector<V>& alpha, const IndexSet& I, const IndexSet& J,
                                  std::size_t j) const {
    const std::size_t r = alpha.size();
    I.check_within(r);
    J.check_within(r);
    if (I.empty() || J.empty()) throw DomainError("inductive_step: I and J must be nonempty");
    if (!(I & J).empty()) throw DomainError("inductive_step: I and J must be disjoint");
    if (!J.contains(j)) throw DomainError("inductive_step: j must belong to J");
    if (!oracle_propto(m_, subset_image(m_, alpha, J), subset_image(m_, alpha, I)))
      throw DomainError("inductive_step: alpha(e_J) is not ∝ alpha(e_I)");

    const IndexSet block = I | IndexSet{j};
    const IndexSet untouched = IndexSet::full(r) - block;
    std::vector<V> block_alpha;
    std::size_t block_pivot = 0;
    std::vector<std::size_t> block_rest;
    for (auto k : block) {
      if (k == j) block_pivot = block_alpha.size();
      else block_rest.push_back(block_alpha.size());
      block_alpha.push_back(alpha[k]);
    }
    const Resolution<V> inner = basis_split(block_alpha, block_pivot, IndexSet(block_rest));

    const std::size_t offset = untouched.size();
    const std::size_t out_rank = offset + inner.delta.rank;
    require_budget(out_rank);
    InductiveStep<V> out{{SimplicialMonoid{out_rank}, Morphism(r, out_rank), {}}, {}, {}};
    typename Morphism::Matrix b = Morphism::Matrix::Zero(static_cast<Eigen::Index>(out_rank), static_cast<Eigen::Index>(r));
    std::size_t t = 0;
    std::vector<std::size_t> carried;
    for (auto k : untouched) {
      b(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(k)) = 1;
      out.alpha.push_back(alpha[k]);
      if (J.contains(k)) carried.push_back(t);
      ++t;
    }
    t = 0;
    for (auto k : block) {
      b.block(static_cast<Eigen::Index>(offset), static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(inner.delta.rank), 1) =
          inner.beta.matrix().col(static_cast<Eigen::Index>(t));
      ++t;
    }
    out.alpha.insert(out.alpha.end(), inner.alpha.begin(), inner.alpha.end());
    out.beta = Morphism(std::move(b));
    std::vector<std::size_t> K;
    for (std::size_t k = offset; k < out_rank; ++k) K.push_back(k);
    out.K = IndexSet(std::move(K));
    out.carried = IndexSet(std::move(carried));

    // (i) alpha' o beta = alpha
    require_factorization(alpha, out, "inductive_step");
    // (ii) beta(e_k) = f_k on J \ {j}
    std::size_t c = 0;
    const auto carried_members = out.carried.members();
    for (auto k : J) {
      if (k == j) continue;
      if (out.beta.column(k) != basis_element(out.delta, carried_members[c++]))
        throw InvariantError("inductive_step: beta moved a carried basis element");
    }
    // (iii) beta(e_j) ∝ beta(e_I) = f_K
    const Element fK = basis_sum(out.delta, out.K);
    if (out.beta(basis_sum(SimplicialMonoid{r}, I)) != fK)
      throw InvariantError("inductive_step: beta(e_I) is not the block indicator");
    if (!propto(out.beta.column(j), fK)) throw InvariantError("inductive_step: beta(e_j) is not ∝ f_K");
    // (iv) alpha'(f_{J\{j}}) ∝ alpha'(f_K)
    if (!oracle_propto(m_, subset_image(m_, out.alpha, out.carried), subset_image(m_, out.alpha, out.K)))
      throw InvariantError("inductive_step: carried indices are not ∝ the block in M");
    if (out_rank + 1 < 2 * I.size() + J.size()) throw InvariantError("inductive_step: rank below 2|I|+|J|-1");
    return out;
  }

  /// beta(e_J) ∝ beta(e_I) for disjoint nonempty I, J with alpha(e_J) ∝ alpha(e_I),
  /// peeling one member of J per inductive step.
  Resolution<V> index_pair(const std::vector<V>& alpha, const IndexSet& I, const IndexSet& J) const {
    const std::size_t r = alpha.size();
    const std::size_t j = J.empty() ? 0 : J.front();
    InductiveStep<V> step = inductive_step(alpha, I, J, j);
    Resolution<V> out;
    if (J.size() == 1) {
      out = std::move(static_cast<Resolution<V>&>(step));
    } else {
      Resolution<V> rest = index_pair(step.alpha, step.K, step.carried);
      out = Resolution<V>{rest.delta, compose(rest.beta, step.beta), std::move(rest.alpha)};
    }
    const SimplicialMonoid delta{r};
    if (!propto(out.beta(basis_sum(delta, J)), out.beta(basis_sum(delta, I))))
      throw InvariantError("index_pair: beta(e_J) is not ∝ beta(e_I)");
    require_factorization(alpha, out, "index_pair");
    return out;
  }

  /// beta(x) ∝ beta(y) for x, y with alpha(x) ∝ alpha(y).
  Resolution<V> element_pair(const std::vector<V>& alpha, const Element& x, const Element& y) const {
    const std::size_t r = alpha.size();
    const SimplicialMonoid delta{r};
    if (static_cast<std::size_t>(x.size()) != r || static_cast<std::size_t>(y.size()) != r)
      throw DomainError("element_pair: rank mismatch");
    if (!oracle_propto(m_, image(m_, alpha, x), image(m_, alpha, y)))
      throw DomainError("element_pair: alpha(x) is not ∝ alpha(y)");
    const IndexSet J = support(x);
    const IndexSet I = support(y);
    Resolution<V> out{delta, Morphism::identity(r), alpha};
    if (J.empty() || (J - I).empty()) return out;
    if (I.empty()) {
      // alpha(x) = 0, so alpha vanishes on supp(x) by conicality.
      typename Morphism::Matrix b = Morphism::Matrix::Identity(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(r));
      for (auto k : J) b(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) = 0;
      out.beta = Morphism(std::move(b));
    } else {
      out = index_pair(alpha, I, J - I);
    }
    if (!propto(out.beta(x), out.beta(y))) throw InvariantError("element_pair: beta(x) is not ∝ beta(y)");
    require_factorization(alpha, out, "element_pair");
    return out;
  }

  /// One morphism resolving every pair (J, I) of basis subsets of Delta with
  /// J \ I nonempty and alpha(e_J) ∝ alpha(e_I). Pairs are visited J-major,
  /// both by size then lexicographically, and skipped when the composed beta
  /// already satisfies them.
  Resolution<V> all_pairs(const std::vector<V>& alpha) const {
    const std::size_t r = alpha.size();
    const SimplicialMonoid delta{r};
    const auto masks = propto_masks(m_, alpha);
    const auto order = subsets_by_size_then_lex(r);
    Resolution<V> cur{delta, Morphism::identity(r), alpha};
    std::vector<std::uint64_t> cols = column_supports(cur.beta);
    for (std::uint64_t J : order) {
      if (J == 0) continue;
      for (std::uint64_t I : order) {
        if ((J & ~masks[I]) != 0 || (J & ~I) == 0) continue;
        const std::uint64_t bJ = spread(cols, J);
        if ((bJ & ~spread(cols, I)) == 0) continue;
        Resolution<V> step = element_pair(cur.alpha, cur.beta(basis_sum(delta, IndexSet::from_mask(J))),
                                          cur.beta(basis_sum(delta, IndexSet::from_mask(I))));
        cur = Resolution<V>{step.delta, compose(step.beta, cur.beta), std::move(step.alpha)};
        cols = column_supports(cur.beta);
      }
    }
    require_factorization(alpha, cur, "all_pairs");
    for (std::uint64_t I = 0; I < masks.size(); ++I) {
      const std::uint64_t bI = spread(cols, I);
      for (std::size_t j = 0; j < r; ++j)
        if ((masks[I] >> j & 1) && (cols[j] & ~bI) != 0) throw InvariantError("all_pairs: pair left unresolved");
    }
    return cur;
  }

 private:
  // Support of each beta(e_i) as a bit mask; target ranks never exceed the budget cap of 64.
  static std::vector<std::uint64_t> column_supports(const Morphism& beta) {
    std::vector<std::uint64_t> cols(beta.source_rank(), 0);
    for (std::size_t i = 0; i < cols.size(); ++i)
      for (auto k : support(beta.column(i))) cols[i] |= std::uint64_t{1} << k;
    return cols;
  }

  // Support of beta(e_S).
  static std::uint64_t spread(const std::vector<std::uint64_t>& cols, std::uint64_t S) {
    std::uint64_t out = 0;
    for (; S != 0; S &= S - 1) out |= cols[static_cast<std::size_t>(std::countr_zero(S))];
    return out;
  }

  void require_budget(std::size_t rank) const {
    if (rank > budget_) throw RankBudgetError(rank, budget_);
  }

  void require_factorization(const std::vector<V>& alpha, const Resolution<V>& res, const char* what) const {
    if (res.beta.source_rank() != alpha.size() || res.beta.target_rank() != res.delta.rank ||
        res.alpha.size() != res.delta.rank)
      throw InvariantError(std::string(what) + ": inconsistent ranks");
    for (std::size_t i = 0; i < alpha.size(); ++i)
      if (!m_.equal(image(m_, res.alpha, res.beta.column(i)), alpha[i]))
        throw InvariantError(std::string(what) + ": alpha' o beta differs from alpha at basis index " +
                             std::to_string(i));
  }

  const M& m_;
  std::size_t budget_;
};

}  // namespace refinemon
