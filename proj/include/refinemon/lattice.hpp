#pragma once

// Order-ideals and ideal lattices of simplicial and finite monoids, the
// ∝-reflection criterion for ideal-lattice isomorphisms, and the maximal
// semilattice quotient.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "refinemon/cayley_monoid.hpp"
#include "refinemon/core.hpp"
#include "refinemon/free_monoid.hpp"
#include "refinemon/oracle.hpp"
#include "refinemon/resolution.hpp"
#include "refinemon/tower.hpp"

namespace refinemon {

inline constexpr std::size_t kMaxLatticeRank = 20;

/// An order-ideal, stored as sorted indices: basis indices for simplicial
/// (and free) monoids, element indices for finite oracles.
struct OrderIdeal {
  std::vector<std::size_t> members;

  friend bool operator==(const OrderIdeal&, const OrderIdeal&) = default;
  friend auto operator<=>(const OrderIdeal&, const OrderIdeal&) = default;
};

/// L(M): all order-ideals, sorted by size then lexicographically. Meets are
/// intersections; joins are ideals generated by unions.
class IdealLattice {
 public:
  using JoinFn = std::function<OrderIdeal(const std::vector<std::size_t>&)>;

  IdealLattice(std::vector<OrderIdeal> ideals, JoinFn join_of);

  std::size_t size() const noexcept { return ideals_.size(); }
  const std::vector<OrderIdeal>& ideals() const noexcept { return ideals_; }
  const OrderIdeal& operator[](std::size_t i) const { return ideals_.at(i); }
  std::optional<std::size_t> find(const OrderIdeal& I) const;
  /// ideals[small] ⊆ ideals[big]
  bool includes(std::size_t small, std::size_t big) const;
  std::size_t meet(std::size_t a, std::size_t b) const;
  std::size_t join(std::size_t a, std::size_t b) const;
  /// Covering pairs (lower, upper); at most 4096 ideals.
  std::vector<std::pair<std::size_t, std::size_t>> hasse() const;

 private:
  std::size_t locate(const OrderIdeal& I, const char* what) const;

  std::vector<OrderIdeal> ideals_;
  JoinFn join_of_;
};

/// Coordinate ideal spanned by the supports of S.
OrderIdeal ideal_generated(const SimplicialMonoid& m, std::span<const Element> S);

/// One ideal per basis subset (2^rank of them).
IdealLattice enumerate_ideals(const SimplicialMonoid& m);

inline IdealLattice enumerate_ideals(const FreeMonoid& m) { return enumerate_ideals(m.simplicial()); }

/// Smallest subset containing S and 0 closed under sums and under x <= y.
template <FiniteMonoidOracle M>
OrderIdeal ideal_generated(const M& m, std::span<const value_t<M>> S) {
  const std::size_t n = m.size();
  std::vector<bool> in(n, false);
  in[m.index_of(m.zero())] = true;
  for (const auto& s : S) in[m.index_of(s)] = true;
  for (bool grew = true; grew;) {
    grew = false;
    for (std::size_t a = 0; a < n; ++a) {
      if (!in[a]) continue;
      for (std::size_t b = 0; b < n; ++b) {
        if (!in[b] && m.leq(m.element(b), m.element(a))) in[b] = grew = true;
        if (in[b]) {
          const std::size_t c = m.index_of(m.add(m.element(a), m.element(b)));
          if (!in[c]) in[c] = grew = true;
        }
      }
    }
  }
  OrderIdeal out;
  const value_t<M> total = sum(m, S);
  for (std::size_t a = 0; a < n; ++a) {
    if (in[a] != oracle_propto(m, m.element(a), total))
      throw InvariantError("ideal_generated: saturation disagrees with {x : x ∝ sum S}");
    if (in[a]) out.members.push_back(a);
  }
  return out;
}

/// Every ideal of a finite monoid is generated by the sum of its members, so
/// the principal ideals {x : x ∝ y} are all of them.
template <FiniteMonoidOracle M>
IdealLattice enumerate_ideals(const M& m) {
  const std::size_t n = m.size();
  auto principal = [&m, n](const value_t<M>& y) {
    OrderIdeal I;
    for (std::size_t a = 0; a < n; ++a)
      if (oracle_propto(m, m.element(a), y)) I.members.push_back(a);
    return I;
  };
  std::vector<OrderIdeal> ideals;
  for (std::size_t y = 0; y < n; ++y) {
    OrderIdeal I = principal(m.element(y));
    if (std::find(ideals.begin(), ideals.end(), I) == ideals.end()) ideals.push_back(std::move(I));
  }
  return IdealLattice(std::move(ideals), [&m, principal](const std::vector<std::size_t>& members) {
    value_t<M> s = m.zero();
    for (auto a : members) s = m.add(s, m.element(a));
    return principal(s);
  });
}

/// Outcome of the criterion for alpha : Delta -> M, plus the direct check of
/// the induced correspondence between L(M) and L(Delta) when both are enumerable.
struct CriterionReport {
  bool surjective = false;
  bool reflects = false;  ///< alpha(e_J) ∝ alpha(e_I) implies e_J ∝ e_I, on every subset pair
  std::size_t pairs_checked = 0;
  std::optional<std::string> counterexample;

  bool lattice_checked = false;
  std::size_t source_ideals = 0;  ///< |L(Delta)|
  std::size_t target_ideals = 0;  ///< |L(M)|
  std::size_t closed_ideals = 0;  ///< ideals I of Delta with I = alpha^{-1}(ideal generated by alpha(I))
  bool preimage_bijective = false;  ///< K -> alpha^{-1}(K) is an order isomorphism onto the closed ideals

  bool holds() const noexcept { return surjective && reflects; }
};

namespace detail {

// Ideals of the target as sorted index lists (elements for finite oracles,
// coordinates for free ones), with "alpha(e_i) lies in K" and "ideal generated
// by alpha(e_I)" in the same terms.
template <MonoidOracle M>
struct TargetIdeals;

template <FiniteMonoidOracle M>
struct TargetIdeals<M> {
  const M& m;
  IdealLattice lattice() const { return enumerate_ideals(m); }
  bool contains(const OrderIdeal& K, const value_t<M>& x) const {
    return std::binary_search(K.members.begin(), K.members.end(), m.index_of(x));
  }
  OrderIdeal generated(const value_t<M>& x) const {
    const value_t<M> one[] = {x};
    return ideal_generated(m, std::span<const value_t<M>>(one));
  }
};

template <>
struct TargetIdeals<FreeMonoid> {
  const FreeMonoid& m;
  IdealLattice lattice() const { return enumerate_ideals(m); }
  bool contains(const OrderIdeal& K, const Element& x) const {
    for (auto k : support(x))
      if (!std::binary_search(K.members.begin(), K.members.end(), k)) return false;
    return true;
  }
  OrderIdeal generated(const Element& x) const {
    const IndexSet s = support(x);
    return OrderIdeal{{s.begin(), s.end()}};
  }
};

template <MonoidOracle M>
bool is_surjective(const M& m, const std::vector<value_t<M>>& alpha) {
  if constexpr (FiniteMonoidOracle<M>) {
    const std::span<const value_t<M>> gens(alpha);
    for (std::size_t a = 0; a < m.size(); ++a)
      if (!m.in_submonoid(gens, m.element(a))) return false;
    return true;
  } else {
    // The atoms e_k of a free monoid are indecomposable, so each must be some alpha(e_i).
    static_assert(std::same_as<M, FreeMonoid>, "surjectivity is decidable for finite and free oracles only");
    for (std::size_t k = 0; k < m.rank(); ++k) {
      const Element ek = basis_element(m.simplicial(), k);
      if (std::none_of(alpha.begin(), alpha.end(), [&](const Element& a) { return a == ek; })) return false;
    }
    return true;
  }
}

// Checks K -> alpha^{-1}(K) against the closure I -> alpha^{-1}(<alpha(e_I)>) on Delta.
template <MonoidOracle M>
void check_preimage_map(const M& m, const std::vector<value_t<M>>& alpha, CriterionReport& rep) {
  const std::size_t r = alpha.size();
  if (r > kMaxLatticeRank) return;
  const TargetIdeals<M> tgt{m};
  const IdealLattice LM = tgt.lattice();
  rep.lattice_checked = true;
  rep.source_ideals = std::size_t{1} << r;
  rep.target_ideals = LM.size();
  auto preimage = [&](const OrderIdeal& K) {
    std::uint64_t mask = 0;
    for (std::size_t i = 0; i < r; ++i)
      if (tgt.contains(K, alpha[i])) mask |= std::uint64_t{1} << i;
    return mask;
  };
  std::vector<bool> closed(rep.source_ideals, false);
  for (std::uint64_t I = 0; I < rep.source_ideals; ++I) {
    const OrderIdeal gen = tgt.generated(subset_image(m, alpha, IndexSet::from_mask(I)));
    if (preimage(gen) == I) {
      closed[I] = true;
      ++rep.closed_ideals;
    }
  }
  std::vector<std::uint64_t> phi;
  for (const auto& K : LM.ideals()) phi.push_back(preimage(K));
  bool ok = rep.closed_ideals == LM.size();
  for (std::size_t a = 0; ok && a < phi.size(); ++a) {
    if (!closed[phi[a]]) ok = false;
    for (std::size_t b = 0; ok && b < phi.size(); ++b) {
      const bool sub = (phi[a] & ~phi[b]) == 0;
      if (sub != LM.includes(a, b)) ok = false;
    }
  }
  rep.preimage_bijective = ok;
}

}  // namespace detail

/// Criterion for alpha : Delta -> M (Delta of rank alpha.size()): alpha is
/// surjective and reflects ∝ on all pairs of basis-subset elements.
template <MonoidOracle M>
CriterionReport check_lattice_iso_criterion(const M& m, const std::vector<value_t<M>>& alpha) {
  CriterionReport rep;
  rep.surjective = detail::is_surjective(m, alpha);
  const std::size_t r = alpha.size();
  const auto masks = propto_masks(m, alpha);
  rep.reflects = true;
  for (std::uint64_t I = 0; I < masks.size(); ++I) {
    rep.pairs_checked += std::size_t{1} << r;
    if ((masks[I] & ~I) != 0 && rep.reflects) {
      rep.reflects = false;
      const auto j = static_cast<std::size_t>(std::countr_zero(masks[I] & ~I));
      std::ostringstream msg;
      msg << "alpha(e_" << j << ") ∝ alpha(e_I) but e_" << j << " is not ∝ e_I, I = " << IndexSet::from_mask(I);
      rep.counterexample = msg.str();
    }
  }
  detail::check_preimage_map(m, alpha, rep);
  return rep;
}

/// Criterion for the colimit map of a tower: the newest alpha is surjective
/// and every stage-visible pair with alpha(e_J) ∝ alpha(e_I) has an e_J ∝ e_I
/// witness in the colimit. The preimage correspondence is checked at the
/// first surjective stage.
template <MonoidOracle M>
CriterionReport check_lattice_iso_criterion(const Tower<M>& t) {
  const M& m = t.oracle();
  const auto& stages = t.stages();
  CriterionReport rep;
  std::optional<std::size_t> first_onto;
  for (std::size_t j = 0; j < stages.size(); ++j)
    if (detail::is_surjective(m, stages[j].alpha)) {
      first_onto = j;
      break;
    }
  rep.surjective = first_onto.has_value();
  rep.reflects = true;
  for (std::size_t j = 0; j + 1 < stages.size() && rep.reflects; ++j) {
    const std::size_t r = stages[j].delta.rank;
    const auto masks = propto_masks(m, stages[j].alpha);
    for (std::uint64_t I = 0; I < masks.size() && rep.reflects; ++I) {
      const ColimitElement b{j, basis_sum(stages[j].delta, IndexSet::from_mask(I))};
      for (std::size_t k = 0; k < r; ++k) {
        if (!(masks[I] >> k & 1)) continue;
        ++rep.pairs_checked;
        try {
          const auto res = colimit_propto(t, ColimitElement{j, basis_element(stages[j].delta, k)}, b);
          if (!res.holds) throw InvariantError("oracle ∝ changed between calls");
        } catch (const InvariantError& e) {
          rep.reflects = false;
          rep.counterexample = "stage " + std::to_string(j) + ", basis index " + std::to_string(k) + ": " + e.what();
          break;
        }
      }
    }
  }
  if (first_onto) detail::check_preimage_map(m, stages[*first_onto].alpha, rep);
  return rep;
}

/// Isomorphism between two finite monoids given by tables (brute force over
/// bijections fixing 0; sizes up to 9). iso[a] is the image of element a.
std::optional<std::vector<std::size_t>> find_isomorphism(const CayleyMonoid& a, const CayleyMonoid& b);

/// M / ≍ for a finite oracle; classes are numbered by their first element.
struct Nabla {
  SemilatticeMonoid quotient;
  std::vector<std::size_t> class_of;         ///< element index -> class index
  std::vector<std::size_t> representatives;  ///< class index -> first element index
};

template <FiniteMonoidOracle M>
Nabla nabla(const M& m) {
  const std::size_t n = m.size();
  constexpr std::size_t unset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> class_of(n, unset);
  std::vector<std::size_t> reps;
  for (std::size_t a = 0; a < n; ++a) {
    if (class_of[a] != unset) continue;
    class_of[a] = reps.size();
    for (std::size_t b = a + 1; b < n; ++b)
      if (oracle_propto(m, m.element(a), m.element(b)) && oracle_propto(m, m.element(b), m.element(a)))
        class_of[b] = reps.size();
    reps.push_back(a);
  }
  CayleyTable t;
  t.zero = class_of[m.index_of(m.zero())];
  for (std::size_t c = 0; c < reps.size(); ++c) {
    t.names.push_back("[" + m.describe(m.element(reps[c])) + "]");
    t.table.emplace_back();
    for (std::size_t d = 0; d < reps.size(); ++d) {
      const std::size_t s = m.index_of(m.add(m.element(reps[c]), m.element(reps[d])));
      t.table.back().push_back(class_of[s]);
    }
  }
  // The class table is only meaningful if ≍ is a congruence; check it on all pairs.
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (class_of[m.index_of(m.add(m.element(a), m.element(b)))] != t.table[class_of[a]][class_of[b]])
        throw InvariantError("nabla: ≍ is not a congruence");
  return Nabla{SemilatticeMonoid(std::move(t)), std::move(class_of), std::move(reps)};
}

/// (Z+)^rank / ≍: one class per support, numbered by subsets_by_size_then_lex.
struct FreeNabla {
  SemilatticeMonoid quotient;
  std::vector<std::uint64_t> supports;  ///< class index -> support mask

  std::size_t class_of(const Element& x) const;
};

FreeNabla nabla(const FreeMonoid& m);

/// For a tower over a finite oracle: at the first stage s where alpha_s is
/// onto and stage s+1 exists, the map supp(beta_s(e_J)) -> [alpha_s(e_J)]
/// from the classes of Delta visible at stage s to nabla(M).
struct NablaTransfer {
  bool checked = false;
  std::size_t stage = 0;
  std::size_t classes = 0;  ///< distinct supports supp(beta_s(e_J))
  bool well_defined = false;
  bool injective = false;
  bool surjective = false;
  bool homomorphism = false;

  bool ok() const noexcept { return checked && well_defined && injective && surjective && homomorphism; }
};

template <FiniteMonoidOracle M>
NablaTransfer check_nabla_transfer(const Tower<M>& t, const Nabla& nm) {
  const M& m = t.oracle();
  const auto& stages = t.stages();
  NablaTransfer out;
  std::optional<std::size_t> s;
  for (std::size_t j = 0; j + 1 < stages.size(); ++j)
    if (detail::is_surjective(m, stages[j].alpha)) {
      s = j;
      break;
    }
  if (!s) return out;
  const auto& st = stages[*s];
  const std::size_t r = st.delta.rank;
  if (r > kMaxLatticeRank || stages[*s + 1].delta.rank > 64) throw BudgetError("check_nabla_transfer: stage too large");
  out.checked = true;
  out.stage = *s;
  const std::uint64_t count = std::uint64_t{1} << r;
  std::vector<std::uint64_t> key(count);
  std::vector<std::size_t> value(count);
  for (std::uint64_t J = 0; J < count; ++J) {
    const IndexSet Js = IndexSet::from_mask(J);
    key[J] = support((*st.beta)(basis_sum(st.delta, Js))).mask();
    value[J] = nm.class_of[m.index_of(subset_image(m, st.alpha, Js))];
  }
  std::map<std::uint64_t, std::size_t> f;
  out.well_defined = true;
  for (std::uint64_t J = 0; J < count; ++J) {
    auto [it, fresh] = f.emplace(key[J], value[J]);
    if (!fresh && it->second != value[J]) out.well_defined = false;
  }
  out.classes = f.size();
  std::vector<bool> hit(nm.representatives.size(), false);
  for (const auto& [k, v] : f) hit[v] = true;
  out.surjective = std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
  std::vector<std::size_t> values;
  for (const auto& [k, v] : f) values.push_back(v);
  std::sort(values.begin(), values.end());
  out.injective = std::adjacent_find(values.begin(), values.end()) == values.end();
  // f(A ∪ {b}) = f(A) + f({b}) for all A and b gives additivity by induction on |B|.
  out.homomorphism = true;
  const auto& q = nm.quotient;
  for (std::uint64_t A = 0; A < count && out.homomorphism; ++A)
    for (std::size_t b = 0; b < r; ++b) {
      const std::uint64_t B = std::uint64_t{1} << b;
      if (value[A | B] != index(q.add(element_id(value[A]), element_id(value[B])))) {
        out.homomorphism = false;
        break;
      }
    }
  return out;
}

}  // namespace refinemon
