#include "refinemon/lattice.hpp"

#include <numeric>

namespace refinemon {

IdealLattice::IdealLattice(std::vector<OrderIdeal> ideals, JoinFn join_of)
    : ideals_(std::move(ideals)), join_of_(std::move(join_of)) {
  for (auto& I : ideals_) std::sort(I.members.begin(), I.members.end());
  std::sort(ideals_.begin(), ideals_.end(), [](const OrderIdeal& a, const OrderIdeal& b) {
    if (a.members.size() != b.members.size()) return a.members.size() < b.members.size();
    return a.members < b.members;
  });
  if (std::adjacent_find(ideals_.begin(), ideals_.end()) != ideals_.end())
    throw InvariantError("IdealLattice: duplicate ideal");
}

std::optional<std::size_t> IdealLattice::find(const OrderIdeal& I) const {
  auto it = std::lower_bound(ideals_.begin(), ideals_.end(), I, [](const OrderIdeal& a, const OrderIdeal& b) {
    if (a.members.size() != b.members.size()) return a.members.size() < b.members.size();
    return a.members < b.members;
  });
  if (it == ideals_.end() || *it != I) return std::nullopt;
  return static_cast<std::size_t>(it - ideals_.begin());
}

std::size_t IdealLattice::locate(const OrderIdeal& I, const char* what) const {
  auto i = find(I);
  if (!i) throw InvariantError(std::string("IdealLattice: ") + what + " is not an ideal of the lattice");
  return *i;
}

bool IdealLattice::includes(std::size_t small, std::size_t big) const {
  const auto& a = ideals_.at(small).members;
  const auto& b = ideals_.at(big).members;
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

std::size_t IdealLattice::meet(std::size_t a, std::size_t b) const {
  const auto& x = ideals_.at(a).members;
  const auto& y = ideals_.at(b).members;
  OrderIdeal I;
  std::set_intersection(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(I.members));
  return locate(I, "meet");
}

std::size_t IdealLattice::join(std::size_t a, std::size_t b) const {
  const auto& x = ideals_.at(a).members;
  const auto& y = ideals_.at(b).members;
  std::vector<std::size_t> u;
  std::set_union(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(u));
  return locate(join_of_(u), "join");
}

std::vector<std::pair<std::size_t, std::size_t>> IdealLattice::hasse() const {
  const std::size_t n = size();
  if (n > 4096) throw BudgetError("IdealLattice::hasse: too many ideals");
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b || !includes(a, b)) continue;
      bool covers = true;
      for (std::size_t c = 0; c < n && covers; ++c)
        if (c != a && c != b && includes(a, c) && includes(c, b)) covers = false;
      if (covers) edges.emplace_back(a, b);
    }
  return edges;
}

OrderIdeal ideal_generated(const SimplicialMonoid& m, std::span<const Element> S) {
  IndexSet u;
  for (const auto& x : S) {
    if (static_cast<std::size_t>(x.size()) != m.rank) throw DomainError("ideal_generated: rank mismatch");
    u = u | support(x);
  }
  const auto s = u.members();
  return OrderIdeal{{s.begin(), s.end()}};
}

IdealLattice enumerate_ideals(const SimplicialMonoid& m) {
  if (m.rank > kMaxLatticeRank)
    throw BudgetError("enumerate_ideals: rank " + std::to_string(m.rank) + " exceeds " +
                      std::to_string(kMaxLatticeRank));
  std::vector<OrderIdeal> ideals;
  for (std::uint64_t I = 0; I < (std::uint64_t{1} << m.rank); ++I) {
    const IndexSet s = IndexSet::from_mask(I);
    ideals.push_back(OrderIdeal{{s.begin(), s.end()}});
  }
  return IdealLattice(std::move(ideals), [](const std::vector<std::size_t>& u) { return OrderIdeal{u}; });
}

std::optional<std::vector<std::size_t>> find_isomorphism(const CayleyMonoid& a, const CayleyMonoid& b) {
  const std::size_t n = a.size();
  if (b.size() != n) return std::nullopt;
  if (n > 9) throw BudgetError("find_isomorphism: monoids larger than 9 elements");
  // Map the zero to the zero and try every arrangement of the rest.
  std::vector<std::size_t> rest_b;
  for (std::size_t i = 0; i < n; ++i)
    if (i != b.index_of(b.zero())) rest_b.push_back(i);
  do {
    std::vector<std::size_t> iso(n);
    std::size_t t = 0;
    for (std::size_t i = 0; i < n; ++i) iso[i] = i == a.index_of(a.zero()) ? b.index_of(b.zero()) : rest_b[t++];
    bool ok = true;
    for (std::size_t x = 0; x < n && ok; ++x)
      for (std::size_t y = 0; y < n && ok; ++y)
        ok = iso[a.index_of(a.add(a.element(x), a.element(y)))] == b.index_of(b.add(b.element(iso[x]), b.element(iso[y])));
    if (ok) return iso;
  } while (std::next_permutation(rest_b.begin(), rest_b.end()));
  return std::nullopt;
}

std::size_t FreeNabla::class_of(const Element& x) const {
  const std::uint64_t s = support(x).mask();
  auto it = std::find(supports.begin(), supports.end(), s);
  if (it == supports.end()) throw DomainError("FreeNabla::class_of: element of the wrong rank");
  return static_cast<std::size_t>(it - supports.begin());
}

FreeNabla nabla(const FreeMonoid& m) {
  if (m.rank() > 6) throw BudgetError("nabla: free monoid of rank above 6");
  const SimplicialMonoid d = m.simplicial();
  std::vector<std::uint64_t> supports = subsets_by_size_then_lex(m.rank());
  CayleyTable t;
  t.zero = 0;
  for (std::size_t c = 0; c < supports.size(); ++c) {
    t.names.push_back("[" + m.describe(basis_sum(d, IndexSet::from_mask(supports[c]))) + "]");
    t.table.emplace_back();
    for (std::size_t e = 0; e < supports.size(); ++e) {
      const std::uint64_t u = supports[c] | supports[e];
      t.table.back().push_back(static_cast<std::size_t>(std::find(supports.begin(), supports.end(), u) - supports.begin()));
    }
  }
  return FreeNabla{SemilatticeMonoid(std::move(t)), std::move(supports)};
}

}  // namespace refinemon
