#include "refinemon/cayley_monoid.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>
#include <tuple>

namespace refinemon {

namespace {

using Table = std::vector<std::vector<std::size_t>>;

std::string sum_text(const std::vector<std::string>& names, std::size_t a, std::size_t b, std::size_t c) {
  return names[a] + "+" + names[b] + "=" + names[c];
}

// pairs[x] = all (a, b) with a + b = x, in index order.
std::vector<std::vector<std::pair<std::size_t, std::size_t>>> pairs_by_sum(const Table& t) {
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> pairs(t.size());
  for (std::size_t a = 0; a < t.size(); ++a)
    for (std::size_t b = 0; b < t.size(); ++b) pairs[t[a][b]].emplace_back(a, b);
  return pairs;
}

}  // namespace

std::string to_string(Axiom a) {
  switch (a) {
    case Axiom::shape: return "shape";
    case Axiom::unit: return "unit";
    case Axiom::commutativity: return "commutativity";
    case Axiom::associativity: return "associativity";
    case Axiom::conicality: return "conicality";
    case Axiom::refinement: return "refinement";
    case Axiom::idempotence: return "idempotence";
  }
  return "unknown";
}

bool AxiomReport::holds(Axiom a) const noexcept {
  return std::none_of(violations.begin(), violations.end(), [a](const AxiomViolation& v) { return v.axiom == a; });
}

AxiomReport verify_axioms(const CayleyTable& c, bool require_idempotent) {
  AxiomReport rep;
  const std::size_t n = c.table.size();
  auto fail = [&](Axiom a, std::string msg) { rep.violations.push_back({a, std::move(msg)}); };

  if (n == 0) fail(Axiom::shape, "empty carrier");
  if (n > CayleyMonoid::kMaxSize)
    fail(Axiom::shape, "carrier of size " + std::to_string(n) + " exceeds " + std::to_string(CayleyMonoid::kMaxSize));
  if (c.names.size() != n)
    fail(Axiom::shape, std::to_string(c.names.size()) + " names for a table with " + std::to_string(n) + " rows");
  for (std::size_t a = 0; a < n; ++a) {
    if (c.table[a].size() != n) fail(Axiom::shape, "row " + std::to_string(a) + " has length " + std::to_string(c.table[a].size()));
    for (auto v : c.table[a])
      if (v >= n) fail(Axiom::shape, "row " + std::to_string(a) + " has entry " + std::to_string(v) + " out of range");
  }
  if (c.zero >= n && n > 0) fail(Axiom::shape, "zero index " + std::to_string(c.zero) + " out of range");
  {
    std::set<std::string> seen;
    for (const auto& s : c.names) {
      if (s.empty()) fail(Axiom::shape, "empty element name");
      else if (!seen.insert(s).second) fail(Axiom::shape, "duplicate element name '" + s + "'");
    }
  }
  if (!rep.ok()) return rep;

  const Table& t = c.table;
  const auto& nm = c.names;
  const std::size_t z = c.zero;

  for (std::size_t a = 0; a < n; ++a) {
    if (t[z][a] != a) fail(Axiom::unit, "unit violated: " + sum_text(nm, z, a, t[z][a]));
    else if (t[a][z] != a) fail(Axiom::unit, "unit violated: " + sum_text(nm, a, z, t[a][z]));
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      if (t[a][b] != t[b][a])
        fail(Axiom::commutativity,
             "commutativity violated: " + sum_text(nm, a, b, t[a][b]) + " but " + sum_text(nm, b, a, t[b][a]));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t d = 0; d < n; ++d)
        if (t[t[a][b]][d] != t[a][t[b][d]])
          fail(Axiom::associativity, "associativity violated: (" + nm[a] + "+" + nm[b] + ")+" + nm[d] + "=" +
                                         nm[t[t[a][b]][d]] + " but " + nm[a] + "+(" + nm[b] + "+" + nm[d] + ")=" +
                                         nm[t[a][t[b][d]]]);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a; b < n; ++b)
      if (t[a][b] == z && (a != z || b != z)) fail(Axiom::conicality, "conicality violated: " + sum_text(nm, a, b, z));
  if (require_idempotent)
    for (std::size_t a = 0; a < n; ++a)
      if (t[a][a] != a) fail(Axiom::idempotence, "idempotence violated: " + sum_text(nm, a, a, t[a][a]));

  // Refinement: for every x1+x2 = y1+y2 look for z with rows (x1, x2) and columns (y1, y2).
  const auto pairs = pairs_by_sum(t);
  rep.quadruples_examined = n * n * n * n;
  for (std::size_t s = 0; s < n; ++s) {
    for (auto [x1, x2] : pairs[s]) {
      for (auto [y1, y2] : pairs[s]) {
        ++rep.refinement_instances;
        bool found = false;
        for (auto [z11, z12] : pairs[x1]) {
          for (auto [z21, z22] : pairs[x2]) {
            if (t[z11][z21] == y1 && t[z12][z22] == y2) {
              found = true;
              break;
            }
          }
          if (found) break;
        }
        if (!found)
          fail(Axiom::refinement, "refinement violated: " + nm[x1] + "+" + nm[x2] + "=" + nm[y1] + "+" + nm[y2] +
                                      " has no interpolating matrix");
      }
    }
  }
  return rep;
}

CayleyMonoid::CayleyMonoid(CayleyTable t) : source_(std::move(t)) {
  const AxiomReport rep = verify_axioms(source_);
  if (!rep.ok()) throw DomainError("not a conical refinement monoid: " + rep.violations.front().message);
  names_ = source_.names;
  table_ = source_.table;
  zero_ = element_id(source_.zero);
  const std::size_t n = size();

  difference_.assign(n, std::vector<std::optional<std::size_t>>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t c = 0; c < n; ++c) {
      auto& slot = difference_[a][table_[a][c]];
      if (!slot) slot = c;
    }

  // The down-sets of 0*b, 1*b, 2*b, ... increase and repeat once n*b does,
  // which happens by n = size; so n <= size decides a ∝ b.
  propto_.assign(n, std::vector<std::optional<std::size_t>>(n));
  for (std::size_t b = 0; b < n; ++b) {
    std::size_t mult = source_.zero;
    for (std::size_t k = 0; k <= n; ++k) {
      for (std::size_t a = 0; a < n; ++a)
        if (!propto_[a][b] && difference_[a][mult]) propto_[a][b] = k;
      mult = table_[mult][b];
    }
  }
}

std::size_t CayleyMonoid::check(ElementId a) const {
  const std::size_t i = index(a);
  if (i >= names_.size()) throw DomainError("element id " + std::to_string(i) + " out of range");
  return i;
}

ElementId CayleyMonoid::element(std::size_t i) const {
  if (i >= size()) throw DomainError("element index " + std::to_string(i) + " out of range");
  return element_id(i);
}

std::optional<ElementId> CayleyMonoid::find(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return element_id(i);
  return std::nullopt;
}

bool CayleyMonoid::is_idempotent() const {
  for (std::size_t a = 0; a < size(); ++a)
    if (table_[a][a] != a) return false;
  return true;
}

std::optional<ElementId> CayleyMonoid::difference(ElementId a, ElementId b) const {
  const auto& d = difference_[check(a)][check(b)];
  if (!d) return std::nullopt;
  return element_id(*d);
}

std::vector<ElementId> CayleyMonoid::enumerate(std::size_t k) const {
  std::vector<ElementId> out;
  for (std::size_t i = 0; i < std::min(k, size()); ++i) out.push_back(element_id(i));
  return out;
}

std::optional<Natural> CayleyMonoid::decide_propto(ElementId a, ElementId b) const {
  const auto& n = propto_[check(a)][check(b)];
  if (!n) return std::nullopt;
  return Natural(*n);
}

Refinement<ElementId> CayleyMonoid::refine(ElementId x0, ElementId x1, ElementId y0, ElementId y1) const {
  const std::size_t a0 = check(x0), a1 = check(x1), b0 = check(y0), b1 = check(y1);
  if (table_[a0][a1] != table_[b0][b1]) throw DomainError("refine: x0 + x1 != y0 + y1");
  const std::size_t n = size();
  // Off-diagonal entries first, then the forced diagonal ones.
  for (std::size_t z01 = 0; z01 < n; ++z01) {
    if (!difference_[z01][a0] || !difference_[z01][b1]) continue;
    for (std::size_t z10 = 0; z10 < n; ++z10) {
      if (!difference_[z10][a1] || !difference_[z10][b0]) continue;
      for (std::size_t z00 = 0; z00 < n; ++z00) {
        if (table_[z00][z01] != a0 || table_[z00][z10] != b0) continue;
        for (std::size_t z11 = 0; z11 < n; ++z11) {
          if (table_[z10][z11] != a1 || table_[z01][z11] != b1) continue;
          return {{{{element_id(z00), element_id(z01)}, {element_id(z10), element_id(z11)}}}};
        }
      }
    }
  }
  throw InvariantError("refine: no interpolating matrix in a verified refinement monoid");
}

std::vector<ElementId> CayleyMonoid::riesz_decompose(ElementId x, ElementId y, const Natural& n) const {
  const std::size_t xi = check(x), yi = check(y);
  if (!leq(x, multiple(*this, n, y))) throw DomainError("riesz_decompose: x is not <= n*y");
  const std::size_t terms = n.as_u64() + 1;
  const std::size_t m = size();
  // j*e for small j; larger multiples go through multiple().
  std::vector<std::vector<std::size_t>> times(m);
  for (std::size_t e = 0; e < m; ++e) {
    std::size_t acc = source_.zero;
    for (std::size_t j = 0; j < terms && j <= 2 * m; ++j) {
      times[e].push_back(acc);
      acc = table_[acc][e];
    }
  }
  auto jtimes = [&](std::size_t j, std::size_t e) {
    if (j < times[e].size()) return times[e][j];
    return index(multiple(*this, Natural(j), element_id(e)));
  };

  std::vector<std::size_t> parts(terms);
  std::set<std::tuple<std::size_t, std::size_t, std::size_t>> dead;
  std::function<bool(std::size_t, std::size_t, std::size_t)> rec = [&](std::size_t j, std::size_t s,
                                                                       std::size_t w) -> bool {
    if (j == terms) return s == yi && w == xi;
    if (dead.count({j, s, w})) return false;
    for (std::size_t e = 0; e < m; ++e) {
      const std::size_t s2 = table_[s][e];
      const std::size_t w2 = table_[w][jtimes(j, e)];
      if (!difference_[s2][yi] || !difference_[w2][xi]) continue;
      parts[j] = e;
      if (rec(j + 1, s2, w2)) return true;
    }
    dead.insert({j, s, w});
    return false;
  };
  if (!rec(0, source_.zero, source_.zero)) throw InvariantError("riesz_decompose: no decomposition found");
  std::vector<ElementId> out;
  out.reserve(terms);
  for (auto p : parts) out.push_back(element_id(p));
  return out;
}

std::vector<bool> CayleyMonoid::submonoid(std::span<const ElementId> gens) const {
  std::vector<bool> in(size(), false);
  std::deque<std::size_t> todo{source_.zero};
  in[source_.zero] = true;
  std::vector<std::size_t> g;
  for (auto e : gens) g.push_back(check(e));
  while (!todo.empty()) {
    const std::size_t a = todo.front();
    todo.pop_front();
    for (auto b : g) {
      const std::size_t c = table_[a][b];
      if (!in[c]) {
        in[c] = true;
        todo.push_back(c);
      }
    }
  }
  return in;
}

bool CayleyMonoid::in_submonoid(std::span<const ElementId> gens, ElementId x) const {
  return submonoid(gens)[check(x)];
}

std::optional<ElementId> CayleyMonoid::divide(ElementId x, const Natural& d) const {
  const std::size_t xi = check(x);
  for (std::size_t y = 0; y < size(); ++y)
    if (index(multiple(*this, d, element_id(y))) == xi) return element_id(y);
  return std::nullopt;
}

std::optional<std::pair<ElementId, ElementId>> CayleyMonoid::solve_combination(ElementId x, const Natural& p,
                                                                               const Natural& q) const {
  const std::size_t xi = check(x);
  std::vector<std::size_t> py, qz;
  for (std::size_t e = 0; e < size(); ++e) {
    py.push_back(index(multiple(*this, p, element_id(e))));
    qz.push_back(index(multiple(*this, q, element_id(e))));
  }
  for (std::size_t y = 0; y < size(); ++y)
    for (std::size_t z = 0; z < size(); ++z)
      if (table_[py[y]][qz[z]] == xi) return std::make_pair(element_id(y), element_id(z));
  return std::nullopt;
}

SemilatticeMonoid::SemilatticeMonoid(CayleyTable t) : CayleyMonoid([&] {
  const AxiomReport rep = verify_axioms(t, true);
  if (!rep.ok()) throw DomainError("not a distributive 0-semilattice: " + rep.violations.front().message);
  return std::move(t);
}()) {}

}  // namespace refinemon
