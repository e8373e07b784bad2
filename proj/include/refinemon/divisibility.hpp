#pragma once

// Weak divisibility of degree n: x = n_1 x_1 + ... + n_r x_r with every n_j >= n.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "refinemon/cayley_monoid.hpp"
#include "refinemon/errors.hpp"
#include "refinemon/free_monoid.hpp"
#include "refinemon/numerical_semigroup.hpp"
#include "refinemon/oracle.hpp"

namespace refinemon {

template <class V>
struct DivisibilityCertificate {
  V x;
  std::vector<Natural> targets;  ///< n_1..n_r
  std::vector<V> parts;          ///< x_1..x_r

  template <MonoidOracle M>
  bool validate(const M& m) const {
    if (targets.size() != parts.size()) return false;
    value_t<M> acc = m.zero();
    for (std::size_t j = 0; j < parts.size(); ++j) {
      if (targets[j].is_zero()) return false;
      acc = m.add(acc, multiple(m, targets[j], parts[j]));
    }
    return m.equal(acc, x);
  }

  Natural min_target() const {
    if (targets.empty()) return Natural{};
    return *std::min_element(targets.begin(), targets.end());
  }
};

/// Degree-2 expansion reached an element with no (y, z) such that x = 2y + 3z.
class NotWeaklyDivisibleError : public DomainError {
 public:
  NotWeaklyDivisibleError(std::string element)
      : DomainError("not weakly divisible of degree 2 at " + element), element_(std::move(element)) {}
  const std::string& element() const noexcept { return element_; }

 private:
  std::string element_;
};

/// Longest expansion weak_divide will run; it produces 2^k leaves.
inline constexpr std::size_t kMaxExpansionRounds = 20;

template <MonoidOracle M>
std::optional<std::pair<value_t<M>, value_t<M>>> degree2_witness(const M& m, const value_t<M>& x) {
  return m.solve_combination(x, Natural(2), Natural(3));
}

template <MonoidOracle M>
DivisibilityCertificate<value_t<M>> weak_divide(const M& m, const value_t<M>& x, const std::vector<std::uint64_t>& targets) {
  using V = value_t<M>;
  if (targets.empty()) throw DomainError("weak_divide: no targets");
  std::uint64_t d = 0;
  for (auto n : targets) {
    if (n == 0) throw DomainError("weak_divide: targets must be positive");
    d = std::gcd(d, n);
  }
  const auto y = m.divide(x, Natural(d));
  if (!y) throw DomainError("weak_divide: " + m.describe(x) + " is not divisible by gcd " + std::to_string(d));

  std::vector<std::uint64_t> reduced;
  for (auto n : targets) reduced.push_back(n / d);
  const NumericalSemigroup sg(reduced);
  const std::uint64_t m0 = sg.frobenius_bound();
  std::size_t k = 0;
  while ((std::uint64_t{1} << k) < m0) ++k;
  if (k > kMaxExpansionRounds)
    throw BudgetError("weak_divide: " + std::to_string(k) + " expansion rounds exceed the limit " +
                      std::to_string(kMaxExpansionRounds));

  // Leaves of the expansion tree with their level l (number of 3-edges on the path).
  std::vector<std::pair<V, std::size_t>> leaves{{*y, 0}};
  for (std::size_t round = 0; round < k; ++round) {
    std::vector<std::pair<V, std::size_t>> next;
    next.reserve(leaves.size() * 2);
    for (const auto& [e, level] : leaves) {
      const auto w = degree2_witness(m, e);
      if (!w) throw NotWeaklyDivisibleError(m.describe(e));
      next.emplace_back(w->first, level);
      next.emplace_back(w->second, level + 1);
    }
    leaves = std::move(next);
  }
  std::vector<V> ys(k + 1, m.zero());
  for (const auto& [e, level] : leaves) ys[level] = m.add(ys[level], e);

  DivisibilityCertificate<V> cert{x, {}, std::vector<V>(targets.size(), m.zero())};
  for (auto n : targets) cert.targets.emplace_back(n);
  for (std::size_t l = 0; l <= k; ++l) {
    Natural w(1);
    for (std::size_t i = 0; i < k - l; ++i) w *= Natural(2);
    for (std::size_t i = 0; i < l; ++i) w *= Natural(3);
    const auto coeff = sg.represent(w.as_u64());
    for (std::size_t j = 0; j < targets.size(); ++j)
      if (coeff[j] != 0) cert.parts[j] = m.add(cert.parts[j], multiple(m, Natural(coeff[j]), ys[l]));
  }
  if (!cert.validate(m)) throw InvariantError("weak_divide: assembled certificate does not validate");
  return cert;
}

/// From a certificate at y and y <= x, x ∝ y, a certificate at x whose
/// coefficients are each n_j or n_j + 1 of the input.
template <MonoidOracle M>
DivisibilityCertificate<value_t<M>> promote_divisibility(const M& m, const value_t<M>& x, const value_t<M>& y,
                                                         const DivisibilityCertificate<value_t<M>>& cert,
                                                         const Natural& k_bound) {
  using V = value_t<M>;
  if (!m.equal(cert.x, y) || !cert.validate(m)) throw DomainError("promote_divisibility: certificate is not valid for y");
  const auto u0 = m.difference(y, x);
  if (!u0) throw DomainError("promote_divisibility: " + m.describe(y) + " is not <= " + m.describe(x));
  const V S = sum(m, cert.parts);
  const auto kk = m.decide_propto(*u0, S);
  if (!kk) throw DomainError("promote_divisibility: " + m.describe(x) + " is not ∝ " + m.describe(y));
  if (*kk > k_bound) throw BudgetError("promote_divisibility: k = " + kk->str() + " exceeds the bound " + k_bound.str());

  V u = *u0;
  V cur = y;
  std::vector<Natural> coeffs = cert.targets;
  std::vector<V> parts = cert.parts;
  for (Natural k = *kk; !k.is_zero(); k -= Natural(1)) {
    const std::size_t r = parts.size();
    const std::size_t blocks = static_cast<std::size_t>(k.as_u64());
    const V kS = multiple(m, k, S);
    const auto w = m.difference(u, kS);
    if (!w) throw InvariantError("promote_divisibility: u is not <= k*(y_1 + ... + y_r)");
    std::vector<V> cols;
    cols.reserve(blocks * r);
    for (std::size_t i = 0; i < blocks; ++i) cols.insert(cols.end(), parts.begin(), parts.end());
    const std::vector<V> rows{u, *w};
    const auto z = refine_sums(m, rows, cols);

    std::vector<Natural> next_coeffs;
    std::vector<V> next_parts;
    V next_u = m.zero();
    for (std::size_t j = 0; j < r; ++j) {
      const V& yj1 = z[0][j];
      const auto zj = m.difference(yj1, parts[j]);
      if (!zj) throw InvariantError("promote_divisibility: refinement piece is not <= its column");
      cur = m.add(cur, yj1);
      next_coeffs.push_back(coeffs[j] + Natural(1));
      next_parts.push_back(yj1);
      next_coeffs.push_back(coeffs[j]);
      next_parts.push_back(*zj);
    }
    for (std::size_t c = r; c < blocks * r; ++c) next_u = m.add(next_u, z[0][c]);

    // Parts sharing a coefficient are merged, first occurrence first.
    coeffs.clear();
    parts.clear();
    for (std::size_t i = 0; i < next_parts.size(); ++i) {
      auto it = std::find(coeffs.begin(), coeffs.end(), next_coeffs[i]);
      if (it == coeffs.end()) {
        coeffs.push_back(next_coeffs[i]);
        parts.push_back(next_parts[i]);
      } else {
        auto& p = parts[static_cast<std::size_t>(it - coeffs.begin())];
        p = m.add(p, next_parts[i]);
      }
    }
    u = next_u;

    const DivisibilityCertificate<V> step{cur, coeffs, parts};
    if (!step.validate(m)) throw InvariantError("promote_divisibility: intermediate certificate does not validate");
    if (!m.equal(m.add(cur, u), x)) throw InvariantError("promote_divisibility: y' + u' != x");
    if (!m.equal(sum(m, parts), S)) throw InvariantError("promote_divisibility: part total changed");
  }
  if (!m.equal(cur, x)) throw InvariantError("promote_divisibility: final element is not x");
  DivisibilityCertificate<V> out{x, std::move(coeffs), std::move(parts)};
  if (!out.validate(m)) throw InvariantError("promote_divisibility: result does not validate");
  return out;
}

/// Largest search box is_weakly_divisible_degree will scan for free oracles.
inline constexpr std::size_t kMaxDivisibilityBox = std::size_t{1} << 20;

/// Brute force: finite oracles close {m*y : m >= n} under addition; free
/// oracles run a reachability table over the box below x.
template <FiniteMonoidOracle M>
bool is_weakly_divisible_degree(const M& m, const value_t<M>& x, const Natural& n) {
  using V = value_t<M>;
  const std::size_t size = m.size();
  std::vector<V> gens;
  // n*y, (n+1)*y, ... repeats after at most size steps.
  for (std::size_t i = 0; i < size; ++i) {
    V t = multiple(m, n, m.element(i));
    for (std::size_t s = 0; s <= size; ++s) {
      gens.push_back(t);
      t = m.add(t, m.element(i));
    }
  }
  return m.in_submonoid(std::span<const V>(gens), x);
}

inline bool is_weakly_divisible_degree(const FreeMonoid& m, const Element& x, const Natural& n) {
  m.check(x);
  const std::size_t r = m.rank();
  std::vector<std::size_t> dims(r), stride(r);
  std::size_t cells = 1;
  for (std::size_t c = 0; c < r; ++c) {
    const auto v = x(static_cast<Eigen::Index>(c)).to_u64();
    if (!v || *v >= kMaxDivisibilityBox) throw BudgetError("is_weakly_divisible_degree: search box too large");
    dims[c] = static_cast<std::size_t>(*v) + 1;
    stride[c] = cells;
    cells *= dims[c];
    if (cells > kMaxDivisibilityBox) throw BudgetError("is_weakly_divisible_degree: search box too large");
  }
  if (n.is_zero()) return true;
  const auto nn = n.to_u64();
  if (!nn) return m.equal(x, m.zero());
  auto decode = [&](std::size_t cell) {
    std::vector<std::size_t> v(r);
    for (std::size_t c = 0; c < r; ++c) v[c] = (cell / stride[c]) % dims[c];
    return v;
  };
  // Generators: a*y for y != 0 in the box and a >= n with a*y still in the box.
  std::vector<std::size_t> gens;
  for (std::size_t cell = 1; cell < cells; ++cell) {
    const auto y = decode(cell);
    for (std::uint64_t a = *nn;; ++a) {
      bool inside = true;
      std::size_t g = 0;
      for (std::size_t c = 0; c < r && inside; ++c) {
        const std::uint64_t v = a * y[c];
        if (v >= dims[c]) inside = false;
        g += static_cast<std::size_t>(v) * stride[c];
      }
      if (!inside) break;
      gens.push_back(g);
    }
  }
  std::vector<char> reach(cells, 0);
  reach[0] = 1;
  for (std::size_t cell = 0; cell < cells; ++cell) {
    if (!reach[cell]) continue;
    const auto base = decode(cell);
    for (auto g : gens) {
      const auto gv = decode(g);
      bool inside = true;
      std::size_t t = 0;
      for (std::size_t c = 0; c < r && inside; ++c) {
        if (base[c] + gv[c] >= dims[c]) inside = false;
        t += (base[c] + gv[c]) * stride[c];
      }
      if (inside) reach[t] = 1;
    }
  }
  return reach[cells - 1] != 0;
}

}  // namespace refinemon
