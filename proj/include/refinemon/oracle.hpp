#pragma once

// The target refinement monoid M, seen only through decidable operations.
//
// Constructions never inspect M's representation; they go through the
// MonoidOracle concept below. Every witness an oracle returns is the first one
// in the oracle's fixed element enumeration, so downstream results are
// reproducible.

#include <array>
#include <concepts>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "refinemon/core.hpp"
#include "refinemon/errors.hpp"
#include "refinemon/natural.hpp"

namespace refinemon {

/// Interpolation matrix for x_0 + x_1 = y_0 + y_1:
/// x_i = z[i][0] + z[i][1] and y_j = z[0][j] + z[1][j].
template <class V>
struct Refinement {
  std::array<std::array<V, 2>, 2> z;
};

template <class M>
concept MonoidOracle = requires(const M& m, const typename M::value_type& a, const Natural& n, std::size_t k,
                                std::span<const typename M::value_type> gens) {
  typename M::value_type;
  { m.zero() } -> std::convertible_to<typename M::value_type>;
  { m.add(a, a) } -> std::convertible_to<typename M::value_type>;
  { m.equal(a, a) } -> std::same_as<bool>;
  /// algebraic order: exists c with a + c = b
  { m.leq(a, a) } -> std::same_as<bool>;
  /// first c with a + c = b
  { m.difference(a, a) } -> std::same_as<std::optional<typename M::value_type>>;
  /// first k elements x_0, x_1, ... of the fixed enumeration (fewer if M is finite)
  { m.enumerate(k) } -> std::same_as<std::vector<typename M::value_type>>;
  /// least n >= 0 with a <= n*b
  { m.decide_propto(a, a) } -> std::same_as<std::optional<Natural>>;
  { m.refine(a, a, a, a) } -> std::same_as<Refinement<typename M::value_type>>;
  /// (y_0..y_n) with sum_j j*y_j = x and sum_j y_j = y
  { m.riesz_decompose(a, a, n) } -> std::same_as<std::vector<typename M::value_type>>;
  /// is a in the submonoid generated by gens
  { m.in_submonoid(gens, a) } -> std::same_as<bool>;
  /// first y with n*y = a
  { m.divide(a, n) } -> std::same_as<std::optional<typename M::value_type>>;
  /// first (y, z) with p*y + q*z = a
  { m.solve_combination(a, n, n) }
      -> std::same_as<std::optional<std::pair<typename M::value_type, typename M::value_type>>>;
  { m.describe(a) } -> std::same_as<std::string>;
};

/// Oracles whose carrier is finite and indexed 0..size()-1 in enumeration order.
template <class M>
concept FiniteMonoidOracle = MonoidOracle<M> && requires(const M& m, std::size_t i, const typename M::value_type& a) {
  { m.size() } -> std::same_as<std::size_t>;
  { m.element(i) } -> std::convertible_to<typename M::value_type>;
  { m.index_of(a) } -> std::same_as<std::size_t>;
};

template <MonoidOracle M>
using value_t = typename M::value_type;

/// n*a by doubling.
template <MonoidOracle M>
value_t<M> multiple(const M& m, const Natural& n, const value_t<M>& a) {
  value_t<M> acc = m.zero();
  value_t<M> pow = a;
  const std::size_t bits = n.bit_length();
  for (std::size_t b = 0; b < bits; ++b) {
    if (n.bit(b)) acc = m.add(acc, pow);
    if (b + 1 < bits) pow = m.add(pow, pow);
  }
  return acc;
}

template <MonoidOracle M>
value_t<M> sum(const M& m, std::span<const value_t<M>> xs) {
  value_t<M> acc = m.zero();
  for (const auto& x : xs) acc = m.add(acc, x);
  return acc;
}

template <MonoidOracle M>
value_t<M> sum(const M& m, const std::vector<value_t<M>>& xs) {
  return sum(m, std::span<const value_t<M>>(xs));
}

/// alpha(x) where alpha is given by the images of the basis elements.
template <MonoidOracle M>
value_t<M> image(const M& m, const std::vector<value_t<M>>& basis_images, const Element& x) {
  if (static_cast<std::size_t>(x.size()) != basis_images.size())
    throw DomainError("image: element rank does not match the map");
  value_t<M> acc = m.zero();
  for (std::size_t i = 0; i < basis_images.size(); ++i) {
    const Natural& c = x(static_cast<Eigen::Index>(i));
    if (!c.is_zero()) acc = m.add(acc, multiple(m, c, basis_images[i]));
  }
  return acc;
}

/// alpha(e_I)
template <MonoidOracle M>
value_t<M> subset_image(const M& m, const std::vector<value_t<M>>& basis_images, const IndexSet& I) {
  I.check_within(basis_images.size());
  value_t<M> acc = m.zero();
  for (auto i : I) acc = m.add(acc, basis_images[i]);
  return acc;
}

template <MonoidOracle M>
bool oracle_propto(const M& m, const value_t<M>& a, const value_t<M>& b) {
  return m.decide_propto(a, b).has_value();
}

/// Throws InvariantError unless z interpolates (x0, x1; y0, y1).
template <MonoidOracle M>
void check_refinement(const M& m, const value_t<M>& x0, const value_t<M>& x1, const value_t<M>& y0,
                      const value_t<M>& y1, const Refinement<value_t<M>>& r) {
  const auto& z = r.z;
  if (!m.equal(m.add(z[0][0], z[0][1]), x0) || !m.equal(m.add(z[1][0], z[1][1]), x1) ||
      !m.equal(m.add(z[0][0], z[1][0]), y0) || !m.equal(m.add(z[0][1], z[1][1]), y1))
    throw InvariantError("refinement witness does not satisfy its defining equations");
}

template <MonoidOracle M>
void check_riesz(const M& m, const value_t<M>& x, const value_t<M>& y, const std::vector<value_t<M>>& parts) {
  value_t<M> weighted = m.zero();
  for (std::size_t j = 1; j < parts.size(); ++j) weighted = m.add(weighted, multiple(m, Natural(j), parts[j]));
  if (!m.equal(weighted, x) || !m.equal(sum(m, parts), y))
    throw InvariantError("Riesz decomposition does not satisfy its defining equations");
}

namespace detail {

template <MonoidOracle M>
using Grid = std::vector<std::vector<value_t<M>>>;

// rows a_0..a_{m-1} against the two columns (p, q).
template <MonoidOracle M>
Grid<M> refine_two_columns(const M& m, std::span<const value_t<M>> rows, const value_t<M>& p, const value_t<M>& q) {
  Grid<M> out;
  out.reserve(rows.size());
  value_t<M> col0 = p;
  value_t<M> col1 = q;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i + 1 == rows.size()) {
      out.push_back({col0, col1});
      break;
    }
    const value_t<M> rest = sum(m, rows.subspan(i + 1));
    const auto r = m.refine(rows[i], rest, col0, col1);
    check_refinement(m, rows[i], rest, col0, col1, r);
    out.push_back({r.z[0][0], r.z[0][1]});
    col0 = r.z[1][0];
    col1 = r.z[1][1];
  }
  return out;
}

}  // namespace detail

/// Interpolation matrix z (rows.size() x cols.size()) with row sums equal to
/// rows and column sums equal to cols, built from 2x2 refinements only.
/// Requires sum(rows) = sum(cols).
template <MonoidOracle M>
std::vector<std::vector<value_t<M>>> refine_sums(const M& m, std::span<const value_t<M>> rows,
                                                 std::span<const value_t<M>> cols) {
  if (!m.equal(sum(m, rows), sum(m, cols))) throw DomainError("refine_sums: row and column totals differ");
  const std::size_t nr = rows.size();
  const std::size_t nc = cols.size();
  std::vector<std::vector<value_t<M>>> z(nr, std::vector<value_t<M>>(nc, m.zero()));
  if (nr == 0 || nc == 0) return z;  // totals are 0, so (by conicality) every entry is 0
  // Peel off one column at a time: split every row between cols[c] and the remainder.
  std::vector<value_t<M>> remaining(rows.begin(), rows.end());
  for (std::size_t c = 0; c < nc; ++c) {
    if (c + 1 == nc) {
      for (std::size_t i = 0; i < nr; ++i) z[i][c] = remaining[i];
      break;
    }
    const value_t<M> rest = sum(m, cols.subspan(c + 1));
    auto split = detail::refine_two_columns(m, std::span<const value_t<M>>(remaining), cols[c], rest);
    for (std::size_t i = 0; i < nr; ++i) {
      z[i][c] = split[i][0];
      remaining[i] = split[i][1];
    }
  }
  return z;
}

template <MonoidOracle M>
std::vector<std::vector<value_t<M>>> refine_sums(const M& m, const std::vector<value_t<M>>& rows,
                                                 const std::vector<value_t<M>>& cols) {
  return refine_sums(m, std::span<const value_t<M>>(rows), std::span<const value_t<M>>(cols));
}

}  // namespace refinemon
