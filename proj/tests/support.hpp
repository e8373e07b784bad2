#pragma once

// Helpers shared by the unit tests and the acceptance binary, including the
// brute-force reference implementations results are compared against. None
// of these call into the library's search routines.

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <optional>
#include <set>
#include <vector>

#include "refinemon/cayley_monoid.hpp"
#include "refinemon/core.hpp"

namespace refinemon::testing {

inline Element vec(std::initializer_list<unsigned> xs) {
  Element v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (auto x : xs) v(i++) = Natural(x);
  return v;
}

inline Element nat(unsigned x) { return vec({x}); }

inline Element from_vector(const std::vector<unsigned>& xs) {
  Element v(static_cast<Eigen::Index>(xs.size()));
  for (std::size_t i = 0; i < xs.size(); ++i) v(static_cast<Eigen::Index>(i)) = Natural(xs[i]);
  return v;
}

inline unsigned u(const Natural& n) { return static_cast<unsigned>(n.as_u64()); }

// (Z+)^r: least n <= bound with x <= n*y coordinatewise, by trying every n.
inline std::optional<unsigned> brute_propto(const std::vector<unsigned>& x, const std::vector<unsigned>& y) {
  unsigned bound = std::accumulate(x.begin(), x.end(), 0u);
  for (unsigned n = 0; n <= bound; ++n) {
    bool ok = true;
    for (std::size_t i = 0; i < x.size(); ++i) ok = ok && x[i] <= n * y[i];
    if (ok) return n;
  }
  return std::nullopt;
}

// Finite table: a <= b iff some c has a + c = b.
inline bool brute_leq(const CayleyTable& t, std::size_t a, std::size_t b) {
  for (std::size_t c = 0; c < t.names.size(); ++c)
    if (t.table[a][c] == b) return true;
  return false;
}

inline std::size_t brute_multiple(const CayleyTable& t, std::size_t n, std::size_t a) {
  std::size_t acc = t.zero;
  for (std::size_t i = 0; i < n; ++i) acc = t.table[acc][a];
  return acc;
}

inline std::optional<std::size_t> brute_propto(const CayleyTable& t, std::size_t a, std::size_t b) {
  for (std::size_t n = 0; n <= t.names.size() + 1; ++n)
    if (brute_leq(t, a, brute_multiple(t, n, b))) return n;
  return std::nullopt;
}

// All subsets of the carrier containing 0, closed under + and downward closed.
inline std::set<std::vector<std::size_t>> brute_ideals(const CayleyTable& t) {
  const std::size_t n = t.names.size();
  std::set<std::vector<std::size_t>> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    auto in = [&](std::size_t a) { return (mask >> a & 1) != 0; };
    if (!in(t.zero)) continue;
    bool ok = true;
    for (std::size_t a = 0; a < n && ok; ++a)
      for (std::size_t b = 0; b < n && ok; ++b) {
        if (in(a) && in(b) && !in(t.table[a][b])) ok = false;
        if (in(t.table[a][b]) && !(in(a) && in(b))) ok = false;
      }
    if (!ok) continue;
    std::vector<std::size_t> members;
    for (std::size_t a = 0; a < n; ++a)
      if (in(a)) members.push_back(a);
    out.insert(members);
  }
  return out;
}

// Every m >= result is a nonnegative combination of gens (gcd 1); plain DP.
inline std::uint64_t brute_frobenius(const std::vector<std::uint64_t>& gens) {
  const std::uint64_t top = *std::max_element(gens.begin(), gens.end());
  const std::uint64_t limit = top * top + top + 2;
  std::vector<char> rep(limit + 1, 0);
  rep[0] = 1;
  for (std::uint64_t m = 1; m <= limit; ++m)
    for (auto g : gens)
      if (g <= m && rep[m - g]) rep[m] = 1;
  std::uint64_t last_gap = 0;
  bool any_gap = false;
  for (std::uint64_t m = 0; m <= limit; ++m)
    if (!rep[m]) {
      last_gap = m;
      any_gap = true;
    }
  return any_gap ? last_gap + 1 : 0;
}

// Z+: can x be written as sum n_j x_j over the given coefficients?
inline bool brute_combination(std::uint64_t x, const std::vector<std::uint64_t>& coeffs) {
  std::vector<char> rep(x + 1, 0);
  rep[0] = 1;
  for (std::uint64_t m = 1; m <= x; ++m)
    for (auto c : coeffs)
      if (c <= m && rep[m - c]) rep[m] = 1;
  return rep[x] != 0;
}

}  // namespace refinemon::testing
