#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace refinemon {

/// The submonoid of (N, +) generated by positive integers g_1, ..., g_r.
///
/// Membership uses the Apéry set of the smallest generator a: w[i] is the
/// least element congruent to i mod a, so m is a member iff m >= w[m mod a].
/// The generators need not be coprime; members are then multiples of the gcd.
class NumericalSemigroup {
 public:
  /// Throws DomainError on a zero generator. An empty list gives {0}.
  explicit NumericalSemigroup(std::vector<std::uint64_t> generators);

  const std::vector<std::uint64_t>& generators() const noexcept { return gens_; }
  std::uint64_t gcd() const noexcept { return gcd_; }
  bool contains(std::uint64_t m) const;

  /// Least m_0 with every m >= m_0 a member. Requires gcd 1.
  std::uint64_t frobenius_bound() const;

  /// Lexicographically least (d_1, ..., d_r) with sum d_j g_j = m, in the
  /// order the generators were given. Throws DomainError if m is not a member.
  std::vector<std::uint64_t> represent(std::uint64_t m) const;

 private:
  std::vector<std::uint64_t> gens_;
  std::uint64_t gcd_ = 0;
  std::uint64_t modulus_ = 0;           // smallest generator divided by the gcd
  std::vector<std::uint64_t> apery_;  // over the generators divided by the gcd
};

/// frobenius_bound of the semigroup generated by gens; gcd must be 1.
std::uint64_t frobenius_bound(const std::vector<std::uint64_t>& gens);

}  // namespace refinemon
