#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <vector>

namespace refinemon {

/// Finite set of basis indices, kept sorted and duplicate-free.
///
/// Indices are 0-based throughout the library: a simplicial monoid of rank r
/// has basis e_0, ..., e_{r-1}.
class IndexSet {
 public:
  IndexSet() = default;
  /// Throws DomainError on duplicates. Order of the input does not matter.
  IndexSet(std::initializer_list<std::size_t> members);
  explicit IndexSet(std::vector<std::size_t> members);

  /// {0, ..., rank-1}
  static IndexSet full(std::size_t rank);
  static IndexSet from_mask(std::uint64_t mask);

  /// Throws DomainError unless every member is < rank.
  const IndexSet& check_within(std::size_t rank) const;

  std::span<const std::size_t> members() const noexcept { return members_; }
  auto begin() const noexcept { return members_.begin(); }
  auto end() const noexcept { return members_.end(); }
  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }
  std::size_t front() const { return members_.front(); }
  bool contains(std::size_t i) const;
  bool is_subset_of(const IndexSet& other) const;

  /// Bit i set iff i is a member; requires all members < 64.
  std::uint64_t mask() const;

  IndexSet operator|(const IndexSet& o) const;  // union
  IndexSet operator&(const IndexSet& o) const;  // intersection
  IndexSet operator-(const IndexSet& o) const;  // difference

  friend bool operator==(const IndexSet&, const IndexSet&) = default;
  friend auto operator<=>(const IndexSet&, const IndexSet&) = default;
  friend std::ostream& operator<<(std::ostream& os, const IndexSet& s);

 private:
  std::vector<std::size_t> members_;
};

/// Masks of all subsets of {0..rank-1} ordered by size, then
/// lexicographically by their sorted member lists. rank <= 24.
std::vector<std::uint64_t> subsets_by_size_then_lex(std::size_t rank);

}  // namespace refinemon
