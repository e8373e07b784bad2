#include "refinemon/index_set.hpp"

#include <algorithm>
#include <bit>
#include <iterator>
#include <ostream>
#include <string>

#include "refinemon/errors.hpp"

namespace refinemon {

IndexSet::IndexSet(std::initializer_list<std::size_t> members) : IndexSet(std::vector<std::size_t>(members)) {}

IndexSet::IndexSet(std::vector<std::size_t> members) : members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  if (std::adjacent_find(members_.begin(), members_.end()) != members_.end())
    throw DomainError("IndexSet: duplicate index");
}

IndexSet IndexSet::full(std::size_t rank) {
  IndexSet s;
  s.members_.resize(rank);
  for (std::size_t i = 0; i < rank; ++i) s.members_[i] = i;
  return s;
}

IndexSet IndexSet::from_mask(std::uint64_t mask) {
  IndexSet s;
  for (std::size_t i = 0; mask != 0; ++i, mask >>= 1)
    if (mask & 1U) s.members_.push_back(i);
  return s;
}

const IndexSet& IndexSet::check_within(std::size_t rank) const {
  if (!members_.empty() && members_.back() >= rank)
    throw DomainError("IndexSet: index " + std::to_string(members_.back()) + " out of range for rank " +
                      std::to_string(rank));
  return *this;
}

bool IndexSet::contains(std::size_t i) const { return std::binary_search(members_.begin(), members_.end(), i); }

bool IndexSet::is_subset_of(const IndexSet& other) const {
  return std::includes(other.members_.begin(), other.members_.end(), members_.begin(), members_.end());
}

std::uint64_t IndexSet::mask() const {
  std::uint64_t m = 0;
  for (auto i : members_) {
    if (i >= 64) throw BudgetError("IndexSet: index too large for a 64-bit mask");
    m |= std::uint64_t{1} << i;
  }
  return m;
}

IndexSet IndexSet::operator|(const IndexSet& o) const {
  IndexSet r;
  std::set_union(begin(), end(), o.begin(), o.end(), std::back_inserter(r.members_));
  return r;
}

IndexSet IndexSet::operator&(const IndexSet& o) const {
  IndexSet r;
  std::set_intersection(begin(), end(), o.begin(), o.end(), std::back_inserter(r.members_));
  return r;
}

IndexSet IndexSet::operator-(const IndexSet& o) const {
  IndexSet r;
  std::set_difference(begin(), end(), o.begin(), o.end(), std::back_inserter(r.members_));
  return r;
}

std::ostream& operator<<(std::ostream& os, const IndexSet& s) {
  os << '{';
  for (std::size_t k = 0; k < s.members_.size(); ++k) os << (k ? "," : "") << s.members_[k];
  return os << '}';
}

std::vector<std::uint64_t> subsets_by_size_then_lex(std::size_t rank) {
  if (rank > 24) throw BudgetError("subset enumeration limited to rank 24");
  std::vector<std::uint64_t> out;
  out.reserve(std::size_t{1} << rank);
  for (std::size_t k = 0; k <= rank; ++k) {
    // Combinations of size k in lexicographic order of sorted member lists.
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
      std::uint64_t m = 0;
      for (auto i : idx) m |= std::uint64_t{1} << i;
      out.push_back(m);
      std::size_t pos = k;
      while (pos > 0 && idx[pos - 1] == rank - k + pos - 1) --pos;
      if (pos == 0) break;
      ++idx[pos - 1];
      for (std::size_t i = pos; i < k; ++i) idx[i] = idx[i - 1] + 1;
    }
  }
  return out;
}

}  // namespace refinemon
