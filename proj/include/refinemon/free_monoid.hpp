#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "refinemon/core.hpp"
#include "refinemon/oracle.hpp"

namespace refinemon {

/// The simplicial monoid (Z+)^r as a MonoidOracle; rank 1 gives Z+.
///
/// Enumeration order: by total degree, then descending lexicographic, so for
/// rank 2 it starts (0,0), (1,0), (0,1), (2,0), (1,1), (0,2), ...
/// Every search primitive returns the enumeration-first witness. Because each
/// feasible set is a product of per-coordinate sets, that witness is the
/// coordinatewise least one and is computed in closed form.
class FreeMonoid {
 public:
  using value_type = Element;

  explicit FreeMonoid(std::size_t rank) : rank_(rank) {}

  std::size_t rank() const noexcept { return rank_; }
  SimplicialMonoid simplicial() const noexcept { return {rank_}; }

  Element zero() const { return zero_element(rank_); }
  Element add(const Element& a, const Element& b) const;
  bool equal(const Element& a, const Element& b) const;
  bool leq(const Element& a, const Element& b) const;
  std::optional<Element> difference(const Element& a, const Element& b) const;
  std::vector<Element> enumerate(std::size_t k) const;
  std::optional<Natural> decide_propto(const Element& a, const Element& b) const;
  Refinement<Element> refine(const Element& x0, const Element& x1, const Element& y0, const Element& y1) const;
  std::vector<Element> riesz_decompose(const Element& x, const Element& y, const Natural& n) const;
  bool in_submonoid(std::span<const Element> gens, const Element& x) const;
  std::optional<Element> divide(const Element& x, const Natural& d) const;
  std::optional<std::pair<Element, Element>> solve_combination(const Element& x, const Natural& p,
                                                               const Natural& q) const;
  std::string describe(const Element& a) const;

  /// Throws DomainError unless a is a rank-matching element.
  void check(const Element& a) const;

 private:
  std::size_t rank_;
};

static_assert(MonoidOracle<FreeMonoid>);

}  // namespace refinemon
