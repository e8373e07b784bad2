#pragma once

// Small finite monoids used by the tests, the acceptance suite and data/specs.

#include <cstddef>
#include <string>
#include <vector>

#include "refinemon/cayley_monoid.hpp"

namespace refinemon::fixtures {

/// {0, u} with u + u = u.
CayleyTable two_element();
/// 0 < a < b under max.
CayleyTable chain3();
/// {0, a, b, 1} under join, with a + b = 1.
CayleyTable diamond();
/// {0} together with the cyclic group Z/k (k >= 1): elements 0, e, g, 2g, ...
/// where e is the group identity and g a generator.
CayleyTable group_with_zero(std::size_t k);
/// {0} together with Z/2 = {e, g} and an absorbing element inf.
CayleyTable group_with_zero_and_infinity();
/// {0, 1, ..., k} with addition capped at k. Conical, but fails refinement for k >= 2.
CayleyTable truncated(std::size_t k);
/// Z/2 as {0, a} with a + a = 0; not conical.
CayleyTable z2();

/// The same monoid with its elements listed in a different order:
/// element t of the result is element order[t] of the input.
CayleyTable reorder(const CayleyTable& t, const std::vector<std::size_t>& order);

/// chain3 listed as [b, a, 0].
CayleyTable chain3_reversed();
/// diamond listed as [1, a, b, 0].
CayleyTable diamond_top_first();
/// Same as diamond_top_first: its tower outgrows a rank budget of 2 while
/// stage 1 is being extended.
CayleyTable budget_breaker();

struct NamedTable {
  std::string name;
  CayleyTable table;
  bool semilattice;
};

/// Every finite conical refinement monoid shipped with the library.
std::vector<NamedTable> finite_fixtures();

}  // namespace refinemon::fixtures
