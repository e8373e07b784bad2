#include "refinemon/fixtures.hpp"

#include <algorithm>

namespace refinemon::fixtures {

namespace {

CayleyTable join_table(std::vector<std::string> names, const std::vector<unsigned>& bits) {
  // Elements are subsets encoded as bit masks; a + b is the element whose mask is the union.
  const std::size_t n = names.size();
  CayleyTable t{std::move(names), std::vector<std::vector<std::size_t>>(n, std::vector<std::size_t>(n)), 0};
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const unsigned u = bits[a] | bits[b];
      t.table[a][b] = static_cast<std::size_t>(std::find(bits.begin(), bits.end(), u) - bits.begin());
    }
  return t;
}

}  // namespace

CayleyTable two_element() { return join_table({"0", "u"}, {0, 1}); }
CayleyTable chain3() { return join_table({"0", "a", "b"}, {0, 1, 3}); }
CayleyTable diamond() { return join_table({"0", "a", "b", "1"}, {0, 1, 2, 3}); }

CayleyTable truncated(std::size_t k) {
  CayleyTable t;
  for (std::size_t a = 0; a <= k; ++a) {
    t.names.push_back(std::to_string(a));
    t.table.emplace_back();
    for (std::size_t b = 0; b <= k; ++b) t.table.back().push_back(std::min(a + b, k));
  }
  return t;
}

CayleyTable group_with_zero(std::size_t k) {
  if (k == 0) throw DomainError("group_with_zero: k must be positive");
  CayleyTable t;
  t.names.push_back("0");
  for (std::size_t i = 0; i < k; ++i)
    t.names.push_back(i == 0 ? "e" : i == 1 ? "g" : std::to_string(i) + "g");
  t.table.assign(k + 1, std::vector<std::size_t>(k + 1));
  for (std::size_t a = 0; a <= k; ++a)
    for (std::size_t b = 0; b <= k; ++b)
      t.table[a][b] = a == 0 ? b : b == 0 ? a : 1 + (a - 1 + b - 1) % k;
  return t;
}

CayleyTable group_with_zero_and_infinity() {
  CayleyTable t = group_with_zero(2);
  t.names.push_back("inf");
  for (auto& row : t.table) row.push_back(3);
  t.table.push_back({3, 3, 3, 3});
  return t;
}

CayleyTable z2() { return CayleyTable{{"0", "a"}, {{0, 1}, {1, 0}}, 0}; }

CayleyTable reorder(const CayleyTable& t, const std::vector<std::size_t>& order) {
  const std::size_t n = t.names.size();
  if (order.size() != n) throw DomainError("reorder: order is not a permutation");
  std::vector<std::size_t> pos(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (order[i] >= n || pos[order[i]] != n) throw DomainError("reorder: order is not a permutation");
    pos[order[i]] = i;
  }
  CayleyTable out{{}, std::vector<std::vector<std::size_t>>(n, std::vector<std::size_t>(n)), pos[t.zero]};
  for (std::size_t i = 0; i < n; ++i) {
    out.names.push_back(t.names[order[i]]);
    for (std::size_t j = 0; j < n; ++j) out.table[i][j] = pos[t.table[order[i]][order[j]]];
  }
  return out;
}

CayleyTable chain3_reversed() { return reorder(chain3(), {2, 1, 0}); }
CayleyTable diamond_top_first() { return reorder(diamond(), {3, 1, 2, 0}); }
CayleyTable budget_breaker() { return diamond_top_first(); }

std::vector<NamedTable> finite_fixtures() {
  return {
      {"two_element", two_element(), true},
      {"chain3", chain3(), true},
      {"chain3_reversed", chain3_reversed(), true},
      {"diamond", diamond(), true},
      {"diamond_top_first", diamond_top_first(), true},
      {"group_with_zero2", group_with_zero(2), false},
      {"group_with_zero3", group_with_zero(3), false},
      {"group_with_zero_inf", group_with_zero_and_infinity(), false},
  };
}

}  // namespace refinemon::fixtures
