#include "refinemon/numerical_semigroup.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <numeric>
#include <queue>
#include <string>

#include "refinemon/errors.hpp"

namespace refinemon {

namespace {

constexpr std::uint64_t kInf = std::numeric_limits<std::uint64_t>::max();

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  if (a > kInf - b) throw BudgetError("NumericalSemigroup: 64-bit overflow");
  return a + b;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > kInf / a) throw BudgetError("NumericalSemigroup: 64-bit overflow");
  return a * b;
}

}  // namespace

NumericalSemigroup::NumericalSemigroup(std::vector<std::uint64_t> generators) : gens_(std::move(generators)) {
  for (auto g : gens_) {
    if (g == 0) throw DomainError("NumericalSemigroup: generators must be positive");
    gcd_ = std::gcd(gcd_, g);
  }
  if (gens_.empty()) return;
  modulus_ = *std::min_element(gens_.begin(), gens_.end()) / gcd_;
  if (modulus_ > (std::uint64_t{1} << 24)) throw BudgetError("NumericalSemigroup: smallest generator too large");
  // Dijkstra over residues mod the smallest generator.
  apery_.assign(modulus_, kInf);
  apery_[0] = 0;
  using Item = std::pair<std::uint64_t, std::uint64_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  pq.emplace(0, 0);
  while (!pq.empty()) {
    auto [dist, r] = pq.top();
    pq.pop();
    if (dist != apery_[r]) continue;
    for (auto g : gens_) {
      const std::uint64_t h = g / gcd_;
      const std::uint64_t nd = checked_add(dist, h);
      const std::uint64_t nr = (r + h % modulus_) % modulus_;
      if (nd < apery_[nr]) {
        apery_[nr] = nd;
        pq.emplace(nd, nr);
      }
    }
  }
}

bool NumericalSemigroup::contains(std::uint64_t m) const {
  if (m == 0) return true;
  if (gens_.empty() || m % gcd_ != 0) return false;
  const std::uint64_t q = m / gcd_;
  const std::uint64_t w = apery_[q % modulus_];
  return w != kInf && q >= w;
}

std::uint64_t NumericalSemigroup::frobenius_bound() const {
  if (gcd_ != 1) throw DomainError("frobenius_bound: generators have gcd " + std::to_string(gcd_) + ", not 1");
  const std::uint64_t top = *std::max_element(apery_.begin(), apery_.end());
  return top + 1 - modulus_;
}

std::vector<std::uint64_t> NumericalSemigroup::represent(std::uint64_t m) const {
  if (!contains(m)) throw DomainError("represent: " + std::to_string(m) + " is not in the semigroup");
  const std::size_t r = gens_.size();
  std::vector<std::uint64_t> d(r, 0);
  std::uint64_t rest = m;
  for (std::size_t j = 0; j < r; ++j) {
    if (j + 1 == r) {
      d[j] = rest / gens_[j];
      rest -= d[j] * gens_[j];
      break;
    }
    const NumericalSemigroup tail(std::vector<std::uint64_t>(gens_.begin() + static_cast<std::ptrdiff_t>(j) + 1, gens_.end()));
    // Membership of rest - t*g_j in the tail depends on t only through a residue
    // with period at most tail.gcd * tail.modulus and is monotone inside each class.
    const std::uint64_t period = checked_mul(tail.gcd_, std::max<std::uint64_t>(tail.modulus_, 1));
    const std::uint64_t limit = std::min(rest / gens_[j], period);
    bool found = false;
    for (std::uint64_t t = 0; t <= limit; ++t) {
      if (tail.contains(rest - t * gens_[j])) {
        d[j] = t;
        rest -= t * gens_[j];
        found = true;
        break;
      }
    }
    if (!found) throw InvariantError("represent: no coefficient found for a member");
  }
  if (rest != 0) throw InvariantError("represent: leftover after greedy representation");
  return d;
}

std::uint64_t frobenius_bound(const std::vector<std::uint64_t>& gens) {
  if (gens.empty()) throw DomainError("frobenius_bound: no generators");
  return NumericalSemigroup(gens).frobenius_bound();
}

}  // namespace refinemon
