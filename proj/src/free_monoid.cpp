#include "refinemon/free_monoid.hpp"

#include <algorithm>
#include <functional>

namespace refinemon {

namespace {

constexpr std::size_t kSubmonoidSearchBudget = 1'000'000;

Natural& at(Element& x, std::size_t i) { return x(static_cast<Eigen::Index>(i)); }
const Natural& at(const Element& x, std::size_t i) { return x(static_cast<Eigen::Index>(i)); }

// Coordinates of a fixed total degree, descending lexicographic.
void compositions(std::size_t rank, const Natural& degree, std::size_t& remaining, std::vector<Element>& out) {
  Element cur = zero_element(rank);
  std::function<void(std::size_t, Natural)> rec = [&](std::size_t pos, Natural left) {
    if (remaining == 0) return;
    if (pos + 1 == rank) {
      at(cur, pos) = left;
      out.push_back(cur);
      --remaining;
      return;
    }
    for (Natural v = left;; v -= 1) {
      at(cur, pos) = v;
      rec(pos + 1, left - v);
      if (v.is_zero() || remaining == 0) break;
    }
  };
  rec(0, degree);
}

}  // namespace

void FreeMonoid::check(const Element& a) const {
  if (static_cast<std::size_t>(a.size()) != rank_)
    throw DomainError("FreeMonoid: element of rank " + std::to_string(a.size()) + " in monoid of rank " +
                      std::to_string(rank_));
}

Element FreeMonoid::add(const Element& a, const Element& b) const {
  check(a);
  check(b);
  return a + b;
}

bool FreeMonoid::equal(const Element& a, const Element& b) const {
  check(a);
  check(b);
  return a == b;
}

bool FreeMonoid::leq(const Element& a, const Element& b) const {
  check(a);
  check(b);
  return refinemon::leq(a, b);
}

std::optional<Element> FreeMonoid::difference(const Element& a, const Element& b) const {
  if (!leq(a, b)) return std::nullopt;
  return Element(b - a);
}

std::vector<Element> FreeMonoid::enumerate(std::size_t k) const {
  std::vector<Element> out;
  out.reserve(k);
  if (k == 0) return out;
  if (rank_ == 0) {
    out.push_back(zero());
    return out;
  }
  std::size_t remaining = k;
  for (Natural d = 0; remaining > 0; d += 1) compositions(rank_, d, remaining, out);
  return out;
}

std::optional<Natural> FreeMonoid::decide_propto(const Element& a, const Element& b) const {
  check(a);
  check(b);
  return propto(a, b);
}

Refinement<Element> FreeMonoid::refine(const Element& x0, const Element& x1, const Element& y0,
                                       const Element& y1) const {
  if (!equal(add(x0, x1), add(y0, y1))) throw DomainError("refine: x0 + x1 != y0 + y1");
  Refinement<Element> r{{{{zero(), zero()}, {zero(), zero()}}}};
  auto& z = r.z;
  for (std::size_t c = 0; c < rank_; ++c) {
    const Natural off = monus(at(x0, c), at(y0, c));  // least feasible z[0][1]
    at(z[0][1], c) = off;
    at(z[0][0], c) = at(x0, c) - off;
    at(z[1][0], c) = at(y0, c) - at(z[0][0], c);
    at(z[1][1], c) = at(x1, c) - at(z[1][0], c);
  }
  return r;
}

std::vector<Element> FreeMonoid::riesz_decompose(const Element& x, const Element& y, const Natural& n) const {
  check(x);
  check(y);
  const Element bound = n * y;
  if (!refinemon::leq(x, bound)) throw DomainError("riesz_decompose: x is not <= n*y");
  const std::size_t terms = n.as_u64() + 1;
  std::vector<Element> parts(terms, zero());
  for (std::size_t c = 0; c < rank_; ++c) {
    Natural count = at(y, c);   // sum of the remaining y_j
    Natural weight = at(x, c);  // sum of j*y_j over the remaining j
    for (std::size_t j = 0; j < terms; ++j) {
      Natural t;
      if (j + 1 == terms) {
        t = count;
      } else {
        // Least t leaving a feasible tail: (j+1)(count-t) <= weight - j*t.
        t = monus(Natural(j + 1) * count, weight);
      }
      at(parts[j], c) = t;
      count -= t;
      weight -= Natural(j) * t;
    }
    if (!count.is_zero() || !weight.is_zero()) throw InvariantError("riesz_decompose: greedy split failed");
  }
  return parts;
}

bool FreeMonoid::in_submonoid(std::span<const Element> gens, const Element& x) const {
  check(x);
  std::vector<Element> g;
  for (const auto& e : gens) {
    check(e);
    if (is_zero(e)) continue;
    if (std::none_of(g.begin(), g.end(), [&](const Element& h) { return h == e; })) g.push_back(e);
  }
  std::size_t nodes = 0;
  std::function<bool(std::size_t, const Element&)> rec = [&](std::size_t i, const Element& rest) -> bool {
    if (++nodes > kSubmonoidSearchBudget) throw BudgetError("in_submonoid: search budget exhausted");
    if (is_zero(rest)) return true;
    if (i == g.size()) return false;
    // Largest multiple of g[i] that fits under rest.
    std::optional<Natural> cap;
    for (std::size_t c = 0; c < rank_; ++c) {
      if (at(g[i], c).is_zero()) continue;
      Natural q = at(rest, c) / at(g[i], c);
      if (!cap || q < *cap) cap = q;
    }
    for (Natural k = *cap;; k -= 1) {
      if (rec(i + 1, Element(rest - k * g[i]))) return true;
      if (k.is_zero()) break;
    }
    return false;
  };
  return rec(0, x);
}

std::optional<Element> FreeMonoid::divide(const Element& x, const Natural& d) const {
  check(x);
  if (d.is_zero()) return is_zero(x) ? std::optional<Element>(zero()) : std::nullopt;
  Element y = zero();
  for (std::size_t c = 0; c < rank_; ++c) {
    if (!(at(x, c) % d).is_zero()) return std::nullopt;
    at(y, c) = at(x, c) / d;
  }
  return y;
}

std::optional<std::pair<Element, Element>> FreeMonoid::solve_combination(const Element& x, const Natural& p,
                                                                         const Natural& q) const {
  check(x);
  Element y = zero();
  Element z = zero();
  for (std::size_t c = 0; c < rank_; ++c) {
    const Natural& xc = at(x, c);
    bool found = false;
    if (p.is_zero()) {
      if (q.is_zero() ? xc.is_zero() : (xc % q).is_zero()) {
        found = true;
        at(z, c) = q.is_zero() ? Natural{} : xc / q;
      }
    } else {
      // (x - p*t) mod q is periodic in t with period dividing q, so q+1 tries suffice.
      const Natural limit = xc / p;
      for (Natural t = 0; t <= limit; t += 1) {
        const Natural rest = xc - p * t;
        const bool ok = q.is_zero() ? rest.is_zero() : (rest % q).is_zero();
        if (ok) {
          at(y, c) = t;
          at(z, c) = q.is_zero() ? Natural{} : rest / q;
          found = true;
          break;
        }
        if (!q.is_zero() && t >= q) break;
      }
    }
    if (!found) return std::nullopt;
  }
  return std::make_pair(y, z);
}

std::string FreeMonoid::describe(const Element& a) const {
  if (rank_ == 1) return a(0).str();
  return to_string(a);
}

}  // namespace refinemon
