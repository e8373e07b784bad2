#pragma once

#include <cstddef>
#include <string_view>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "refinemon/natural.hpp"
#include "refinemon/oracle.hpp"

namespace refinemon {

/// Index of an element in a finite monoid's carrier (its enumeration position).
enum class ElementId : std::size_t {};

constexpr std::size_t index(ElementId e) noexcept { return static_cast<std::size_t>(e); }
constexpr ElementId element_id(std::size_t i) noexcept { return static_cast<ElementId>(i); }

/// Raw addition table as read from a file, before any axiom checking.
struct CayleyTable {
  std::vector<std::string> names;               ///< one label per element
  std::vector<std::vector<std::size_t>> table;  ///< table[a][b] = a + b
  std::size_t zero = 0;
};

enum class Axiom { shape, unit, commutativity, associativity, conicality, refinement, idempotence };

std::string to_string(Axiom a);

struct AxiomViolation {
  Axiom axiom;
  std::string message;
};

struct AxiomReport {
  std::vector<AxiomViolation> violations;
  std::size_t quadruples_examined = 0;   ///< all (x1,x2,y1,y2), i.e. size^4
  std::size_t refinement_instances = 0;  ///< those with x1+x2 = y1+y2

  bool ok() const noexcept { return violations.empty(); }
  bool holds(Axiom a) const noexcept;
};

/// Exhaustively checks unit, commutativity, associativity, conicality and the
/// refinement property; with require_idempotent also x+x = x. Every violation
/// found is listed. Shape problems (ragged table, out-of-range entries) stop
/// the remaining checks.
AxiomReport verify_axioms(const CayleyTable& t, bool require_idempotent = false);

/// A finite conical refinement monoid given by its addition table.
///
/// The carrier is enumerated in table order: x_i is element i. Construction
/// runs verify_axioms and throws DomainError if anything fails.
class CayleyMonoid {
 public:
  using value_type = ElementId;

  static constexpr std::size_t kMaxSize = 64;

  explicit CayleyMonoid(CayleyTable t);

  std::size_t size() const noexcept { return names_.size(); }
  ElementId element(std::size_t i) const;
  std::size_t index_of(ElementId a) const { return check(a); }
  const std::string& name(ElementId a) const { return names_[check(a)]; }
  std::optional<ElementId> find(std::string_view name) const;
  const CayleyTable& table() const noexcept { return source_; }
  bool is_idempotent() const;

  ElementId zero() const noexcept { return zero_; }
  ElementId add(ElementId a, ElementId b) const { return element_id(table_[check(a)][check(b)]); }
  bool equal(ElementId a, ElementId b) const { return check(a) == check(b); }
  bool leq(ElementId a, ElementId b) const { return difference(a, b).has_value(); }
  std::optional<ElementId> difference(ElementId a, ElementId b) const;
  std::vector<ElementId> enumerate(std::size_t k) const;
  std::optional<Natural> decide_propto(ElementId a, ElementId b) const;
  Refinement<ElementId> refine(ElementId x0, ElementId x1, ElementId y0, ElementId y1) const;
  std::vector<ElementId> riesz_decompose(ElementId x, ElementId y, const Natural& n) const;
  bool in_submonoid(std::span<const ElementId> gens, ElementId x) const;
  /// Membership mask of the submonoid generated by gens.
  std::vector<bool> submonoid(std::span<const ElementId> gens) const;
  std::optional<ElementId> divide(ElementId x, const Natural& d) const;
  std::optional<std::pair<ElementId, ElementId>> solve_combination(ElementId x, const Natural& p,
                                                                   const Natural& q) const;
  std::string describe(ElementId a) const { return name(a); }

 private:
  std::size_t check(ElementId a) const;

  CayleyTable source_;
  std::vector<std::string> names_;
  std::vector<std::vector<std::size_t>> table_;
  ElementId zero_{};
  std::vector<std::vector<std::optional<std::size_t>>> difference_;  // first c with a + c = b
  std::vector<std::vector<std::optional<std::size_t>>> propto_;      // least n with a <= n*b
};

static_assert(FiniteMonoidOracle<CayleyMonoid>);

/// A finite monoid that is in addition idempotent: a distributive
/// 0-semilattice once the refinement check passes.
class SemilatticeMonoid : public CayleyMonoid {
 public:
  explicit SemilatticeMonoid(CayleyTable t);
};

}  // namespace refinemon
