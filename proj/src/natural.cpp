#include "refinemon/natural.hpp"

#include <limits>
#include <ostream>

namespace refinemon {

Natural Natural::parse(std::string_view digits) {
  if (digits.empty()) throw DomainError("Natural: empty string");
  Integer v;
  for (char c : digits) {
    if (c < '0' || c > '9') throw DomainError("Natural: not a decimal digit string: " + std::string(digits));
    v = v * 10 + (c - '0');
  }
  return Natural(std::move(v));
}

std::optional<std::uint64_t> Natural::to_u64() const {
  if (value_ > std::numeric_limits<std::uint64_t>::max()) return std::nullopt;
  return value_.convert_to<std::uint64_t>();
}

std::uint64_t Natural::as_u64() const {
  auto v = to_u64();
  if (!v) throw BudgetError("Natural: value " + str() + " exceeds 64 bits");
  return *v;
}

std::ostream& operator<<(std::ostream& os, const Natural& n) { return os << n.value_; }

}  // namespace refinemon
