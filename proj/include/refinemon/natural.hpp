#pragma once

#include <compare>
#include <concepts>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>
#include <Eigen/Core>

#include "refinemon/errors.hpp"

namespace refinemon {

/// Arbitrary-precision nonnegative integer.
///
/// Every constructor and arithmetic operation keeps the value >= 0;
/// subtracting a larger value throws DomainError instead of wrapping.
/// Usable as an Eigen scalar (see the NumTraits specialization below).
class Natural {
 public:
  using Integer = boost::multiprecision::cpp_int;

  Natural() = default;

  template <std::unsigned_integral T>
  Natural(T v) : value_(v) {}  // NOLINT(google-explicit-constructor)

  template <std::signed_integral T>
  Natural(T v) : value_(v) {  // NOLINT(google-explicit-constructor)
    if (v < 0) throw DomainError("Natural: negative value " + std::to_string(v));
  }

  explicit Natural(Integer v) : value_(std::move(v)) {
    if (value_.sign() < 0) throw DomainError("Natural: negative value");
  }

  /// Parses a decimal string of digits.
  static Natural parse(std::string_view digits);

  const Integer& value() const noexcept { return value_; }
  bool is_zero() const noexcept { return value_.is_zero(); }
  bool is_odd() const { return boost::multiprecision::bit_test(value_, 0); }
  std::size_t bit_length() const {
    return value_.is_zero() ? 0 : boost::multiprecision::msb(value_) + 1;
  }
  bool bit(std::size_t i) const { return boost::multiprecision::bit_test(value_, static_cast<unsigned>(i)); }

  /// Value as uint64 if it fits.
  std::optional<std::uint64_t> to_u64() const;
  /// Value as uint64; throws BudgetError if it does not fit.
  std::uint64_t as_u64() const;
  std::string str() const { return value_.str(); }

  Natural& operator+=(const Natural& o) { value_ += o.value_; return *this; }
  Natural& operator*=(const Natural& o) { value_ *= o.value_; return *this; }
  Natural& operator-=(const Natural& o) {
    if (value_ < o.value_) throw DomainError("Natural: subtraction underflow");
    value_ -= o.value_;
    return *this;
  }
  Natural& operator/=(const Natural& o) {
    if (o.is_zero()) throw DomainError("Natural: division by zero");
    value_ /= o.value_;
    return *this;
  }
  Natural& operator%=(const Natural& o) {
    if (o.is_zero()) throw DomainError("Natural: division by zero");
    value_ %= o.value_;
    return *this;
  }

  friend Natural operator+(Natural a, const Natural& b) { return a += b; }
  friend Natural operator*(Natural a, const Natural& b) { return a *= b; }
  friend Natural operator-(Natural a, const Natural& b) { return a -= b; }
  friend Natural operator/(Natural a, const Natural& b) { return a /= b; }
  friend Natural operator%(Natural a, const Natural& b) { return a %= b; }

  friend bool operator==(const Natural& a, const Natural& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Natural& a, const Natural& b) {
    const int c = a.value_.compare(b.value_);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  friend std::ostream& operator<<(std::ostream& os, const Natural& n);

 private:
  Integer value_;
};

/// Truncated subtraction max(a - b, 0).
inline Natural monus(const Natural& a, const Natural& b) {
  return a > b ? a - b : Natural{};
}

/// ceil(a / b) for b > 0.
inline Natural ceil_div(const Natural& a, const Natural& b) {
  Natural q = a / b;
  if (!(a % b).is_zero()) q += 1;
  return q;
}

}  // namespace refinemon

template <>
struct std::hash<refinemon::Natural> {
  std::size_t operator()(const refinemon::Natural& n) const {
    return boost::multiprecision::hash_value(n.value());
  }
};

namespace Eigen {
template <>
struct NumTraits<refinemon::Natural> : GenericNumTraits<refinemon::Natural> {
  using Real = refinemon::Natural;
  using NonInteger = refinemon::Natural;
  using Literal = refinemon::Natural;
  using Nested = refinemon::Natural;
  enum {
    IsComplex = 0,
    IsInteger = 1,
    IsSigned = 0,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 4,
    MulCost = 8
  };
  static inline Real epsilon() { return Real{}; }
  static inline Real dummy_precision() { return Real{}; }
  static inline int digits10() { return 0; }
};
}  // namespace Eigen
