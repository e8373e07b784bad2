#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace refinemon {

/// Caller violated a documented precondition (bad rank, index out of
/// range, hypothesis not satisfied by the oracle, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A mathematical postcondition failed to hold. Always a bug in either the
/// construction or the oracle, never a property of the input.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A configured resource cap (rank budget, search box, enumeration size)
/// would be exceeded.
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input document.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace refinemon
