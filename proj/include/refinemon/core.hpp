#pragma once

// Simplicial monoids (Z+)^r, their elements, and monoid morphisms between them.
//
// Elements are plain Eigen column vectors so that sums and scalings compose as
// Eigen expressions; a morphism is the matrix whose i-th column is the image of
// the basis element e_i, so applying it is a matrix-vector product and
// composition is a matrix product.

#include <concepts>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "refinemon/errors.hpp"
#include "refinemon/index_set.hpp"
#include "refinemon/natural.hpp"

namespace refinemon {

/// Scalars allowed as coordinates: anything that cannot go negative.
template <class T>
concept NonnegativeScalar = std::unsigned_integral<T> || std::same_as<T, Natural>;

struct SimplicialMonoid {
  std::size_t rank = 0;  ///< rank 0 is the trivial monoid {0}

  friend bool operator==(const SimplicialMonoid&, const SimplicialMonoid&) = default;
};

template <NonnegativeScalar Scalar>
using BasicElement = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
using Element = BasicElement<Natural>;

template <NonnegativeScalar Scalar = Natural>
BasicElement<Scalar> zero_element(std::size_t rank) {
  return BasicElement<Scalar>::Zero(static_cast<Eigen::Index>(rank));
}

/// e_I: the 0/1 vector supported exactly on I.
template <NonnegativeScalar Scalar = Natural>
BasicElement<Scalar> basis_sum(const SimplicialMonoid& m, const IndexSet& I) {
  I.check_within(m.rank);
  BasicElement<Scalar> x = zero_element<Scalar>(m.rank);
  for (auto i : I) x(static_cast<Eigen::Index>(i)) = Scalar(1);
  return x;
}

template <NonnegativeScalar Scalar = Natural>
BasicElement<Scalar> basis_element(const SimplicialMonoid& m, std::size_t i) {
  return basis_sum<Scalar>(m, IndexSet{i});
}

/// e_Delta, the sum of all basis elements.
template <NonnegativeScalar Scalar = Natural>
BasicElement<Scalar> basis_total(const SimplicialMonoid& m) {
  return BasicElement<Scalar>::Constant(static_cast<Eigen::Index>(m.rank), Scalar(1));
}

/// True iff every coordinate is 0. (Eigen's isZero() needs a norm.)
template <class Derived>
bool is_zero(const Eigen::MatrixBase<Derived>& x) {
  using Scalar = typename Derived::Scalar;
  for (Eigen::Index i = 0; i < x.size(); ++i)
    if (x(i) != Scalar(0)) return false;
  return true;
}

/// Indices of the nonzero coordinates.
template <class Derived>
IndexSet support(const Eigen::MatrixBase<Derived>& x) {
  using Scalar = typename Derived::Scalar;
  std::vector<std::size_t> s;
  for (Eigen::Index i = 0; i < x.size(); ++i)
    if (x(i) != Scalar(0)) s.push_back(static_cast<std::size_t>(i));
  return IndexSet(std::move(s));
}

namespace detail {
template <class A, class B>
void require_same_rank(const Eigen::MatrixBase<A>& x, const Eigen::MatrixBase<B>& y, const char* what) {
  if (x.size() != y.size())
    throw DomainError(std::string(what) + ": rank mismatch (" + std::to_string(x.size()) + " vs " +
                      std::to_string(y.size()) + ")");
}
}  // namespace detail

/// Algebraic order of (Z+)^r, which is the coordinatewise order.
template <class A, class B>
bool leq(const Eigen::MatrixBase<A>& x, const Eigen::MatrixBase<B>& y) {
  detail::require_same_rank(x, y, "leq");
  for (Eigen::Index i = 0; i < x.size(); ++i)
    if (y(i) < x(i)) return false;
  return true;
}

/// Least n >= 0 with x <= n*y, or nullopt when supp(x) is not inside supp(y).
template <class A, class B>
std::optional<typename A::Scalar> propto(const Eigen::MatrixBase<A>& x, const Eigen::MatrixBase<B>& y) {
  using Scalar = typename A::Scalar;
  static_assert(std::same_as<Scalar, typename B::Scalar>);
  detail::require_same_rank(x, y, "propto");
  Scalar n(0);
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const Scalar xi = x(i);
    if (xi == Scalar(0)) continue;
    const Scalar yi = y(i);
    if (yi == Scalar(0)) return std::nullopt;
    Scalar q = xi / yi;
    if (!(xi % yi == Scalar(0))) q += Scalar(1);
    if (n < q) n = q;
  }
  return n;
}

/// Monoid morphism (Z+)^source_rank -> (Z+)^target_rank, stored as the
/// target_rank x source_rank matrix whose columns are the basis images.
template <NonnegativeScalar Scalar>
class BasicMorphism {
 public:
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = BasicElement<Scalar>;

  /// The map between trivial monoids.
  BasicMorphism() : BasicMorphism(0, 0) {}

  /// The zero map.
  BasicMorphism(std::size_t source_rank, std::size_t target_rank)
      : columns_(Matrix::Zero(static_cast<Eigen::Index>(target_rank), static_cast<Eigen::Index>(source_rank))) {}

  explicit BasicMorphism(Matrix columns) : columns_(std::move(columns)) {}

  static BasicMorphism identity(std::size_t rank) {
    const auto r = static_cast<Eigen::Index>(rank);
    return BasicMorphism(Matrix::Identity(r, r));
  }

  static BasicMorphism from_columns(std::size_t target_rank, const std::vector<Vector>& images) {
    BasicMorphism f(images.size(), target_rank);
    for (std::size_t i = 0; i < images.size(); ++i) {
      if (static_cast<std::size_t>(images[i].size()) != target_rank)
        throw DomainError("Morphism: column " + std::to_string(i) + " has wrong length");
      f.columns_.col(static_cast<Eigen::Index>(i)) = images[i];
    }
    return f;
  }

  std::size_t source_rank() const noexcept { return static_cast<std::size_t>(columns_.cols()); }
  std::size_t target_rank() const noexcept { return static_cast<std::size_t>(columns_.rows()); }
  SimplicialMonoid source() const noexcept { return {source_rank()}; }
  SimplicialMonoid target() const noexcept { return {target_rank()}; }

  /// Image of e_i.
  Vector column(std::size_t i) const {
    if (i >= source_rank()) throw DomainError("Morphism: basis index out of range");
    return columns_.col(static_cast<Eigen::Index>(i));
  }
  const Matrix& matrix() const noexcept { return columns_; }

  template <class Derived>
  Vector operator()(const Eigen::MatrixBase<Derived>& x) const {
    if (static_cast<std::size_t>(x.size()) != source_rank())
      throw DomainError("Morphism: applied to element of rank " + std::to_string(x.size()) + ", expected " +
                        std::to_string(source_rank()));
    return columns_ * x;
  }

  friend bool operator==(const BasicMorphism& a, const BasicMorphism& b) {
    return a.columns_.rows() == b.columns_.rows() && a.columns_.cols() == b.columns_.cols() &&
           a.columns_ == b.columns_;
  }

 private:
  Matrix columns_;
};

using Morphism = BasicMorphism<Natural>;

/// g o f
template <NonnegativeScalar Scalar>
BasicMorphism<Scalar> compose(const BasicMorphism<Scalar>& g, const BasicMorphism<Scalar>& f) {
  if (f.target_rank() != g.source_rank())
    throw DomainError("compose: target rank " + std::to_string(f.target_rank()) + " != source rank " +
                      std::to_string(g.source_rank()));
  return BasicMorphism<Scalar>(g.matrix() * f.matrix());
}

template <NonnegativeScalar Scalar>
struct BasicDirectSum {
  SimplicialMonoid sum;
  BasicMorphism<Scalar> first;   ///< e_i -> e_i
  BasicMorphism<Scalar> second;  ///< e_j -> e_{rank1 + j}
};

template <NonnegativeScalar Scalar = Natural>
BasicDirectSum<Scalar> direct_sum(const SimplicialMonoid& m1, const SimplicialMonoid& m2) {
  using Matrix = typename BasicMorphism<Scalar>::Matrix;
  const auto r1 = static_cast<Eigen::Index>(m1.rank);
  const auto r2 = static_cast<Eigen::Index>(m2.rank);
  Matrix first = Matrix::Zero(r1 + r2, r1);
  Matrix second = Matrix::Zero(r1 + r2, r2);
  first.topRows(r1).setIdentity();
  second.bottomRows(r2).setIdentity();
  return {SimplicialMonoid{m1.rank + m2.rank}, BasicMorphism<Scalar>(std::move(first)),
          BasicMorphism<Scalar>(std::move(second))};
}

/// Block-diagonal f (+) g : source(f) (+) source(g) -> target(f) (+) target(g).
template <NonnegativeScalar Scalar>
BasicMorphism<Scalar> direct_sum(const BasicMorphism<Scalar>& f, const BasicMorphism<Scalar>& g) {
  using Matrix = typename BasicMorphism<Scalar>::Matrix;
  const auto& a = f.matrix();
  const auto& b = g.matrix();
  Matrix m = Matrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  m.topLeftCorner(a.rows(), a.cols()) = a;
  m.bottomRightCorner(b.rows(), b.cols()) = b;
  return BasicMorphism<Scalar>(std::move(m));
}

/// Lexicographic order on coordinates (ranks must agree); used to key sets.
struct ElementLess {
  template <class A, class B>
  bool operator()(const Eigen::MatrixBase<A>& x, const Eigen::MatrixBase<B>& y) const {
    detail::require_same_rank(x, y, "ElementLess");
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      if (x(i) < y(i)) return true;
      if (y(i) < x(i)) return false;
    }
    return false;
  }
};

std::string to_string(const Element& x);

}  // namespace refinemon
