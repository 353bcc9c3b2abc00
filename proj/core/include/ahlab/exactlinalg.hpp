#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ahlab/field.hpp"

namespace ahlab {

/// Dense row-major matrix over an exact field F (Rationals or PrimeField).
/// Entries are always canonical elements of F.
template <class F>
class Matrix {
 public:
  using Element = typename F::Element;

  Matrix(F field, std::size_t rows, std::size_t cols)
      : field_(std::move(field)), rows_(rows), cols_(cols), entries_(rows * cols, field_.zero()) {}

  Matrix(F field, std::size_t rows, std::size_t cols, std::vector<Element> entries)
      : field_(std::move(field)), rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows_ * cols_) {
      throw std::invalid_argument("matrix entry count " + std::to_string(entries_.size()) +
                                  " does not match " + std::to_string(rows_) + "x" + std::to_string(cols_));
    }
  }

  /// Builds a matrix from rational source data, reducing every entry into F.
  /// Throws FieldError naming the first entry that cannot be reduced.
  static Matrix from_rationals(F field, std::size_t rows, std::size_t cols,
                               const std::vector<mpq_class>& entries);

  /// Stacks equally long rows; an empty list gives a 0 x cols matrix.
  static Matrix from_rows(F field, std::size_t cols, const std::vector<std::vector<Element>>& rows);

  const F& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  const Element& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
  Element& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }

  std::span<const Element> row(std::size_t i) const { return {entries_.data() + i * cols_, cols_}; }
  const std::vector<Element>& entries() const { return entries_; }

  void append_row(std::span<const Element> row);
  void append_rows(const Matrix& other);

  Matrix transpose() const;

 private:
  F field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Element> entries_;
};

/// Rank over the matrix's field. Rationals use fraction-free (Bareiss)
/// elimination on integer rows; prime fields use plain elimination. Pivots are
/// taken as the first nonzero entry in column order.
template <class F>
std::size_t rank(const Matrix<F>& m);

/// Basis of the right kernel, cols - rank vectors, each scaled so that its
/// first nonzero entry is 1.
template <class F>
std::vector<std::vector<typename F::Element>> kernel_basis(const Matrix<F>& m);

/// Some x with m x = rhs, or nullopt when the system is inconsistent. Free
/// variables are set to zero, so a uniquely solvable system returns its solution.
template <class F>
std::optional<std::vector<typename F::Element>> solve(const Matrix<F>& m,
                                                      std::span<const typename F::Element> rhs);

/// Determinant of a square matrix.
template <class F>
typename F::Element determinant(const Matrix<F>& m);

/// m * v.
template <class F>
std::vector<typename F::Element> multiply(const Matrix<F>& m, std::span<const typename F::Element> v);

/// Reduced row echelon form together with the pivot column of each nonzero row.
template <class F>
struct Echelon {
  Matrix<F> reduced;
  std::vector<std::size_t> pivots;
};

template <class F>
Echelon<F> row_reduce(const Matrix<F>& m);

}  // namespace ahlab
