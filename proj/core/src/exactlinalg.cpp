#include "ahlab/exactlinalg.hpp"

#include <algorithm>
#include <utility>

namespace ahlab {

template <class F>
Matrix<F> Matrix<F>::from_rationals(F field, std::size_t rows, std::size_t cols,
                                    const std::vector<mpq_class>& entries) {
  if (entries.size() != rows * cols) throw std::invalid_argument("entry count does not match shape");
  std::vector<Element> converted;
  converted.reserve(entries.size());
  for (std::size_t idx = 0; idx < entries.size(); ++idx) {
    try {
      converted.push_back(field.from_rational(entries[idx]));
    } catch (const FieldError& e) {
      throw FieldError("entry (" + std::to_string(idx / cols) + "," + std::to_string(idx % cols) +
                       ") not reducible into the field: " + e.what());
    }
  }
  return Matrix(std::move(field), rows, cols, std::move(converted));
}

template <class F>
Matrix<F> Matrix<F>::from_rows(F field, std::size_t cols, const std::vector<std::vector<Element>>& rows) {
  Matrix m(std::move(field), 0, cols);
  for (const auto& r : rows) m.append_row(r);
  return m;
}

template <class F>
void Matrix<F>::append_row(std::span<const Element> row) {
  if (row.size() != cols_) {
    throw std::invalid_argument("row of length " + std::to_string(row.size()) + " appended to matrix with " +
                                std::to_string(cols_) + " columns");
  }
  entries_.insert(entries_.end(), row.begin(), row.end());
  ++rows_;
}

template <class F>
void Matrix<F>::append_rows(const Matrix& other) {
  if (other.cols_ != cols_) throw std::invalid_argument("column count mismatch in append_rows");
  entries_.insert(entries_.end(), other.entries_.begin(), other.entries_.end());
  rows_ += other.rows_;
}

template <class F>
Matrix<F> Matrix<F>::transpose() const {
  Matrix t(field_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  }
  return t;
}

namespace {

std::size_t rank_mod_p(const Matrix<PrimeField>& m) {
  const PrimeField& f = m.field();
  const std::uint64_t p = f.prime();
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::vector<std::uint64_t> a(m.entries());
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv * cols + c] == 0) ++piv;
    if (piv == rows) continue;
    if (piv != r) {
      std::swap_ranges(a.begin() + static_cast<std::ptrdiff_t>(piv * cols),
                       a.begin() + static_cast<std::ptrdiff_t>((piv + 1) * cols),
                       a.begin() + static_cast<std::ptrdiff_t>(r * cols));
    }
    std::uint64_t* prow = a.data() + r * cols;
    const std::uint64_t inv = f.inv(prow[c]);
    for (std::size_t j = c; j < cols; ++j) prow[j] = f.mul(prow[j], inv);
    for (std::size_t i = r + 1; i < rows; ++i) {
      std::uint64_t* row = a.data() + i * cols;
      const std::uint64_t factor = row[c];
      if (factor == 0) continue;
      const std::uint64_t negf = p - factor;
      // row[j] + negf * prow[j] < p + p^2 < 2^64 for p < 2^32.
      for (std::size_t j = c + 1; j < cols; ++j) row[j] = f.reduce(row[j] + negf * prow[j]);
      row[c] = 0;
    }
    ++r;
  }
  return r;
}

std::vector<mpz_class> integer_rows(const Matrix<Rationals>& m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::vector<mpz_class> a(rows * cols);
  for (std::size_t i = 0; i < rows; ++i) {
    mpz_class den = 1;
    for (std::size_t j = 0; j < cols; ++j) {
      mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), m(i, j).get_den_mpz_t());
    }
    for (std::size_t j = 0; j < cols; ++j) {
      a[i * cols + j] = m(i, j).get_num() * (den / m(i, j).get_den());
    }
  }
  return a;
}

// Fraction-free elimination; every division below is exact.
std::size_t rank_bareiss(const Matrix<Rationals>& m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::vector<mpz_class> a = integer_rows(m);
  mpz_class prev = 1;
  mpz_class tmp;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && sgn(a[piv * cols + c]) == 0) ++piv;
    if (piv == rows) continue;
    if (piv != r) {
      for (std::size_t j = 0; j < cols; ++j) swap(a[piv * cols + j], a[r * cols + j]);
    }
    const mpz_class& pivot = a[r * cols + c];
    for (std::size_t i = r + 1; i < rows; ++i) {
      const mpz_class factor = a[i * cols + c];
      for (std::size_t j = c + 1; j < cols; ++j) {
        mpz_class& x = a[i * cols + j];
        x *= pivot;
        tmp = factor * a[r * cols + j];
        x -= tmp;
        mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), prev.get_mpz_t());
      }
      a[i * cols + c] = 0;
    }
    prev = pivot;
    ++r;
  }
  return r;
}

}  // namespace

template <class F>
std::size_t rank(const Matrix<F>& m) {
  if constexpr (std::is_same_v<F, PrimeField>) {
    return rank_mod_p(m);
  } else {
    return rank_bareiss(m);
  }
}

template <class F>
Echelon<F> row_reduce(const Matrix<F>& m) {
  const F& f = m.field();
  Matrix<F> a = m;
  std::vector<std::size_t> pivots;
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && f.is_zero(a(piv, c))) ++piv;
    if (piv == rows) continue;
    if (piv != r) {
      for (std::size_t j = 0; j < cols; ++j) std::swap(a(piv, j), a(r, j));
    }
    const auto inv = f.inv(a(r, c));
    for (std::size_t j = c; j < cols; ++j) a(r, j) = f.mul(a(r, j), inv);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || f.is_zero(a(i, c))) continue;
      const auto factor = a(i, c);
      for (std::size_t j = c; j < cols; ++j) a(i, j) = f.sub(a(i, j), f.mul(factor, a(r, j)));
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(a), std::move(pivots)};
}

template <class F>
std::vector<std::vector<typename F::Element>> kernel_basis(const Matrix<F>& m) {
  const F& f = m.field();
  const auto ech = row_reduce(m);
  const std::size_t cols = m.cols();
  std::vector<bool> is_pivot(cols, false);
  for (auto c : ech.pivots) is_pivot[c] = true;
  std::vector<std::vector<typename F::Element>> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<typename F::Element> v(cols, f.zero());
    v[free] = f.one();
    for (std::size_t r = 0; r < ech.pivots.size(); ++r) v[ech.pivots[r]] = f.neg(ech.reduced(r, free));
    auto lead = std::find_if(v.begin(), v.end(), [&](const auto& x) { return !f.is_zero(x); });
    const auto inv = f.inv(*lead);
    for (auto& x : v) x = f.mul(x, inv);
    basis.push_back(std::move(v));
  }
  return basis;
}

template <class F>
std::optional<std::vector<typename F::Element>> solve(const Matrix<F>& m,
                                                      std::span<const typename F::Element> rhs) {
  if (rhs.size() != m.rows()) {
    throw std::invalid_argument("right-hand side has length " + std::to_string(rhs.size()) + ", expected " +
                                std::to_string(m.rows()));
  }
  const F& f = m.field();
  const std::size_t cols = m.cols();
  Matrix<F> aug(f, m.rows(), cols + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < cols; ++j) aug(i, j) = m(i, j);
    aug(i, cols) = rhs[i];
  }
  const auto ech = row_reduce(aug);
  if (!ech.pivots.empty() && ech.pivots.back() == cols) return std::nullopt;
  std::vector<typename F::Element> x(cols, f.zero());
  for (std::size_t r = 0; r < ech.pivots.size(); ++r) x[ech.pivots[r]] = ech.reduced(r, cols);
  return x;
}

template <class F>
typename F::Element determinant(const Matrix<F>& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  const F& f = m.field();
  Matrix<F> a = m;
  const std::size_t n = a.rows();
  auto det = f.one();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && f.is_zero(a(piv, c))) ++piv;
    if (piv == n) return f.zero();
    if (piv != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(piv, j), a(c, j));
      det = f.neg(det);
    }
    det = f.mul(det, a(c, c));
    const auto inv = f.inv(a(c, c));
    for (std::size_t i = c + 1; i < n; ++i) {
      if (f.is_zero(a(i, c))) continue;
      const auto factor = f.mul(a(i, c), inv);
      for (std::size_t j = c; j < n; ++j) a(i, j) = f.sub(a(i, j), f.mul(factor, a(c, j)));
    }
  }
  return det;
}

template <class F>
std::vector<typename F::Element> multiply(const Matrix<F>& m, std::span<const typename F::Element> v) {
  if (v.size() != m.cols()) throw std::invalid_argument("vector length does not match column count");
  const F& f = m.field();
  std::vector<typename F::Element> out(m.rows(), f.zero());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    auto acc = f.zero();
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (!f.is_zero(m(i, j))) acc = f.add(acc, f.mul(m(i, j), v[j]));
    }
    out[i] = acc;
  }
  return out;
}

#define AHLAB_INSTANTIATE_LINALG(F)                                                                       \
  template class Matrix<F>;                                                                               \
  template std::size_t rank<F>(const Matrix<F>&);                                                         \
  template Echelon<F> row_reduce<F>(const Matrix<F>&);                                                    \
  template std::vector<std::vector<F::Element>> kernel_basis<F>(const Matrix<F>&);                        \
  template std::optional<std::vector<F::Element>> solve<F>(const Matrix<F>&, std::span<const F::Element>); \
  template F::Element determinant<F>(const Matrix<F>&);                                                   \
  template std::vector<F::Element> multiply<F>(const Matrix<F>&, std::span<const F::Element>);

AHLAB_INSTANTIATE_LINALG(Rationals)
AHLAB_INSTANTIATE_LINALG(PrimeField)

#undef AHLAB_INSTANTIATE_LINALG

}  // namespace ahlab
