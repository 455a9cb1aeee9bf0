#pragma once

// Dense exact linear algebra: row reduction, rank, kernels and subspaces kept
// in reduced row-echelon form.

#include <algorithm>
#include <numeric>
#include <optional>
#include <span>
#include <vector>

#include "fano/field.hpp"

namespace fano {

template <class F>
using Vec = std::vector<typename F::Elem>;

template <class F>
class Matrix {
 public:
  using Elem = typename F::Elem;

  Matrix() = default;
  Matrix(const F& field, size_t rows, size_t cols)
      : field_(field), rows_(rows), cols_(cols), data_(rows * cols, field.zero()) {}

  static Matrix from_rows(const F& field, const std::vector<Vec<F>>& rows, size_t cols) {
    Matrix m(field, rows.size(), cols);
    for (size_t i = 0; i < rows.size(); ++i)
      for (size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    return m;
  }

  static Matrix identity(const F& field, size_t n) {
    Matrix m(field, n, n);
    for (size_t i = 0; i < n; ++i) m(i, i) = field.one();
    return m;
  }

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  const F& field() const { return field_; }

  Elem& operator()(size_t i, size_t j) { return data_[i * cols_ + j]; }
  const Elem& operator()(size_t i, size_t j) const { return data_[i * cols_ + j]; }

  Vec<F> row(size_t i) const { return Vec<F>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_); }
  Vec<F> col(size_t j) const {
    Vec<F> c;
    c.reserve(rows_);
    for (size_t i = 0; i < rows_; ++i) c.push_back((*this)(i, j));
    return c;
  }

  Matrix transpose() const {
    Matrix t(field_, cols_, rows_);
    for (size_t i = 0; i < rows_; ++i)
      for (size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    Matrix c(a.field_, a.rows_, b.cols_);
    for (size_t i = 0; i < a.rows_; ++i)
      for (size_t k = 0; k < a.cols_; ++k) {
        if (is_zero(a(i, k))) continue;
        for (size_t j = 0; j < b.cols_; ++j) c(i, j) += a(i, k) * b(k, j);
      }
    return c;
  }

  Vec<F> apply(const Vec<F>& v) const {
    Vec<F> out(rows_, field_.zero());
    for (size_t i = 0; i < rows_; ++i)
      for (size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
    return out;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  F field_{};
  size_t rows_ = 0;
  size_t cols_ = 0;
  std::vector<Elem> data_;
};

/// Rational reduced echelon form computed on primitive integer rows, which
/// avoids the fraction growth of plain Gauss-Jordan. Same contract as
/// rref_in_place.
std::vector<size_t> rref_rational(Matrix<RationalField>& m, std::span<const size_t> order);

/// In-place reduced row echelon form. Columns are scanned in `order`
/// (default: left to right); each pivot row is scaled to 1 and its pivot
/// column cleared elsewhere. Zero rows are dropped. Returns pivot columns.
template <class F>
std::vector<size_t> rref_in_place(Matrix<F>& m, std::span<const size_t> order = {}) {
  if constexpr (std::is_same_v<F, RationalField>) return rref_rational(m, order);
  std::vector<size_t> cols_order(order.begin(), order.end());
  if (cols_order.empty()) {
    cols_order.resize(m.cols());
    std::iota(cols_order.begin(), cols_order.end(), size_t{0});
  }
  const F& field = m.field();
  std::vector<size_t> pivots;
  size_t r = 0;
  for (size_t c : cols_order) {
    if (r == m.rows()) break;
    size_t piv = r;
    while (piv < m.rows() && is_zero(m(piv, c))) ++piv;
    if (piv == m.rows()) continue;
    if (piv != r)
      for (size_t j = 0; j < m.cols(); ++j) std::swap(m(piv, j), m(r, j));
    typename F::Elem inv = field.one() / m(r, c);
    for (size_t j = 0; j < m.cols(); ++j) m(r, j) = m(r, j) * inv;
    for (size_t i = 0; i < m.rows(); ++i) {
      if (i == r || is_zero(m(i, c))) continue;
      typename F::Elem factor = m(i, c);
      for (size_t j = 0; j < m.cols(); ++j)
        if (!is_zero(m(r, j))) m(i, j) -= factor * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  Matrix<F> trimmed(field, r, m.cols());
  for (size_t i = 0; i < r; ++i)
    for (size_t j = 0; j < m.cols(); ++j) trimmed(i, j) = m(i, j);
  m = std::move(trimmed);
  return pivots;
}

template <class F>
size_t rank(Matrix<F> m) {
  return rref_in_place(m).size();
}

/// A subspace of F^n stored as reduced echelon rows with their pivots.
template <class F>
class EchelonSpace {
 public:
  using Elem = typename F::Elem;

  EchelonSpace() = default;
  EchelonSpace(const F& field, size_t n) : field_(field), n_(n), rows_(field, 0, n) {}

  /// Span of the given vectors; pivots chosen in column `order`.
  static EchelonSpace span(const F& field, size_t n, const std::vector<Vec<F>>& vectors,
                           std::span<const size_t> order = {}) {
    EchelonSpace s(field, n);
    s.rows_ = Matrix<F>::from_rows(field, vectors, n);
    s.pivots_ = rref_in_place(s.rows_, order);
    return s;
  }

  static EchelonSpace whole(const F& field, size_t n) {
    EchelonSpace s(field, n);
    s.rows_ = Matrix<F>::identity(field, n);
    s.pivots_.resize(n);
    std::iota(s.pivots_.begin(), s.pivots_.end(), size_t{0});
    return s;
  }

  size_t ambient_dim() const { return n_; }
  size_t dim() const { return rows_.rows(); }
  const std::vector<size_t>& pivots() const { return pivots_; }
  const Matrix<F>& rows() const { return rows_; }
  Vec<F> basis_vector(size_t i) const { return rows_.row(i); }
  std::vector<Vec<F>> basis() const {
    std::vector<Vec<F>> b;
    for (size_t i = 0; i < dim(); ++i) b.push_back(rows_.row(i));
    return b;
  }
  const F& field() const { return field_; }

  /// Subtracts multiples of the basis rows so that every pivot entry is zero.
  Vec<F> reduce(Vec<F> v) const {
    for (size_t i = 0; i < pivots_.size(); ++i) {
      const Elem c = v[pivots_[i]];
      if (is_zero(c)) continue;
      for (size_t j = 0; j < n_; ++j)
        if (!is_zero(rows_(i, j))) v[j] -= c * rows_(i, j);
    }
    return v;
  }

  bool contains(const Vec<F>& v) const {
    auto r = reduce(v);
    return std::all_of(r.begin(), r.end(), [](const Elem& x) { return is_zero(x); });
  }

  bool contains(const EchelonSpace& other) const {
    for (size_t i = 0; i < other.dim(); ++i)
      if (!contains(other.basis_vector(i))) return false;
    return true;
  }

  /// Coordinates of v (assumed in the space) in the row basis.
  Vec<F> coordinates(const Vec<F>& v) const {
    Vec<F> c;
    for (size_t p : pivots_) c.push_back(v[p]);
    return c;
  }

  friend bool operator==(const EchelonSpace& a, const EchelonSpace& b) {
    return a.n_ == b.n_ && a.dim() == b.dim() && a.contains(b);
  }
  friend bool operator!=(const EchelonSpace& a, const EchelonSpace& b) { return !(a == b); }

 private:
  F field_{};
  size_t n_ = 0;
  Matrix<F> rows_;
  std::vector<size_t> pivots_;
};

/// Null space {x : m x = 0} in reduced echelon form.
template <class F>
EchelonSpace<F> kernel(const Matrix<F>& m) {
  const F& field = m.field();
  Matrix<F> r = m;
  auto pivots = rref_in_place(r);
  std::vector<bool> is_pivot(m.cols(), false);
  for (size_t p : pivots) is_pivot[p] = true;
  std::vector<Vec<F>> basis;
  for (size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vec<F> v(m.cols(), field.zero());
    v[free] = field.one();
    for (size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -r(i, free);
    basis.push_back(std::move(v));
  }
  return EchelonSpace<F>::span(field, m.cols(), basis);
}

template <class F>
struct RankKernel {
  size_t rank = 0;
  EchelonSpace<F> kernel;
};

template <class F>
RankKernel<F> rref_rank_kernel(const Matrix<F>& m) {
  auto k = kernel(m);
  return {m.cols() - k.dim(), std::move(k)};
}

/// Annihilator {x : <x, v> = 0 for all v in s}.
template <class F>
EchelonSpace<F> annihilator(const EchelonSpace<F>& s) {
  if (s.dim() == 0) return EchelonSpace<F>::whole(s.field(), s.ambient_dim());
  return kernel(s.rows());
}

template <class F>
EchelonSpace<F> sum(const EchelonSpace<F>& a, const EchelonSpace<F>& b) {
  auto vs = a.basis();
  auto vb = b.basis();
  vs.insert(vs.end(), vb.begin(), vb.end());
  return EchelonSpace<F>::span(a.field(), a.ambient_dim(), vs);
}

template <class F>
EchelonSpace<F> intersection(const EchelonSpace<F>& a, const EchelonSpace<F>& b) {
  // (a^perp + b^perp)^perp
  return annihilator(sum(annihilator(a), annihilator(b)));
}

template <class F>
typename F::Elem determinant(Matrix<F> m) {
  const F& field = m.field();
  const size_t n = m.rows();
  typename F::Elem det = field.one();
  for (size_t c = 0; c < n; ++c) {
    size_t piv = c;
    while (piv < n && is_zero(m(piv, c))) ++piv;
    if (piv == n) return field.zero();
    if (piv != c) {
      for (size_t j = 0; j < n; ++j) std::swap(m(piv, j), m(c, j));
      det = -det;
    }
    det *= m(c, c);
    typename F::Elem inv = field.one() / m(c, c);
    for (size_t i = c + 1; i < n; ++i) {
      if (is_zero(m(i, c))) continue;
      typename F::Elem f = m(i, c) * inv;
      for (size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
    }
  }
  return det;
}

/// Inverse of a square matrix; nullopt when singular.
template <class F>
std::optional<Matrix<F>> inverse(const Matrix<F>& m) {
  const F& field = m.field();
  const size_t n = m.rows();
  Matrix<F> aug(field, n, 2 * n);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = field.one();
  }
  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), size_t{0});
  auto piv = rref_in_place(aug, order);
  if (piv.size() != n) return std::nullopt;
  Matrix<F> inv(field, n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

/// Scale so the first nonzero entry is one. Returns false for the zero vector.
template <class F>
bool normalize_leading(const F& field, Vec<F>& v) {
  for (auto& x : v) {
    if (is_zero(x)) continue;
    typename F::Elem inv = field.one() / x;
    for (auto& y : v) y = y * inv;
    return true;
  }
  return false;
}

template <class F>
bool is_zero_vector(const Vec<F>& v) {
  return std::all_of(v.begin(), v.end(), [](const auto& x) { return is_zero(x); });
}

/// Projective equality: v and w span the same line.
template <class F>
bool proportional(const Vec<F>& v, const Vec<F>& w) {
  if (v.size() != w.size()) return false;
  for (size_t i = 0; i < v.size(); ++i)
    for (size_t j = i + 1; j < v.size(); ++j)
      if (!is_zero(v[i] * w[j] - v[j] * w[i])) return false;
  return is_zero_vector<F>(v) == is_zero_vector<F>(w);
}

}  // namespace fano
