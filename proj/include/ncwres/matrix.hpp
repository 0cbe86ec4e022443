#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "ncwres/errors.hpp"

namespace ncwres {

/// Dense square matrix over an exact ring T. T must provide is_zero(), +=, * and ==.
/// Products skip zero entries, which dominate every matrix built from eps/iota.
template <class T>
class Matrix {
public:
  Matrix() = default;
  explicit Matrix(std::size_t n) : n_(n), a_(n * n) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n);
    for (std::size_t i = 0; i < n; ++i)
      m(i, i) = T(1);
    return m;
  }

  std::size_t size() const { return n_; }

  T& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

  bool is_zero() const {
    for (const auto& x : a_)
      if (!x.is_zero())
        return false;
    return true;
  }

  template <class F>
  auto map(F&& f) const {
    using U = decltype(f(std::declval<const T&>()));
    Matrix<U> r(n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j)
        if (!(*this)(i, j).is_zero())
          r(i, j) = f((*this)(i, j));
    return r;
  }

  Matrix transpose() const {
    Matrix r(n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j)
        r(j, i) = (*this)(i, j);
    return r;
  }

  Matrix operator-() const {
    Matrix r = *this;
    for (auto& x : r.a_)
      if (!x.is_zero())
        x = -x;
    return r;
  }
  Matrix& operator+=(const Matrix& o) {
    check(o);
    for (std::size_t k = 0; k < a_.size(); ++k)
      if (!o.a_[k].is_zero())
        a_[k] += o.a_[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    check(o);
    for (std::size_t k = 0; k < a_.size(); ++k)
      if (!o.a_[k].is_zero())
        a_[k] -= o.a_[k];
    return *this;
  }
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    a.check(b);
    const std::size_t n = a.n_;
    Matrix r(n);
    std::vector<std::vector<std::size_t>> cols(n);
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j)
        if (!b(k, j).is_zero())
          cols[k].push_back(j);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) {
        const T& x = a(i, k);
        if (x.is_zero())
          continue;
        for (std::size_t j : cols[k])
          r(i, j) += x * b(k, j);
      }
    return r;
  }

  /// Entrywise scaling by a ring element.
  friend Matrix operator*(const T& s, const Matrix& m) {
    Matrix r(m.n_);
    if (s.is_zero())
      return r;
    for (std::size_t k = 0; k < m.a_.size(); ++k)
      if (!m.a_[k].is_zero())
        r.a_[k] = s * m.a_[k];
    return r;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) { return a.n_ == b.n_ && a.a_ == b.a_; }
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

private:
  void check(const Matrix& o) const {
    if (o.n_ != n_)
      throw DimensionMismatch("matrix sizes differ");
  }

  std::size_t n_ = 0;
  std::vector<T> a_;
};

template <class T>
T trace(const Matrix<T>& m) {
  T t{};
  for (std::size_t i = 0; i < m.size(); ++i)
    if (!m(i, i).is_zero())
      t += m(i, i);
  return t;
}

/// trace(A B) without forming the product.
template <class T>
T trace_product(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.size() != b.size())
    throw DimensionMismatch("matrix sizes differ");
  T t{};
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) {
      const T& x = a(i, j);
      if (x.is_zero())
        continue;
      const T& y = b(j, i);
      if (!y.is_zero())
        t += x * y;
    }
  return t;
}

/// Inverse by Gauss-Jordan elimination. T needs inverse() on nonzero pivots;
/// throws `Singular` when no nonzero pivot exists in a column.
template <class Singular = ModelingError, class T>
Matrix<T> gauss_jordan_inverse(Matrix<T> a) {
  const std::size_t n = a.size();
  Matrix<T> inv = Matrix<T>::identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a(piv, col).is_zero())
      ++piv;
    if (piv == n)
      throw Singular("matrix is singular");
    if (piv != col)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(piv, j), a(col, j));
        std::swap(inv(piv, j), inv(col, j));
      }
    T s = a(col, col).inverse();
    for (std::size_t j = 0; j < n; ++j) {
      if (!a(col, j).is_zero())
        a(col, j) = s * a(col, j);
      if (!inv(col, j).is_zero())
        inv(col, j) = s * inv(col, j);
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a(r, col).is_zero())
        continue;
      T f = a(r, col);
      for (std::size_t j = 0; j < n; ++j) {
        if (!a(col, j).is_zero())
          a(r, j) -= f * a(col, j);
        if (!inv(col, j).is_zero())
          inv(r, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

/// Solves A x = y for square A.
template <class Singular = ModelingError, class T>
std::vector<T> gauss_jordan_solve(const Matrix<T>& a, const std::vector<T>& y) {
  if (y.size() != a.size())
    throw DimensionMismatch("right-hand side length differs from matrix size");
  Matrix<T> inv = gauss_jordan_inverse<Singular>(a);
  std::vector<T> x(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      if (!inv(i, j).is_zero() && !y[j].is_zero())
        x[i] += inv(i, j) * y[j];
  return x;
}

} // namespace ncwres
