#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "tcfp/errors.hpp"
#include "tcfp/scalar.hpp"

namespace tcfp {

/// Dense row-major matrix over an arbitrary scalar (exact or floating).
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<T> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) throw DomainError("matrix data size mismatch");
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<T> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const T> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  const std::vector<T>& data() const { return data_; }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix& operator+=(const Matrix& o) {
    check_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    check_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  Matrix& operator*=(const T& s) {
    for (auto& x : data_) x *= s;
    return *this;
  }
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, const T& s) { return a *= s; }
  friend Matrix operator*(const T& s, Matrix a) { return a *= s; }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw DomainError("matrix product shape mismatch");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t l = 0; l < a.cols_; ++l) {
        const T& x = a(i, l);
        if (x == T(0)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += x * b(l, j);
      }
    return c;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  void check_same_shape(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DomainError("matrix shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

template <class T>
Matrix<T> conjugate(const Matrix<T>& m) {
  Matrix<T> c(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) c(i, j) = scalar_traits<T>::conj(m(i, j));
  return c;
}

template <class T>
Matrix<T> adjoint(const Matrix<T>& m) {
  return conjugate(m).transpose();
}

template <class To, class From, class F>
Matrix<To> map_matrix(const Matrix<From>& m, F&& f) {
  Matrix<To> out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = f(m(i, j));
  return out;
}

/// Converts an exact rational matrix into any scalar type.
template <class S>
Matrix<S> from_rational(const Matrix<Rational>& m) {
  return map_matrix<S>(m, [](const Rational& q) { return scalar_traits<S>::from_rational(q); });
}

template <class T>
Real max_abs(const Matrix<T>& m) {
  Real r = 0;
  for (const auto& x : m.data()) r = std::max(r, scalar_traits<T>::magnitude(x));
  return r;
}

template <class T>
Real frobenius_norm(const Matrix<T>& m) {
  Real s = 0;
  for (const auto& x : m.data()) {
    Real a = scalar_traits<T>::magnitude(x);
    s += a * a;
  }
  return std::sqrt(s);
}

// ---------------------------------------------------------------------------
// Exact linear algebra over a field (Rational, Gaussian).

template <class T>
struct RowEchelon {
  Matrix<T> reduced;
  std::vector<std::size_t> pivots;
};

/// Reduced row echelon form by Gauss-Jordan elimination. Exact scalars only.
template <class T>
RowEchelon<T> rref(Matrix<T> m) {
  static_assert(scalar_traits<T>::exact, "rref needs exact arithmetic");
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && scalar_traits<T>::is_zero(m(p, c))) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    T inv = T(1) / m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || scalar_traits<T>::is_zero(m(i, c))) continue;
      T f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(m), std::move(pivots)};
}

template <class T>
std::size_t rank(const Matrix<T>& m) {
  return rref(m).pivots.size();
}

/// Basis of {x : m x = 0}, one vector per free column of the echelon form.
template <class T>
std::vector<std::vector<T>> nullspace(const Matrix<T>& m) {
  auto [red, pivots] = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<std::vector<T>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<T> v(m.cols(), T(0));
    v[free] = T(1);
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -red(i, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

// ---------------------------------------------------------------------------
// Floating-point helpers backed by Eigen.

using EigenCMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;
using EigenRMatrix = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;

inline EigenCMatrix to_eigen(const Matrix<Complex>& m) {
  EigenCMatrix e(static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) e(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(i, j);
  return e;
}

/// Numerical kernel: right singular vectors whose singular value is at most
/// rel_tol times the largest one. An all-zero matrix has a full kernel.
inline std::vector<std::vector<Complex>> nullspace(const Matrix<Complex>& m, Real rel_tol) {
  const auto n = static_cast<Eigen::Index>(m.cols());
  std::vector<std::vector<Complex>> basis;
  if (n == 0) return basis;
  EigenCMatrix a = to_eigen(m);
  if (m.rows() == 0) a = EigenCMatrix::Zero(1, n);
  Eigen::JacobiSVD<EigenCMatrix> svd(a, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  Real smax = sv.size() > 0 ? sv(0) : 0;
  Eigen::Index numerical_rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (smax > 0 && sv(i) > rel_tol * smax) ++numerical_rank;
  const auto& v = svd.matrixV();
  for (Eigen::Index c = numerical_rank; c < n; ++c) {
    std::vector<Complex> x(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) x[static_cast<std::size_t>(i)] = v(i, c);
    basis.push_back(std::move(x));
  }
  return basis;
}

/// Eigenvalues of a Hermitian matrix, ascending.
inline std::vector<Real> hermitian_eigenvalues(const Matrix<Complex>& m) {
  if (m.rows() != m.cols()) throw DomainError("hermitian_eigenvalues needs a square matrix");
  if (m.rows() == 0) return {};
  Eigen::SelfAdjointEigenSolver<EigenCMatrix> es(to_eigen(m), Eigen::EigenvaluesOnly);
  std::vector<Real> out;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) out.push_back(es.eigenvalues()(i));
  return out;
}

}  // namespace tcfp
