#ifndef QBD_MATRIX_HPP
#define QBD_MATRIX_HPP

#include <cstddef>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <vector>

#include "qbd/error.hpp"
#include "qbd/poly.hpp"
#include "qbd/ratfun.hpp"

namespace qbd {

template <class T>
T one() {
  if constexpr (std::is_same_v<T, Poly>) {
    return Poly::constant(1);
  } else if constexpr (std::is_same_v<T, RatFun>) {
    return RatFun(Poly::constant(1));
  } else {
    return T(1);
  }
}

// What a row or column index ranges over. Plain is compatible with anything.
enum class IndexKind { L, R, Vertex, Plain };

std::string_view to_string(IndexKind kind);

/// Dense row-major matrix carrying the index kinds of its rows and columns,
/// so that an L x R matrix cannot silently be used as R x L.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, IndexKind row_kind = IndexKind::Plain,
         IndexKind col_kind = IndexKind::Plain)
      : rows_(rows), cols_(cols), row_kind_(row_kind), col_kind_(col_kind), data_(rows * cols) {}

  static Matrix identity(std::size_t n, IndexKind kind = IndexKind::Plain) {
    Matrix m(n, n, kind, kind);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = one<T>();
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  IndexKind row_kind() const { return row_kind_; }
  IndexKind col_kind() const { return col_kind_; }
  bool square() const { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Matrix transposed() const {
    Matrix t(cols_, rows_, col_kind_, row_kind_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  template <class F>
  auto map(F&& f) const -> Matrix<decltype(f(std::declval<const T&>()))> {
    Matrix<decltype(f(std::declval<const T&>()))> out(rows_, cols_, row_kind_, col_kind_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out(i, j) = f((*this)(i, j));
    return out;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  IndexKind row_kind_ = IndexKind::Plain;
  IndexKind col_kind_ = IndexKind::Plain;
  std::vector<T> data_;
};

using PolyMat = Matrix<Poly>;
using RatMat = Matrix<RatFun>;
using QMat = Matrix<Rational>;
using IntMat = Matrix<Integer>;

/// Vector with an index kind (L or R for the vectors defined on a side).
template <class T>
struct Vec {
  IndexKind kind = IndexKind::Plain;
  std::vector<T> entries;

  std::size_t size() const { return entries.size(); }
  const T& operator[](std::size_t i) const { return entries[i]; }
  T& operator[](std::size_t i) { return entries[i]; }
  friend bool operator==(const Vec&, const Vec&) = default;
};

using PolyVec = Vec<Poly>;

inline bool kinds_compatible(IndexKind a, IndexKind b) {
  return a == b || a == IndexKind::Plain || b == IndexKind::Plain;
}

/// Exact product. Throws DimensionMismatch / IndexKindMismatch.
template <class T>
Matrix<T> mat_mul(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.rows()) {
    throw Error(ErrorCode::DimensionMismatch,
                std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " times " +
                    std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  }
  if (!kinds_compatible(a.col_kind(), b.row_kind())) {
    throw Error(ErrorCode::IndexKindMismatch, std::string("columns indexed by ") +
                                                  std::string(to_string(a.col_kind())) +
                                                  " against rows indexed by " +
                                                  std::string(to_string(b.row_kind())));
  }
  Matrix<T> c(a.rows(), b.cols(), a.row_kind(), b.col_kind());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const T& aik = a(i, k);
      if (aik == T()) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

template <class T>
Matrix<T> operator+(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "matrix sum of different shapes");
  }
  Matrix<T> c = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) += b(i, j);
  return c;
}

template <class T>
Matrix<T> scaled(const Matrix<T>& a, const T& s) {
  return a.map([&s](const T& x) { return x * s; });
}

// u v^t with kinds taken from the vectors.
template <class T>
Matrix<T> outer(const Vec<T>& u, const Vec<T>& v) {
  Matrix<T> m(u.size(), v.size(), u.kind, v.kind);
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) m(i, j) = u[i] * v[j];
  return m;
}

template <class T>
Vec<T> row_sums(const Matrix<T>& m) {
  Vec<T> out{m.row_kind(), std::vector<T>(m.rows())};
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i] += m(i, j);
  return out;
}

template <class T>
Vec<T> col_sums(const Matrix<T>& m) {
  Vec<T> out{m.col_kind(), std::vector<T>(m.cols())};
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[j] += m(i, j);
  return out;
}

template <class T>
Vec<T> mat_vec(const Matrix<T>& m, const Vec<T>& v) {
  if (m.cols() != v.size()) throw Error(ErrorCode::DimensionMismatch, "matrix-vector product");
  if (!kinds_compatible(m.col_kind(), v.kind)) {
    throw Error(ErrorCode::IndexKindMismatch, "matrix-vector product");
  }
  Vec<T> out{m.row_kind(), std::vector<T>(m.rows())};
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i] += m(i, j) * v[j];
  return out;
}

// v^t m, as a vector indexed by the columns of m.
template <class T>
Vec<T> vec_mat(const Vec<T>& v, const Matrix<T>& m) {
  if (m.rows() != v.size()) throw Error(ErrorCode::DimensionMismatch, "vector-matrix product");
  if (!kinds_compatible(m.row_kind(), v.kind)) {
    throw Error(ErrorCode::IndexKindMismatch, "vector-matrix product");
  }
  Vec<T> out{m.col_kind(), std::vector<T>(m.cols())};
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[j] += v[i] * m(i, j);
  return out;
}

RatMat to_ratmat(const PolyMat& m);

}  // namespace qbd

#endif  // QBD_MATRIX_HPP
