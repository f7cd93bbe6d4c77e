#ifndef QBD_EXACTLA_HPP
#define QBD_EXACTLA_HPP

#include <optional>
#include <utility>

#include "qbd/matrix.hpp"
#include "qbd/poly.hpp"
#include "qbd/ratfun.hpp"

// Exact linear algebra used as the independent referee for the closed forms.
// Nothing here knows about trees.
namespace qbd {

namespace detail {

inline Poly exact_quotient(const Poly& a, const Poly& b) { return divexact(a, b); }

inline Integer exact_quotient(const Integer& a, const Integer& b) {
  Integer out;
  mpz_divexact(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return out;
}

inline long pivot_weight(const Poly& p) { return p.degree(); }
inline long pivot_weight(const Integer& x) { return static_cast<long>(mpz_sizeinbase(x.get_mpz_t(), 2)); }

}  // namespace detail

/// Fraction-free (Bareiss) determinant over an integral domain with exact
/// division: Z or Z[q]. Pivots on the lightest nonzero entry of each column.
template <class T>
T det_bareiss(Matrix<T> m) {
  if (!m.square()) throw Error(ErrorCode::DimensionMismatch, "determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return one<T>();
  bool negate = false;
  T prev = one<T>();
  for (std::size_t k = 0; k < n; ++k) {
    std::optional<std::size_t> pivot;
    for (std::size_t i = k; i < n; ++i) {
      if (m(i, k) == T()) continue;
      if (!pivot || detail::pivot_weight(m(i, k)) < detail::pivot_weight(m(*pivot, k))) pivot = i;
    }
    if (!pivot) return T();
    if (*pivot != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(*pivot, j));
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        T num = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        m(i, j) = detail::exact_quotient(num, prev);
      }
      m(i, k) = T();
    }
    prev = m(k, k);
  }
  T d = m(n - 1, n - 1);
  return negate ? T(-d) : d;
}

/// Gauss-Jordan inverse over Q(q), lowest-degree pivot first. The result has
/// rows indexed like the columns of m and vice versa. Throws SingularMatrix.
RatMat inverse_gauss(const PolyMat& m);
RatMat inverse_gauss(const RatMat& m);

IntMat adjugate_int(const IntMat& m);
std::size_t rank_int(const IntMat& m);

/// det(lambda I - m), as a polynomial in lambda.
Poly charpoly_exact(const IntMat& m);

/// True iff p(m) is the zero matrix.
bool annihilates(const IntMat& m, const Poly& p);

/// An endpoint for real-root counting: a rational or +/- infinity.
struct RootBound {
  enum class Kind { MinusInfinity, Finite, PlusInfinity } kind = Kind::Finite;
  Rational value;

  static RootBound minus_infinity() { return {Kind::MinusInfinity, Rational(0)}; }
  static RootBound plus_infinity() { return {Kind::PlusInfinity, Rational(0)}; }
  static RootBound at(const Rational& x) { return {Kind::Finite, x}; }
};

/// Number of distinct real roots of p in the half-open interval (lo, hi],
/// via a Sturm sequence. p should be squarefree.
int count_real_roots(const Poly& p, const RootBound& lo, const RootBound& hi);

struct ConjectureEvidence {
  bool diagonalizable = false;
  bool all_eigen_nonneg = false;
  int real_root_count = 0;
  Poly charpoly;
  Poly squarefree;
};

/// Diagonalizable iff the squarefree part of the characteristic polynomial
/// annihilates m; eigenvalues real and nonnegative iff the squarefree part
/// has deg-many real roots, none negative.
ConjectureEvidence conjecture_evidence(const IntMat& m);

}  // namespace qbd

#endif  // QBD_EXACTLA_HPP
