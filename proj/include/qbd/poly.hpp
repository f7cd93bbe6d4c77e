#ifndef QBD_POLY_HPP
#define QBD_POLY_HPP

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

namespace qbd {

using Integer = mpz_class;
using Rational = mpq_class;

// Parses "a", "-a" or "a/b" (decimal). The result is reduced.
Rational parse_rational(const std::string& text);
std::string format_rational(const Rational& value);

/// Univariate polynomial in q with arbitrary-precision integer coefficients.
///
/// Coefficients are stored densely in ascending degree order. The zero
/// polynomial is the empty sequence; a nonzero polynomial never carries a
/// trailing zero coefficient, so structural equality is polynomial equality.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Integer> coeffs);
  Poly(std::initializer_list<long> coeffs);

  static Poly constant(const Integer& c);
  static Poly monomial(const Integer& c, std::size_t degree);
  static Poly q() { return monomial(1, 1); }

  const std::vector<Integer>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  // -1 for the zero polynomial.
  long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
  const Integer& leading() const { return coeffs_.back(); }
  Integer coeff(std::size_t i) const {
    return i < coeffs_.size() ? coeffs_[i] : Integer(0);
  }
  bool is_constant() const { return coeffs_.size() <= 1; }

  Poly& operator+=(const Poly& other);
  Poly& operator-=(const Poly& other);
  Poly& operator*=(const Poly& other);
  Poly& operator*=(const Integer& c);

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Integer& c) { return a *= c; }
  friend Poly operator*(const Integer& c, Poly a) { return a *= c; }
  Poly operator-() const;

  friend bool operator==(const Poly& a, const Poly& b) = default;

  // Multiplication by q^k.
  Poly shifted(std::size_t k) const;
  Poly derivative() const;

  // Nonnegative gcd of the coefficients (0 for the zero polynomial).
  Integer content() const;
  // this / content, with a positive leading coefficient.
  Poly primitive_part() const;

  Integer eval(const Integer& x) const;
  Rational eval(const Rational& x) const;
  // Homogenised evaluation at q = a/b: returns sum c_i a^i b^(d - i), which is
  // P(a/b) * b^d. Requires d >= degree().
  Integer eval_homogeneous(const Integer& a, const Integer& b, long d) const;

  // Human-readable form, e.g. "1 + q - 2*q^3".
  std::string to_string(char var = 'q') const;

 private:
  void trim();
  std::vector<Integer> coeffs_;
};

Poly pow(const Poly& base, unsigned exponent);

/// [k]_q = 1 + q + ... + q^(k-1); [0]_q = 0.
Poly qint(unsigned k);

/// k_q = 1 + (k-1) q^2, the q-degree of a vertex of degree k >= 1.
Poly qdeg(unsigned k);

/// Exact quotient a / b. Throws NotDivisible unless b divides a in Z[q].
Poly divexact(const Poly& a, const Poly& b);

// Division over Q scaled to stay integral: returns (quot, rem, scale) with
// scale * a = quot * b + rem, scale = |lc(b)|^(deg a - deg b + 1) > 0.
struct PseudoDivision {
  Poly quotient;
  Poly remainder;
  Integer scale;
};
PseudoDivision pseudo_divide(const Poly& a, const Poly& b);

/// Primitive gcd with positive leading coefficient. Rejects gcd(0, 0).
Poly gcd(const Poly& a, const Poly& b);

/// p / gcd(p, p'), primitive.
Poly squarefree_part(const Poly& p);

}  // namespace qbd

#endif  // QBD_POLY_HPP
