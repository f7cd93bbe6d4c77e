#ifndef QBD_RATFUN_HPP
#define QBD_RATFUN_HPP

#include <string>

#include "qbd/poly.hpp"

namespace qbd {

/// Element of Q(q), stored as a canonical quotient of integer polynomials.
///
/// Canonical form: num and den are coprime over Q, the combined integer
/// content gcd(content(num), content(den)) is 1, and den has a positive
/// leading coefficient. Zero is 0/1. Two RatFun values are equal iff their
/// representations are equal.
class RatFun {
 public:
  RatFun() : den_(Poly::constant(1)) {}
  RatFun(const Poly& p) : num_(p), den_(Poly::constant(1)) {}  // NOLINT(implicit)
  RatFun(Poly num, Poly den);

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  // True when the value is a polynomial (den == 1).
  bool is_poly() const { return den_.degree() == 0 && den_.leading() == 1; }

  RatFun& operator+=(const RatFun& other);
  RatFun& operator-=(const RatFun& other);
  RatFun& operator*=(const RatFun& other);
  RatFun& operator/=(const RatFun& other);

  friend RatFun operator+(RatFun a, const RatFun& b) { return a += b; }
  friend RatFun operator-(RatFun a, const RatFun& b) { return a -= b; }
  friend RatFun operator*(RatFun a, const RatFun& b) { return a *= b; }
  friend RatFun operator/(RatFun a, const RatFun& b) { return a /= b; }
  RatFun operator-() const;

  friend bool operator==(const RatFun& a, const RatFun& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  // Throws DivisionByZero for zero.
  RatFun inverse() const;
  RatFun scaled(const Poly& p) const { return *this * RatFun(p); }

  // Throws PoleAtPoint when the denominator vanishes at x.
  Rational eval(const Rational& x) const;

  std::string to_string() const;

 private:
  void canonicalize();
  Poly num_;
  Poly den_;
};

inline RatFun rf_add(const RatFun& a, const RatFun& b) { return a + b; }
inline RatFun rf_mul(const RatFun& a, const RatFun& b) { return a * b; }
inline RatFun rf_neg(const RatFun& a) { return -a; }
inline RatFun rf_inv(const RatFun& a) { return a.inverse(); }
inline RatFun rf_scale(const RatFun& a, const Poly& p) { return a.scaled(p); }

}  // namespace qbd

#endif  // QBD_RATFUN_HPP
