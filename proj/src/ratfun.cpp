#include "qbd/ratfun.hpp"

#include <utility>

#include "qbd/error.hpp"

namespace qbd {

RatFun::RatFun(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw Error(ErrorCode::DivisionByZero, "zero denominator");
  canonicalize();
}

void RatFun::canonicalize() {
  if (num_.is_zero()) {
    den_ = Poly::constant(1);
    return;
  }
  if (den_.degree() > 0) {
    Poly g = gcd(num_, den_);
    if (g.degree() > 0) {
      num_ = divexact(num_, g);
      den_ = divexact(den_, g);
    }
  }
  Integer c;
  Integer cn = num_.content();
  Integer cd = den_.content();
  mpz_gcd(c.get_mpz_t(), cn.get_mpz_t(), cd.get_mpz_t());
  if (den_.leading() < 0) c = -c;
  if (c != 1) {
    num_ = divexact(num_, Poly::constant(c));
    den_ = divexact(den_, Poly::constant(c));
  }
}

RatFun& RatFun::operator+=(const RatFun& other) {
  if (other.is_zero()) return *this;
  if (is_zero()) return *this = other;
  if (den_ == other.den_) {
    num_ += other.num_;
  } else {
    num_ = num_ * other.den_ + other.num_ * den_;
    den_ *= other.den_;
  }
  canonicalize();
  return *this;
}

RatFun& RatFun::operator-=(const RatFun& other) { return *this += -other; }

RatFun& RatFun::operator*=(const RatFun& other) {
  if (is_zero()) return *this;
  if (other.is_zero()) return *this = RatFun();
  num_ *= other.num_;
  den_ *= other.den_;
  canonicalize();
  return *this;
}

RatFun& RatFun::operator/=(const RatFun& other) { return *this *= other.inverse(); }

RatFun RatFun::operator-() const {
  RatFun r = *this;
  r.num_ = -r.num_;
  return r;
}

RatFun RatFun::inverse() const {
  if (is_zero()) throw Error(ErrorCode::DivisionByZero, "inverse of zero rational function");
  return RatFun(den_, num_);
}

Rational RatFun::eval(const Rational& x) const {
  Rational d = den_.eval(x);
  if (d == 0) {
    throw Error(ErrorCode::PoleAtPoint,
                "denominator " + den_.to_string() + " vanishes at q = " + format_rational(x));
  }
  Rational r = num_.eval(x) / d;
  return r;
}

std::string RatFun::to_string() const {
  if (is_poly()) return num_.to_string();
  return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

}  // namespace qbd
