#include "qbd/poly.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "qbd/error.hpp"

namespace qbd {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotDivisible: return "NotDivisible";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::PoleAtPoint: return "PoleAtPoint";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NotATree: return "NotATree";
    case ErrorCode::NotNonsingular: return "NotNonsingular";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::IndexKindMismatch: return "IndexKindMismatch";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::BdqZero: return "BdqZero";
    case ErrorCode::DegreeTooSmall: return "DegreeTooSmall";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

namespace {

bool is_decimal_integer(const std::string& s) {
  std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
  if (i == s.size()) return false;
  return std::all_of(s.begin() + static_cast<long>(i), s.end(),
                     [](char c) { return c >= '0' && c <= '9'; });
}

Integer parse_integer(const std::string& s) {
  if (!is_decimal_integer(s)) {
    throw Error(ErrorCode::ParseError, "not a decimal integer: '" + s + "'");
  }
  return Integer(s[0] == '+' ? s.substr(1) : s, 10);
}

}  // namespace

Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  Rational r;
  if (slash == std::string::npos) {
    r = Rational(parse_integer(text));
  } else {
    Integer num = parse_integer(text.substr(0, slash));
    Integer den = parse_integer(text.substr(slash + 1));
    if (den == 0) throw Error(ErrorCode::ParseError, "zero denominator in '" + text + "'");
    r = Rational(num, den);
    r.canonicalize();
  }
  return r;
}

std::string format_rational(const Rational& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

Poly::Poly(std::vector<Integer> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

Poly::Poly(std::initializer_list<long> coeffs) {
  coeffs_.reserve(coeffs.size());
  for (long c : coeffs) coeffs_.emplace_back(c);
  trim();
}

Poly Poly::constant(const Integer& c) { return Poly(std::vector<Integer>{c}); }

Poly Poly::monomial(const Integer& c, std::size_t degree) {
  std::vector<Integer> v(degree + 1);
  v[degree] = c;
  return Poly(std::move(v));
}

void Poly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Poly& Poly::operator+=(const Poly& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size());
  for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  trim();
  return *this;
}

Poly& Poly::operator-=(const Poly& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size());
  for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  trim();
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Integer> out(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
      mpz_addmul(out[i + j].get_mpz_t(), a.coeffs_[i].get_mpz_t(), b.coeffs_[j].get_mpz_t());
    }
  }
  return Poly(std::move(out));
}

Poly& Poly::operator*=(const Poly& other) { return *this = *this * other; }

Poly& Poly::operator*=(const Integer& c) {
  if (c == 0) {
    coeffs_.clear();
    return *this;
  }
  for (auto& x : coeffs_) x *= c;
  return *this;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& x : r.coeffs_) x = -x;
  return r;
}

Poly Poly::shifted(std::size_t k) const {
  if (is_zero() || k == 0) return *this;
  std::vector<Integer> v(k);
  v.insert(v.end(), coeffs_.begin(), coeffs_.end());
  return Poly(std::move(v));
}

Poly Poly::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<Integer> v(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) v[i - 1] = coeffs_[i] * static_cast<unsigned long>(i);
  return Poly(std::move(v));
}

Integer Poly::content() const {
  Integer g = 0;
  for (const auto& c : coeffs_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

Poly Poly::primitive_part() const {
  if (is_zero()) return {};
  Integer g = content();
  if (leading() < 0) g = -g;
  Poly r = *this;
  for (auto& x : r.coeffs_) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  return r;
}

Integer Poly::eval(const Integer& x) const {
  Integer acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc *= x;
    acc += *it;
  }
  return acc;
}

Rational Poly::eval(const Rational& x) const {
  // Horner on the homogenised form keeps every step integral.
  const long d = std::max<long>(degree(), 0);
  Rational r(eval_homogeneous(x.get_num(), x.get_den(), d));
  Integer den;
  mpz_pow_ui(den.get_mpz_t(), x.get_den().get_mpz_t(), static_cast<unsigned long>(d));
  r /= Rational(den);
  return r;
}

Integer Poly::eval_homogeneous(const Integer& a, const Integer& b, long d) const {
  if (d < degree()) {
    throw Error(ErrorCode::InvalidArgument, "homogenising degree below polynomial degree");
  }
  // sum_i c_i a^i b^(d-i) via Horner in a with a running power of b.
  Integer acc = 0;
  Integer bpow = 1;
  for (long i = degree(); i >= 0; --i) {
    acc *= a;
    acc += coeffs_[static_cast<std::size_t>(i)] * bpow;
    bpow *= b;
  }
  // acc = sum c_i a^i b^(deg - i); lift to degree d.
  if (!is_zero() && d > degree()) {
    Integer extra;
    mpz_pow_ui(extra.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(d - degree()));
    acc *= extra;
  }
  return acc;
}

std::string Poly::to_string(char var) const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const Integer& c = coeffs_[i];
    if (c == 0) continue;
    Integer mag = abs(c);
    if (first) {
      if (c < 0) out << "-";
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (i == 0) {
      out << mag.get_str();
      continue;
    }
    if (mag != 1) out << mag.get_str() << "*";
    out << var;
    if (i > 1) out << "^" << i;
  }
  return out.str();
}

Poly pow(const Poly& base, unsigned exponent) {
  Poly result = Poly::constant(1);
  Poly b = base;
  while (exponent > 0) {
    if (exponent & 1U) result *= b;
    exponent >>= 1U;
    if (exponent > 0) b *= b;
  }
  return result;
}

Poly qint(unsigned k) { return Poly(std::vector<Integer>(k, Integer(1))); }

Poly qdeg(unsigned k) {
  if (k == 0) throw Error(ErrorCode::InvalidArgument, "qdeg requires k >= 1");
  return Poly(std::vector<Integer>{Integer(1), Integer(0), Integer(k - 1)});
}

Poly divexact(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw Error(ErrorCode::DivisionByZero, "divexact by zero polynomial");
  if (a.is_zero()) return {};
  if (a.degree() < b.degree()) {
    throw Error(ErrorCode::NotDivisible, a.to_string() + " by " + b.to_string());
  }
  std::vector<Integer> rem = a.coeffs();
  const auto db = static_cast<std::size_t>(b.degree());
  const Integer& lc = b.leading();
  std::vector<Integer> quot(rem.size() - db);
  for (std::size_t k = quot.size(); k-- > 0;) {
    const Integer& top = rem[k + db];
    if (top == 0) continue;
    if (!mpz_divisible_p(top.get_mpz_t(), lc.get_mpz_t())) {
      throw Error(ErrorCode::NotDivisible, a.to_string() + " by " + b.to_string());
    }
    Integer qk;
    mpz_divexact(qk.get_mpz_t(), top.get_mpz_t(), lc.get_mpz_t());
    for (std::size_t j = 0; j <= db; ++j) {
      mpz_submul(rem[k + j].get_mpz_t(), qk.get_mpz_t(), b.coeffs()[j].get_mpz_t());
    }
    quot[k] = std::move(qk);
  }
  for (const auto& r : rem) {
    if (r != 0) throw Error(ErrorCode::NotDivisible, a.to_string() + " by " + b.to_string());
  }
  return Poly(std::move(quot));
}

PseudoDivision pseudo_divide(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw Error(ErrorCode::DivisionByZero, "pseudo-division by zero polynomial");
  if (a.degree() < b.degree()) return {Poly{}, a, Integer(1)};
  const auto db = static_cast<std::size_t>(b.degree());
  const Integer lc = abs(b.leading());
  const bool negative_lc = b.leading() < 0;
  std::vector<Integer> rem = a.coeffs();
  std::vector<Integer> quot(rem.size() - db);
  Integer scale = 1;
  for (std::size_t k = quot.size(); k-- > 0;) {
    // Scale everything by |lc| so the next leading term divides exactly.
    for (auto& r : rem) r *= lc;
    for (auto& x : quot) x *= lc;
    scale *= lc;
    Integer qk = rem[k + db] / lc;
    if (negative_lc) qk = -qk;
    for (std::size_t j = 0; j <= db; ++j) {
      mpz_submul(rem[k + j].get_mpz_t(), qk.get_mpz_t(), b.coeffs()[j].get_mpz_t());
    }
    quot[k] = std::move(qk);
  }
  return {Poly(std::move(quot)), Poly(std::move(rem)), scale};
}

Poly gcd(const Poly& a, const Poly& b) {
  if (a.is_zero() && b.is_zero()) {
    throw Error(ErrorCode::InvalidArgument, "gcd(0, 0) is undefined");
  }
  Poly x = a.primitive_part();
  Poly y = b.primitive_part();
  if (x.degree() < y.degree()) std::swap(x, y);
  while (!y.is_zero()) {
    Poly r = pseudo_divide(x, y).remainder;
    x = std::move(y);
    y = r.primitive_part();
  }
  return x.primitive_part();
}

Poly squarefree_part(const Poly& p) {
  if (p.is_zero()) throw Error(ErrorCode::InvalidArgument, "squarefree part of zero");
  if (p.degree() <= 0) return Poly::constant(1);
  Poly g = gcd(p, p.derivative());
  Poly pp = p.primitive_part();
  return divexact(pp, g).primitive_part();
}

}  // namespace qbd
