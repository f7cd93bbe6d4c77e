#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "qbd/error.hpp"
#include "qbd/poly.hpp"
#include "qbd/ratfun.hpp"

using namespace qbd;
using fixtures::q;
using fixtures::rf;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an Error";
  return ErrorCode::InvalidArgument;
}

Poly random_poly(std::mt19937_64& rng, int max_degree) {
  std::uniform_int_distribution<int> deg(0, max_degree);
  std::uniform_int_distribution<long> coef(-5, 5);
  std::vector<Integer> c(static_cast<std::size_t>(deg(rng) + 1));
  for (auto& x : c) x = coef(rng);
  return Poly(std::move(c));
}

}  // namespace

TEST(Poly, ZeroIsEmptyAndTrimmed) {
  EXPECT_TRUE(Poly().is_zero());
  EXPECT_EQ(Poly().degree(), -1);
  const Poly p{1, 2, 0, 0};
  EXPECT_EQ(p.coeffs().size(), 2U);
  EXPECT_EQ(p.degree(), 1);
  EXPECT_TRUE((Poly{0, 0}).is_zero());
}

TEST(Poly, QIntegers) {
  EXPECT_EQ(qint(0), Poly());
  EXPECT_EQ(qint(1), Poly{1});
  EXPECT_EQ(qint(3), (Poly{1, 1, 1}));
}

TEST(Poly, QDegrees) {
  EXPECT_EQ(qdeg(1), Poly{1});
  EXPECT_EQ(qdeg(2), (Poly{1, 0, 1}));
  EXPECT_EQ(qdeg(3), (Poly{1, 0, 2}));
  EXPECT_EQ(code_of([] { qdeg(0); }), ErrorCode::InvalidArgument);
}

TEST(Poly, RingExamples) {
  EXPECT_EQ((Poly{1, 1}) * (Poly{1, -1}), (Poly{1, 0, -1}));
  EXPECT_TRUE((qint(2) + (-qint(2))).is_zero());
  EXPECT_EQ(qdeg(2) * qint(1), (Poly{1, 0, 1}));
}

TEST(Poly, ExactDivision) {
  EXPECT_EQ(divexact(Poly{1, 0, -1}, Poly{1, 1}), (Poly{1, -1}));
  EXPECT_EQ(divexact(Poly{0, 1, 1}, q()), (Poly{1, 1}));
  EXPECT_EQ(code_of([] { divexact(Poly{1, 1}, Poly{1, -1}); }), ErrorCode::NotDivisible);
  EXPECT_EQ(code_of([] { divexact(Poly{1, 1}, Poly()); }), ErrorCode::DivisionByZero);
  EXPECT_EQ(code_of([] { divexact(Poly{1, 1}, Poly{2}); }), ErrorCode::NotDivisible);
}

TEST(Poly, Gcd) {
  EXPECT_EQ(gcd(Poly{1, 0, -1}, Poly{1, 1}), (Poly{1, 1}));
  EXPECT_EQ(gcd(q(), Poly{1, 1}), Poly{1});
  EXPECT_EQ(gcd(Poly{2, 2}, Poly{4, 4}), (Poly{1, 1}));
  EXPECT_EQ(code_of([] { gcd(Poly(), Poly()); }), ErrorCode::InvalidArgument);
}

TEST(Poly, GcdMatchesContentTimesPrimitivePart) {
  const Poly p{6, 12, 6};
  EXPECT_EQ(p.content(), 6);
  EXPECT_EQ(p.primitive_part(), (Poly{1, 2, 1}));
  EXPECT_EQ(Poly::constant(p.content()) * p.primitive_part(), p);
  EXPECT_EQ((Poly{-2, -4}).primitive_part(), (Poly{1, 2}));
}

TEST(Poly, Evaluation) {
  EXPECT_EQ(qint(3).eval(Rational(1)), Rational(3));
  EXPECT_EQ((Poly{1, 0, -1}).eval(Rational(1)), Rational(0));
  EXPECT_EQ((Poly{1, 1, 1}).eval(Rational(1, 2)), Rational(7, 4));
  EXPECT_EQ((Poly{1, 1, 1}).eval_homogeneous(1, 2, 3), Integer(14));
  EXPECT_EQ(code_of([] { (Poly{1, 1, 1}).eval_homogeneous(1, 2, 1); }), ErrorCode::InvalidArgument);
}

TEST(Poly, QScalarsSpecializeToIntegers) {
  for (unsigned k = 1; k <= 40; ++k) {
    EXPECT_EQ(qint(k).eval(Rational(1)), Rational(k));
    EXPECT_EQ(qdeg(k).eval(Rational(1)), Rational(k));
  }
}

TEST(Poly, TelescopingIdentity) {
  for (unsigned k = 0; k <= 64; ++k) {
    EXPECT_EQ(qint(k) * (Poly{1, -1}), (Poly{1}) - Poly::monomial(1, k)) << "k=" << k;
  }
}

TEST(Poly, RingAxiomsOnRandomPolynomials) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const Poly a = random_poly(rng, 5);
    const Poly b = random_poly(rng, 5);
    const Poly c = random_poly(rng, 5);
    EXPECT_EQ(a + b, b + a);
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_TRUE((a - a).is_zero());
    if (!b.is_zero()) {
      EXPECT_EQ(divexact(a * b, b), a);
    }
  }
}

TEST(Poly, PseudoDivisionInvariant) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const Poly a = random_poly(rng, 6);
    Poly b = random_poly(rng, 3);
    if (b.is_zero()) continue;
    const auto d = pseudo_divide(a, b);
    EXPECT_GT(d.scale, 0);
    EXPECT_EQ(Poly::constant(d.scale) * a, d.quotient * b + d.remainder);
    EXPECT_LT(d.remainder.degree(), b.degree());
  }
}

TEST(Poly, SquarefreePart) {
  const Poly x_minus_1{-1, 1};
  EXPECT_EQ(squarefree_part(x_minus_1 * x_minus_1), x_minus_1);
  const Poly x{0, 1};
  EXPECT_EQ(squarefree_part(x * x * x * (Poly{2, 1})), x * (Poly{2, 1}));
}

TEST(Poly, RationalParsing) {
  EXPECT_EQ(parse_rational("5/3"), Rational(5, 3));
  EXPECT_EQ(parse_rational("-2"), Rational(-2));
  EXPECT_EQ(parse_rational("4/6"), Rational(2, 3));
  EXPECT_EQ(format_rational(Rational(1, 2)), "1/2");
  EXPECT_EQ(format_rational(Rational(3)), "3");
  EXPECT_EQ(code_of([] { parse_rational("1.5"); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { parse_rational("1/0"); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { parse_rational(""); }), ErrorCode::ParseError);
}

TEST(RatFun, Examples) {
  EXPECT_EQ(rf_inv(RatFun(q())), rf(Poly{1}, q()));
  EXPECT_EQ(rf_add(rf(Poly{1}, Poly{1, 1}), rf(q(), Poly{1, 1})), RatFun(Poly{1}));
  EXPECT_EQ(rf_mul(RatFun(Poly{1, 0, -1}), rf(Poly{1}, Poly{1, 1})), RatFun(Poly{1, -1}));
  EXPECT_EQ(code_of([] { rf(Poly{1}, Poly{1, -1}).eval(Rational(1)); }), ErrorCode::PoleAtPoint);
  EXPECT_EQ(code_of([] { RatFun().inverse(); }), ErrorCode::DivisionByZero);
  EXPECT_EQ(code_of([] { rf(Poly{1}, Poly()); }), ErrorCode::DivisionByZero);
}

TEST(RatFun, CanonicalForm) {
  const RatFun a = rf(Poly{2, 2}, Poly{4, 0, -4});  // 2(1+q) / 4(1-q^2)
  EXPECT_EQ(a.num(), Poly{-1});
  EXPECT_EQ(a.den(), (Poly{-2, 2}));
  EXPECT_EQ(rf(Poly{1}, Poly{0, 2}).den(), (Poly{0, 2}));
  EXPECT_EQ(RatFun().den(), Poly{1});
  EXPECT_EQ(rf(Poly(), Poly{3, 1}), RatFun());
  EXPECT_GT(rf(Poly{1}, Poly{0, -1}).den().leading(), 0);
  const RatFun again(a.num(), a.den());
  EXPECT_EQ(again.num(), a.num());
  EXPECT_EQ(again.den(), a.den());
}

TEST(RatFun, ArithmeticAgreesWithEvaluation) {
  std::mt19937_64 rng(3);
  const std::vector<Rational> points{Rational(2), Rational(-3, 2), Rational(5, 7), Rational(4)};
  int compared = 0;
  for (int trial = 0; trial < 150; ++trial) {
    Poly an = random_poly(rng, 3), ad = random_poly(rng, 3), bn = random_poly(rng, 3), bd = random_poly(rng, 3);
    if (ad.is_zero() || bd.is_zero()) continue;
    const RatFun a(an, ad), b(bn, bd);
    for (const auto& x : points) {
      if (ad.eval(x) == 0 || bd.eval(x) == 0) continue;
      EXPECT_EQ((a * b).eval(x), a.eval(x) * b.eval(x));
      EXPECT_EQ((a + b).eval(x), a.eval(x) + b.eval(x));
      EXPECT_EQ((-a).eval(x), -a.eval(x));
      if (!a.is_zero() && an.eval(x) != 0) {
        EXPECT_EQ(a.inverse().eval(x), 1 / a.eval(x));
      }
      ++compared;
    }
  }
  EXPECT_GT(compared, 100);
}
