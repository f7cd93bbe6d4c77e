#ifndef QBD_TESTS_FIXTURES_HPP
#define QBD_TESTS_FIXTURES_HPP

#include "qbd/poly.hpp"
#include "qbd/ratfun.hpp"
#include "qbd/tree.hpp"

namespace fixtures {

inline qbd::MatchedTree p2() { return qbd::match(qbd::Tree::path(2)); }

// P4 grown from P2 at l1: path 1-0-2-3 with l1=0, r1=1, r2=2, l2=3.
inline qbd::MatchedTree p4() {
  const auto base = p2();
  return qbd::attach_p2(base, base.l(0));
}

// Path 0-1-2-3 with the standard labeling l1=0, r1=1, l2=2, r2=3.
inline qbd::MatchedTree p4_path() { return qbd::match(qbd::Tree::path(4)); }

// P6 grown from p4() at the leaf l2.
inline qbd::MatchedTree p6() {
  const auto base = p4();
  return qbd::attach_p2(base, base.l(1));
}

inline qbd::Poly q() { return qbd::Poly::q(); }

inline qbd::RatFun rf(qbd::Poly num, qbd::Poly den) { return qbd::RatFun(std::move(num), std::move(den)); }

}  // namespace fixtures

#endif  // QBD_TESTS_FIXTURES_HPP
