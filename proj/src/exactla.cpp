#include "qbd/exactla.hpp"

#include <vector>

#include "qbd/error.hpp"

namespace qbd {

namespace {

long rf_weight(const RatFun& x) { return x.num().degree() + x.den().degree(); }

}  // namespace

RatMat inverse_gauss(const RatMat& m) {
  if (!m.square()) throw Error(ErrorCode::DimensionMismatch, "inverse of a non-square matrix");
  const std::size_t n = m.rows();
  RatMat a = m;
  RatMat inv(n, n, m.col_kind(), m.row_kind());
  for (std::size_t i = 0; i < n; ++i) inv(i, i) = one<RatFun>();
  for (std::size_t k = 0; k < n; ++k) {
    std::optional<std::size_t> pivot;
    for (std::size_t i = k; i < n; ++i) {
      if (a(i, k).is_zero()) continue;
      if (!pivot || rf_weight(a(i, k)) < rf_weight(a(*pivot, k))) pivot = i;
    }
    if (!pivot) {
      throw Error(ErrorCode::SingularMatrix, "no pivot in column " + std::to_string(k + 1));
    }
    if (*pivot != k) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(k, j), a(*pivot, j));
        std::swap(inv(k, j), inv(*pivot, j));
      }
    }
    const RatFun scale = a(k, k).inverse();
    for (std::size_t j = 0; j < n; ++j) {
      if (!a(k, j).is_zero()) a(k, j) *= scale;
      if (!inv(k, j).is_zero()) inv(k, j) *= scale;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || a(i, k).is_zero()) continue;
      const RatFun factor = a(i, k);
      for (std::size_t j = 0; j < n; ++j) {
        if (!a(k, j).is_zero()) a(i, j) -= factor * a(k, j);
        if (!inv(k, j).is_zero()) inv(i, j) -= factor * inv(k, j);
      }
    }
  }
  return inv;
}

RatMat inverse_gauss(const PolyMat& m) { return inverse_gauss(to_ratmat(m)); }

IntMat adjugate_int(const IntMat& m) {
  if (!m.square()) throw Error(ErrorCode::DimensionMismatch, "adjugate of a non-square matrix");
  const std::size_t n = m.rows();
  IntMat adj(n, n, m.col_kind(), m.row_kind());
  if (n == 1) {
    adj(0, 0) = 1;
    return adj;
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      IntMat minor(n - 1, n - 1);
      for (std::size_t a = 0, ma = 0; a < n; ++a) {
        if (a == i) continue;
        for (std::size_t b = 0, mb = 0; b < n; ++b) {
          if (b == j) continue;
          minor(ma, mb++) = m(a, b);
        }
        ++ma;
      }
      Integer c = det_bareiss(minor);
      adj(j, i) = (i + j) % 2 == 0 ? c : Integer(-c);
    }
  }
  return adj;
}

std::size_t rank_int(const IntMat& m) {
  IntMat a = m;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < a.cols() && rank < a.rows(); ++col) {
    std::size_t pivot = rank;
    while (pivot < a.rows() && a(pivot, col) == 0) ++pivot;
    if (pivot == a.rows()) continue;
    for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(rank, j), a(pivot, j));
    for (std::size_t i = rank + 1; i < a.rows(); ++i) {
      if (a(i, col) == 0) continue;
      const Integer f = a(i, col);
      const Integer g = a(rank, col);
      for (std::size_t j = col; j < a.cols(); ++j) a(i, j) = a(i, j) * g - a(rank, j) * f;
    }
    ++rank;
  }
  return rank;
}

Poly charpoly_exact(const IntMat& m) {
  if (!m.square()) throw Error(ErrorCode::DimensionMismatch, "characteristic polynomial of a non-square matrix");
  const std::size_t n = m.rows();
  PolyMat lam(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      lam(i, j) = i == j ? Poly(std::vector<Integer>{Integer(-m(i, j)), Integer(1)})
                         : Poly::constant(Integer(-m(i, j)));
    }
  }
  return det_bareiss(std::move(lam));
}

bool annihilates(const IntMat& m, const Poly& p) {
  if (!m.square()) throw Error(ErrorCode::DimensionMismatch, "matrix polynomial of a non-square matrix");
  const std::size_t n = m.rows();
  // Powers of an R x L matrix only make sense as a plain linear map.
  IntMat plain(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) plain(i, j) = m(i, j);
  IntMat acc(n, n);
  for (long k = p.degree(); k >= 0; --k) {
    acc = mat_mul(acc, plain);
    for (std::size_t i = 0; i < n; ++i) acc(i, i) += p.coeffs()[static_cast<std::size_t>(k)];
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (acc(i, j) != 0) return false;
  return true;
}

namespace {

// Positive-content division only: signs must survive for Sturm counting.
Poly divide_positive_content(const Poly& p) {
  if (p.is_zero()) return p;
  const Integer c = p.content();
  return divexact(p, Poly::constant(c));
}

std::vector<Poly> sturm_sequence(const Poly& p) {
  std::vector<Poly> seq{divide_positive_content(p)};
  Poly d = divide_positive_content(p.derivative());
  if (d.is_zero()) return seq;
  seq.push_back(d);
  while (true) {
    const Poly& a = seq[seq.size() - 2];
    const Poly& b = seq.back();
    if (b.degree() == 0) break;
    // pseudo_divide scales by a positive factor, so -remainder keeps the
    // sign pattern of the classical sequence.
    Poly r = divide_positive_content(-pseudo_divide(a, b).remainder);
    if (r.is_zero()) break;
    seq.push_back(std::move(r));
  }
  return seq;
}

int sign_at(const Poly& p, const RootBound& x) {
  if (p.is_zero()) return 0;
  switch (x.kind) {
    case RootBound::Kind::PlusInfinity: return sgn(p.leading());
    case RootBound::Kind::MinusInfinity: return sgn(p.leading()) * (p.degree() % 2 == 0 ? 1 : -1);
    case RootBound::Kind::Finite: return sgn(p.eval(x.value));
  }
  return 0;
}

int variations(const std::vector<Poly>& seq, const RootBound& x) {
  int count = 0;
  int last = 0;
  for (const auto& s : seq) {
    const int v = sign_at(s, x);
    if (v == 0) continue;
    if (last != 0 && v != last) ++count;
    last = v;
  }
  return count;
}

}  // namespace

int count_real_roots(const Poly& p, const RootBound& lo, const RootBound& hi) {
  if (p.is_zero()) throw Error(ErrorCode::InvalidArgument, "root count of the zero polynomial");
  const auto seq = sturm_sequence(p);
  return variations(seq, lo) - variations(seq, hi);
}

ConjectureEvidence conjecture_evidence(const IntMat& m) {
  ConjectureEvidence ev;
  ev.charpoly = charpoly_exact(m);
  ev.squarefree = squarefree_part(ev.charpoly);
  ev.diagonalizable = annihilates(m, ev.squarefree);
  ev.real_root_count =
      count_real_roots(ev.squarefree, RootBound::minus_infinity(), RootBound::plus_infinity());
  // Roots in (-inf, 0] minus a root at 0 gives the strictly negative ones.
  int negative = count_real_roots(ev.squarefree, RootBound::minus_infinity(), RootBound::at(Rational(0)));
  if (ev.squarefree.coeff(0) == 0) --negative;
  ev.all_eigen_nonneg = ev.real_root_count == ev.squarefree.degree() && negative == 0;
  return ev;
}

}  // namespace qbd
