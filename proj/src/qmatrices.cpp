#include "qbd/qmatrices.hpp"

#include <string>

#include "qbd/error.hpp"
#include "qbd/exactla.hpp"

namespace qbd {

std::string_view to_string(IndexKind kind) {
  switch (kind) {
    case IndexKind::L: return "L";
    case IndexKind::R: return "R";
    case IndexKind::Vertex: return "Vertex";
    case IndexKind::Plain: return "Plain";
  }
  return "Plain";
}

RatMat to_ratmat(const PolyMat& m) {
  return m.map([](const Poly& x) { return RatFun(x); });
}

namespace {

unsigned udeg(const MatchedTree& mt, Vertex v) { return static_cast<unsigned>(mt.degree(v)); }

const Poly& q_squared() {
  static const Poly q2 = Poly::monomial(1, 2);
  return q2;
}

template <class Entry>
PolyMat bipartite_distance_matrix(const MatchedTree& mt, Entry entry) {
  const auto p = static_cast<std::size_t>(mt.p());
  const DistanceTable dist(mt.tree());
  PolyMat m(p, p, IndexKind::L, IndexKind::R);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < p; ++j)
      m(i, j) = entry(static_cast<unsigned>(dist(mt.l(static_cast<int>(i)), mt.r(static_cast<int>(j)))));
  return m;
}

template <class Entry>
PolyMat full_distance_matrix(const Tree& t, Entry entry) {
  const auto n = static_cast<std::size_t>(t.size());
  const DistanceTable dist(t);
  PolyMat m(n, n, IndexKind::Vertex, IndexKind::Vertex);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      m(i, j) = entry(static_cast<unsigned>(dist(static_cast<Vertex>(i), static_cast<Vertex>(j))));
  return m;
}

Poly q_monomial(unsigned k) { return Poly::monomial(1, k); }

}  // namespace

PolyMat build_qB(const MatchedTree& mt) { return bipartite_distance_matrix(mt, qint); }

PolyMat build_E(const MatchedTree& mt) { return bipartite_distance_matrix(mt, q_monomial); }

PolyMat build_full_qD(const Tree& t) { return full_distance_matrix(t, qint); }

PolyMat build_full_eD(const Tree& t) { return full_distance_matrix(t, q_monomial); }

PolyMat build_qL(const MatchedTree& mt) {
  const int p = mt.p();
  PolyMat m(static_cast<std::size_t>(p), static_cast<std::size_t>(p), IndexKind::R, IndexKind::L);
  for (int i = 0; i < p; ++i) {
    const Vertex ri = mt.r(i);
    const auto classes = classify_paths_from(mt, ri);
    const Poly dr = qdeg(udeg(mt, ri));
    for (int j = 0; j < p; ++j) {
      const Vertex lj = mt.l(j);
      const PathClass& pc = classes[static_cast<std::size_t>(lj)];
      Poly& entry = m(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
      if (i == j) {
        entry = dr * qdeg(udeg(mt, lj)) - q_squared();
        continue;
      }
      if (pc.adjacent && pc.kind != Alternation::NotAlternating) {
        // A single non-matching edge never alternates; reaching here means
        // the path classification is broken.
        throw Error(ErrorCode::InvalidArgument, "overlapping Laplacian cases at (" +
                                                    std::to_string(i + 1) + "," +
                                                    std::to_string(j + 1) + ")");
      }
      switch (pc.kind) {
        case Alternation::OddAlternating: entry = dr * qdeg(udeg(mt, lj)); break;
        case Alternation::EvenAlternating: entry = -(dr * qdeg(udeg(mt, lj))); break;
        case Alternation::NotAlternating:
          if (pc.adjacent) entry = -q_squared();
          break;
      }
    }
  }
  return m;
}

PolyVec qsigned_degree_vector(const MatchedTree& mt, Vertex v) {
  const Side other = opposite(mt.side(v));
  const auto classes = classify_paths_from(mt, v);
  PolyVec mu{other == Side::L ? IndexKind::L : IndexKind::R,
             std::vector<Poly>(static_cast<std::size_t>(mt.p()))};
  for (int i = 0; i < mt.p(); ++i) {
    const Vertex u = mt.vertex_of(other, i);
    switch (classes[static_cast<std::size_t>(u)].kind) {
      case Alternation::OddAlternating: mu[static_cast<std::size_t>(i)] = qdeg(udeg(mt, u)); break;
      case Alternation::EvenAlternating: mu[static_cast<std::size_t>(i)] = -qdeg(udeg(mt, u)); break;
      case Alternation::NotAlternating: break;
    }
  }
  return mu;
}

TauVectors qtau(const MatchedTree& mt) {
  const auto d = diffs(mt);
  auto tau_at = [&](Vertex v) {
    const long dv = d[static_cast<std::size_t>(v)];
    const long deg = mt.degree(v);
    return Poly{-dv, 0, (1 - deg) * (1 + dv)};
  };
  TauVectors t{{IndexKind::L, {}}, {IndexKind::R, {}}};
  for (int i = 0; i < mt.p(); ++i) {
    t.l.entries.push_back(tau_at(mt.l(i)));
    t.r.entries.push_back(tau_at(mt.r(i)));
  }
  return t;
}

Poly bdq_det(const MatchedTree& mt) {
  const Poly det = det_bareiss(build_qB(mt));
  const auto k = static_cast<unsigned>(mt.p() - 1);
  const Poly factor = pow(Poly{0, 1}, k) * pow(Poly{1, 1}, k);
  Poly bd = divexact(det, factor);
  return k % 2 == 1 ? -bd : bd;
}

Poly bdq_recursive(const MatchedTree& mt) {
  std::vector<int> site_diffs;
  MatchedTree current = mt;
  while (current.p() >= 2) {
    Detachment d = detach_p2(current);
    site_diffs.push_back(diff(d.smaller, d.site));
    current = std::move(d.smaller);
  }
  Poly bd = Poly::constant(1);
  const Poly one_plus_q{1, 1};
  for (auto it = site_diffs.rbegin(); it != site_diffs.rend(); ++it) {
    bd += one_plus_q * Integer(1 + *it);
  }
  return bd;
}

RatMat inverse_E_formula(const MatchedTree& mt) {
  const RatFun s = RatFun(Poly::constant(1), Poly{0, 1, 0, -1});
  return to_ratmat(build_qL(mt)).map([&s](const RatFun& x) { return x * s; });
}

RatMat inverse_qB_formula(const MatchedTree& mt) { return inverse_qB_formula(mt, bdq_det(mt)); }

RatMat inverse_qB_formula(const MatchedTree& mt, const Poly& bdq) {
  if (bdq.is_zero()) throw Error(ErrorCode::BdqZero, "bd_q vanishes identically");
  const RatFun lap_scale(Poly::constant(-1), Poly{0, 1, 1});
  const RatFun rank_one_scale(Poly::constant(1), Poly{0, 1} * bdq);
  const RatMat lap = to_ratmat(build_qL(mt));
  const TauVectors tau = qtau(mt);
  RatMat out(lap.rows(), lap.cols(), IndexKind::R, IndexKind::L);
  for (std::size_t i = 0; i < out.rows(); ++i)
    for (std::size_t j = 0; j < out.cols(); ++j)
      out(i, j) = lap(i, j) * lap_scale + RatFun(tau.r[i] * tau.l[j]) * rank_one_scale;
  return out;
}

IntMat laplacian_q1(const MatchedTree& mt) {
  return build_qL(mt).map([](const Poly& x) { return x.eval(Integer(1)); });
}

IntMat distance_q1(const MatchedTree& mt) {
  return build_qB(mt).map([](const Poly& x) { return x.eval(Integer(1)); });
}

QMat inverse_B_q1(const MatchedTree& mt) {
  const Rational one(1);
  const Poly bdq = bdq_det(mt);
  const Rational bd = bdq.eval(one);
  if (bd == 0) throw Error(ErrorCode::BdqZero, "bd vanishes at q = 1");
  const QMat lap = eval_matrix(build_qL(mt), one);
  const TauVectors tau = qtau(mt);
  QMat out(lap.rows(), lap.cols(), IndexKind::R, IndexKind::L);
  for (std::size_t i = 0; i < out.rows(); ++i) {
    const Rational tr = tau.r[i].eval(one);
    for (std::size_t j = 0; j < out.cols(); ++j) {
      out(i, j) = -lap(i, j) / 2 + tr * tau.l[j].eval(one) / bd;
    }
  }
  return out;
}

namespace {

template <class M>
QMat eval_entries(const M& m, const Rational& q0) {
  QMat out(m.rows(), m.cols(), m.row_kind(), m.col_kind());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      try {
        out(i, j) = m(i, j).eval(q0);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::PoleAtPoint) throw;
        throw Error(ErrorCode::PoleAtPoint, "entry (" + std::to_string(i + 1) + "," +
                                                std::to_string(j + 1) + "): " + e.what());
      }
    }
  }
  return out;
}

}  // namespace

QMat eval_matrix(const PolyMat& m, const Rational& q0) { return eval_entries(m, q0); }

QMat eval_matrix(const RatMat& m, const Rational& q0) { return eval_entries(m, q0); }

}  // namespace qbd
