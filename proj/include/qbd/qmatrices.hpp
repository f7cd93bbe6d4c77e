#ifndef QBD_QMATRICES_HPP
#define QBD_QMATRICES_HPP

#include "qbd/matrix.hpp"
#include "qbd/poly.hpp"
#include "qbd/ratfun.hpp"
#include "qbd/tree.hpp"

namespace qbd {

/// q-bipartite distance matrix: p x p, rows l_1..l_p, cols r_1..r_p, entry
/// [dist(l_i, r_j)]_q.
PolyMat build_qB(const MatchedTree& mt);

/// Exponential bipartite distance matrix: entry q^dist(l_i, r_j), L x R.
PolyMat build_E(const MatchedTree& mt);

/// q-bipartite Laplacian: p x p, rows r_1..r_p, cols l_1..l_p.
///
///   (i, i):                    d(r_i)_q d(l_i)_q - q^2
///   r_i-l_j odd alternating:   d(r_i)_q d(l_j)_q
///   r_i-l_j even alternating: -d(r_i)_q d(l_j)_q
///   r_i ~ l_j, i != j:        -q^2
///   otherwise                  0
PolyMat build_qL(const MatchedTree& mt);

// Full n x n q-distance and exponential distance matrices of any tree.
PolyMat build_full_qD(const Tree& t);
PolyMat build_full_eD(const Tree& t);

/// q-signed degree vector at v, indexed by the side opposite to v: entry i is
/// +d(u_i)_q / -d(u_i)_q for an odd / even alternating v-u_i path, else 0.
PolyVec qsigned_degree_vector(const MatchedTree& mt, Vertex v);

// tau(v) = (1 - d(v)) (1 + diff(v)) q^2 - diff(v), restricted to L and R.
struct TauVectors {
  PolyVec l;
  PolyVec r;
};
TauVectors qtau(const MatchedTree& mt);

/// (-1)^(p-1) det(qB) / (q^(p-1) (1+q)^(p-1)). Throws NotDivisible if the
/// quotient is not a polynomial.
Poly bdq_det(const MatchedTree& mt);

/// bd_q by peeling pendant P2s down to P2 and replaying
/// bd(T + P2 at v) = bd(T) + (1 + q)(1 + diff_T(v)).
Poly bdq_recursive(const MatchedTree& mt);

/// qL / (q (1 - q^2)); R x L.
RatMat inverse_E_formula(const MatchedTree& mt);

/// -qL / (q (1 + q)) + tau_r tau_l^t / (q bd_q); R x L. Throws BdqZero.
RatMat inverse_qB_formula(const MatchedTree& mt);
RatMat inverse_qB_formula(const MatchedTree& mt, const Poly& bdq);

/// -1/2 L + tau_r tau_l^t / bd at q = 1, the inverse of the bipartite
/// distance matrix. Throws BdqZero when bd = 0.
QMat inverse_B_q1(const MatchedTree& mt);

// The bipartite Laplacian (qL at q = 1) and bipartite distance matrix.
IntMat laplacian_q1(const MatchedTree& mt);
IntMat distance_q1(const MatchedTree& mt);

/// Entrywise exact evaluation. Throws PoleAtPoint naming the entry.
QMat eval_matrix(const PolyMat& m, const Rational& q0);
QMat eval_matrix(const RatMat& m, const Rational& q0);

}  // namespace qbd

#endif  // QBD_QMATRICES_HPP
