#ifndef QBD_VERIFY_HPP
#define QBD_VERIFY_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qbd/exactla.hpp"
#include "qbd/matrix.hpp"
#include "qbd/poly.hpp"
#include "qbd/ratfun.hpp"
#include "qbd/tree.hpp"

namespace qbd {

enum class CheckScope { SingleTree, PerVertex, AttachmentPair };

struct IdentityCheck {
  std::string_view name;
  std::string_view statement;
  CheckScope scope;
};

// Every named check, in the order run_suite executes them.
const std::vector<IdentityCheck>& identity_checks();

using Residual = std::variant<std::monostate, Poly, RatFun, Rational>;

/// Where an identity failed and by how much (lhs - rhs at that location).
struct Witness {
  std::string location;
  Residual residual;
  std::string detail;
};

struct CheckResult {
  std::string name;
  bool pass = true;
  std::optional<Witness> witness;

  static CheckResult ok(std::string name) { return {std::move(name), true, std::nullopt}; }
  static CheckResult fail(std::string name, Witness w) { return {std::move(name), false, std::move(w)}; }
};

struct VerificationReport {
  std::string tree_code;  // canonical code, raw bytes
  int vertices = 0;
  std::optional<int> p;   // absent for trees checked without a matching
  std::vector<CheckResult> checks;

  bool all_pass() const;
  std::size_t failures() const;
};

// Symbolic checks on one matched tree.
CheckResult check_det_E(const MatchedTree& mt);
CheckResult check_det_qL(const MatchedTree& mt);
CheckResult check_bdq(const MatchedTree& mt);
CheckResult check_sum_mu(const MatchedTree& mt);
CheckResult check_row_col_sums(const MatchedTree& mt);
CheckResult check_B_tau(const MatchedTree& mt);
CheckResult check_L_B_product(const MatchedTree& mt);
// Product with the closed-form inverse is I; with_oracle additionally
// compares the closed form against Gauss-Jordan entrywise.
CheckResult check_inverse_E(const MatchedTree& mt, bool with_oracle = true);
CheckResult check_inverse_qB(const MatchedTree& mt, bool with_oracle = true);
// Rebuilds qL, tau_r and bd_q after attaching a P2 at v and compares them
// with the update formulas assembled from mt.
CheckResult check_attach_update(const MatchedTree& mt, Vertex v);
// Splits at l_{pair} (degree >= 2, else DegreeTooSmall) and reassembles qL
// from the pieces' Laplacians and q-signed degree vectors.
CheckResult check_block_decomposition(const MatchedTree& mt, int pair);
CheckResult check_q1_properties(const MatchedTree& mt);
CheckResult check_full_dq_ed(const Tree& t);

struct SuiteOptions {
  bool oracle = true;
  bool attachments = true;
  bool blocks = true;
};

VerificationReport run_suite(const MatchedTree& mt, const SuiteOptions& options = {});

/// run_suite over every nonsingular tree with 2 <= 2p <= max_vertices,
/// ordered by (p, canonical code). threads = 0 uses hardware concurrency.
std::vector<VerificationReport> run_enumerated(int max_vertices, unsigned threads = 0,
                                               const SuiteOptions& options = {});

/// check_full_dq_ed over every tree with 2 <= n <= max_vertices.
std::vector<VerificationReport> run_full_matrices(int max_vertices, unsigned threads = 0);

/// The product identities evaluated exactly at rational points. Check names
/// carry the point, e.g. "B_tau@q=1/2".
VerificationReport run_evaluated(const MatchedTree& mt, const std::vector<Rational>& q_points);

/// Trial t uses random_nonsingular(p, seed + t).
std::vector<VerificationReport> run_random(int p, int trials, std::uint64_t seed,
                                           const std::vector<Rational>& q_points,
                                           unsigned threads = 0);

const std::vector<Rational>& default_q_points();

struct ConjectureRow {
  std::string tree_code;
  int p = 0;
  MatchedTree tree;
  ConjectureEvidence evidence;
};

std::vector<ConjectureRow> run_conjecture(int max_vertices, unsigned threads = 0);

// Summary line "TREES <n> CHECKS <m> FAIL <k>".
std::string summary_line(const std::vector<VerificationReport>& reports);

// Applies f(i) for i in [0, count) on up to `threads` workers.
template <class F>
void parallel_for(std::size_t count, unsigned threads, F&& f);

}  // namespace qbd

#include "qbd/detail/parallel.hpp"

#endif  // QBD_VERIFY_HPP
