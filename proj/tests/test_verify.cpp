#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "fixtures.hpp"
#include "qbd/error.hpp"
#include "qbd/json_io.hpp"
#include "qbd/qmatrices.hpp"
#include "qbd/verify.hpp"

using namespace qbd;

namespace {

std::vector<MatchedTree> small_fixtures() { return {fixtures::p2(), fixtures::p4(), fixtures::p4_path(), fixtures::p6()}; }

void expect_pass(const CheckResult& r) {
  EXPECT_TRUE(r.pass) << r.name << " failed at " << (r.witness ? r.witness->location : "?");
  EXPECT_FALSE(r.witness.has_value());
}

std::string dump(const std::vector<VerificationReport>& reports) {
  Json all = Json::array();
  for (const auto& r : reports) all.push_back(to_json(r));
  return all.dump();
}

}  // namespace

TEST(Verify, SingleTreeChecksOnSmallFixtures) {
  for (const auto& mt : small_fixtures()) {
    expect_pass(check_det_E(mt));
    expect_pass(check_det_qL(mt));
    expect_pass(check_bdq(mt));
    expect_pass(check_sum_mu(mt));
    expect_pass(check_row_col_sums(mt));
    expect_pass(check_B_tau(mt));
    expect_pass(check_L_B_product(mt));
    expect_pass(check_inverse_E(mt));
    expect_pass(check_inverse_qB(mt));
    expect_pass(check_q1_properties(mt));
    for (Vertex v = 0; v < mt.size(); ++v) expect_pass(check_attach_update(mt, v));
    expect_pass(check_full_dq_ed(mt.tree()));
  }
}

TEST(Verify, SuiteOnP4) {
  const VerificationReport report = run_suite(fixtures::p4());
  EXPECT_TRUE(report.all_pass());
  EXPECT_EQ(report.failures(), 0U);
  EXPECT_GE(report.checks.size(), 12U);
  EXPECT_EQ(report.vertices, 4);
  EXPECT_EQ(report.p, 2);
  EXPECT_EQ(report.tree_code, canonical_code(fixtures::p4().tree()));
  std::vector<std::string> names;
  for (const auto& c : report.checks) names.push_back(c.name);
  for (const auto& expected : identity_checks()) {
    if (expected.name == "full_dq_ed") continue;
    EXPECT_NE(std::find(names.begin(), names.end(), expected.name), names.end()) << expected.name;
  }
}

TEST(Verify, BlockDecomposition) {
  // Star-like tree: l1 = 0 has neighbours r1 = 1, 2 and 4.
  const Tree t = parse_tree({{0, 1}, {0, 2}, {2, 3}, {0, 4}, {4, 5}});
  const MatchedTree mt = match(t);
  int centre = -1;
  for (int i = 0; i < mt.p(); ++i)
    if (mt.degree(mt.l(i)) == 3) centre = i;
  ASSERT_GE(centre, 0);
  expect_pass(check_block_decomposition(mt, centre));
  const MatchedTree four = fixtures::p4();
  expect_pass(check_block_decomposition(four, 0));
  try {
    check_block_decomposition(four, 1);
    FAIL() << "expected DegreeTooSmall";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DegreeTooSmall);
  }
}

// Attaching at v in R: the constant-form update of tau_r holds only after
// setting q = 1; the verified form scales the k-th correction by q^2.
TEST(Verify, RightAttachmentTauUpdateNeedsQSquared) {
  const MatchedTree four = fixtures::p4();
  const Vertex v = four.r(0);
  const int k = four.label_of(v).index;
  const MatchedTree grown = attach_p2(four, v);
  const PolyVec before = qtau(four).r;
  const PolyVec after = qtau(grown).r;
  const Integer step = 1 + diff(four, v);
  ASSERT_NE(step, 0);

  std::vector<Poly> literal = before.entries;
  literal[static_cast<std::size_t>(k)] -= Poly::constant(step);
  literal.push_back(Poly::constant(step));
  std::vector<Poly> corrected = before.entries;
  corrected[static_cast<std::size_t>(k)] -= Poly::constant(step) * Poly{0, 0, 1};
  corrected.push_back(Poly::constant(step));

  EXPECT_EQ(after.entries, corrected);
  EXPECT_NE(after.entries, literal);
  EXPECT_EQ(after.entries[static_cast<std::size_t>(k)] - literal[static_cast<std::size_t>(k)],
            (Poly::constant(step) * Poly{1, 0, -1}));
  for (std::size_t i = 0; i < literal.size(); ++i)
    EXPECT_EQ(after.entries[i].eval(Rational(1)), literal[i].eval(Rational(1)));
}

TEST(Verify, ReportsIndependentOfThreadCount) {
  const auto one = run_enumerated(8, 1);
  const auto four = run_enumerated(8, 4);
  EXPECT_EQ(one.size(), 1U + 1U + 2U + 5U);
  EXPECT_EQ(dump(one), dump(four));
  EXPECT_EQ(summary_line(one), summary_line(four));
  for (const auto& r : one) EXPECT_TRUE(r.all_pass());
  for (std::size_t i = 1; i < one.size(); ++i)
    EXPECT_LE(std::make_pair(one[i - 1].vertices, one[i - 1].tree_code),
              std::make_pair(one[i].vertices, one[i].tree_code));
}

TEST(Verify, FullMatricesSmall) {
  const auto reports = run_full_matrices(7, 2);
  EXPECT_EQ(reports.size(), 1U + 1U + 2U + 3U + 6U + 11U);
  std::size_t matched = 0;
  for (const auto& r : reports) {
    EXPECT_TRUE(r.all_pass());
    if (r.p) {
      EXPECT_EQ(2 * *r.p, r.vertices);
      ++matched;
    }
  }
  EXPECT_EQ(matched, 1U + 1U + 2U);
}

TEST(Verify, EvaluatedAgreesWithSymbolic) {
  std::mt19937_64 rng(53);
  std::uniform_int_distribution<long> num(-9, 9);
  std::uniform_int_distribution<long> den(1, 7);
  std::vector<Rational> points;
  while (points.size() < 3) {
    const Rational x(num(rng), den(rng));
    if (x != 0 && x != 1 && x != -1) points.push_back(x);
  }
  for (const auto& mt : enumerate_nonsingular(4)) {
    const auto report = run_evaluated(mt, points);
    EXPECT_TRUE(report.all_pass());
    EXPECT_FALSE(report.checks.empty());
    EXPECT_TRUE(run_suite(mt, {.oracle = false}).all_pass());
  }
  const auto random = run_random(12, 3, 7, points, 2);
  ASSERT_EQ(random.size(), 3U);
  for (const auto& r : random) EXPECT_TRUE(r.all_pass());
}

TEST(Verify, EvaluatedCheckNamesCarryThePoint) {
  const auto report = run_evaluated(fixtures::p4(), {Rational(1, 2)});
  bool found = false;
  for (const auto& c : report.checks) found = found || c.name == "B_tau@q=1/2";
  EXPECT_TRUE(found);
}

TEST(Verify, RandomTrialsAreReproducible) {
  const auto a = run_random(20, 2, 99, default_q_points(), 1);
  const auto b = run_random(20, 2, 99, default_q_points(), 3);
  EXPECT_EQ(dump(a), dump(b));
  EXPECT_EQ(a[0].tree_code, canonical_code(random_nonsingular(20, 99).tree()));
  EXPECT_EQ(a[1].tree_code, canonical_code(random_nonsingular(20, 100).tree()));
}

TEST(Verify, LabelingInvariance) {
  std::mt19937_64 rng(59);
  for (const auto& mt : enumerate_nonsingular(5)) {
    std::vector<int> perm(static_cast<std::size_t>(mt.p()));
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    for (bool swap : {false, true}) EXPECT_TRUE(run_suite(mt.relabeled(perm, swap)).all_pass());
  }
}

TEST(Verify, ReportJson) {
  const Json j = to_json(run_suite(fixtures::p2()));
  EXPECT_EQ(j["tree"], to_hex(canonical_code(fixtures::p2().tree())));
  EXPECT_EQ(j["p"], 1);
  ASSERT_TRUE(j["checks"].is_array());
  for (const auto& c : j["checks"]) {
    EXPECT_TRUE(c["pass"].get<bool>());
    EXPECT_TRUE(c["witness"].is_null());
  }
  const CheckResult failed =
      CheckResult::fail("det_E", Witness{"entry (1,2)", Poly{1, 0, -1}, "lhs - rhs"});
  const Json f = to_json(failed);
  EXPECT_FALSE(f["pass"].get<bool>());
  EXPECT_EQ(f["witness"]["location"], "entry (1,2)");
  EXPECT_EQ(poly_from_json(f["witness"]["residual"]), (Poly{1, 0, -1}));
  VerificationReport report;
  report.checks = {CheckResult::ok("a"), failed};
  EXPECT_FALSE(report.all_pass());
  EXPECT_EQ(report.failures(), 1U);
  EXPECT_EQ(summary_line({report}), "TREES 1 CHECKS 2 FAIL 1");
}

TEST(Verify, ConjectureSmall) {
  const auto rows = run_conjecture(8, 2);
  EXPECT_EQ(rows.size(), 1U + 1U + 2U + 5U);
  for (const auto& row : rows) {
    EXPECT_TRUE(row.evidence.diagonalizable);
    EXPECT_TRUE(row.evidence.all_eigen_nonneg);
    EXPECT_EQ(row.p, row.tree.p());
  }
}
