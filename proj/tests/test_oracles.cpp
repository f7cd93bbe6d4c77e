#include <gtest/gtest.h>

#include <set>

#include "oracles.hpp"
#include "qbd/tree.hpp"

using namespace qbd;

namespace {

std::set<std::string> library_codes(const std::vector<Tree>& trees) {
  std::set<std::string> out;
  for (const auto& t : trees) out.insert(canonical_code(t));
  return out;
}

}  // namespace

// Known counts of free trees on n vertices.
TEST(Oracles, PruferCountsSmall) {
  const std::vector<std::size_t> all{1, 1, 1, 2, 3, 6, 11, 23};
  for (int n = 2; n <= 8; ++n) EXPECT_EQ(oracle::prufer_class_count(n, false), all[static_cast<std::size_t>(n - 1)]);
  const std::vector<std::size_t> nonsingular{1, 1, 2, 5};
  for (int p = 1; p <= 4; ++p)
    EXPECT_EQ(oracle::prufer_class_count(2 * p, true), nonsingular[static_cast<std::size_t>(p - 1)]);
}

TEST(Oracles, RootedGeneratorAgreesWithPrufer) {
  for (int n = 2; n <= 8; ++n) {
    EXPECT_EQ(oracle::rooted_class_count(n, false), oracle::prufer_class_count(n, false)) << n;
    EXPECT_EQ(oracle::rooted_class_count(n, true), oracle::prufer_class_count(n, true)) << n;
  }
}

TEST(Oracles, MatchingDpAgreesWithBruteForce) {
  for (int n = 2; n <= 8; ++n) {
    oracle::for_each_prufer_tree(n, [&](const oracle::EdgeList& e) {
      EXPECT_EQ(oracle::matchable_dp(n, e), oracle::has_perfect_matching(n, e));
    });
  }
}

TEST(Oracles, EnumerationAgreesWithRootedOracle) {
  for (int p = 1; p <= 7; ++p) {
    const auto trees = enumerate_nonsingular(p);
    EXPECT_EQ(trees.size(), oracle::rooted_class_count(2 * p, true)) << "p=" << p;
    std::set<std::string> codes;
    for (const auto& mt : trees) {
      std::vector<std::pair<int, int>> edges(mt.tree().edges().begin(), mt.tree().edges().end());
      codes.insert(oracle::free_code(mt.size(), edges));
    }
    EXPECT_EQ(codes.size(), trees.size()) << "p=" << p;
  }
  for (int n = 1; n <= 14; ++n) {
    const auto trees = enumerate_trees(n);
    EXPECT_EQ(trees.size(), oracle::rooted_class_count(n, false)) << "n=" << n;
    EXPECT_EQ(library_codes(trees).size(), trees.size());
  }
}

// Full Prufer sweep over 10^8 labelled trees on 10 vertices.
TEST(OraclesSlow, PruferNonsingularCountTen) {
  EXPECT_EQ(oracle::prufer_class_count(10, true), 15U);
  EXPECT_EQ(enumerate_nonsingular(5).size(), 15U);
}
