#include "commnet/community.hpp"

#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"

using namespace commnet;
using oracle::mention;

namespace {

SimpleDigraph digraph_of(std::vector<Interaction> rows) {
  return oracle::project_all(TemporalGraph::from_interactions(std::move(rows)));
}

// Two directed 3-cycles with no connection between them.
SimpleDigraph two_triangles() {
  return digraph_of({
      mention("a1", "a2", 1), mention("a2", "a3", 2), mention("a3", "a1", 3),
      mention("b1", "b2", 4), mention("b2", "b3", 5), mention("b3", "b1", 6),
  });
}

}  // namespace

TEST(Modularity, SingleCommunityIsZero) {
  auto d = two_triangles();
  std::vector<std::uint32_t> all_one(d.node_count(), 0);
  EXPECT_DOUBLE_EQ(modularity(d, all_one), 0.0);
}

TEST(Modularity, TwoCliquesSplitByCliqueIsHalf) {
  auto d = two_triangles();
  std::vector<std::uint32_t> part(d.node_count());
  for (std::size_t v = 0; v < d.node_count(); ++v)
    part[v] = d.nodes[v].str()[0] == 'a' ? 0 : 1;
  EXPECT_NEAR(modularity(d, part), 0.5, 1e-12);
}

TEST(Modularity, ReciprocalArcsDoubleTheWeight) {
  // a<->b plus a->c: pair weights 2 and 1, m = 3.
  auto d = digraph_of(
      {mention("a", "b", 1), mention("b", "a", 2), mention("a", "c", 3)});
  std::vector<std::uint32_t> part(d.node_count());
  // {a,b} vs {c}: e_0 = 2, d_0 = 5, e_1 = 0, d_1 = 1.
  for (std::size_t v = 0; v < d.node_count(); ++v)
    part[v] = d.nodes[v].str() == "c" ? 1 : 0;
  double expect = 2.0 / 3.0 - (5.0 / 6.0) * (5.0 / 6.0) - (1.0 / 6.0) * (1.0 / 6.0);
  EXPECT_NEAR(modularity(d, part), expect, 1e-12);
}

TEST(Modularity, EdgelessIsZeroAndMismatchThrows) {
  auto d = digraph_of({oracle::tweet("a", "t", 1)});
  EXPECT_DOUBLE_EQ(modularity(d, {0}), 0.0);
  EXPECT_THROW(modularity(d, {0, 1}), std::invalid_argument);
  EXPECT_THROW(modularity(two_triangles(), {0, 1}), std::invalid_argument);
}

TEST(Modularity, MatchesDoubleLoopOracleOnRandomPartitions) {
  std::mt19937_64 rng(5);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto d = oracle::project_all(oracle::random_digraph(seed, 30, 0.12));
    std::vector<std::uint32_t> part(d.node_count());
    for (auto& c : part) c = static_cast<std::uint32_t>(rng() % 5);
    EXPECT_NEAR(modularity(d, part), oracle::brute_modularity(d, part), 1e-9);
  }
}

TEST(Louvain, RecoversTwoCliques) {
  auto d = two_triangles();
  for (std::uint64_t seed : {0ull, 1ull, 7ull, 42ull}) {
    auto res = louvain(d, seed);
    EXPECT_EQ(res.community_count, 2u);
    EXPECT_NEAR(res.modularity, 0.5, 1e-12);
    // All a's together, all b's together.
    std::uint32_t ca = res.assignment[*d.index_of(oracle::uid("a1"))];
    std::uint32_t cb = res.assignment[*d.index_of(oracle::uid("b1"))];
    EXPECT_NE(ca, cb);
    for (std::size_t v = 0; v < d.node_count(); ++v)
      EXPECT_EQ(res.assignment[v], d.nodes[v].str()[0] == 'a' ? ca : cb);
  }
}

TEST(Louvain, EdgelessGraphIsAllSingletons) {
  auto d = digraph_of({oracle::tweet("a", "t", 1)});
  auto res = louvain(d);
  EXPECT_EQ(res.community_count, 1u);
  EXPECT_DOUBLE_EQ(res.modularity, 0.0);
  SimpleDigraph empty;
  auto none = louvain(empty);
  EXPECT_EQ(none.community_count, 0u);
  EXPECT_TRUE(none.assignment.empty());
}

TEST(Louvain, AssignmentIsDenseFirstAppearanceNumbered) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto d = oracle::project_all(oracle::random_digraph(900 + seed, 40, 0.08));
    auto res = louvain(d, seed);
    ASSERT_EQ(res.assignment.size(), d.node_count());
    std::uint32_t next = 0;
    for (std::uint32_t c : res.assignment) {
      ASSERT_LE(c, next);  // ids appear in order 0,1,2,...
      if (c == next) ++next;
    }
    EXPECT_EQ(next, res.community_count);
  }
}

TEST(Louvain, ReportedModularityMatchesAssignment) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto d = oracle::project_all(oracle::random_digraph(1300 + seed, 45, 0.1));
    auto res = louvain(d, seed);
    EXPECT_NEAR(res.modularity, oracle::brute_modularity(d, res.assignment),
                1e-9);
  }
}

TEST(Louvain, SameSeedSameResult) {
  auto d = oracle::project_all(oracle::random_digraph(321, 60, 0.07));
  auto a = louvain(d, 9);
  auto b = louvain(d, 9);
  EXPECT_EQ(a.assignment, b.assignment);
  EXPECT_EQ(a.modularity, b.modularity);
}

TEST(Louvain, FindsStructureInCliqueRing) {
  // Four directed 4-cliques joined in a ring by single arcs.
  std::vector<Interaction> rows;
  std::int64_t t = 0;
  auto name = [](int c, int i) {
    return "c" + std::to_string(c) + "n" + std::to_string(i);
  };
  for (int c = 0; c < 4; ++c)
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        if (i != j) rows.push_back(mention(name(c, i), name(c, j), t++));
  for (int c = 0; c < 4; ++c)
    rows.push_back(mention(name(c, 0), name((c + 1) % 4, 1), t++));
  auto d = digraph_of(rows);
  auto res = louvain(d, 3);
  EXPECT_EQ(res.community_count, 4u);
  EXPECT_GT(res.modularity, 0.6);
  for (int c = 0; c < 4; ++c) {
    std::uint32_t expect = res.assignment[*d.index_of(oracle::uid(name(c, 0)))];
    for (int i = 1; i < 4; ++i)
      EXPECT_EQ(res.assignment[*d.index_of(oracle::uid(name(c, i)))], expect);
  }
}
