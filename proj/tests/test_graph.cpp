#include "commnet/graph.hpp"

#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace commnet;
using oracle::mention;
using oracle::retweet;
using oracle::tweet;
using oracle::uid;

TEST(UserId, NormalizesCaseAndWhitespace) {
  auto a = UserId::parse("  Alice ");
  ASSERT_TRUE(a);
  EXPECT_EQ(a->str(), "alice");
  EXPECT_EQ(*a, *UserId::parse("ALICE"));
  EXPECT_FALSE(UserId::parse("   "));
  EXPECT_FALSE(UserId::parse(""));
}

TEST(ValidateInteraction, EnforcesSelfLoopConvention) {
  EXPECT_FALSE(validate_interaction(tweet("a", "t1", 0)));
  Interaction bad_tweet{uid("a"), uid("b"), InteractionKind::kTweet, "t", {}};
  EXPECT_TRUE(validate_interaction(bad_tweet));
  Interaction self_mention{uid("a"), uid("a"), InteractionKind::kMention, "", {}};
  EXPECT_TRUE(validate_interaction(self_mention));
  EXPECT_FALSE(validate_interaction(mention("a", "b", 0)));
  EXPECT_FALSE(validate_interaction(retweet("a", "b", "", 0)));
  EXPECT_TRUE(validate_interaction(retweet("a", "b", "", 0), true));
  EXPECT_FALSE(validate_interaction(retweet("a", "b", "t9", 0), true));
}

TEST(TemporalGraph, SortsByTimestampStably) {
  auto g = TemporalGraph::from_interactions({
      mention("c", "d", 50),
      mention("a", "b", 10),
      mention("b", "c", 50),
  });
  ASSERT_EQ(g.size(), 3u);
  EXPECT_EQ(g.interactions()[0].source, uid("a"));
  // Equal timestamps keep input order.
  EXPECT_EQ(g.interactions()[1].source, uid("c"));
  EXPECT_EQ(g.interactions()[2].source, uid("b"));
}

TEST(TemporalGraph, TracksNodesAndSpan) {
  auto g = TemporalGraph::from_interactions(
      {mention("b", "a", 10), mention("c", "a", 30)});
  EXPECT_EQ(g.node_count(), 3u);
  auto nodes = g.nodes();
  EXPECT_EQ(nodes.front(), uid("a"));
  EXPECT_EQ(nodes.back(), uid("c"));
  EXPECT_TRUE(g.contains(uid("b")));
  EXPECT_FALSE(g.contains(uid("z")));
  ASSERT_TRUE(g.span());
  EXPECT_EQ(g.span()->start.sec, 10);
  EXPECT_EQ(g.span()->end.sec, 30);
  EXPECT_FALSE(TemporalGraph{}.span());
}

TEST(TemporalGraph, AddKeepsOrderAndValidates) {
  TemporalGraph g;
  g.add(mention("a", "b", 20));
  g.add(mention("b", "c", 10));
  g.add(mention("c", "d", 20));
  EXPECT_EQ(g.interactions()[0].timestamp.sec, 10);
  EXPECT_EQ(g.interactions()[1].source, uid("a"));
  EXPECT_EQ(g.interactions()[2].source, uid("c"));
  Interaction self{uid("x"), uid("x"), InteractionKind::kReply, "", {}};
  EXPECT_THROW(g.add(self), std::invalid_argument);
}

TEST(GraphWindow, SlicesHalfOpen) {
  auto g = TemporalGraph::from_interactions({
      mention("a", "b", 10),
      mention("b", "c", 20),
      mention("c", "d", 30),
  });
  auto w = g.window(Timestamp{10}, Timestamp{30});
  ASSERT_EQ(w.interactions.size(), 2u);
  EXPECT_EQ(w.interactions[0].timestamp.sec, 10);
  EXPECT_EQ(w.interactions[1].timestamp.sec, 20);
  EXPECT_EQ(g.window(Timestamp{31}, Timestamp{99}).interactions.size(), 0u);
  EXPECT_THROW(g.window(Timestamp{30}, Timestamp{30}), std::invalid_argument);
  EXPECT_EQ(TemporalGraph{}.window(Timestamp{0}, Timestamp{1}).interactions.size(),
            0u);
}

TEST(Project, DedupsArcsAndCountsWeights) {
  auto g = TemporalGraph::from_interactions({
      mention("a", "b", 1),
      mention("a", "b", 2),
      retweet("b", "a", "t1", 3),
      mention("c", "a", 4),
  });
  auto d = oracle::project_all(g);
  ASSERT_EQ(d.node_count(), 3u);
  ASSERT_EQ(d.arc_count(), 3u);
  auto a = *d.index_of(uid("a"));
  auto b = *d.index_of(uid("b"));
  EXPECT_EQ(d.arcs[0], std::make_pair(a, b));
  EXPECT_EQ(d.arc_weights[0], 2u);  // two a->b mentions collapse
  EXPECT_EQ(d.out_adj[a].size(), 1u);
  EXPECT_EQ(d.in_adj[a].size(), 2u);
  EXPECT_FALSE(d.index_of(uid("zz")));
}

TEST(Project, TweetsFeedOriginOnly) {
  auto g = TemporalGraph::from_interactions({
      tweet("a", "t2", 40),
      tweet("a", "t1", 5),
      mention("b", "a", 10),
  });
  auto d = oracle::project_all(g);
  EXPECT_EQ(d.arc_count(), 1u);  // the self-loops create no arcs
  auto a = *d.index_of(uid("a"));
  auto b = *d.index_of(uid("b"));
  ASSERT_TRUE(d.origin[a]);
  EXPECT_EQ(d.origin[a]->sec, 5);  // earliest original wins
  EXPECT_FALSE(d.origin[b]);
}

TEST(Degrees, CountsUniqueCounterparties) {
  auto g = TemporalGraph::from_interactions({
      mention("a", "b", 1),
      mention("a", "b", 2),
      mention("a", "c", 3),
      mention("b", "a", 4),
      tweet("d", "t", 5),
  });
  auto d = oracle::project_all(g);
  auto deg = degrees(d);
  auto a = *d.index_of(uid("a"));
  auto dd = *d.index_of(uid("d"));
  EXPECT_EQ(deg[a].out, 2u);  // b counted once
  EXPECT_EQ(deg[a].in, 1u);
  EXPECT_EQ(deg[dd].in, 0u);
  EXPECT_EQ(deg[dd].out, 0u);
}
