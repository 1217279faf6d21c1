#include "commnet/temporal.hpp"

#include <gtest/gtest.h>

#include "commnet/report_io.hpp"
#include "commnet/synth.hpp"
#include "oracles.hpp"

using namespace commnet;
using oracle::mention;
using oracle::uid;

TEST(MonthWindows, CoverSpanWithCalendarMonths) {
  auto w = month_windows(make_utc(2016, 1, 15), make_utc(2016, 3, 10));
  ASSERT_EQ(w.size(), 3u);
  EXPECT_EQ(w[0].start, make_utc(2016, 1, 1));
  EXPECT_EQ(w[0].end, make_utc(2016, 2, 1));
  EXPECT_EQ(w[2].start, make_utc(2016, 3, 1));
  EXPECT_EQ(w[2].end, make_utc(2016, 4, 1));
  EXPECT_EQ(interval_label(w[1]), "2016-02");
  EXPECT_THROW(month_windows(make_utc(2016, 2, 1), make_utc(2016, 1, 1)),
               std::invalid_argument);
}

TEST(DurationWindows, FixedStrideAnchoredAtFirst) {
  Timestamp first = make_utc(2016, 1, 1, 12, 0, 0);
  auto w = duration_windows(first, Timestamp{first.sec + 86400 * 25}, 86400 * 10);
  ASSERT_EQ(w.size(), 3u);
  EXPECT_EQ(w[0].start, first);
  EXPECT_EQ(w[1].start.sec, first.sec + 86400 * 10);
  EXPECT_EQ(w[2].end.sec, first.sec + 86400 * 30);
  EXPECT_THROW(duration_windows(first, first, 0), std::invalid_argument);
}

TEST(NewUniqueUsers, FirstAppearanceAsSourceOrTarget) {
  Timestamp m1 = make_utc(2016, 1, 1), m2 = make_utc(2016, 2, 1);
  auto g = TemporalGraph::from_interactions({
      mention("a", "b", m1.sec + 5),
      mention("b", "c", m2.sec + 5),
  });
  auto counts = new_unique_users(g, month_windows(m1, m2));
  ASSERT_EQ(counts.size(), 2u);
  EXPECT_EQ(counts[0], 2u);  // a and b
  EXPECT_EQ(counts[1], 1u);  // only c is new
}

TEST(NewUniqueUsers, AllActivityInOneWindow) {
  Timestamp m1 = make_utc(2016, 1, 1);
  auto g = TemporalGraph::from_interactions({
      mention("a", "b", m1.sec + 1),
      mention("c", "d", m1.sec + 2),
  });
  auto counts = new_unique_users(g, month_windows(m1, add_months(m1, 2)));
  ASSERT_EQ(counts.size(), 3u);
  EXPECT_EQ(counts[0], g.node_count());
  EXPECT_EQ(counts[1], 0u);
  EXPECT_EQ(counts[2], 0u);
}

TEST(NewUniqueUsers, MatchesFirstSeenOracleAndSumsToNodeCount) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto g = oracle::random_stream(seed, 40, 300, 4);
    auto span = g.span();
    auto windows = month_windows(span->start, span->end);
    auto got = new_unique_users(g, windows);
    EXPECT_EQ(got, oracle::brute_new_users(g, windows)) << "seed " << seed;
    std::size_t total = 0;
    for (std::size_t c : got) total += c;
    EXPECT_EQ(total, g.node_count()) << "seed " << seed;
  }
}

TEST(AnalyzeWindows, OneReportPerWindowInOrder) {
  auto synth = generate(PlantSpec{});
  auto span = synth.graph.span();
  auto windows = month_windows(span->start, span->end);
  ASSERT_EQ(windows.size(), 3u);
  auto reports = analyze_windows(synth.graph, windows, AnalyzeOptions{});
  ASSERT_EQ(reports.size(), 3u);
  for (std::size_t i = 0; i < reports.size(); ++i) {
    EXPECT_EQ(reports[i].interval, windows[i]);
    EXPECT_GT(reports[i].node_count, 0u);
    EXPECT_EQ(reports[i].top_k.size(), 10u);
    EXPECT_GT(reports[i].density, 0.0);
    EXPECT_GE(reports[i].community_count, 1u);
    std::size_t size_sum = 0;
    for (std::size_t s : reports[i].community_sizes) size_sum += s;
    EXPECT_EQ(size_sum, reports[i].node_count);
  }
}

TEST(AnalyzeWindows, EmptyWindowYieldsZeroedReport) {
  Timestamp jan = make_utc(2016, 1, 1), mar = make_utc(2016, 3, 1);
  auto g = TemporalGraph::from_interactions({
      mention("a", "b", jan.sec + 10),
      mention("b", "a", mar.sec + 10),
  });
  auto reports =
      analyze_windows(g, month_windows(jan, mar), AnalyzeOptions{});
  ASSERT_EQ(reports.size(), 3u);
  const WindowReport& feb = reports[1];
  EXPECT_EQ(feb.node_count, 0u);
  EXPECT_EQ(feb.arc_count, 0u);
  EXPECT_EQ(feb.density, 0.0);
  EXPECT_EQ(feb.modularity, 0.0);
  EXPECT_TRUE(feb.top_k.empty());
  EXPECT_TRUE(feb.roles.empty());
  EXPECT_EQ(feb.new_unique_users, 0u);
}

TEST(AnalyzeWindows, RejectsMalformedWindowLists) {
  auto g = TemporalGraph::from_interactions({mention("a", "b", 100)});
  Interval w1{Timestamp{0}, Timestamp{200}};
  Interval w2{Timestamp{100}, Timestamp{300}};  // overlaps w1
  EXPECT_THROW(analyze_windows(g, {w1, w2}, AnalyzeOptions{}),
               std::invalid_argument);
  EXPECT_THROW(analyze_windows(g, {w2, w1}, AnalyzeOptions{}),
               std::invalid_argument);
  Interval bad{Timestamp{50}, Timestamp{50}};
  EXPECT_THROW(analyze_windows(g, {bad}, AnalyzeOptions{}),
               std::invalid_argument);
}

TEST(AnalyzeWindows, UnknownSeedUserThrowsUpFront) {
  auto g = TemporalGraph::from_interactions({mention("a", "b", 100)});
  AnalyzeOptions opt;
  opt.seed_user = uid("ghost");
  EXPECT_THROW(
      analyze_windows(g, {Interval{Timestamp{0}, Timestamp{200}}}, opt),
      std::invalid_argument);
}

TEST(AnalyzeWindows, SeedAbsentFromOneWindowOnlyWarns) {
  Timestamp jan = make_utc(2016, 1, 1);
  std::vector<Interaction> rows{
      oracle::tweet("host", "t1", jan.sec + 1),
      mention("a", "host", jan.sec + 2),
      mention("b", "host", jan.sec + 3),
      mention("c", "d", add_months(jan, 1).sec + 1),
  };
  auto g = TemporalGraph::from_interactions(std::move(rows));
  AnalyzeOptions opt;
  opt.seed_user = uid("host");
  std::vector<std::string> warnings;
  auto reports = analyze_windows(g, month_windows(jan, add_months(jan, 1)),
                                 opt, &warnings);
  ASSERT_EQ(reports.size(), 2u);
  ASSERT_FALSE(reports[0].roles.empty());
  EXPECT_EQ(reports[0].roles[0].role, Role::kConversationStarter);
  bool warned = false;
  for (const auto& w : warnings)
    if (w.find("absent from window") != std::string::npos) warned = true;
  EXPECT_TRUE(warned);
}

TEST(AnalyzeWindows, ParallelExecutionIsByteIdentical) {
  auto synth = generate(PlantSpec{});
  auto span = synth.graph.span();
  auto windows = month_windows(span->start, span->end);
  AnalyzeOptions serial;
  serial.jobs = 1;
  AnalyzeOptions parallel;
  parallel.jobs = 4;
  auto a = analyze_windows(synth.graph, windows, serial);
  auto b = analyze_windows(synth.graph, windows, parallel);
  EXPECT_EQ(write_report_json(a), write_report_json(b));
}

TEST(Trajectory, TracksRankBetweennessAndRole) {
  auto synth = generate(PlantSpec{});
  auto span = synth.graph.span();
  auto reports = analyze_windows(
      synth.graph, month_windows(span->start, span->end), AnalyzeOptions{});
  auto t = trajectory(uid("engager"), reports);
  ASSERT_EQ(t.points.size(), reports.size());
  for (const auto& p : t.points) {
    ASSERT_TRUE(p.rank.has_value());
    EXPECT_GT(p.betweenness, 0.0);
    ASSERT_TRUE(p.role.has_value());
    EXPECT_EQ(*p.role, Role::kActiveEngager);
  }
}

TEST(Trajectory, UnknownUserGetsZeroPoints) {
  auto synth = generate(PlantSpec{});
  auto span = synth.graph.span();
  auto reports = analyze_windows(
      synth.graph, month_windows(span->start, span->end), AnalyzeOptions{});
  auto t = trajectory(uid("stranger"), reports);
  ASSERT_EQ(t.points.size(), reports.size());
  for (const auto& p : t.points) {
    EXPECT_FALSE(p.rank.has_value());
    EXPECT_EQ(p.betweenness, 0.0);
    EXPECT_FALSE(p.role.has_value());
  }
}

TEST(RolePersistence, CollectsOrderedHistories) {
  PlantSpec spec;
  spec.starter_dropout_month = 2;
  auto synth = generate(spec);
  auto span = synth.graph.span();
  auto reports = analyze_windows(
      synth.graph, month_windows(span->start, span->end), AnalyzeOptions{});
  auto hist = role_persistence(reports);

  ASSERT_TRUE(hist.count(uid("engager")));
  EXPECT_EQ(hist.at(uid("engager")).size(), 3u);
  for (const auto& [iv, role] : hist.at(uid("engager")))
    EXPECT_EQ(role, Role::kActiveEngager);

  ASSERT_TRUE(hist.count(uid("starter")));
  const auto& starter_hist = hist.at(uid("starter"));
  ASSERT_EQ(starter_hist.size(), 2u);  // dropped out of the third month
  EXPECT_EQ(starter_hist[0].first, reports[0].interval);
  EXPECT_EQ(starter_hist[1].first, reports[1].interval);
}

TEST(RolePersistence, AgreesWithPerWindowAssignments) {
  auto synth = generate(PlantSpec{});
  auto span = synth.graph.span();
  auto reports = analyze_windows(
      synth.graph, month_windows(span->start, span->end), AnalyzeOptions{});
  auto hist = role_persistence(reports);
  std::size_t assignment_count = 0;
  for (const auto& r : reports) {
    assignment_count += r.roles.size();
    for (const auto& a : r.roles) {
      ASSERT_TRUE(hist.count(a.user)) << a.user.str();
      const auto& entries = hist.at(a.user);
      bool found = false;
      for (const auto& [iv, role] : entries)
        if (iv == r.interval && role == a.role) found = true;
      EXPECT_TRUE(found) << a.user.str();
    }
  }
  std::size_t entry_count = 0;
  for (const auto& [user, entries] : hist) entry_count += entries.size();
  EXPECT_EQ(entry_count, assignment_count);
}
