#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "commnet/graph.hpp"
#include "commnet/roles.hpp"
#include "commnet/timeutil.hpp"

namespace commnet {

/// Shape of a generated stream with planted role structure. With the default
/// thresholds the planted actors land in the top-10 of every month and
/// classify back to their planted roles.
struct PlantSpec {
  std::size_t n_isolates = 50;
  std::size_t n_influencers = 3;
  std::size_t engager_out = 20;
  std::size_t builder_links = 2;
  bool plant_bridge = true;
  std::size_t months = 3;
  std::uint64_t seed = 7;
  std::optional<std::size_t> starter_dropout_month;  // 0-based month index
};

struct SynthResult {
  TemporalGraph graph;
  std::map<UserId, Role> ground_truth;
};

namespace detail {

inline UserId uid(const std::string& s) { return *UserId::parse(s); }

inline std::string two_digits(std::size_t v) {
  std::string s = std::to_string(v);
  return s.size() < 2 ? "0" + s : s;
}

}  // namespace detail

/// Emits one month of activity per window, anchored at 2020-01:
///   - the starter posts an original tweet; half the isolates retweet it
///   - influencers each mention the starter; the other isolates mention
///     influencers round-robin, plus 0-2 seeded extra interactions each
///   - an engager with one dedicated fan mentions engager_out audience users
///   - a builder with two fans mentions builder_links hubs (influencers
///     first, then the starter)
///   - chatter users fill the remaining top-10 slots: they mention each
///     other and 23 private audience users each, which keeps their
///     out-degree above the sink cutoff
///   - if plant_bridge, a degree-1 user retweets an influencer tweet that
///     the engager also retweets
/// From starter_dropout_month onward the starter vanishes: no tweet, no
/// incoming mentions or retweets (isolates are redirected to influencers).
/// Deterministic for a fixed spec.
inline SynthResult generate(const PlantSpec& spec) {
  if (spec.months < 1)
    throw std::invalid_argument("months must be at least 1");
  if (spec.builder_links > spec.n_influencers + 1)
    throw std::invalid_argument(
        "builder_links cannot exceed n_influencers + 1");
  if (spec.plant_bridge && spec.n_influencers == 0)
    throw std::invalid_argument("plant_bridge requires at least one influencer");

  const std::size_t f = spec.n_influencers;
  const std::size_t n_chatters = f + 3 < 10 ? 10 - 3 - f : 0;
  const std::size_t chatter_audience = 23;

  const UserId starter = detail::uid("starter");
  const UserId engager = detail::uid("engager");
  const UserId builder = detail::uid("builder");
  const UserId bridge = detail::uid("bridgeuser");
  std::vector<UserId> influencers;
  for (std::size_t j = 1; j <= f; ++j)
    influencers.push_back(detail::uid("influencer" + std::to_string(j)));
  std::vector<UserId> chatters;
  for (std::size_t j = 1; j <= n_chatters; ++j)
    chatters.push_back(detail::uid("chatter" + std::to_string(j)));

  std::vector<UserId> hubs = influencers;  // builder link targets, in order
  hubs.push_back(starter);

  std::mt19937_64 rng(spec.seed);
  std::vector<Interaction> all;
  const Timestamp base = make_utc(2020, 1, 1);

  for (std::size_t m = 0; m < spec.months; ++m) {
    const bool dropout =
        spec.starter_dropout_month && m >= *spec.starter_dropout_month;
    const Timestamp month_start = add_months(base, static_cast<int>(m));
    std::int64_t tick = 0;
    auto next_ts = [&] { return Timestamp{month_start.sec + tick++}; };
    auto emit = [&](const UserId& src, const UserId& tgt, InteractionKind k,
                    std::string tid) {
      all.push_back(Interaction{src, tgt, k, std::move(tid), next_ts()});
    };

    const std::string starter_tweet = "t_start_" + std::to_string(m);
    if (!dropout)
      emit(starter, starter, InteractionKind::kTweet, starter_tweet);

    if (!dropout)
      for (const UserId& infl : influencers)
        emit(infl, starter, InteractionKind::kMention, "");

    for (std::size_t a = 0; a < chatters.size(); ++a) {
      for (std::size_t b = 0; b < chatters.size(); ++b)
        if (a != b)
          emit(chatters[a], chatters[b], InteractionKind::kMention, "");
      for (std::size_t x = 1; x <= chatter_audience; ++x)
        emit(chatters[a],
             detail::uid("caud_" + std::to_string(a + 1) + "_" +
                         detail::two_digits(x)),
             InteractionKind::kMention, "");
    }

    emit(detail::uid("fan_e"), engager, InteractionKind::kMention, "");
    for (std::size_t x = 1; x <= spec.engager_out; ++x)
      emit(engager, detail::uid("eaud_" + detail::two_digits(x)),
           InteractionKind::kMention, "");

    emit(detail::uid("fan_b1"), builder, InteractionKind::kMention, "");
    emit(detail::uid("fan_b2"), builder, InteractionKind::kMention, "");
    for (std::size_t j = 0; j < spec.builder_links; ++j) {
      if (dropout && hubs[j] == starter) continue;
      emit(builder, hubs[j], InteractionKind::kMention, "");
    }

    for (std::size_t i = 1; i <= spec.n_isolates; ++i) {
      const UserId iso = detail::uid("iso_" + detail::two_digits(i));
      bool toward_starter = i <= spec.n_isolates / 2 || f == 0;
      if (toward_starter && !dropout) {
        emit(iso, starter, InteractionKind::kRetweet, starter_tweet);
      } else if (f > 0) {
        emit(iso, influencers[i % f], InteractionKind::kMention, "");
      }
      std::size_t extras = static_cast<std::size_t>(rng() % 3);
      for (std::size_t e = 0; e < extras; ++e) {
        std::size_t pick = static_cast<std::size_t>(rng() % (f + 1));
        if (pick == f) {  // the starter slot
          if (!dropout)
            emit(iso, starter, InteractionKind::kRetweet, starter_tweet);
          else if (f > 0)
            emit(iso, influencers[0], InteractionKind::kMention, "");
        } else {
          emit(iso, influencers[pick], InteractionKind::kMention, "");
        }
      }
    }

    if (spec.plant_bridge) {
      const std::string tid = "t_infl1_" + std::to_string(m);
      emit(bridge, influencers[0], InteractionKind::kRetweet, tid);
      emit(engager, influencers[0], InteractionKind::kRetweet, tid);
    }
  }

  SynthResult res;
  res.graph = TemporalGraph::from_interactions(std::move(all));
  res.ground_truth[starter] = Role::kConversationStarter;
  for (const UserId& infl : influencers)
    res.ground_truth[infl] = Role::kInfluencer;
  res.ground_truth[engager] = Role::kActiveEngager;
  res.ground_truth[builder] = Role::kNetworkBuilder;
  if (spec.plant_bridge) res.ground_truth[bridge] = Role::kInformationBridge;
  return res;
}

}  // namespace commnet
