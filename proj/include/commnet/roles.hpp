#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "commnet/graph.hpp"
#include "commnet/metrics.hpp"
#include "commnet/timeutil.hpp"

namespace commnet {

enum class Role {
  kConversationStarter,
  kInfluencer,
  kActiveEngager,
  kNetworkBuilder,
  kInformationBridge,
};

inline std::string to_string(Role r) {
  switch (r) {
    case Role::kConversationStarter: return "ConversationStarter";
    case Role::kInfluencer: return "Influencer";
    case Role::kActiveEngager: return "ActiveEngager";
    case Role::kNetworkBuilder: return "NetworkBuilder";
    case Role::kInformationBridge: return "InformationBridge";
  }
  return "";
}

inline std::optional<Role> parse_role(std::string_view s) {
  if (s == "ConversationStarter") return Role::kConversationStarter;
  if (s == "Influencer") return Role::kInfluencer;
  if (s == "ActiveEngager") return Role::kActiveEngager;
  if (s == "NetworkBuilder") return Role::kNetworkBuilder;
  if (s == "InformationBridge") return Role::kInformationBridge;
  return std::nullopt;
}

struct RoleThresholds {
  std::size_t top_k = 10;
  std::uint32_t sink_out_max = 25;
  std::uint32_t engager_in_max = 2;
  std::uint32_t builder_degree_max = 25;
  std::uint32_t min_influencers_linked = 2;
  double sink_in_min_quantile = 0.5;  // over the top-K in-degrees, in (0,1]
};

/// nullopt when valid, otherwise a human-readable complaint.
inline std::optional<std::string> validate_thresholds(
    const RoleThresholds& t) {
  if (t.top_k < 1) return "top_k must be at least 1";
  if (!(t.sink_in_min_quantile > 0.0 && t.sink_in_min_quantile <= 1.0))
    return "sink_in_min_quantile must lie in (0, 1]";
  return std::nullopt;
}

struct RoleAssignment {
  UserId user;
  Interval window;
  Role role = Role::kInfluencer;
  std::uint32_t rank = 0;
  std::vector<std::string> evidence;
};

struct BridgeMotif {
  UserId bridge;
  UserId influencer;
  UserId engager;
  std::string tweet_id;

  friend auto operator<=>(const BridgeMotif&, const BridgeMotif&) = default;
};

/// Second hop of the bridge motif: the engager either retweets the same
/// influencer tweet (default) or retweets the bridge user itself.
enum class BridgeHop { kSameTweet, kEngagerRetweetsBridge };

namespace detail {

// Nearest-rank (lower) quantile of the top-K in-degrees: sort ascending and
// take element ceil(q*K)-1. Floored at 1 so a window whose central users all
// have zero in-degree produces no sink-like candidates.
inline std::uint32_t sink_in_threshold(std::vector<std::uint32_t> indegrees,
                                       double q) {
  if (indegrees.empty()) return 1;
  std::sort(indegrees.begin(), indegrees.end());
  double pos = std::ceil(q * static_cast<double>(indegrees.size())) - 1.0;
  std::size_t idx = pos <= 0.0 ? 0 : static_cast<std::size_t>(pos);
  idx = std::min(idx, indegrees.size() - 1);
  return std::max<std::uint32_t>(1, indegrees[idx]);
}

inline std::string degree_evidence(const NodeMetrics& m) {
  return "in_degree=" + std::to_string(m.in_degree) +
         " out_degree=" + std::to_string(m.out_degree);
}

}  // namespace detail

/// Assigns roles to the top-ranked users of one window. Walk of the rules,
/// applied to the top_k users by betweenness rank:
///   sink-like: in-degree at or above the configured quantile of the top-K
///   in-degrees (never below 1) and out-degree at most sink_out_max.
///   ConversationStarter: the seeded sink-like user, otherwise the sink-like
///   user with the earliest original tweet; users without one are ineligible.
///   Influencer: every other sink-like user.
///   NetworkBuilder: total degree at most builder_degree_max and at least
///   min_influencers_linked out-neighbors holding Influencer or
///   ConversationStarter here.
///   ActiveEngager: in-degree at most engager_in_max, out-degree above
///   in-degree, not sink-like, not a NetworkBuilder.
/// At most one role per user, at most one ConversationStarter per window.
/// Throws std::invalid_argument on bad thresholds or a seed user missing
/// from the graph; a seed that is present but not sink-like produces a
/// warning and the earliest-origin fallback.
inline std::vector<RoleAssignment> classify(
    const SimpleDigraph& d, Interval window,
    const std::vector<NodeMetrics>& metrics, const RoleThresholds& t,
    const std::optional<UserId>& seed_user = std::nullopt,
    std::vector<std::string>* warnings = nullptr) {
  if (auto err = validate_thresholds(t)) throw std::invalid_argument(*err);
  if (seed_user && !d.index_of(*seed_user))
    throw std::invalid_argument("seed user '" + seed_user->str() +
                                "' is not present in the graph");

  std::vector<NodeMetrics> top = rank_top_k(metrics, t.top_k);
  if (top.empty()) return {};

  std::vector<std::uint32_t> indeg;
  indeg.reserve(top.size());
  for (const auto& m : top) indeg.push_back(m.in_degree);
  const std::uint32_t sink_thr =
      detail::sink_in_threshold(std::move(indeg), t.sink_in_min_quantile);

  std::vector<bool> sink_like(top.size(), false);
  for (std::size_t i = 0; i < top.size(); ++i)
    sink_like[i] = top[i].in_degree >= sink_thr &&
                   top[i].out_degree <= t.sink_out_max;

  // Starter: seed override first, then earliest original tweet.
  std::optional<std::size_t> starter;
  if (seed_user) {
    bool found_sink = false;
    for (std::size_t i = 0; i < top.size(); ++i) {
      if (top[i].user == *seed_user) {
        if (sink_like[i]) {
          starter = i;
          found_sink = true;
        }
        break;
      }
    }
    if (!found_sink && warnings)
      warnings->push_back("seed user '" + seed_user->str() +
                          "' is not a sink-like central user in window " +
                          interval_label(window) +
                          "; selecting by earliest original tweet instead");
  }
  if (!starter) {
    std::optional<Timestamp> best;
    for (std::size_t i = 0; i < top.size(); ++i) {
      if (!sink_like[i]) continue;
      auto idx = d.index_of(top[i].user);
      if (!idx || !d.origin[*idx]) continue;
      Timestamp o = *d.origin[*idx];
      if (!best || o < *best ||
          (o == *best && top[i].user < top[*starter].user)) {
        best = o;
        starter = i;
      }
    }
  }

  std::vector<RoleAssignment> out;
  std::set<UserId> hubs;  // influencers plus the starter
  for (std::size_t i = 0; i < top.size(); ++i) {
    if (!sink_like[i]) continue;
    RoleAssignment a;
    a.user = top[i].user;
    a.window = window;
    a.rank = top[i].rank;
    a.role = (starter && *starter == i) ? Role::kConversationStarter
                                        : Role::kInfluencer;
    a.evidence.push_back(detail::degree_evidence(top[i]));
    a.evidence.push_back("sink_in_threshold=" + std::to_string(sink_thr));
    if (a.role == Role::kConversationStarter) {
      if (seed_user && top[i].user == *seed_user) {
        a.evidence.push_back("seeded");
      } else {
        auto idx = d.index_of(top[i].user);
        if (idx && d.origin[*idx])
          a.evidence.push_back("origin=" + format_rfc3339(*d.origin[*idx]));
      }
    }
    hubs.insert(a.user);
    out.push_back(std::move(a));
  }

  for (std::size_t i = 0; i < top.size(); ++i) {
    if (sink_like[i]) continue;
    const NodeMetrics& m = top[i];

    std::vector<UserId> linked;
    if (m.in_degree + m.out_degree <= t.builder_degree_max) {
      if (auto idx = d.index_of(m.user)) {
        for (std::uint32_t nb : d.out_adj[*idx])
          if (hubs.count(d.nodes[nb])) linked.push_back(d.nodes[nb]);
      }
    }
    const bool builder = linked.size() >= t.min_influencers_linked;
    const bool engager =
        m.in_degree <= t.engager_in_max && m.out_degree > m.in_degree;
    if (!builder && !engager) continue;

    RoleAssignment a;
    a.user = m.user;
    a.window = window;
    a.rank = m.rank;
    a.evidence.push_back(detail::degree_evidence(m));
    if (builder) {
      a.role = Role::kNetworkBuilder;
      std::string joined;
      for (const UserId& u : linked) {
        if (!joined.empty()) joined += ",";
        joined += u.str();
      }
      a.evidence.push_back("linked_hubs=" + joined);
    } else {
      a.role = Role::kActiveEngager;
    }
    out.push_back(std::move(a));
  }

  std::sort(out.begin(), out.end(),
            [](const RoleAssignment& a, const RoleAssignment& b) {
              return a.rank < b.rank;
            });
  return out;
}

/// Scans a window for the bridge motif: a roleless low-degree user B
/// retweets tweet T whose author I holds Influencer, and an ActiveEngager A
/// retweets the same T (targeting I by default, targeting B in the alternate
/// hop mode). Result is deduplicated and sorted.
inline std::vector<BridgeMotif> find_bridges(
    const GraphWindow& w, const std::vector<RoleAssignment>& assignments,
    const RoleThresholds& t, BridgeHop hop = BridgeHop::kSameTweet) {
  SimpleDigraph d = project(w);
  std::vector<DegreeCount> deg = degrees(d);

  std::set<UserId> influencers;
  std::set<UserId> engagers;
  std::set<UserId> assigned;
  for (const auto& a : assignments) {
    assigned.insert(a.user);
    if (a.role == Role::kInfluencer) influencers.insert(a.user);
    if (a.role == Role::kActiveEngager) engagers.insert(a.user);
  }

  auto low_degree = [&](const UserId& u) {
    auto idx = d.index_of(u);
    if (!idx) return false;
    return deg[*idx].in + deg[*idx].out <= t.builder_degree_max;
  };

  // (influencer, tweet) -> candidate bridge users.
  std::map<std::pair<UserId, std::string>, std::set<UserId>> bridge_rt;
  // same-tweet mode: (influencer, tweet) -> engagers retweeting it.
  std::map<std::pair<UserId, std::string>, std::set<UserId>> engager_rt;
  // alternate mode: (bridge, tweet) -> engagers retweeting the bridge user.
  std::map<std::pair<UserId, std::string>, std::set<UserId>> engager_rb;

  for (const Interaction& i : w.interactions) {
    if (i.kind != InteractionKind::kRetweet || i.tweet_id.empty()) continue;
    if (influencers.count(i.target)) {
      if (!assigned.count(i.source) && low_degree(i.source))
        bridge_rt[{i.target, i.tweet_id}].insert(i.source);
      if (engagers.count(i.source))
        engager_rt[{i.target, i.tweet_id}].insert(i.source);
    }
    if (hop == BridgeHop::kEngagerRetweetsBridge && engagers.count(i.source))
      engager_rb[{i.target, i.tweet_id}].insert(i.source);
  }

  std::set<BridgeMotif> found;
  for (const auto& [key, bridges] : bridge_rt) {
    const auto& [infl, tweet] = key;
    for (const UserId& b : bridges) {
      const std::set<UserId>* second = nullptr;
      if (hop == BridgeHop::kSameTweet) {
        auto it = engager_rt.find(key);
        if (it != engager_rt.end()) second = &it->second;
      } else {
        auto it = engager_rb.find({b, tweet});
        if (it != engager_rb.end()) second = &it->second;
      }
      if (!second) continue;
      for (const UserId& a : *second)
        found.insert(BridgeMotif{b, infl, a, tweet});
    }
  }
  return {found.begin(), found.end()};
}

}  // namespace commnet
