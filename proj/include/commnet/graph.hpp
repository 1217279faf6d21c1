#pragma once

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "commnet/timeutil.hpp"

namespace commnet {

/// Case-normalized user handle. Construction trims surrounding whitespace and
/// lowercases, so equal handles compare equal regardless of input spelling.
class UserId {
 public:
  UserId() = default;

  /// Returns nullopt when the handle is empty after trimming.
  static std::optional<UserId> parse(std::string_view raw) {
    std::size_t b = 0, e = raw.size();
    while (b < e && std::isspace(static_cast<unsigned char>(raw[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(raw[e - 1]))) --e;
    if (b == e) return std::nullopt;
    UserId id;
    id.value_.reserve(e - b);
    for (std::size_t i = b; i < e; ++i)
      id.value_.push_back(static_cast<char>(
          std::tolower(static_cast<unsigned char>(raw[i]))));
    return id;
  }

  const std::string& str() const { return value_; }
  bool empty() const { return value_.empty(); }

  friend auto operator<=>(const UserId&, const UserId&) = default;

 private:
  std::string value_;
};

enum class InteractionKind { kTweet, kRetweet, kMention, kReply };

inline const char* to_string(InteractionKind k) {
  switch (k) {
    case InteractionKind::kTweet: return "tweet";
    case InteractionKind::kRetweet: return "retweet";
    case InteractionKind::kMention: return "mention";
    case InteractionKind::kReply: return "reply";
  }
  return "?";
}

inline std::optional<InteractionKind> parse_kind(std::string_view s) {
  std::string low;
  low.reserve(s.size());
  for (char c : s)
    low.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (low == "tweet") return InteractionKind::kTweet;
  if (low == "retweet") return InteractionKind::kRetweet;
  if (low == "mention") return InteractionKind::kMention;
  if (low == "reply") return InteractionKind::kReply;
  return std::nullopt;
}

/// One timestamped directed event between two users. Original tweets are
/// encoded as self-loops (source == target, kind == tweet); every other kind
/// must connect two distinct users. An empty tweet_id means "absent".
struct Interaction {
  UserId source;
  UserId target;
  InteractionKind kind = InteractionKind::kMention;
  std::string tweet_id;
  Timestamp timestamp;
};

/// Checks the record-level invariants. Returns an error message, or nullopt
/// if the interaction is acceptable. Retweets without a tweet_id pass in
/// lenient mode (they are simply ineligible for tweet-identity matching) and
/// fail when `strict_retweet_ids` is set.
inline std::optional<std::string> validate_interaction(
    const Interaction& i, bool strict_retweet_ids = false) {
  if (i.source.empty() || i.target.empty())
    return "empty source or target handle";
  if (i.kind == InteractionKind::kTweet) {
    if (i.source != i.target)
      return "tweet must be a self-loop (source == target)";
  } else {
    if (i.source == i.target)
      return std::string(to_string(i.kind)) + " must connect distinct users";
    if (strict_retweet_ids && i.kind == InteractionKind::kRetweet &&
        i.tweet_id.empty())
      return "retweet is missing a tweet_id";
  }
  return std::nullopt;
}

class TemporalGraph;

/// Slice of a TemporalGraph over a half-open interval. Borrows the parent's
/// interaction storage; must not outlive the parent graph.
struct GraphWindow {
  const TemporalGraph* parent = nullptr;
  Interval interval;
  std::span<const Interaction> interactions;
};

/// Append-only multiset of interactions ordered by timestamp (stable on
/// ties) plus the derived node set. Construction is single-writer; once built
/// the graph is an immutable value safe to share across threads.
class TemporalGraph {
 public:
  TemporalGraph() = default;

  static TemporalGraph from_interactions(std::vector<Interaction> rows) {
    TemporalGraph g;
    std::stable_sort(rows.begin(), rows.end(),
                     [](const Interaction& a, const Interaction& b) {
                       return a.timestamp < b.timestamp;
                     });
    g.interactions_ = std::move(rows);
    for (const Interaction& i : g.interactions_) {
      g.nodes_.insert(i.source);
      g.nodes_.insert(i.target);
    }
    return g;
  }

  /// Inserts one interaction, keeping timestamp order (appends after equal
  /// timestamps). Throws std::invalid_argument on an invariant violation.
  void add(const Interaction& i, bool strict_retweet_ids = false) {
    if (auto err = validate_interaction(i, strict_retweet_ids))
      throw std::invalid_argument(*err);
    auto pos = std::upper_bound(interactions_.begin(), interactions_.end(),
                                i.timestamp,
                                [](Timestamp t, const Interaction& x) {
                                  return t < x.timestamp;
                                });
    interactions_.insert(pos, i);
    nodes_.insert(i.source);
    nodes_.insert(i.target);
  }

  const std::vector<Interaction>& interactions() const { return interactions_; }
  std::size_t size() const { return interactions_.size(); }
  bool empty() const { return interactions_.empty(); }

  /// Every user appearing as source or target, ascending.
  std::vector<UserId> nodes() const {
    return std::vector<UserId>(nodes_.begin(), nodes_.end());
  }
  std::size_t node_count() const { return nodes_.size(); }
  bool contains(const UserId& u) const { return nodes_.count(u) > 0; }

  /// [min, max] interaction timestamps; nullopt for an empty graph.
  std::optional<Interval> span() const {
    if (interactions_.empty()) return std::nullopt;
    return Interval{interactions_.front().timestamp,
                    interactions_.back().timestamp};
  }

  /// Slices to the interactions with start <= timestamp < end.
  /// Throws std::invalid_argument unless start < end.
  GraphWindow window(Timestamp start, Timestamp end) const {
    if (!(start < end))
      throw std::invalid_argument("window start must precede end");
    auto lo = std::lower_bound(interactions_.begin(), interactions_.end(),
                               start, [](const Interaction& x, Timestamp t) {
                                 return x.timestamp < t;
                               });
    auto hi = std::lower_bound(lo, interactions_.end(), end,
                               [](const Interaction& x, Timestamp t) {
                                 return x.timestamp < t;
                               });
    return GraphWindow{this, Interval{start, end},
                       std::span<const Interaction>(
                           interactions_.data() + (lo - interactions_.begin()),
                           static_cast<std::size_t>(hi - lo))};
  }

  GraphWindow window(const Interval& iv) const {
    return window(iv.start, iv.end);
  }

 private:
  std::vector<Interaction> interactions_;
  std::set<UserId> nodes_;
};

/// Simple directed graph projected from a window: self-loops dropped, parallel
/// arcs deduplicated. Node identity is positional; `nodes` is sorted ascending
/// and all adjacency uses indexes into it.
struct SimpleDigraph {
  std::vector<UserId> nodes;  // ascending, unique
  /// Deduplicated arcs (src,dst) sorted lexicographically.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> arcs;
  /// Raw non-tweet interaction count behind each arc (diagnostic weight).
  std::vector<std::uint32_t> arc_weights;
  std::vector<std::vector<std::uint32_t>> out_adj;  // sorted neighbor indexes
  std::vector<std::vector<std::uint32_t>> in_adj;
  /// Earliest original-tweet timestamp per node; absent if the user posted
  /// no original tweet inside the window.
  std::vector<std::optional<Timestamp>> origin;

  std::size_t node_count() const { return nodes.size(); }
  std::size_t arc_count() const { return arcs.size(); }

  std::optional<std::uint32_t> index_of(const UserId& u) const {
    auto it = std::lower_bound(nodes.begin(), nodes.end(), u);
    if (it == nodes.end() || *it != u) return std::nullopt;
    return static_cast<std::uint32_t>(it - nodes.begin());
  }
};

/// Projects a window onto its simple directed graph. Tweet self-loops feed
/// the origin index only; every other interaction contributes a (deduped) arc.
inline SimpleDigraph project(const GraphWindow& w) {
  SimpleDigraph d;
  std::map<UserId, std::uint32_t> index;
  for (const Interaction& i : w.interactions) {
    index.emplace(i.source, 0);
    index.emplace(i.target, 0);
  }
  d.nodes.reserve(index.size());
  for (auto& [user, idx] : index) {
    idx = static_cast<std::uint32_t>(d.nodes.size());
    d.nodes.push_back(user);
  }
  d.origin.assign(d.nodes.size(), std::nullopt);

  std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> arc_count;
  for (const Interaction& i : w.interactions) {
    if (i.kind == InteractionKind::kTweet) {
      std::uint32_t u = index[i.source];
      if (!d.origin[u] || i.timestamp < *d.origin[u]) d.origin[u] = i.timestamp;
      continue;
    }
    ++arc_count[{index[i.source], index[i.target]}];
  }
  d.arcs.reserve(arc_count.size());
  d.arc_weights.reserve(arc_count.size());
  d.out_adj.assign(d.nodes.size(), {});
  d.in_adj.assign(d.nodes.size(), {});
  for (const auto& [arc, cnt] : arc_count) {
    d.arcs.push_back(arc);
    d.arc_weights.push_back(cnt);
    d.out_adj[arc.first].push_back(arc.second);
    d.in_adj[arc.second].push_back(arc.first);
  }
  return d;  // map iteration already yields sorted arcs and adjacency
}

struct DegreeCount {
  std::uint32_t in = 0;
  std::uint32_t out = 0;
};

/// Unique-counterparty degrees, indexed like d.nodes. Isolates get (0,0).
inline std::vector<DegreeCount> degrees(const SimpleDigraph& d) {
  std::vector<DegreeCount> deg(d.node_count());
  for (std::uint32_t v = 0; v < d.node_count(); ++v) {
    deg[v].in = static_cast<std::uint32_t>(d.in_adj[v].size());
    deg[v].out = static_cast<std::uint32_t>(d.out_adj[v].size());
  }
  return deg;
}

}  // namespace commnet
