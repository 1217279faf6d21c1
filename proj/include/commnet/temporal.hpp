#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "commnet/community.hpp"
#include "commnet/graph.hpp"
#include "commnet/metrics.hpp"
#include "commnet/roles.hpp"
#include "commnet/timeutil.hpp"

namespace commnet {

/// Everything measured for one window. `metrics` holds the full per-node
/// table (rank order) so trajectories can read betweenness for users outside
/// the top-K; serialized reports carry only the top_k slice.
struct WindowReport {
  Interval interval{};
  std::size_t node_count = 0;
  std::size_t arc_count = 0;
  double density = 0.0;
  double avg_clustering = 0.0;
  double modularity = 0.0;
  std::size_t community_count = 0;
  std::vector<std::size_t> community_sizes;  // by community id
  std::size_t new_unique_users = 0;
  std::vector<NodeMetrics> top_k;
  std::vector<NodeMetrics> metrics;
  std::vector<RoleAssignment> roles;
  std::vector<BridgeMotif> bridges;
};

struct TrajectoryPoint {
  Interval interval{};
  std::optional<std::uint32_t> rank;  // present only in the window's top-K
  double betweenness = 0.0;
  std::optional<Role> role;
};

struct Trajectory {
  UserId user;
  std::vector<TrajectoryPoint> points;
};

/// Calendar-month windows covering [first, last].
inline std::vector<Interval> month_windows(Timestamp first, Timestamp last) {
  if (last < first) throw std::invalid_argument("window span is reversed");
  std::vector<Interval> out;
  Timestamp m = month_floor(first);
  while (m.sec <= last.sec) {
    Timestamp next = add_months(m, 1);
    out.push_back(Interval{m, next});
    m = next;
  }
  return out;
}

/// Fixed-duration windows covering [first, last], anchored at first.
inline std::vector<Interval> duration_windows(Timestamp first, Timestamp last,
                                              std::int64_t seconds) {
  if (seconds <= 0) throw std::invalid_argument("window duration must be positive");
  if (last < first) throw std::invalid_argument("window span is reversed");
  std::vector<Interval> out;
  Timestamp s = first;
  while (s.sec <= last.sec) {
    Timestamp e{s.sec + seconds};
    out.push_back(Interval{s, e});
    s = e;
  }
  return out;
}

/// Per-window counts of users whose globally earliest interaction (as source
/// or target) lands in that window. Aligned with `windows`.
inline std::vector<std::size_t> new_unique_users(
    const TemporalGraph& g, const std::vector<Interval>& windows) {
  std::vector<std::size_t> counts(windows.size(), 0);
  std::set<UserId> seen;
  std::size_t w = 0;
  for (const Interaction& i : g.interactions()) {
    // Interactions arrive in time order, so the window cursor only advances.
    while (w < windows.size() && !(i.timestamp < windows[w].end)) ++w;
    bool inside = w < windows.size() && windows[w].contains(i.timestamp);
    for (const UserId* u : {&i.source, &i.target}) {
      if (seen.insert(*u).second && inside) ++counts[w];
    }
  }
  return counts;
}

struct AnalyzeOptions {
  RoleThresholds thresholds;
  std::optional<UserId> seed_user;
  std::uint64_t louvain_seed = 0;
  BridgeHop bridge_hop = BridgeHop::kSameTweet;
  unsigned jobs = 1;
};

namespace detail {

inline void validate_windows(const std::vector<Interval>& windows) {
  for (std::size_t i = 0; i < windows.size(); ++i) {
    if (!(windows[i].start < windows[i].end))
      throw std::invalid_argument("window " + std::to_string(i) +
                                  " is empty or reversed");
    if (i > 0 && windows[i].start < windows[i - 1].end)
      throw std::invalid_argument("windows overlap or are out of order at " +
                                  std::to_string(i));
  }
}

inline WindowReport analyze_one(const TemporalGraph& g, Interval interval,
                                const AnalyzeOptions& opt,
                                std::vector<std::string>& warnings) {
  WindowReport r;
  r.interval = interval;
  GraphWindow w = g.window(interval);
  SimpleDigraph d = project(w);
  r.node_count = d.node_count();
  r.arc_count = d.arc_count();
  if (r.node_count == 0) return r;

  r.density = density(d);
  r.avg_clustering = clustering(d).average;
  CommunityResult comm = louvain(d, opt.louvain_seed);
  r.modularity = comm.modularity;
  r.community_count = comm.community_count;
  r.community_sizes.assign(comm.community_count, 0);
  for (std::uint32_t c : comm.assignment) ++r.community_sizes[c];

  r.metrics = compute_node_metrics(d);
  r.top_k = rank_top_k(r.metrics, opt.thresholds.top_k);

  std::optional<UserId> seed = opt.seed_user;
  if (seed && !d.index_of(*seed)) {
    warnings.push_back("seed user '" + seed->str() + "' absent from window " +
                       interval_label(interval));
    seed = std::nullopt;
  }
  r.roles = classify(d, interval, r.metrics, opt.thresholds, seed, &warnings);
  r.bridges = find_bridges(w, r.roles, opt.thresholds, opt.bridge_hop);
  return r;
}

}  // namespace detail

/// Runs the full measurement pipeline over ordered disjoint windows. Windows
/// may be processed in parallel (opt.jobs); reports are assembled in window
/// order and are identical for any job count. Throws std::invalid_argument
/// for a malformed window list or a seed user absent from the whole graph.
inline std::vector<WindowReport> analyze_windows(
    const TemporalGraph& g, const std::vector<Interval>& windows,
    const AnalyzeOptions& opt, std::vector<std::string>* warnings = nullptr) {
  detail::validate_windows(windows);
  if (opt.seed_user && !g.contains(*opt.seed_user))
    throw std::invalid_argument("seed user '" + opt.seed_user->str() +
                                "' is not present in the input");

  std::vector<WindowReport> reports(windows.size());
  std::vector<std::vector<std::string>> warn(windows.size());

  unsigned jobs = std::max(1u, opt.jobs);
  jobs = static_cast<unsigned>(
      std::min<std::size_t>(jobs, std::max<std::size_t>(1, windows.size())));
  if (jobs <= 1) {
    for (std::size_t i = 0; i < windows.size(); ++i)
      reports[i] = detail::analyze_one(g, windows[i], opt, warn[i]);
  } else {
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (;;) {
        std::size_t i = next.fetch_add(1);
        if (i >= windows.size()) break;
        reports[i] = detail::analyze_one(g, windows[i], opt, warn[i]);
      }
    };
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  std::vector<std::size_t> fresh = new_unique_users(g, windows);
  for (std::size_t i = 0; i < reports.size(); ++i)
    reports[i].new_unique_users = fresh[i];
  if (warnings)
    for (auto& wv : warn)
      warnings->insert(warnings->end(), wv.begin(), wv.end());
  return reports;
}

/// Per-window rank, betweenness, and role for one user. Always one point per
/// report; unknown users get zero betweenness and no rank anywhere.
inline Trajectory trajectory(const UserId& user,
                             const std::vector<WindowReport>& reports) {
  Trajectory t;
  t.user = user;
  t.points.reserve(reports.size());
  for (const WindowReport& r : reports) {
    TrajectoryPoint p;
    p.interval = r.interval;
    for (const NodeMetrics& m : r.metrics) {
      if (m.user == user) {
        p.betweenness = m.betweenness;
        break;
      }
    }
    for (const NodeMetrics& m : r.top_k) {
      if (m.user == user) {
        p.rank = m.rank;
        break;
      }
    }
    for (const RoleAssignment& a : r.roles) {
      if (a.user == user) {
        p.role = a.role;
        break;
      }
    }
    t.points.push_back(std::move(p));
  }
  return t;
}

/// Ordered (window, role) history for every user that ever held a role.
inline std::map<UserId, std::vector<std::pair<Interval, Role>>>
role_persistence(const std::vector<WindowReport>& reports) {
  std::map<UserId, std::vector<std::pair<Interval, Role>>> out;
  for (const WindowReport& r : reports)
    for (const RoleAssignment& a : r.roles)
      out[a.user].emplace_back(r.interval, a.role);
  return out;
}

}  // namespace commnet
