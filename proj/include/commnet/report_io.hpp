#pragma once

#include <cstdint>
#include <cstdio>
#include <string>
#include <string_view>
#include <vector>

#include "commnet/graph_export.hpp"
#include "commnet/temporal.hpp"

namespace commnet {

namespace detail {

inline std::string json_escape(std::string_view s) {
  std::string out;
  out.reserve(s.size() + 2);
  out += '"';
  for (unsigned char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (c < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += static_cast<char>(c);
        }
    }
  }
  out += '"';
  return out;
}

inline std::string fixed3(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

inline void append_metrics_json(std::string& out, const NodeMetrics& m,
                                const std::string& role) {
  out += "{\"user\": " + json_escape(m.user.str());
  out += ", \"in_degree\": " + std::to_string(m.in_degree);
  out += ", \"out_degree\": " + std::to_string(m.out_degree);
  out += ", \"betweenness\": " + fixed6(m.betweenness);
  out += ", \"rank\": " + std::to_string(m.rank);
  out += ", \"role\": " + json_escape(role);
  out += "}";
}

}  // namespace detail

/// JSON document for an ordered report list. Field order and number
/// formatting are fixed (reals at 6 decimals), so identical reports yield
/// identical bytes. Schema documented in docs/report_schema.md.
inline std::string write_report_json(const std::vector<WindowReport>& reports) {
  std::string out = "[";
  bool first_report = true;
  for (const WindowReport& r : reports) {
    if (!first_report) out += ",";
    first_report = false;
    out += "\n  {";
    out += "\n    \"interval\": {\"start\": " +
           detail::json_escape(format_rfc3339(r.interval.start)) +
           ", \"end\": " + detail::json_escape(format_rfc3339(r.interval.end)) +
           ", \"label\": " + detail::json_escape(interval_label(r.interval)) +
           "},";
    out += "\n    \"node_count\": " + std::to_string(r.node_count) + ",";
    out += "\n    \"arc_count\": " + std::to_string(r.arc_count) + ",";
    out += "\n    \"density\": " + detail::fixed6(r.density) + ",";
    out += "\n    \"avg_clustering\": " + detail::fixed6(r.avg_clustering) + ",";
    out += "\n    \"modularity\": " + detail::fixed6(r.modularity) + ",";
    out += "\n    \"community_count\": " + std::to_string(r.community_count) +
           ",";
    out += "\n    \"community_sizes\": [";
    for (std::size_t i = 0; i < r.community_sizes.size(); ++i) {
      if (i) out += ", ";
      out += std::to_string(r.community_sizes[i]);
    }
    out += "],";
    out += "\n    \"new_unique_users\": " + std::to_string(r.new_unique_users) +
           ",";

    out += "\n    \"top_k\": [";
    for (std::size_t i = 0; i < r.top_k.size(); ++i) {
      if (i) out += ",";
      out += "\n      ";
      std::string role;
      for (const RoleAssignment& a : r.roles)
        if (a.user == r.top_k[i].user) role = to_string(a.role);
      detail::append_metrics_json(out, r.top_k[i], role);
    }
    out += r.top_k.empty() ? "]," : "\n    ],";

    out += "\n    \"roles\": [";
    for (std::size_t i = 0; i < r.roles.size(); ++i) {
      if (i) out += ",";
      const RoleAssignment& a = r.roles[i];
      out += "\n      {\"user\": " + detail::json_escape(a.user.str());
      out += ", \"role\": " + detail::json_escape(to_string(a.role));
      out += ", \"rank\": " + std::to_string(a.rank);
      out += ", \"evidence\": [";
      for (std::size_t j = 0; j < a.evidence.size(); ++j) {
        if (j) out += ", ";
        out += detail::json_escape(a.evidence[j]);
      }
      out += "]}";
    }
    out += r.roles.empty() ? "]," : "\n    ],";

    out += "\n    \"bridges\": [";
    for (std::size_t i = 0; i < r.bridges.size(); ++i) {
      if (i) out += ",";
      const BridgeMotif& b = r.bridges[i];
      out += "\n      {\"bridge\": " + detail::json_escape(b.bridge.str());
      out += ", \"influencer\": " + detail::json_escape(b.influencer.str());
      out += ", \"engager\": " + detail::json_escape(b.engager.str());
      out += ", \"tweet_id\": " + detail::json_escape(b.tweet_id);
      out += "}";
    }
    out += r.bridges.empty() ? "]" : "\n    ]";
    out += "\n  }";
  }
  out += first_report ? "]\n" : "\n]\n";
  return out;
}

/// Central-user table for one window: user, in_degree, out_degree,
/// betweenness (3 decimals), rank, role (blank when none).
inline std::string write_topk_csv(const WindowReport& r) {
  std::string out = "user,in_degree,out_degree,betweenness,rank,role\n";
  for (const NodeMetrics& m : r.top_k) {
    std::string role;
    for (const RoleAssignment& a : r.roles)
      if (a.user == m.user) role = to_string(a.role);
    out += m.user.str() + "," + std::to_string(m.in_degree) + "," +
           std::to_string(m.out_degree) + "," + detail::fixed3(m.betweenness) +
           "," + std::to_string(m.rank) + "," + role + "\n";
  }
  return out;
}

/// One row per window: interval, rank (blank outside the top-K),
/// betweenness, role (blank when none).
inline std::string write_trajectory_csv(const Trajectory& t) {
  std::string out = "interval,rank,betweenness,role\n";
  for (const TrajectoryPoint& p : t.points) {
    out += interval_label(p.interval) + ",";
    if (p.rank) out += std::to_string(*p.rank);
    out += "," + detail::fixed6(p.betweenness) + ",";
    if (p.role) out += to_string(*p.role);
    out += "\n";
  }
  return out;
}

}  // namespace commnet
