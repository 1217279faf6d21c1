#pragma once

#include <cstdint>
#include <cstdio>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "commnet/graph.hpp"
#include "commnet/metrics.hpp"
#include "commnet/roles.hpp"

namespace commnet {

namespace detail {

inline std::string xml_escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

inline std::string dot_escape(std::string_view s) {
  std::string out;
  out.reserve(s.size() + 2);
  out += '"';
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

inline std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

}  // namespace detail

/// GEXF 1.3 document for one window graph. Nodes carry in_degree,
/// out_degree, betweenness, and role (empty string when unassigned); arcs
/// carry their multiplicity as weight. Output is deterministic: nodes in
/// ascending id order, edges in arc order.
inline std::string export_gexf(const SimpleDigraph& d,
                               const std::vector<NodeMetrics>& metrics,
                               const std::vector<RoleAssignment>& assignments) {
  std::map<UserId, const NodeMetrics*> by_user;
  for (const NodeMetrics& m : metrics) by_user[m.user] = &m;
  std::map<UserId, Role> role_of;
  for (const RoleAssignment& a : assignments) role_of[a.user] = a.role;

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<gexf xmlns=\"http://gexf.net/1.3\" version=\"1.3\">\n";
  out += "  <graph defaultedgetype=\"directed\">\n";
  out += "    <attributes class=\"node\">\n";
  out += "      <attribute id=\"0\" title=\"in_degree\" type=\"integer\"/>\n";
  out += "      <attribute id=\"1\" title=\"out_degree\" type=\"integer\"/>\n";
  out += "      <attribute id=\"2\" title=\"betweenness\" type=\"double\"/>\n";
  out += "      <attribute id=\"3\" title=\"role\" type=\"string\"/>\n";
  out += "    </attributes>\n";

  out += "    <nodes>\n";
  for (const UserId& u : d.nodes) {
    std::string id = detail::xml_escape(u.str());
    out += "      <node id=\"" + id + "\" label=\"" + id + "\">\n";
    out += "        <attvalues>\n";
    std::uint32_t in = 0, deg_out = 0;
    double bc = 0.0;
    if (auto it = by_user.find(u); it != by_user.end()) {
      in = it->second->in_degree;
      deg_out = it->second->out_degree;
      bc = it->second->betweenness;
    }
    out += "          <attvalue for=\"0\" value=\"" + std::to_string(in) +
           "\"/>\n";
    out += "          <attvalue for=\"1\" value=\"" + std::to_string(deg_out) +
           "\"/>\n";
    out += "          <attvalue for=\"2\" value=\"" + detail::fixed6(bc) +
           "\"/>\n";
    std::string role;
    if (auto it = role_of.find(u); it != role_of.end())
      role = to_string(it->second);
    out += "          <attvalue for=\"3\" value=\"" +
           detail::xml_escape(role) + "\"/>\n";
    out += "        </attvalues>\n";
    out += "      </node>\n";
  }
  out += "    </nodes>\n";

  out += "    <edges>\n";
  for (std::size_t e = 0; e < d.arcs.size(); ++e) {
    auto [s, t] = d.arcs[e];
    out += "      <edge id=\"" + std::to_string(e) + "\" source=\"" +
           detail::xml_escape(d.nodes[s].str()) + "\" target=\"" +
           detail::xml_escape(d.nodes[t].str()) + "\" weight=\"" +
           std::to_string(d.arc_weights[e]) + "\"/>\n";
  }
  out += "    </edges>\n";
  out += "  </graph>\n";
  out += "</gexf>\n";
  return out;
}

/// Graphviz DOT form of a window graph. Every node is declared (role
/// attribute when assigned); arcs carry their multiplicity as weight.
inline std::string export_dot(const SimpleDigraph& d,
                              const std::vector<RoleAssignment>& assignments) {
  std::map<UserId, Role> role_of;
  for (const RoleAssignment& a : assignments) role_of[a.user] = a.role;

  std::string out = "digraph interactions {\n";
  for (const UserId& u : d.nodes) {
    out += "  " + detail::dot_escape(u.str());
    if (auto it = role_of.find(u); it != role_of.end())
      out += " [role=" + detail::dot_escape(to_string(it->second)) + "]";
    out += ";\n";
  }
  for (std::size_t e = 0; e < d.arcs.size(); ++e) {
    auto [s, t] = d.arcs[e];
    out += "  " + detail::dot_escape(d.nodes[s].str()) + " -> " +
           detail::dot_escape(d.nodes[t].str()) + " [weight=" +
           std::to_string(d.arc_weights[e]) + "];\n";
  }
  out += "}\n";
  return out;
}

}  // namespace commnet
