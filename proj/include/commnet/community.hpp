#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "commnet/graph.hpp"

namespace commnet {

struct CommunityResult {
  std::vector<std::uint32_t> assignment;  // community id per node index, dense
  double modularity = 0.0;
  std::size_t community_count = 0;
};

namespace detail {

// Undirected weighted view used by Louvain. A directed arc contributes
// weight 1 to its unordered pair, so a reciprocal pair weighs 2. Loops only
// appear in aggregated levels; a loop of weight w counts once in m and twice
// in its node's strength.
struct WeightedGraph {
  std::vector<std::vector<std::pair<std::uint32_t, double>>> adj;
  std::vector<double> loop;
  std::vector<double> strength;
  double m = 0.0;

  std::size_t size() const { return adj.size(); }
};

inline WeightedGraph weighted_projection(const SimpleDigraph& d) {
  WeightedGraph g;
  g.adj.resize(d.node_count());
  g.loop.assign(d.node_count(), 0.0);
  std::map<std::pair<std::uint32_t, std::uint32_t>, double> pair_w;
  for (auto [u, v] : d.arcs) {
    auto key = u < v ? std::make_pair(u, v) : std::make_pair(v, u);
    pair_w[key] += 1.0;
  }
  for (const auto& [key, w] : pair_w) {
    g.adj[key.first].emplace_back(key.second, w);
    g.adj[key.second].emplace_back(key.first, w);
    g.m += w;
  }
  for (auto& vec : g.adj) std::sort(vec.begin(), vec.end());
  g.strength.assign(d.node_count(), 0.0);
  for (std::size_t v = 0; v < g.size(); ++v)
    for (auto [u, w] : g.adj[v]) g.strength[v] += w;
  return g;
}

// Densify community ids in order of first appearance over ascending node
// index; returns the number of communities.
inline std::size_t relabel_dense(std::vector<std::uint32_t>& comm) {
  std::map<std::uint32_t, std::uint32_t> label;
  std::uint32_t next = 0;
  for (std::uint32_t& c : comm) {
    auto it = label.find(c);
    if (it == label.end()) it = label.emplace(c, next++).first;
    c = it->second;
  }
  return next;
}

// One local-moving phase. Nodes are visited in a seeded shuffle, repeated
// until a full sweep moves nothing. A node switches community only for a
// strictly positive modularity gain; among equal-gain targets the smallest
// community id wins, and staying put wins over an equal-gain move.
inline bool one_level(const WeightedGraph& g, std::vector<std::uint32_t>& comm,
                      std::mt19937_64& rng) {
  const std::size_t n = g.size();
  std::vector<double> tot(n, 0.0);
  for (std::size_t v = 0; v < n; ++v) tot[comm[v]] += g.strength[v];

  std::vector<std::uint32_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = static_cast<std::uint32_t>(i);
  for (std::size_t i = n; i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(rng() % i);
    std::swap(order[i - 1], order[j]);
  }

  const double m = g.m;
  bool any_move = false;
  bool moved = true;
  while (moved) {
    moved = false;
    for (std::uint32_t v : order) {
      const std::uint32_t old_c = comm[v];
      const double k = g.strength[v];
      tot[old_c] -= k;

      std::map<std::uint32_t, double> neigh;
      neigh[old_c];  // baseline entry even without an edge back
      for (auto [u, w] : g.adj[v])
        if (u != v) neigh[comm[u]] += w;

      auto gain = [&](std::uint32_t c, double w_vc) {
        return w_vc / m - tot[c] * k / (2.0 * m * m);
      };
      std::uint32_t best = old_c;
      double best_gain = gain(old_c, neigh[old_c]);
      for (const auto& [c, w] : neigh) {
        if (c == old_c) continue;
        double gn = gain(c, w);
        if (gn > best_gain) {
          best_gain = gn;
          best = c;
        }
      }
      tot[best] += k;
      comm[v] = best;
      if (best != old_c) {
        moved = true;
        any_move = true;
      }
    }
  }
  return any_move;
}

inline WeightedGraph aggregate(const WeightedGraph& g,
                               const std::vector<std::uint32_t>& comm,
                               std::size_t ncomm) {
  WeightedGraph out;
  out.adj.resize(ncomm);
  out.loop.assign(ncomm, 0.0);
  std::map<std::pair<std::uint32_t, std::uint32_t>, double> pair_w;
  for (std::uint32_t v = 0; v < g.size(); ++v) {
    out.loop[comm[v]] += g.loop[v];
    for (auto [u, w] : g.adj[v]) {
      if (u < v) continue;  // each undirected edge once
      if (u == v) continue;
      std::uint32_t cu = comm[u];
      std::uint32_t cv = comm[v];
      if (cu == cv) {
        out.loop[cu] += w;
      } else {
        auto key = cu < cv ? std::make_pair(cu, cv) : std::make_pair(cv, cu);
        pair_w[key] += w;
      }
    }
  }
  for (const auto& [key, w] : pair_w) {
    out.adj[key.first].emplace_back(key.second, w);
    out.adj[key.second].emplace_back(key.first, w);
  }
  for (auto& vec : out.adj) std::sort(vec.begin(), vec.end());
  out.strength.assign(ncomm, 0.0);
  out.m = 0.0;
  for (std::uint32_t c = 0; c < ncomm; ++c) {
    for (auto [u, w] : out.adj[c]) out.strength[c] += w;
    out.strength[c] += 2.0 * out.loop[c];
    out.m += out.loop[c];
  }
  for (const auto& [key, w] : pair_w) out.m += w;
  return out;
}

}  // namespace detail

/// Modularity of a node partition over the undirected weighted projection:
/// Q = sum_c (e_c / m - (d_c / 2m)^2) with e_c the intra-community weight,
/// d_c the community strength, m the total weight. Zero for edgeless input.
/// Throws std::invalid_argument when the partition length does not match.
inline double modularity(const SimpleDigraph& d,
                         const std::vector<std::uint32_t>& partition) {
  if (partition.size() != d.node_count())
    throw std::invalid_argument("partition size does not match node count");
  detail::WeightedGraph g = detail::weighted_projection(d);
  if (g.m <= 0.0) return 0.0;

  std::uint32_t ncomm = 0;
  for (std::uint32_t c : partition) ncomm = std::max(ncomm, c + 1);
  std::vector<double> internal(ncomm, 0.0);
  std::vector<double> strength(ncomm, 0.0);
  for (std::uint32_t v = 0; v < g.size(); ++v) {
    strength[partition[v]] += g.strength[v];
    for (auto [u, w] : g.adj[v])
      if (u > v && partition[u] == partition[v]) internal[partition[v]] += w;
  }
  double q = 0.0;
  for (std::uint32_t c = 0; c < ncomm; ++c) {
    double frac = strength[c] / (2.0 * g.m);
    q += internal[c] / g.m - frac * frac;
  }
  return q;
}

/// Louvain community detection on the undirected weighted projection. The
/// seed drives only the node-visit shuffle; everything else is deterministic.
/// Community ids are dense and numbered by first appearance in node order.
inline CommunityResult louvain(const SimpleDigraph& d, std::uint64_t seed = 0) {
  const std::size_t n = d.node_count();
  CommunityResult res;
  res.assignment.resize(n);
  for (std::size_t v = 0; v < n; ++v)
    res.assignment[v] = static_cast<std::uint32_t>(v);

  detail::WeightedGraph g = detail::weighted_projection(d);
  if (g.m <= 0.0) {
    res.community_count = n;
    res.modularity = 0.0;
    return res;
  }

  std::mt19937_64 rng(seed);
  for (;;) {
    std::vector<std::uint32_t> comm(g.size());
    for (std::size_t v = 0; v < g.size(); ++v)
      comm[v] = static_cast<std::uint32_t>(v);
    bool improved = detail::one_level(g, comm, rng);
    std::size_t ncomm = detail::relabel_dense(comm);
    for (auto& c : res.assignment) c = comm[c];
    if (!improved || ncomm == g.size()) break;
    g = detail::aggregate(g, comm, ncomm);
  }

  res.community_count = detail::relabel_dense(res.assignment);
  res.modularity = modularity(d, res.assignment);
  return res;
}

}  // namespace commnet
