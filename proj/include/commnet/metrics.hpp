#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

#include "commnet/graph.hpp"

namespace commnet {

/// Per-user, per-window measurement bundle. `rank` is a total order 1..N,
/// descending betweenness with (in-degree desc, handle asc) tie-breaking.
struct NodeMetrics {
  UserId user;
  std::uint32_t in_degree = 0;
  std::uint32_t out_degree = 0;
  double betweenness = 0.0;
  std::uint32_t rank = 0;
};

namespace detail {

// Sources are processed in fixed-size blocks; each block accumulates its
// per-source dependencies in ascending source order and blocks are merged in
// ascending block order. The summation order is therefore independent of the
// thread count, which keeps parallel and serial runs bit-identical.
constexpr std::uint32_t kBrandesBlock = 64;

struct BrandesScratch {
  std::vector<double> sigma;
  std::vector<std::int32_t> dist;
  std::vector<double> delta;
  std::vector<std::vector<std::uint32_t>> preds;
  std::vector<std::uint32_t> order;
  std::vector<std::uint32_t> queue;

  explicit BrandesScratch(std::size_t n)
      : sigma(n, 0.0), dist(n, -1), delta(n, 0.0), preds(n) {
    order.reserve(n);
    queue.reserve(n);
  }
};

inline void accumulate_source(const SimpleDigraph& d, std::uint32_t s,
                              BrandesScratch& sc, std::vector<double>& acc) {
  const std::size_t n = d.node_count();
  sc.order.clear();
  sc.queue.clear();

  sc.dist[s] = 0;
  sc.sigma[s] = 1.0;
  sc.queue.push_back(s);
  std::size_t head = 0;
  while (head < sc.queue.size()) {
    std::uint32_t v = sc.queue[head++];
    sc.order.push_back(v);
    for (std::uint32_t w : d.out_adj[v]) {
      if (sc.dist[w] < 0) {
        sc.dist[w] = sc.dist[v] + 1;
        sc.queue.push_back(w);
      }
      if (sc.dist[w] == sc.dist[v] + 1) {
        sc.sigma[w] += sc.sigma[v];
        sc.preds[w].push_back(v);
      }
    }
  }

  for (auto it = sc.order.rbegin(); it != sc.order.rend(); ++it) {
    std::uint32_t w = *it;
    for (std::uint32_t p : sc.preds[w])
      sc.delta[p] += sc.sigma[p] / sc.sigma[w] * (1.0 + sc.delta[w]);
    if (w != s) acc[w] += sc.delta[w];
  }

  for (std::uint32_t v : sc.order) {
    sc.sigma[v] = 0.0;
    sc.dist[v] = -1;
    sc.delta[v] = 0.0;
    sc.preds[v].clear();
  }
  (void)n;
}

}  // namespace detail

/// Directed, unweighted, unnormalized betweenness (endpoints excluded),
/// indexed like d.nodes. Deterministic for any `threads` value.
inline std::vector<double> betweenness(const SimpleDigraph& d,
                                       unsigned threads = 1) {
  const std::uint32_t n = static_cast<std::uint32_t>(d.node_count());
  std::vector<double> result(n, 0.0);
  if (n == 0) return result;

  const std::uint32_t nblocks =
      (n + detail::kBrandesBlock - 1) / detail::kBrandesBlock;
  std::vector<std::vector<double>> block_acc(nblocks);

  auto run_block = [&](std::uint32_t b) {
    detail::BrandesScratch sc(n);
    auto& acc = block_acc[b];
    acc.assign(n, 0.0);
    const std::uint32_t lo = b * detail::kBrandesBlock;
    const std::uint32_t hi = std::min(n, lo + detail::kBrandesBlock);
    for (std::uint32_t s = lo; s < hi; ++s)
      detail::accumulate_source(d, s, sc, acc);
  };

  if (threads <= 1 || nblocks <= 1) {
    for (std::uint32_t b = 0; b < nblocks; ++b) run_block(b);
  } else {
    std::atomic<std::uint32_t> next{0};
    auto worker = [&] {
      for (;;) {
        std::uint32_t b = next.fetch_add(1);
        if (b >= nblocks) break;
        run_block(b);
      }
    };
    std::vector<std::thread> pool;
    unsigned nt = std::min<unsigned>(threads, nblocks);
    pool.reserve(nt);
    for (unsigned t = 0; t < nt; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  for (std::uint32_t b = 0; b < nblocks; ++b)
    for (std::uint32_t v = 0; v < n; ++v) result[v] += block_acc[b][v];
  return result;
}

/// Directed density |arcs| / (N * (N - 1)); 0 for N <= 1.
inline double density(const SimpleDigraph& d) {
  const double n = static_cast<double>(d.node_count());
  if (n <= 1.0) return 0.0;
  return static_cast<double>(d.arc_count()) / (n * (n - 1.0));
}

struct ClusteringResult {
  std::vector<double> per_node;  // indexed like d.nodes, each in [0,1]
  double average = 0.0;
};

/// Local clustering coefficients on the undirected projection of the arc
/// set. C(v) = 2 T(v) / (k(v) (k(v)-1)), zero when k(v) < 2.
inline ClusteringResult clustering(const SimpleDigraph& d) {
  const std::size_t n = d.node_count();
  ClusteringResult res;
  res.per_node.assign(n, 0.0);
  if (n == 0) return res;

  // Undirected neighbor sets.
  std::vector<std::vector<std::uint32_t>> nbr(n);
  for (auto [u, v] : d.arcs) {
    nbr[u].push_back(v);
    nbr[v].push_back(u);
  }
  for (auto& vec : nbr) {
    std::sort(vec.begin(), vec.end());
    vec.erase(std::unique(vec.begin(), vec.end()), vec.end());
  }

  auto connected = [&](std::uint32_t a, std::uint32_t b) {
    const auto& small = nbr[a].size() <= nbr[b].size() ? nbr[a] : nbr[b];
    std::uint32_t key = nbr[a].size() <= nbr[b].size() ? b : a;
    return std::binary_search(small.begin(), small.end(), key);
  };

  double total = 0.0;
  for (std::uint32_t v = 0; v < n; ++v) {
    const std::size_t k = nbr[v].size();
    if (k < 2) continue;
    std::size_t tri = 0;
    for (std::size_t i = 0; i + 1 < k; ++i)
      for (std::size_t j = i + 1; j < k; ++j)
        if (connected(nbr[v][i], nbr[v][j])) ++tri;
    res.per_node[v] =
        2.0 * static_cast<double>(tri) / (static_cast<double>(k) * (k - 1));
    total += res.per_node[v];
  }
  res.average = total / static_cast<double>(n);
  return res;
}

namespace detail {

/// Ranking comparator shared by every ranked view: betweenness descending,
/// then in-degree descending, then handle ascending.
inline bool rank_less(const NodeMetrics& a, const NodeMetrics& b) {
  if (a.betweenness != b.betweenness) return a.betweenness > b.betweenness;
  if (a.in_degree != b.in_degree) return a.in_degree > b.in_degree;
  return a.user < b.user;
}

}  // namespace detail

/// Full per-node metrics for a window, sorted by rank (1..N populated).
inline std::vector<NodeMetrics> compute_node_metrics(const SimpleDigraph& d,
                                                     unsigned threads = 1) {
  std::vector<DegreeCount> deg = degrees(d);
  std::vector<double> bc = betweenness(d, threads);
  std::vector<NodeMetrics> out(d.node_count());
  for (std::uint32_t v = 0; v < d.node_count(); ++v)
    out[v] = NodeMetrics{d.nodes[v], deg[v].in, deg[v].out, bc[v], 0};
  std::sort(out.begin(), out.end(), detail::rank_less);
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i].rank = static_cast<std::uint32_t>(i + 1);
  return out;
}

/// Top-k slice of a metrics collection, re-ranked 1..min(k, N). The result is
/// a function of the input multiset only (input order does not matter).
inline std::vector<NodeMetrics> rank_top_k(std::vector<NodeMetrics> metrics,
                                           std::size_t k) {
  std::sort(metrics.begin(), metrics.end(), detail::rank_less);
  if (metrics.size() > k) metrics.resize(k);
  for (std::size_t i = 0; i < metrics.size(); ++i)
    metrics[i].rank = static_cast<std::uint32_t>(i + 1);
  return metrics;
}

}  // namespace commnet
