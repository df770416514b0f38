#pragma once

// Test-only fixtures and brute-force oracles. Nothing here calls into the
// partitioner code paths it is used to check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

#include "hierpart/graph.hpp"

namespace hierpart::testing {

inline Graph path_graph(VertexId n) {
  std::vector<WeightedEdge> e;
  for (VertexId v = 0; v + 1 < n; ++v) e.push_back({v, v + 1, 1});
  return build_graph(e, n);
}

inline Graph cycle_graph(VertexId n) {
  std::vector<WeightedEdge> e;
  for (VertexId v = 0; v < n; ++v) e.push_back({v, (v + 1) % n, 1});
  return build_graph(e, n);
}

inline Graph complete_graph(VertexId n) {
  std::vector<WeightedEdge> e;
  for (VertexId u = 0; u < n; ++u)
    for (VertexId v = u + 1; v < n; ++v) e.push_back({u, v, 1});
  return build_graph(e, n);
}

struct RawGraph {
  VertexId n = 0;
  std::vector<WeightedEdge> edges;
};

/// Random simple graph with edge probability `density` and weights in [1, max_w].
inline RawGraph random_raw_graph(std::mt19937_64& rng, VertexId n, double density, Weight max_w) {
  RawGraph raw{n, {}};
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_int_distribution<Weight> weight(1, max_w);
  for (VertexId u = 0; u < n; ++u)
    for (VertexId v = u + 1; v < n; ++v)
      if (coin(rng) < density) raw.edges.push_back({u, v, weight(rng)});
  return raw;
}

inline Partition random_partition(std::mt19937_64& rng, VertexId n, PartId k) {
  std::uniform_int_distribution<PartId> pick(0, k - 1);
  std::vector<PartId> parts(static_cast<std::size_t>(n));
  for (auto& p : parts) p = pick(rng);
  return Partition{std::move(parts), k};
}

/// Cut by scanning the raw edge list once per undirected edge.
inline Weight brute_force_cut(const std::vector<WeightedEdge>& edges, const std::vector<PartId>& parts) {
  Weight cut = 0;
  for (const auto& e : edges)
    if (parts[e.u] != parts[e.v]) cut += e.weight;
  return cut;
}

/// Minimum cut over every 2-coloring whose part-0 weight lies within
/// [lo, hi]. Exponential; only for tiny graphs.
inline Weight exhaustive_min_bisection_cut(const Graph& g, double lo, double hi) {
  const auto edges = g.edge_list();
  const VertexId n = g.num_vertices();
  Weight best = std::numeric_limits<Weight>::max();
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    std::vector<PartId> parts(static_cast<std::size_t>(n));
    Weight w0 = 0;
    for (VertexId v = 0; v < n; ++v) {
      parts[v] = (mask >> v) & 1u;
      if (parts[v] == 0) w0 += g.vertex_weight(v);
    }
    if (static_cast<double>(w0) < lo - 1e-9 || static_cast<double>(w0) > hi + 1e-9) continue;
    best = std::min(best, brute_force_cut(edges, parts));
  }
  return best;
}

inline std::int64_t count_distinct(const std::vector<PartId>& ids) {
  std::vector<PartId> s = ids;
  std::sort(s.begin(), s.end());
  return std::unique(s.begin(), s.end()) - s.begin();
}

}  // namespace hierpart::testing
