#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hierpart/execution.hpp"

namespace hierpart {

using VertexId = std::int32_t;
using PartId = std::int32_t;
using Weight = std::int64_t;

struct WeightedEdge {
  VertexId u;
  VertexId v;
  Weight weight = 1;
};

/// Undirected graph in compressed adjacency form with positive integer
/// vertex and edge weights. Each undirected edge is stored in both
/// directions; neighbor lists are sorted by id.
class Graph {
 public:
  Graph() = default;

  /// Takes ownership of CSR arrays and checks every structural invariant
  /// (symmetry, no self-loops or duplicates, positive weights).
  static Graph from_csr(std::vector<std::int64_t> offsets, std::vector<VertexId> adjacency,
                        std::vector<Weight> edge_weights, std::vector<Weight> vertex_weights);

  VertexId num_vertices() const { return static_cast<VertexId>(vertex_weights_.size()); }
  std::int64_t num_edges() const { return static_cast<std::int64_t>(adjacency_.size()) / 2; }

  VertexId degree(VertexId v) const {
    return static_cast<VertexId>(offsets_[v + 1] - offsets_[v]);
  }
  std::span<const VertexId> neighbors(VertexId v) const {
    return {adjacency_.data() + offsets_[v], static_cast<std::size_t>(degree(v))};
  }
  std::span<const Weight> edge_weights(VertexId v) const {
    return {edge_weights_.data() + offsets_[v], static_cast<std::size_t>(degree(v))};
  }
  Weight vertex_weight(VertexId v) const { return vertex_weights_[v]; }

  std::span<const std::int64_t> offsets() const { return offsets_; }
  std::span<const VertexId> adjacency() const { return adjacency_; }
  std::span<const Weight> edge_weights() const { return edge_weights_; }
  std::span<const Weight> vertex_weights() const { return vertex_weights_; }

  Weight total_vertex_weight() const { return total_vertex_weight_; }
  Weight max_vertex_weight() const;
  bool has_unit_weights() const;

  /// Each undirected edge once, with u < v, ordered by (u, v).
  std::vector<WeightedEdge> edge_list() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::vector<std::int64_t> offsets_{0};
  std::vector<VertexId> adjacency_;
  std::vector<Weight> edge_weights_;
  std::vector<Weight> vertex_weights_;
  Weight total_vertex_weight_ = 0;
};

/// Builds a graph from an undirected edge list. An empty `vertex_weights`
/// means unit weights. Self-loops, out-of-range ids, duplicate edges and
/// non-positive weights throw InvalidArgument.
Graph build_graph(std::span<const WeightedEdge> edges, VertexId num_vertices,
                  std::span<const Weight> vertex_weights = {});

/// Per-vertex part assignment.
struct Partition {
  std::vector<PartId> parts;
  PartId num_parts = 0;

  /// Validates that every id lies in [0, num_parts).
  static Partition make(std::vector<PartId> parts, PartId num_parts);
  /// Uses max id + 1 as the part count.
  static Partition from_ids(std::vector<PartId> parts);
  static Partition uniform(VertexId n, PartId part = 0, PartId num_parts = 1);

  VertexId size() const { return static_cast<VertexId>(parts.size()); }
  PartId operator[](VertexId v) const { return parts[v]; }

  friend bool operator==(const Partition&, const Partition&) = default;
};

/// Number of vertices per part, indexed by part id.
std::vector<std::int64_t> part_sizes(const Partition& p);
/// Vertex weight per part.
std::vector<Weight> part_weights(const Graph& g, const Partition& p);

/// Throws InvalidArgument when `p` does not cover exactly the vertices of `g`.
void check_compatible(const Graph& g, const Partition& p);

struct Subgraph {
  Graph graph;
  std::vector<VertexId> local_to_global;
};

/// Induced subgraph on `vertices`; local id k corresponds to vertices[k].
Subgraph extract_subgraph(const Graph& g, std::span<const VertexId> vertices);

/// Total weight of edges whose endpoints lie in different parts.
Weight edge_cut(const Graph& g, const Partition& p, Execution exec = Execution::Serial);

struct PartMetrics {
  std::int64_t vertex_count = 0;
  /// Cut edges with at least one endpoint in the part; a cut edge counts
  /// once for each of its two parts.
  std::int64_t boundary_edge_count = 0;

  friend bool operator==(const PartMetrics&, const PartMetrics&) = default;
};

std::vector<PartMetrics> per_rank_metrics(const Graph& g, const Partition& p);

struct BalanceStats {
  double max = 0.0;
  double min = 0.0;
  double max_over_min = 0.0;
  double max_over_avg = 0.0;
};

/// Throws InvalidArgument on empty input or any non-positive entry.
BalanceStats balance_stats(std::span<const std::int64_t> sizes);

}  // namespace hierpart
