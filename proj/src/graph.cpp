#include "hierpart/graph.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "hierpart/errors.hpp"

namespace hierpart {

namespace {

std::string vertex_str(VertexId v) { return std::to_string(v); }

}  // namespace

Graph Graph::from_csr(std::vector<std::int64_t> offsets, std::vector<VertexId> adjacency,
                      std::vector<Weight> edge_weights, std::vector<Weight> vertex_weights) {
  const auto nv = static_cast<std::int64_t>(vertex_weights.size());
  if (static_cast<std::int64_t>(offsets.size()) != nv + 1 || offsets.front() != 0)
    throw InvalidArgument("graph: offsets must have num_vertices + 1 entries starting at 0");
  if (offsets.back() != static_cast<std::int64_t>(adjacency.size()))
    throw InvalidArgument("graph: last offset must equal adjacency length");
  if (edge_weights.size() != adjacency.size())
    throw InvalidArgument("graph: edge weights must parallel adjacency");

  Graph g;
  for (std::int64_t v = 0; v < nv; ++v) {
    if (offsets[v + 1] < offsets[v]) throw InvalidArgument("graph: offsets must be non-decreasing");
    if (vertex_weights[v] < 1)
      throw InvalidArgument("graph: vertex " + vertex_str(static_cast<VertexId>(v)) +
                            " has non-positive weight");
    g.total_vertex_weight_ += vertex_weights[v];
  }
  g.offsets_ = std::move(offsets);
  g.adjacency_ = std::move(adjacency);
  g.edge_weights_ = std::move(edge_weights);
  g.vertex_weights_ = std::move(vertex_weights);

  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    auto nbrs = g.neighbors(v);
    auto wts = g.edge_weights(v);
    for (std::size_t k = 0; k < nbrs.size(); ++k) {
      const VertexId u = nbrs[k];
      if (u < 0 || u >= g.num_vertices())
        throw InvalidArgument("graph: neighbor id out of range at vertex " + vertex_str(v));
      if (u == v) throw InvalidArgument("graph: self-loop at vertex " + vertex_str(v));
      if (k > 0 && nbrs[k - 1] >= u)
        throw InvalidArgument("graph: neighbors of vertex " + vertex_str(v) +
                              " must be strictly increasing");
      if (wts[k] < 1) throw InvalidArgument("graph: non-positive edge weight at vertex " + vertex_str(v));
      auto back = g.neighbors(u);
      auto it = std::lower_bound(back.begin(), back.end(), v);
      if (it == back.end() || *it != v)
        throw InvalidArgument("graph: adjacency is not symmetric between " + vertex_str(v) +
                              " and " + vertex_str(u));
      if (g.edge_weights(u)[static_cast<std::size_t>(it - back.begin())] != wts[k])
        throw InvalidArgument("graph: edge weight differs by direction between " + vertex_str(v) +
                              " and " + vertex_str(u));
    }
  }
  return g;
}

Weight Graph::max_vertex_weight() const {
  return vertex_weights_.empty() ? 0 : *std::max_element(vertex_weights_.begin(), vertex_weights_.end());
}

bool Graph::has_unit_weights() const {
  auto is_one = [](Weight w) { return w == 1; };
  return std::all_of(vertex_weights_.begin(), vertex_weights_.end(), is_one) &&
         std::all_of(edge_weights_.begin(), edge_weights_.end(), is_one);
}

std::vector<WeightedEdge> Graph::edge_list() const {
  std::vector<WeightedEdge> edges;
  edges.reserve(static_cast<std::size_t>(num_edges()));
  for (VertexId v = 0; v < num_vertices(); ++v) {
    auto nbrs = neighbors(v);
    auto wts = edge_weights(v);
    for (std::size_t k = 0; k < nbrs.size(); ++k)
      if (v < nbrs[k]) edges.push_back({v, nbrs[k], wts[k]});
  }
  return edges;
}

Graph build_graph(std::span<const WeightedEdge> edges, VertexId num_vertices,
                  std::span<const Weight> vertex_weights) {
  if (num_vertices < 0) throw InvalidArgument("build_graph: negative vertex count");
  if (!vertex_weights.empty() && static_cast<VertexId>(vertex_weights.size()) != num_vertices)
    throw InvalidArgument("build_graph: vertex weight count does not match vertex count");

  std::vector<std::int64_t> degree(static_cast<std::size_t>(num_vertices) + 1, 0);
  for (const auto& e : edges) {
    if (e.u < 0 || e.v < 0 || e.u >= num_vertices || e.v >= num_vertices)
      throw InvalidArgument("build_graph: edge (" + vertex_str(e.u) + "," + vertex_str(e.v) +
                            ") references a vertex out of range");
    if (e.u == e.v) throw InvalidArgument("build_graph: self-loop at vertex " + vertex_str(e.u));
    if (e.weight < 1) throw InvalidArgument("build_graph: edge weights must be >= 1");
    ++degree[e.u + 1];
    ++degree[e.v + 1];
  }
  std::partial_sum(degree.begin(), degree.end(), degree.begin());

  struct Entry {
    VertexId nbr;
    Weight w;
  };
  std::vector<Entry> entries(static_cast<std::size_t>(degree.back()));
  std::vector<std::int64_t> fill(degree.begin(), degree.end() - 1);
  for (const auto& e : edges) {
    entries[fill[e.u]++] = {e.v, e.weight};
    entries[fill[e.v]++] = {e.u, e.weight};
  }

  std::vector<VertexId> adjacency(entries.size());
  std::vector<Weight> weights(entries.size());
  for (VertexId v = 0; v < num_vertices; ++v) {
    auto first = entries.begin() + degree[v];
    auto last = entries.begin() + degree[v + 1];
    std::sort(first, last, [](const Entry& a, const Entry& b) { return a.nbr < b.nbr; });
    for (auto it = first; it != last; ++it) {
      if (it != first && std::prev(it)->nbr == it->nbr)
        throw InvalidArgument("build_graph: duplicate edge (" + vertex_str(std::min(v, it->nbr)) +
                              "," + vertex_str(std::max(v, it->nbr)) + ")");
      const auto k = static_cast<std::size_t>(it - entries.begin());
      adjacency[k] = it->nbr;
      weights[k] = it->w;
    }
  }

  std::vector<Weight> vw(vertex_weights.begin(), vertex_weights.end());
  if (vw.empty()) vw.assign(static_cast<std::size_t>(num_vertices), 1);
  return Graph::from_csr(std::move(degree), std::move(adjacency), std::move(weights), std::move(vw));
}

Partition Partition::make(std::vector<PartId> parts, PartId num_parts) {
  if (num_parts < 1) throw InvalidArgument("partition: num_parts must be >= 1");
  for (std::size_t i = 0; i < parts.size(); ++i)
    if (parts[i] < 0 || parts[i] >= num_parts)
      throw InvalidArgument("partition: part id " + std::to_string(parts[i]) + " of entry " +
                            std::to_string(i) + " outside [0, " + std::to_string(num_parts) + ")");
  return Partition{std::move(parts), num_parts};
}

Partition Partition::from_ids(std::vector<PartId> parts) {
  PartId k = 0;
  for (PartId id : parts) k = std::max(k, id + 1);
  return make(std::move(parts), std::max<PartId>(k, 1));
}

Partition Partition::uniform(VertexId n, PartId part, PartId num_parts) {
  return make(std::vector<PartId>(static_cast<std::size_t>(n), part), num_parts);
}

std::vector<std::int64_t> part_sizes(const Partition& p) {
  std::vector<std::int64_t> sizes(static_cast<std::size_t>(p.num_parts), 0);
  for (PartId id : p.parts) ++sizes[id];
  return sizes;
}

std::vector<Weight> part_weights(const Graph& g, const Partition& p) {
  check_compatible(g, p);
  std::vector<Weight> w(static_cast<std::size_t>(p.num_parts), 0);
  for (VertexId v = 0; v < g.num_vertices(); ++v) w[p[v]] += g.vertex_weight(v);
  return w;
}

void check_compatible(const Graph& g, const Partition& p) {
  if (p.size() != g.num_vertices())
    throw InvalidArgument("partition has " + std::to_string(p.size()) + " entries but graph has " +
                          std::to_string(g.num_vertices()) + " vertices");
}

Subgraph extract_subgraph(const Graph& g, std::span<const VertexId> vertices) {
  const VertexId nv = g.num_vertices();
  std::vector<VertexId> global_to_local(static_cast<std::size_t>(nv), -1);
  for (std::size_t k = 0; k < vertices.size(); ++k) {
    const VertexId v = vertices[k];
    if (v < 0 || v >= nv) throw InvalidArgument("extract_subgraph: vertex id " + vertex_str(v) + " out of range");
    if (global_to_local[v] != -1)
      throw InvalidArgument("extract_subgraph: duplicate vertex id " + vertex_str(v));
    global_to_local[v] = static_cast<VertexId>(k);
  }

  std::vector<std::int64_t> offsets;
  offsets.reserve(vertices.size() + 1);
  offsets.push_back(0);
  std::vector<VertexId> adjacency;
  std::vector<Weight> weights;
  std::vector<Weight> vw;
  vw.reserve(vertices.size());
  std::vector<std::pair<VertexId, Weight>> row;
  for (VertexId v : vertices) {
    row.clear();
    auto nbrs = g.neighbors(v);
    auto wts = g.edge_weights(v);
    for (std::size_t k = 0; k < nbrs.size(); ++k)
      if (VertexId local = global_to_local[nbrs[k]]; local != -1) row.emplace_back(local, wts[k]);
    std::sort(row.begin(), row.end());
    for (auto [u, w] : row) {
      adjacency.push_back(u);
      weights.push_back(w);
    }
    offsets.push_back(static_cast<std::int64_t>(adjacency.size()));
    vw.push_back(g.vertex_weight(v));
  }
  return {Graph::from_csr(std::move(offsets), std::move(adjacency), std::move(weights), std::move(vw)),
          std::vector<VertexId>(vertices.begin(), vertices.end())};
}

Weight edge_cut(const Graph& g, const Partition& p, Execution exec) {
  check_compatible(g, p);
  const VertexId nv = g.num_vertices();
  // Summed over both directions, halved at the end.
  Weight twice = 0;
  if (exec == Execution::Parallel) {
#pragma omp parallel for reduction(+ : twice) schedule(static)
    for (VertexId v = 0; v < nv; ++v) {
      auto nbrs = g.neighbors(v);
      auto wts = g.edge_weights(v);
      for (std::size_t k = 0; k < nbrs.size(); ++k)
        if (p[nbrs[k]] != p[v]) twice += wts[k];
    }
  } else {
    for (VertexId v = 0; v < nv; ++v) {
      auto nbrs = g.neighbors(v);
      auto wts = g.edge_weights(v);
      for (std::size_t k = 0; k < nbrs.size(); ++k)
        if (p[nbrs[k]] != p[v]) twice += wts[k];
    }
  }
  return twice / 2;
}

std::vector<PartMetrics> per_rank_metrics(const Graph& g, const Partition& p) {
  check_compatible(g, p);
  std::vector<PartMetrics> out(static_cast<std::size_t>(p.num_parts));
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    ++out[p[v]].vertex_count;
    for (VertexId u : g.neighbors(v))
      if (v < u && p[u] != p[v]) {
        ++out[p[v]].boundary_edge_count;
        ++out[p[u]].boundary_edge_count;
      }
  }
  return out;
}

BalanceStats balance_stats(std::span<const std::int64_t> sizes) {
  if (sizes.empty()) throw InvalidArgument("balance_stats: empty size vector");
  std::int64_t total = 0;
  for (auto s : sizes) {
    if (s <= 0) throw InvalidArgument("balance_stats: sizes must be positive (ratio undefined)");
    total += s;
  }
  const auto [lo, hi] = std::minmax_element(sizes.begin(), sizes.end());
  BalanceStats st;
  st.max = static_cast<double>(*hi);
  st.min = static_cast<double>(*lo);
  st.max_over_min = st.max / st.min;
  st.max_over_avg = st.max * static_cast<double>(sizes.size()) / static_cast<double>(total);
  return st;
}

}  // namespace hierpart
