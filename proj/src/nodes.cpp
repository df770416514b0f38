#include "hierpart/nodes.hpp"

#include <algorithm>
#include <array>
#include <exception>
#include <limits>
#include <map>
#include <string>

#include "hierpart/errors.hpp"
#include "hierpart/kway.hpp"
#include "hierpart/random.hpp"

namespace hierpart {

namespace {

using NodeEdge = std::pair<NodeId, NodeId>;

// Distinct ranks of the elements attached to each node, ascending.
std::vector<std::vector<PartId>> node_ranks(const Mesh& mesh, const Partition& elem_partition) {
  check_element_partition(mesh, elem_partition);
  const NodeElements ne = node_elements(mesh);
  std::vector<std::vector<PartId>> ranks(static_cast<std::size_t>(mesh.num_nodes()));
  for (NodeId n = 0; n < mesh.num_nodes(); ++n) {
    auto& r = ranks[n];
    for (ElementId e : ne.of(n)) r.push_back(elem_partition[e]);
    std::sort(r.begin(), r.end());
    r.erase(std::unique(r.begin(), r.end()), r.end());
  }
  return ranks;
}

// Node pairs that are consecutive on a side shared by elements of two
// different ranks, grouped by rank pair.
std::map<RankPair, std::vector<NodeEdge>> interface_side_edges(const Mesh& mesh, const Partition& elem_partition) {
  struct SideKey {
    std::array<NodeId, 4> sorted{-1, -1, -1, -1};
    ElementId element;
    int side;
  };
  const auto sides = element_sides(mesh.dim());
  std::vector<SideKey> keys;
  keys.reserve(static_cast<std::size_t>(mesh.num_elements()) * sides.size());
  for (ElementId e = 0; e < mesh.num_elements(); ++e) {
    auto nodes = mesh.element(e);
    for (std::size_t s = 0; s < sides.size(); ++s) {
      SideKey key{{-1, -1, -1, -1}, e, static_cast<int>(s)};
      for (std::size_t k = 0; k < sides[s].size(); ++k) key.sorted[k] = nodes[sides[s][k]];
      std::sort(key.sorted.begin(), key.sorted.begin() + static_cast<std::ptrdiff_t>(sides[s].size()));
      keys.push_back(key);
    }
  }
  std::sort(keys.begin(), keys.end(), [](const SideKey& a, const SideKey& b) {
    return a.sorted != b.sorted ? a.sorted < b.sorted : a.element < b.element;
  });

  std::map<RankPair, std::vector<NodeEdge>> out;
  for (std::size_t lo = 0; lo < keys.size();) {
    std::size_t hi = lo + 1;
    while (hi < keys.size() && keys[hi].sorted == keys[lo].sorted) ++hi;
    for (std::size_t a = lo; a < hi; ++a)
      for (std::size_t b = a + 1; b < hi; ++b) {
        const PartId ra = elem_partition[keys[a].element];
        const PartId rb = elem_partition[keys[b].element];
        if (ra == rb) continue;
        const auto& local = sides[keys[a].side];
        auto nodes = mesh.element(keys[a].element);
        auto& edges = out[{std::min(ra, rb), std::max(ra, rb)}];
        // A 2-node side is a single segment; a 4-node face contributes its cycle.
        const std::size_t segments = local.size() == 2 ? 1 : local.size();
        for (std::size_t k = 0; k < segments; ++k) {
          NodeId x = nodes[local[k]];
          NodeId y = nodes[local[(k + 1) % local.size()]];
          edges.emplace_back(std::min(x, y), std::max(x, y));
        }
      }
    lo = hi;
  }
  for (auto& [pair, edges] : out) {
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  }
  return out;
}

Graph graph_on_nodes(std::span<const NodeId> nodes, std::span<const NodeEdge> edges) {
  std::vector<WeightedEdge> local;
  auto index_of = [&](NodeId n) -> VertexId {
    auto it = std::lower_bound(nodes.begin(), nodes.end(), n);
    return it != nodes.end() && *it == n ? static_cast<VertexId>(it - nodes.begin()) : -1;
  };
  for (auto [x, y] : edges) {
    const VertexId lx = index_of(x);
    const VertexId ly = index_of(y);
    if (lx >= 0 && ly >= 0) local.push_back({lx, ly, 1});
  }
  return build_graph(local, static_cast<VertexId>(nodes.size()));
}

PartId num_ranks_of(const Partition& elem_partition) { return std::max<PartId>(elem_partition.num_parts, 1); }

// Assigns each multi-rank node to its least-loaded incident rank (ties to the
// lower rank), visiting nodes in id order. Owners of other nodes must be set.
void assign_multi_rank_greedy(const std::vector<std::vector<PartId>>& ranks, std::vector<PartId>& owner,
                              PartId num_ranks) {
  std::vector<std::int64_t> counts(static_cast<std::size_t>(num_ranks), 0);
  for (NodeId n = 0; n < static_cast<NodeId>(owner.size()); ++n)
    if (ranks[n].size() <= 2 && owner[n] >= 0) ++counts[owner[n]];
  for (NodeId n = 0; n < static_cast<NodeId>(owner.size()); ++n) {
    if (ranks[n].size() <= 2) continue;
    PartId pick = ranks[n].front();
    for (PartId r : ranks[n])
      if (counts[r] < counts[pick]) pick = r;
    owner[n] = pick;
    ++counts[pick];
  }
}

std::vector<PartId> interior_owners(const std::vector<std::vector<PartId>>& ranks) {
  std::vector<PartId> owner(ranks.size(), -1);
  for (std::size_t n = 0; n < ranks.size(); ++n)
    if (ranks[n].size() == 1) owner[n] = ranks[n].front();
  return owner;
}

}  // namespace

NodeOwnership NodeOwnership::from_owners(std::vector<PartId> owner, PartId num_ranks) {
  NodeOwnership out;
  out.counts.assign(static_cast<std::size_t>(std::max<PartId>(num_ranks, 0)), 0);
  for (std::size_t n = 0; n < owner.size(); ++n) {
    if (owner[n] < 0 || owner[n] >= num_ranks)
      throw InvalidArgument("node ownership: node " + std::to_string(n) + " has owner " +
                            std::to_string(owner[n]) + " outside [0, " + std::to_string(num_ranks) + ")");
    ++out.counts[owner[n]];
  }
  out.owner = std::move(owner);
  return out;
}

std::string_view to_string(NodeStrategy s) {
  switch (s) {
    case NodeStrategy::LowestRank:
      return "lowest-rank";
    case NodeStrategy::Parity:
      return "parity";
    case NodeStrategy::InterfacePartition:
      return "interface";
  }
  return "unknown";
}

NodeStrategy parse_node_strategy(std::string_view name) {
  if (name == "lowest-rank") return NodeStrategy::LowestRank;
  if (name == "parity") return NodeStrategy::Parity;
  if (name == "interface") return NodeStrategy::InterfacePartition;
  throw InvalidArgument("unknown node strategy '" + std::string(name) + "'");
}

NodeOwnership assign_lowest_rank(const Mesh& mesh, const Partition& elem_partition) {
  const auto ranks = node_ranks(mesh, elem_partition);
  std::vector<PartId> owner(ranks.size(), 0);
  for (std::size_t n = 0; n < ranks.size(); ++n)
    if (!ranks[n].empty()) owner[n] = ranks[n].front();
  return NodeOwnership::from_owners(std::move(owner), num_ranks_of(elem_partition));
}

NodeOwnership assign_parity(const Mesh& mesh, const Partition& elem_partition) {
  const auto ranks = node_ranks(mesh, elem_partition);
  std::vector<PartId> owner = interior_owners(ranks);
  for (NodeId n = 0; n < static_cast<NodeId>(ranks.size()); ++n)
    if (ranks[n].size() == 2) owner[n] = n % 2 == 1 ? ranks[n][0] : ranks[n][1];
  assign_multi_rank_greedy(ranks, owner, num_ranks_of(elem_partition));
  // Nodes not attached to any element (possible only in imported meshes).
  std::replace(owner.begin(), owner.end(), PartId{-1}, PartId{0});
  return NodeOwnership::from_owners(std::move(owner), num_ranks_of(elem_partition));
}

Graph interface_graph(const Mesh& mesh, const Partition& elem_partition, RankPair pair,
                      std::span<const NodeId> nodes) {
  check_element_partition(mesh, elem_partition);
  if (!std::is_sorted(nodes.begin(), nodes.end()))
    throw InvalidArgument("interface_graph: node list must be ascending");
  const auto all = interface_side_edges(mesh, elem_partition);
  auto it = all.find({std::min(pair.first, pair.second), std::max(pair.first, pair.second)});
  if (it == all.end()) return graph_on_nodes(nodes, {});
  return graph_on_nodes(nodes, it->second);
}

NodeOwnership assign_interface_partition(const Mesh& mesh, const Partition& elem_partition, std::uint64_t seed,
                                         Execution exec) {
  const auto ranks = node_ranks(mesh, elem_partition);
  const InterfaceNodes iface = interface_node_sets(mesh, elem_partition);
  const auto side_edges = interface_side_edges(mesh, elem_partition);
  std::vector<PartId> owner = interior_owners(ranks);

  struct PairJob {
    RankPair pair;
    const std::vector<NodeId>* nodes;
    std::vector<PartId> owners;
  };
  std::vector<PairJob> jobs;
  jobs.reserve(iface.pairs.size());
  for (const auto& [pair, nodes] : iface.pairs) jobs.push_back({pair, &nodes, {}});
  std::vector<std::exception_ptr> errors(jobs.size());

  auto run_pair = [&](std::size_t j) {
    try {
      PairJob& job = jobs[j];
      const auto& nodes = *job.nodes;
      const auto [a, b] = job.pair;
      job.owners.assign(nodes.size(), a);
      if (nodes.size() < 2) return;
      auto it = side_edges.find(job.pair);
      const Graph g = it == side_edges.end() ? graph_on_nodes(nodes, {}) : graph_on_nodes(nodes, it->second);
      const auto pair_seed =
          derive_seed(seed, (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b));
      const Partition halves = partition_kway(g, 2, TargetWeights::uniform(2), pair_seed);
      // Local id 0 is the smallest node id; its half goes to the lower rank.
      for (std::size_t k = 0; k < nodes.size(); ++k)
        job.owners[k] = halves[static_cast<VertexId>(k)] == halves[0] ? a : b;
    } catch (...) {
      errors[j] = std::current_exception();
    }
  };
  const auto njobs = static_cast<std::int64_t>(jobs.size());
  if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t j = 0; j < njobs; ++j) run_pair(static_cast<std::size_t>(j));
  } else {
    for (std::int64_t j = 0; j < njobs; ++j) run_pair(static_cast<std::size_t>(j));
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  for (const auto& job : jobs)
    for (std::size_t k = 0; k < job.nodes->size(); ++k) owner[(*job.nodes)[k]] = job.owners[k];
  assign_multi_rank_greedy(ranks, owner, num_ranks_of(elem_partition));
  std::replace(owner.begin(), owner.end(), PartId{-1}, PartId{0});
  return NodeOwnership::from_owners(std::move(owner), num_ranks_of(elem_partition));
}

NodeOwnership assign_nodes(NodeStrategy strategy, const Mesh& mesh, const Partition& elem_partition,
                           std::uint64_t seed, Execution exec) {
  switch (strategy) {
    case NodeStrategy::LowestRank:
      return assign_lowest_rank(mesh, elem_partition);
    case NodeStrategy::Parity:
      return assign_parity(mesh, elem_partition);
    case NodeStrategy::InterfacePartition:
      return assign_interface_partition(mesh, elem_partition, seed, exec);
  }
  throw InvalidArgument("assign_nodes: unknown strategy");
}

NodeRatio node_ratio(std::span<const std::int64_t> counts) {
  if (counts.empty()) throw InvalidArgument("node_ratio: no ranks");
  const auto [lo, hi] = std::minmax_element(counts.begin(), counts.end());
  if (*lo <= 0) return {std::numeric_limits<double>::infinity(), true};
  return {static_cast<double>(*hi) / static_cast<double>(*lo), false};
}

void check_ownership(const Mesh& mesh, const Partition& elem_partition, const NodeOwnership& ownership) {
  if (static_cast<NodeId>(ownership.owner.size()) != mesh.num_nodes())
    throw InvalidArgument("node ownership has " + std::to_string(ownership.owner.size()) +
                          " entries but mesh has " + std::to_string(mesh.num_nodes()) + " nodes");
  const auto ranks = node_ranks(mesh, elem_partition);
  std::vector<std::int64_t> counts(ownership.counts.size(), 0);
  for (NodeId n = 0; n < mesh.num_nodes(); ++n) {
    const PartId o = ownership.owner[n];
    if (o < 0 || o >= static_cast<PartId>(counts.size()))
      throw InvalidArgument("node ownership: owner of node " + std::to_string(n) + " out of range");
    if (!ranks[n].empty() && !std::binary_search(ranks[n].begin(), ranks[n].end(), o))
      throw InvalidArgument("node ownership: node " + std::to_string(n) + " owned by rank " + std::to_string(o) +
                            " which holds none of its elements");
    ++counts[o];
  }
  if (counts != ownership.counts) throw InvalidArgument("node ownership: counts do not match owners");
}

}  // namespace hierpart
