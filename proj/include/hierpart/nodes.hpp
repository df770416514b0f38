#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "hierpart/execution.hpp"
#include "hierpart/mesh.hpp"

namespace hierpart {

/// Owning rank of every mesh node and the per-rank totals.
struct NodeOwnership {
  std::vector<PartId> owner;
  std::vector<std::int64_t> counts;

  /// Recomputes counts for `num_ranks` ranks from an owner array.
  static NodeOwnership from_owners(std::vector<PartId> owner, PartId num_ranks);

  friend bool operator==(const NodeOwnership&, const NodeOwnership&) = default;
};

enum class NodeStrategy { LowestRank, Parity, InterfacePartition };

std::string_view to_string(NodeStrategy s);
/// Accepts "lowest-rank", "parity" and "interface".
NodeStrategy parse_node_strategy(std::string_view name);

/// Every node goes to the lowest rank among its attached elements.
NodeOwnership assign_lowest_rank(const Mesh& mesh, const Partition& elem_partition);

/// Two-rank interface nodes: odd ids to the lower rank, even ids to the
/// higher. Nodes shared by three or more ranks use the greedy fallback.
NodeOwnership assign_parity(const Mesh& mesh, const Partition& elem_partition);

/// Each two-rank interface is bisected with the k-way partitioner; the half
/// holding the smallest node id goes to the lower rank.
NodeOwnership assign_interface_partition(const Mesh& mesh, const Partition& elem_partition, std::uint64_t seed,
                                         Execution exec = Execution::Serial);

NodeOwnership assign_nodes(NodeStrategy strategy, const Mesh& mesh, const Partition& elem_partition,
                           std::uint64_t seed, Execution exec = Execution::Serial);

/// Graph over the interface nodes of `pair` (`nodes` ascending, local id =
/// position): two nodes are adjacent when consecutive on an element side
/// shared by an element of each rank.
Graph interface_graph(const Mesh& mesh, const Partition& elem_partition, RankPair pair,
                      std::span<const NodeId> nodes);

struct NodeRatio {
  /// max/min of the per-rank counts; +inf when some rank owns no node.
  double value = 1.0;
  bool has_empty_rank = false;
};

NodeRatio node_ratio(std::span<const std::int64_t> counts);
inline NodeRatio node_ratio(const NodeOwnership& ownership) { return node_ratio(ownership.counts); }

/// Throws InvalidArgument if some node is owned by a rank that holds none of
/// its attached elements, or if counts do not match the owner array.
void check_ownership(const Mesh& mesh, const Partition& elem_partition, const NodeOwnership& ownership);

}  // namespace hierpart
