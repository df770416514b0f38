#pragma once

#include <cstdint>
#include <vector>

#include "hierpart/execution.hpp"
#include "hierpart/graph.hpp"
#include "hierpart/kway.hpp"

namespace hierpart {

/// First-stage plan for splitting a graph into `num_parts` parts on compute
/// nodes of `group_size` cores each.
///
/// The first stage produces `num_groups` parts; group c is later split into
/// `sub_parts[c]` parts. Group 0 absorbs the remainder when `group_size` does
/// not divide `num_parts`, and `offsets` is the exclusive prefix sum of
/// `sub_parts` so that final ids are `offsets[c] + local id`.
struct SplitPlan {
  PartId num_parts = 0;
  PartId group_size = 0;
  PartId num_groups = 0;
  PartId remainder = 0;
  std::vector<PartId> sub_parts;
  TargetWeights weights{{1.0}};
  std::vector<PartId> offsets;
};

SplitPlan compute_splits(PartId num_parts, PartId group_size);

/// Contiguous chunk [begin, end) of vertex ids held by each simulated rank.
struct RankLayout {
  struct Chunk {
    VertexId begin;
    VertexId end;
    friend bool operator==(const Chunk&, const Chunk&) = default;
  };
  std::vector<Chunk> chunks;

  std::int32_t num_ranks() const { return static_cast<std::int32_t>(chunks.size()); }
  VertexId num_vertices() const { return chunks.empty() ? 0 : chunks.back().end; }
  std::int32_t owner(VertexId v) const;
};

/// Splits [0, nv) into `num_ranks` chunks in id order; the first nv mod
/// num_ranks ranks get one extra vertex.
RankLayout trivial_distribute(VertexId nv, std::int32_t num_ranks);

/// Vertex ids moving from one simulated rank to another.
struct ExchangeMessage {
  std::int32_t sender;
  std::int32_t receiver;
  std::vector<VertexId> vertices;

  friend bool operator==(const ExchangeMessage&, const ExchangeMessage&) = default;
};

/// Result of the two-sided discovery: every nonempty message, ordered by
/// (sender, receiver), plus what each receiver learned about its incoming
/// traffic before the payload moves.
struct ExchangePlan {
  std::int32_t num_ranks = 0;
  std::vector<ExchangeMessage> messages;

  struct Incoming {
    std::int32_t sender;
    std::int64_t count;
    friend bool operator==(const Incoming&, const Incoming&) = default;
  };
  /// Per receiver, senders ascending with message sizes.
  std::vector<std::vector<Incoming>> incoming;

  /// Vertex set of `receiver` after the exchange, ordered by (sender, id).
  std::vector<VertexId> gathered(std::int32_t receiver) const;

  friend bool operator==(const ExchangePlan&, const ExchangePlan&) = default;
};

/// Builds the exchange that sends every vertex from its owning rank to rank
/// p1[v]. Throws InvalidArgument when a part id is not a valid rank.
ExchangePlan discover_exchange(const RankLayout& layout, const Partition& p1,
                               Execution exec = Execution::Serial);

/// p[v] = offsets[p1[v]] + p2[v]; p2[v] must be below sub_parts[p1[v]].
Partition compose_final(const Partition& p1, const Partition& p2, const SplitPlan& plan);

struct HierarchyOptions {
  KwayOptions kway;
  /// Second-stage subgraphs are partitioned concurrently under Parallel.
  Execution execution = Execution::Serial;
};

/// Intermediate products kept for inspection and testing.
struct HierarchyTrace {
  SplitPlan plan;
  Partition first_stage;
  RankLayout layout;
  ExchangePlan exchange;
  Partition second_stage;
  Partition final_partition;
};

/// Two-level partition: `num_parts` parts grouped onto compute nodes of
/// `group_size` cores. Throws InfeasibleError when num_parts exceeds the
/// vertex count.
HierarchyTrace hierarchical_partition_trace(const Graph& g, PartId num_parts, PartId group_size,
                                            std::uint64_t seed, const HierarchyOptions& options = {});

Partition hierarchical_partition(const Graph& g, PartId num_parts, PartId group_size, std::uint64_t seed,
                                 const HierarchyOptions& options = {});

/// Flat baseline: direct k-way partition with uniform target weights.
Partition flat_partition(const Graph& g, PartId num_parts, std::uint64_t seed, const KwayOptions& options = {});

}  // namespace hierpart
