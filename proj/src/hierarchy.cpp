#include "hierpart/hierarchy.hpp"

#include <algorithm>
#include <exception>
#include <string>

#include "hierpart/errors.hpp"
#include "hierpart/random.hpp"

namespace hierpart {

SplitPlan compute_splits(PartId num_parts, PartId group_size) {
  if (num_parts < 1) throw InvalidArgument("compute_splits: number of parts must be >= 1");
  if (group_size < 1) throw InvalidArgument("compute_splits: group size must be >= 1");
  SplitPlan plan;
  plan.num_parts = num_parts;
  plan.group_size = group_size;
  plan.remainder = num_parts % group_size;
  plan.num_groups = num_parts / group_size + (plan.remainder != 0 ? 1 : 0);
  plan.sub_parts.assign(static_cast<std::size_t>(plan.num_groups), group_size);
  if (plan.remainder != 0) plan.sub_parts[0] = plan.remainder;

  std::vector<double> w(plan.sub_parts.size());
  plan.offsets.resize(plan.sub_parts.size());
  PartId acc = 0;
  for (std::size_t c = 0; c < plan.sub_parts.size(); ++c) {
    w[c] = static_cast<double>(plan.sub_parts[c]) / static_cast<double>(num_parts);
    plan.offsets[c] = acc;
    acc += plan.sub_parts[c];
  }
  plan.weights = TargetWeights(std::move(w));
  return plan;
}

std::int32_t RankLayout::owner(VertexId v) const {
  auto it = std::upper_bound(chunks.begin(), chunks.end(), v,
                             [](VertexId x, const Chunk& c) { return x < c.end; });
  if (v < 0 || it == chunks.end()) throw InvalidArgument("rank layout: vertex id out of range");
  return static_cast<std::int32_t>(it - chunks.begin());
}

RankLayout trivial_distribute(VertexId nv, std::int32_t num_ranks) {
  if (num_ranks < 1) throw InvalidArgument("trivial_distribute: number of ranks must be >= 1");
  if (nv < num_ranks)
    throw InfeasibleError("trivial_distribute: " + std::to_string(nv) + " vertices cannot cover " +
                          std::to_string(num_ranks) + " ranks");
  RankLayout layout;
  layout.chunks.reserve(static_cast<std::size_t>(num_ranks));
  const VertexId base = nv / num_ranks;
  const VertexId extra = nv % num_ranks;
  VertexId begin = 0;
  for (std::int32_t r = 0; r < num_ranks; ++r) {
    const VertexId len = base + (r < extra ? 1 : 0);
    layout.chunks.push_back({begin, begin + len});
    begin += len;
  }
  return layout;
}

std::vector<VertexId> ExchangePlan::gathered(std::int32_t receiver) const {
  std::vector<VertexId> out;
  for (const auto& m : messages)
    if (m.receiver == receiver) out.insert(out.end(), m.vertices.begin(), m.vertices.end());
  return out;
}

ExchangePlan discover_exchange(const RankLayout& layout, const Partition& p1, Execution exec) {
  if (p1.size() != layout.num_vertices())
    throw InvalidArgument("discover_exchange: partition covers " + std::to_string(p1.size()) +
                          " vertices but layout covers " + std::to_string(layout.num_vertices()));
  const std::int32_t ranks = layout.num_ranks();
  for (VertexId v = 0; v < p1.size(); ++v)
    if (p1[v] >= ranks)
      throw InvalidArgument("discover_exchange: vertex " + std::to_string(v) + " targets part " +
                            std::to_string(p1[v]) + " but only " + std::to_string(ranks) + " ranks exist");

  // Each simulated rank bins its own chunk by destination.
  std::vector<std::vector<ExchangeMessage>> outgoing(static_cast<std::size_t>(ranks));
  auto bin_rank = [&](std::int32_t r) {
    std::vector<std::vector<VertexId>> bins(static_cast<std::size_t>(ranks));
    for (VertexId v = layout.chunks[r].begin; v < layout.chunks[r].end; ++v) bins[p1[v]].push_back(v);
    for (std::int32_t to = 0; to < ranks; ++to)
      if (!bins[to].empty()) outgoing[r].push_back({r, to, std::move(bins[to])});
  };
  if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::int32_t r = 0; r < ranks; ++r) bin_rank(r);
  } else {
    for (std::int32_t r = 0; r < ranks; ++r) bin_rank(r);
  }

  ExchangePlan plan;
  plan.num_ranks = ranks;
  plan.incoming.resize(static_cast<std::size_t>(ranks));
  // Discovery: receivers learn (sender, size) pairs before any payload moves.
  for (auto& per_rank : outgoing)
    for (auto& m : per_rank) {
      plan.incoming[m.receiver].push_back({m.sender, static_cast<std::int64_t>(m.vertices.size())});
      plan.messages.push_back(std::move(m));
    }
  return plan;
}

Partition compose_final(const Partition& p1, const Partition& p2, const SplitPlan& plan) {
  if (p1.size() != p2.size())
    throw InvalidArgument("compose_final: stage partitions differ in length (" + std::to_string(p1.size()) +
                          " vs " + std::to_string(p2.size()) + ")");
  std::vector<PartId> out(static_cast<std::size_t>(p1.size()));
  for (VertexId v = 0; v < p1.size(); ++v) {
    const PartId c = p1[v];
    if (c < 0 || c >= plan.num_groups)
      throw InvalidArgument("compose_final: first-stage id " + std::to_string(c) + " at vertex " +
                            std::to_string(v) + " exceeds the plan's group count");
    if (p2[v] < 0 || p2[v] >= plan.sub_parts[c])
      throw InvalidArgument("compose_final: second-stage id " + std::to_string(p2[v]) + " at vertex " +
                            std::to_string(v) + " is not below " + std::to_string(plan.sub_parts[c]));
    out[v] = plan.offsets[c] + p2[v];
  }
  return Partition::make(std::move(out), plan.num_parts);
}

namespace {

std::uint64_t second_stage_seed(std::uint64_t seed, PartId group) {
  return derive_seed(seed, 0x5eed0000ULL + static_cast<std::uint64_t>(group));
}

}  // namespace

HierarchyTrace hierarchical_partition_trace(const Graph& g, PartId num_parts, PartId group_size,
                                            std::uint64_t seed, const HierarchyOptions& options) {
  if (num_parts > g.num_vertices())
    throw InfeasibleError("hierarchical_partition: " + std::to_string(num_parts) + " parts requested for " +
                          std::to_string(g.num_vertices()) + " vertices");
  HierarchyTrace t;
  t.plan = compute_splits(num_parts, group_size);
  const PartId groups = t.plan.num_groups;

  KwayOptions first = options.kway;
  first.min_part_sizes.assign(t.plan.sub_parts.begin(), t.plan.sub_parts.end());
  t.first_stage = partition_kway(g, groups, t.plan.weights, seed, first);

  t.layout = trivial_distribute(g.num_vertices(), groups);
  t.exchange = discover_exchange(t.layout, t.first_stage, options.execution);

  KwayOptions second = options.kway;
  second.min_part_sizes.clear();
  std::vector<std::vector<VertexId>> members(static_cast<std::size_t>(groups));
  std::vector<Partition> local(static_cast<std::size_t>(groups));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(groups));
  for (PartId c = 0; c < groups; ++c) members[c] = t.exchange.gathered(c);

  auto run_group = [&](PartId c) {
    try {
      const Subgraph sub = extract_subgraph(g, members[c]);
      const PartId k = t.plan.sub_parts[c];
      local[c] = partition_kway(sub.graph, k, TargetWeights::uniform(k), second_stage_seed(seed, c), second);
    } catch (...) {
      errors[c] = std::current_exception();
    }
  };
  if (options.execution == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic)
    for (PartId c = 0; c < groups; ++c) run_group(c);
  } else {
    for (PartId c = 0; c < groups; ++c) run_group(c);
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  // Results return to the vertices' owners and merge by global id.
  std::vector<PartId> p2(static_cast<std::size_t>(g.num_vertices()), 0);
  for (PartId c = 0; c < groups; ++c)
    for (std::size_t k = 0; k < members[c].size(); ++k) p2[members[c][k]] = local[c][static_cast<VertexId>(k)];
  t.second_stage = Partition::make(std::move(p2), group_size);
  t.final_partition = compose_final(t.first_stage, t.second_stage, t.plan);
  return t;
}

Partition hierarchical_partition(const Graph& g, PartId num_parts, PartId group_size, std::uint64_t seed,
                                 const HierarchyOptions& options) {
  return hierarchical_partition_trace(g, num_parts, group_size, seed, options).final_partition;
}

Partition flat_partition(const Graph& g, PartId num_parts, std::uint64_t seed, const KwayOptions& options) {
  return partition_kway(g, num_parts, TargetWeights::uniform(num_parts), seed, options);
}

}  // namespace hierpart
