#include "hierpart/kway.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <queue>
#include <string>

#include "hierpart/errors.hpp"
#include "hierpart/random.hpp"

namespace hierpart {

TargetWeights::TargetWeights(std::vector<double> fractions) : fractions_(std::move(fractions)) {
  if (fractions_.empty()) throw InvalidArgument("target weights: at least one part is required");
  double sum = 0.0;
  for (double f : fractions_) {
    if (!(f > 0.0)) throw InvalidArgument("target weights: every fraction must be positive");
    sum += f;
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw InvalidArgument("target weights: fractions must sum to 1 (got " + std::to_string(sum) + ")");
}

TargetWeights TargetWeights::uniform(PartId k) {
  if (k < 1) throw InvalidArgument("target weights: k must be >= 1");
  return TargetWeights(std::vector<double>(static_cast<std::size_t>(k), 1.0 / k));
}

std::vector<VertexId> heavy_edge_match(const Graph& g, std::uint64_t seed) {
  Rng rng(seed);
  const auto order = random_permutation(g.num_vertices(), rng);
  return heavy_edge_match(g, order);
}

std::vector<VertexId> heavy_edge_match(const Graph& g, std::span<const VertexId> visit_order) {
  const VertexId n = g.num_vertices();
  if (static_cast<VertexId>(visit_order.size()) != n)
    throw InvalidArgument("heavy_edge_match: visit order must list every vertex once");
  std::vector<VertexId> mate(static_cast<std::size_t>(n), -1);
  for (VertexId v : visit_order) {
    if (v < 0 || v >= n) throw InvalidArgument("heavy_edge_match: visit order id out of range");
    if (mate[v] != -1) continue;
    VertexId best = -1;
    Weight best_w = 0;
    auto nbrs = g.neighbors(v);
    auto wts = g.edge_weights(v);
    // Neighbors are ascending, so strict > keeps the lowest id on ties.
    for (std::size_t k = 0; k < nbrs.size(); ++k)
      if (mate[nbrs[k]] == -1 && wts[k] > best_w) {
        best = nbrs[k];
        best_w = wts[k];
      }
    if (best >= 0) {
      mate[v] = best;
      mate[best] = v;
    } else {
      mate[v] = v;
    }
  }
  return mate;
}

CoarseningLevel coarsen(const Graph& g, std::span<const VertexId> mates) {
  const VertexId n = g.num_vertices();
  if (static_cast<VertexId>(mates.size()) != n)
    throw InvalidArgument("coarsen: matching must have one entry per vertex");
  for (VertexId v = 0; v < n; ++v) {
    const VertexId m = mates[v];
    if (m < 0 || m >= n || mates[m] != v)
      throw InvalidArgument("coarsen: matching is not symmetric at vertex " + std::to_string(v));
    if (m != v) {
      auto nbrs = g.neighbors(v);
      if (!std::binary_search(nbrs.begin(), nbrs.end(), m))
        throw InvalidArgument("coarsen: vertices " + std::to_string(v) + " and " + std::to_string(m) +
                              " are matched but not adjacent");
    }
  }

  CoarseningLevel level;
  level.projection.assign(static_cast<std::size_t>(n), -1);
  VertexId nc = 0;
  for (VertexId v = 0; v < n; ++v)
    if (mates[v] >= v) level.projection[v] = nc++;
  for (VertexId v = 0; v < n; ++v)
    if (mates[v] < v) level.projection[v] = level.projection[mates[v]];

  std::vector<std::int64_t> offsets{0};
  offsets.reserve(static_cast<std::size_t>(nc) + 1);
  std::vector<VertexId> adjacency;
  std::vector<Weight> weights;
  std::vector<Weight> vw;
  vw.reserve(static_cast<std::size_t>(nc));
  std::vector<std::int64_t> slot(static_cast<std::size_t>(nc), -1);
  std::vector<std::pair<VertexId, Weight>> row;
  for (VertexId v = 0; v < n; ++v) {
    if (mates[v] < v) continue;
    const VertexId c = level.projection[v];
    row.clear();
    Weight weight = g.vertex_weight(v);
    auto gather = [&](VertexId fine) {
      auto nbrs = g.neighbors(fine);
      auto wts = g.edge_weights(fine);
      for (std::size_t k = 0; k < nbrs.size(); ++k) {
        const VertexId cu = level.projection[nbrs[k]];
        if (cu == c) continue;
        if (slot[cu] < 0) {
          slot[cu] = static_cast<std::int64_t>(row.size());
          row.emplace_back(cu, 0);
        }
        row[static_cast<std::size_t>(slot[cu])].second += wts[k];
      }
    };
    gather(v);
    if (mates[v] != v) {
      gather(mates[v]);
      weight += g.vertex_weight(mates[v]);
    }
    for (auto [cu, w] : row) slot[cu] = -1;
    std::sort(row.begin(), row.end());
    for (auto [cu, w] : row) {
      adjacency.push_back(cu);
      weights.push_back(w);
    }
    offsets.push_back(static_cast<std::int64_t>(adjacency.size()));
    vw.push_back(weight);
  }
  level.graph = Graph::from_csr(std::move(offsets), std::move(adjacency), std::move(weights), std::move(vw));
  return level;
}

Partition initial_bisection_from(const Graph& g, double target_fraction, VertexId start) {
  const VertexId n = g.num_vertices();
  if (n == 0) throw InvalidArgument("initial_bisection: graph is empty");
  if (start < 0 || start >= n) throw InvalidArgument("initial_bisection: start vertex out of range");
  const auto total = static_cast<double>(g.total_vertex_weight());
  const double goal = target_fraction * total - 1e-9 * total;

  std::vector<PartId> parts(static_cast<std::size_t>(n), 1);
  std::vector<char> queued(static_cast<std::size_t>(n), 0);
  std::queue<VertexId> frontier;
  frontier.push(start);
  queued[start] = 1;
  VertexId next_seed = 0;
  double grown = 0.0;
  while (grown < goal) {
    if (frontier.empty()) {
      // Component exhausted; continue from the lowest untouched vertex.
      while (next_seed < n && queued[next_seed]) ++next_seed;
      if (next_seed == n) break;
      frontier.push(next_seed);
      queued[next_seed] = 1;
    }
    const VertexId v = frontier.front();
    frontier.pop();
    parts[v] = 0;
    grown += static_cast<double>(g.vertex_weight(v));
    for (VertexId u : g.neighbors(v))
      if (!queued[u]) {
        queued[u] = 1;
        frontier.push(u);
      }
  }
  return Partition::make(std::move(parts), 2);
}

Partition initial_bisection(const Graph& g, double target_fraction, std::uint64_t seed) {
  if (g.num_vertices() == 0) throw InvalidArgument("initial_bisection: graph is empty");
  Rng rng(seed);
  const auto start = static_cast<VertexId>(rng() % static_cast<std::uint64_t>(g.num_vertices()));
  return initial_bisection_from(g, target_fraction, start);
}

namespace {

struct BisectRequest {
  double fraction;     // share of the vertex weight destined for side 0
  double slack;        // allowed absolute deviation of side 0 at the finest level
  VertexId need0 = 1;  // minimum vertex count per side
  VertexId need1 = 1;
};

void enforce_min_counts(const Graph& g, std::vector<PartId>& parts, VertexId need0, VertexId need1) {
  VertexId count[2] = {0, 0};
  for (PartId s : parts) ++count[s];
  auto gain_of = [&](VertexId v) {
    Weight gain = 0;
    auto nbrs = g.neighbors(v);
    auto wts = g.edge_weights(v);
    for (std::size_t k = 0; k < nbrs.size(); ++k) gain += parts[nbrs[k]] != parts[v] ? wts[k] : -wts[k];
    return gain;
  };
  const VertexId need[2] = {need0, need1};
  for (PartId to = 0; to < 2; ++to) {
    while (count[to] < need[to]) {
      VertexId pick = -1;
      Weight best = 0;
      for (VertexId v = 0; v < g.num_vertices(); ++v) {
        if (parts[v] == to) continue;
        const Weight gain = gain_of(v);
        if (pick < 0 || gain > best) {
          pick = v;
          best = gain;
        }
      }
      parts[pick] = to;
      ++count[to];
      --count[1 - to];
    }
  }
}

double window_slack(const BisectRequest& req, const Graph& level, bool finest) {
  return finest ? req.slack : std::max(req.slack, static_cast<double>(level.max_vertex_weight()));
}

// One multilevel V-cycle: coarsen, grow and refine at the coarsest level,
// then project back with rebalancing and refinement at every level.
std::vector<PartId> multilevel_bisect(const Graph& g, const BisectRequest& req, std::uint64_t seed,
                                      const KwayOptions& opt) {
  std::deque<CoarseningLevel> levels;
  const Graph* cur = &g;
  while (cur->num_vertices() > opt.coarsen_to) {
    const auto mates = heavy_edge_match(*cur, derive_seed(seed, 1000 + levels.size()));
    CoarseningLevel next = coarsen(*cur, mates);
    if (static_cast<double>(next.graph.num_vertices()) >
        (1.0 - opt.min_reduction) * static_cast<double>(cur->num_vertices()))
      break;
    levels.push_back(std::move(next));
    cur = &levels.back().graph;
  }

  auto refine_at = [&](const Graph& level, std::vector<PartId>& parts, bool finest) {
    const auto total = static_cast<double>(level.total_vertex_weight());
    const double target = req.fraction * total;
    const double slack = window_slack(req, level, finest);
    detail::rebalance_bisection(level, parts, target - slack, target + slack);
    return detail::refine_bisection(level, parts, target, target - slack, target + slack, opt.max_passes);
  };

  const Graph& coarsest = *cur;
  const bool coarsest_is_finest = levels.empty();
  std::vector<PartId> best;
  Weight best_cut = 0;
  double best_dev = 0.0;
  for (int trial = 0; trial < std::max(1, opt.initial_trials); ++trial) {
    auto parts = initial_bisection(coarsest, req.fraction, derive_seed(seed, 2000 + trial)).parts;
    const Weight cut = refine_at(coarsest, parts, coarsest_is_finest);
    Weight w0 = 0;
    for (VertexId v = 0; v < coarsest.num_vertices(); ++v)
      if (parts[v] == 0) w0 += coarsest.vertex_weight(v);
    const double dev =
        std::abs(static_cast<double>(w0) - req.fraction * static_cast<double>(coarsest.total_vertex_weight()));
    if (best.empty() || cut < best_cut || (cut == best_cut && dev < best_dev)) {
      best = std::move(parts);
      best_cut = cut;
      best_dev = dev;
    }
  }

  for (std::size_t l = levels.size(); l > 0; --l) {
    const Graph& finer = l == 1 ? g : levels[l - 2].graph;
    const auto& projection = levels[l - 1].projection;
    std::vector<PartId> parts(static_cast<std::size_t>(finer.num_vertices()));
    for (VertexId v = 0; v < finer.num_vertices(); ++v) parts[v] = best[projection[v]];
    refine_at(finer, parts, l == 1);
    best = std::move(parts);
  }

  enforce_min_counts(g, best, req.need0, req.need1);
  return best;
}

struct KwayContext {
  const KwayOptions& options;
  double level_tol;
  std::vector<PartId>& out;
};

void recurse(const KwayContext& ctx, const Graph& g, std::span<const VertexId> to_original,
             std::span<const double> fractions, PartId first_part, std::span<const VertexId> min_sizes,
             std::uint64_t seed) {
  const auto k = static_cast<PartId>(fractions.size());
  if (k == 1) {
    for (VertexId v : to_original) ctx.out[v] = first_part;
    return;
  }
  const PartId k0 = (k + 1) / 2;
  const double all = std::accumulate(fractions.begin(), fractions.end(), 0.0);
  const double left = std::accumulate(fractions.begin(), fractions.begin() + k0, 0.0);
  const double t = left / all;

  BisectRequest req;
  req.fraction = t;
  req.slack = std::max(ctx.level_tol * std::min(t, 1.0 - t) * static_cast<double>(g.total_vertex_weight()),
                       0.5 * static_cast<double>(g.max_vertex_weight()));
  req.need0 = std::accumulate(min_sizes.begin(), min_sizes.begin() + k0, VertexId{0});
  req.need1 = std::accumulate(min_sizes.begin() + k0, min_sizes.end(), VertexId{0});

  const auto sides = multilevel_bisect(g, req, derive_seed(seed, 0), ctx.options);

  std::vector<VertexId> local[2];
  for (VertexId v = 0; v < g.num_vertices(); ++v) local[sides[v]].push_back(v);
  for (PartId s = 0; s < 2; ++s) {
    Subgraph sub = extract_subgraph(g, local[s]);
    std::vector<VertexId> original(local[s].size());
    for (std::size_t i = 0; i < local[s].size(); ++i) original[i] = to_original[local[s][i]];
    const PartId lo = s == 0 ? 0 : k0;
    const PartId hi = s == 0 ? k0 : k;
    recurse(ctx, sub.graph, original, fractions.subspan(lo, hi - lo), first_part + lo,
            min_sizes.subspan(lo, hi - lo), derive_seed(seed, 1 + s));
  }
}

}  // namespace

Partition partition_kway(const Graph& g, PartId k, const TargetWeights& weights, std::uint64_t seed,
                         const KwayOptions& options) {
  if (k < 1) throw InvalidArgument("partition_kway: k must be >= 1");
  if (weights.size() != k)
    throw InvalidArgument("partition_kway: expected " + std::to_string(k) + " target weights, got " +
                          std::to_string(weights.size()));
  if (options.imbalance_tol < 0.0) throw InvalidArgument("partition_kway: imbalance tolerance must be >= 0");
  const VertexId nv = g.num_vertices();
  if (k > nv)
    throw InfeasibleError("partition_kway: cannot split " + std::to_string(nv) + " vertices into " +
                          std::to_string(k) + " nonempty parts");

  std::vector<VertexId> min_sizes = options.min_part_sizes;
  if (min_sizes.empty()) min_sizes.assign(static_cast<std::size_t>(k), 1);
  if (static_cast<PartId>(min_sizes.size()) != k)
    throw InvalidArgument("partition_kway: min_part_sizes must have k entries");
  std::int64_t required = 0;
  for (VertexId m : min_sizes) {
    if (m < 1) throw InvalidArgument("partition_kway: min_part_sizes entries must be >= 1");
    required += m;
  }
  if (required > nv)
    throw InfeasibleError("partition_kway: minimum part sizes exceed the vertex count");

  std::vector<PartId> parts(static_cast<std::size_t>(nv), 0);
  if (k == 1) return Partition::make(std::move(parts), 1);

  // Deviation introduced at each recursion level compounds over the depth,
  // so each bisection gets an equal share of the tolerance.
  const double depth = std::ceil(std::log2(static_cast<double>(k)));
  KwayContext ctx{options, options.imbalance_tol / depth, parts};
  std::vector<VertexId> identity(static_cast<std::size_t>(nv));
  std::iota(identity.begin(), identity.end(), 0);
  recurse(ctx, g, identity, weights.values(), 0, min_sizes, seed);
  return Partition::make(std::move(parts), k);
}

}  // namespace hierpart
